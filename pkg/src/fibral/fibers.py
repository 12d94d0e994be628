"""Standard degenerate fiber configurations (types I_n and I0*)."""

from __future__ import annotations

import re
from fractions import Fraction

from .model import FiberModel, HorizontalProfile, SurfaceModel


class FiberTypeError(ValueError):
    pass


def cycle_fiber(n: int, place_id: str = "v") -> FiberModel:
    """Type I_n: ``n`` components of multiplicity 1 in a cycle."""
    if n < 2:
        raise FiberTypeError(f"I_n needs n >= 2 (got {n}); a single nodal component is not modelled")
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = Fraction(-2)
        # each neighbour contributes one meeting point; for n = 2 both land on the same entry
        g[i][(i + 1) % n] += 1
        g[i][(i - 1) % n] += 1
    comps = tuple((f"C{i}", 1) for i in range(n))
    return FiberModel(place_id, comps, tuple(tuple(r) for r in g))


def d4_fiber(place_id: str = "v") -> FiberModel:
    """Type I0*: a central double component meeting four simple legs."""
    comps = (("C0", 2),) + tuple((f"C{i}", 1) for i in range(1, 5))
    g = [[Fraction(0)] * 5 for _ in range(5)]
    for i in range(5):
        g[i][i] = Fraction(-2)
    for i in range(1, 5):
        g[0][i] = g[i][0] = Fraction(1)
    return FiberModel(place_id, comps, tuple(tuple(r) for r in g))


def irreducible_fiber(place_id: str = "v", multiplicity: int = 1) -> FiberModel:
    return FiberModel(place_id, (("C0", multiplicity),), ((Fraction(0),),))


def make_fiber(kind: str, n: int | None = None, place_id: str = "v") -> FiberModel:
    """``kind`` is ``"I0*"``, ``"I_n"`` (with ``n``), or a literal like ``"I_3"``/``"I3"``."""
    k = kind.strip()
    if k.upper() in ("I0*", "I_0*"):
        return d4_fiber(place_id)
    if k in ("I_n", "In"):
        if n is None:
            raise FiberTypeError("type I_n needs a parameter n")
        return cycle_fiber(n, place_id)
    match = re.fullmatch(r"I_?(\d+)", k)
    if match:
        return cycle_fiber(int(match.group(1)), place_id)
    raise FiberTypeError(f"unknown fiber type {kind!r} (expected I_n or I0*)")


def uniform_ample(places: list[FiberModel], degree: Fraction | None = None, profile_id: str = "D") -> HorizontalProfile:
    """Ample profile spreading ``degree`` evenly over the weighted components of each fiber.

    With no degree given, the least common multiple of the fibers' total
    multiplicities is used so that every pairing is 1 or larger.
    """
    import math

    totals = [sum(n for _, n in f.components) for f in places]
    deg = Fraction(degree) if degree is not None else Fraction(math.lcm(*totals))
    pairings = {f.place_id: {c: deg / t for c, _ in f.components} for f, t in zip(places, totals)}
    return HorizontalProfile(profile_id, deg, pairings, frozenset({f"{profile_id}/P1"}))


def surface_from_fibers(name: str, fibers: list[FiberModel], torsion: bool = True) -> SurfaceModel:
    return SurfaceModel(name, tuple(fibers), torsion, uniform_ample(fibers))
