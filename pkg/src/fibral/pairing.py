"""Intersection pairings on a single fiber and certification of the fiber form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import bilinear, leading_principal_minors, submatrix
from .model import FibralDivisor, FiberModel, HorizontalProfile, PlaceMismatchError, fiber_vector


class FiberFormError(ValueError):
    """The fiber data fails a structural precondition of the certificate."""


class NotSemidefiniteError(FiberFormError):
    pass


class KernelTooLargeError(FiberFormError):
    pass


def _same_place(f: FiberModel, *divisors: FibralDivisor) -> None:
    for x in divisors:
        if x.place_id != f.place_id:
            raise PlaceMismatchError(f"divisor on {x.place_id!r} paired on fiber {f.place_id!r}")


def pair_fibral(f: FiberModel, x: FibralDivisor, y: FibralDivisor) -> Fraction:
    _same_place(f, x, y)
    return bilinear(x.vector(f), f.matrix(), y.vector(f))


def pairing_values(f: FiberModel, x: FibralDivisor) -> dict[str, Fraction]:
    """``<x, C>`` for every component ``C`` of the fiber."""
    _same_place(f, x)
    vec = x.vector(f)
    return {
        c: sum((xi * row[j] for xi, row in zip(vec, f.pairing_matrix)), Fraction(0))
        for j, c in enumerate(f.component_ids)
    }


def pair_horizontal(p: HorizontalProfile, f: FiberModel, x: FibralDivisor) -> Fraction:
    _same_place(f, x)
    if f.place_id not in p.pairings:
        raise KeyError(f"profile {p.profile_id!r} undefined at place {f.place_id!r}")
    row = p.pairings[f.place_id]
    total = Fraction(0)
    for c, coeff in zip(f.component_ids, x.vector(f)):
        if coeff:
            total += coeff * row.get(c, Fraction(0))
    return total


@dataclass(frozen=True)
class SemidefinitenessCertificate:
    place_id: str
    base_component: str
    restricted_minors: tuple[Fraction, ...]
    kernel_basis: FibralDivisor

    def holds(self) -> bool:
        return all(m > 0 for m in self.restricted_minors)


def check_fiber_form(f: FiberModel, base_component: str | None = None) -> SemidefinitenessCertificate:
    """Certify that the fiber form is negative semidefinite with kernel the fiber line.

    One component is deleted; the negated restriction must have all leading
    principal minors positive. Together with the kernel identity this pins
    the kernel to the multiplicity vector.
    """
    g = f.matrix()
    n = f.size
    if any(g[i][j] != g[j][i] for i in range(n) for j in range(i)):
        raise FiberFormError(f"fiber {f.place_id!r}: pairing matrix is not symmetric")
    mult = f.multiplicities
    for i, row in enumerate(g):
        if sum((m * x for m, x in zip(mult, row)), Fraction(0)) != 0:
            raise FiberFormError(f"fiber {f.place_id!r}: weighted row {i + 1} does not sum to 0")

    base = f.component_ids[0] if base_component is None else base_component
    restricted = submatrix(g, f.index(base))
    negated = [[-x for x in row] for row in restricted]
    minors = tuple(leading_principal_minors(negated))
    for k, m in enumerate(minors):
        if m < 0:
            raise NotSemidefiniteError(f"fiber {f.place_id!r}: restricted minor {k + 1} is {m} < 0")
        if m == 0:
            raise KernelTooLargeError(f"fiber {f.place_id!r}: restricted minor {k + 1} vanishes")
    return SemidefinitenessCertificate(f.place_id, base, minors, fiber_vector(f))
