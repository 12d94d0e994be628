"""Combinatorial model of a fibered arithmetic surface.

A surface is reduced to the data the divisor-clearing argument actually
consumes: for each closed place, the components of the fiber with their
multiplicities and the intersection matrix; plus one ample horizontal
divisor known only through its generic degree, its pairings with fiber
components and an abstract support.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping

from .exact import NonRationalNumeral, format_rational, parse_rational


class SurfaceFormatError(ValueError):
    """Malformed surface document. ``locus`` names the offending line or field."""

    def __init__(self, message: str, locus: str = ""):
        self.locus = locus
        super().__init__(f"{locus}: {message}" if locus else message)


class DuplicateIdentifierError(SurfaceFormatError):
    pass


class NonRationalError(SurfaceFormatError):
    pass


class PlaceMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class FiberModel:
    place_id: str
    components: tuple[tuple[str, int], ...]
    pairing_matrix: tuple[tuple[Fraction, ...], ...]

    @property
    def component_ids(self) -> tuple[str, ...]:
        return tuple(c for c, _ in self.components)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(n for _, n in self.components)

    @property
    def size(self) -> int:
        return len(self.components)

    @property
    def is_reducible(self) -> bool:
        return len(self.components) > 1

    def index(self, component_id: str) -> int:
        try:
            return self.component_ids.index(component_id)
        except ValueError:
            raise KeyError(f"component {component_id!r} not in fiber {self.place_id!r}") from None

    def multiplicity(self, component_id: str) -> int:
        return self.components[self.index(component_id)][1]

    def matrix(self) -> list[list[Fraction]]:
        return [list(row) for row in self.pairing_matrix]


@dataclass(frozen=True)
class FibralDivisor:
    """A rational combination of the components of one fiber.

    Zero coefficients are dropped on construction, so equality is
    equality of divisors.
    """

    place_id: str
    coefficients: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {c: Fraction(v) for c, v in self.coefficients.items() if v != 0}
        object.__setattr__(self, "coefficients", cleaned)

    @classmethod
    def from_vector(cls, fiber: FiberModel, vector: Iterable[Fraction]) -> "FibralDivisor":
        return cls(fiber.place_id, dict(zip(fiber.component_ids, vector)))

    @classmethod
    def component(cls, fiber: FiberModel, component_id: str) -> "FibralDivisor":
        fiber.index(component_id)
        return cls(fiber.place_id, {component_id: Fraction(1)})

    def coefficient(self, component_id: str) -> Fraction:
        return self.coefficients.get(component_id, Fraction(0))

    def vector(self, fiber: FiberModel) -> list[Fraction]:
        if fiber.place_id != self.place_id:
            raise PlaceMismatchError(f"divisor on {self.place_id!r} used with fiber {fiber.place_id!r}")
        unknown = set(self.coefficients) - set(fiber.component_ids)
        if unknown:
            raise KeyError(f"components {sorted(unknown)} not in fiber {fiber.place_id!r}")
        return [self.coefficient(c) for c in fiber.component_ids]

    def is_zero(self) -> bool:
        return not self.coefficients

    def _check_place(self, other: "FibralDivisor") -> None:
        if other.place_id != self.place_id:
            raise PlaceMismatchError(f"cannot combine divisors on {self.place_id!r} and {other.place_id!r}")

    def __add__(self, other: "FibralDivisor") -> "FibralDivisor":
        self._check_place(other)
        keys = set(self.coefficients) | set(other.coefficients)
        return FibralDivisor(self.place_id, {k: self.coefficient(k) + other.coefficient(k) for k in keys})

    def __sub__(self, other: "FibralDivisor") -> "FibralDivisor":
        return self + (-1) * other

    def __mul__(self, scalar) -> "FibralDivisor":
        s = Fraction(scalar)
        return FibralDivisor(self.place_id, {k: s * v for k, v in self.coefficients.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "FibralDivisor":
        return -1 * self


@dataclass(frozen=True)
class HorizontalProfile:
    """A horizontal divisor seen through its generic degree and fiber pairings."""

    profile_id: str
    generic_degree: Fraction
    pairings: Mapping[str, Mapping[str, Fraction]]
    support: frozenset[str] = frozenset()

    def pairing(self, place_id: str, component_id: str) -> Fraction:
        try:
            return self.pairings[place_id][component_id]
        except KeyError:
            raise KeyError(f"profile {self.profile_id!r} undefined at {place_id}/{component_id}") from None

    def scaled(self, factor, profile_id: str | None = None) -> "HorizontalProfile":
        k = Fraction(factor)
        return HorizontalProfile(
            profile_id=profile_id or self.profile_id,
            generic_degree=k * self.generic_degree,
            pairings={v: {c: k * x for c, x in row.items()} for v, row in self.pairings.items()},
            support=self.support,
        )


ChoiceMap = Mapping[str, str]


@dataclass(frozen=True)
class SurfaceModel:
    name: str
    places: tuple[FiberModel, ...]
    class_group_torsion: bool
    ample: HorizontalProfile

    def fiber(self, place_id: str) -> FiberModel:
        for f in self.places:
            if f.place_id == place_id:
                return f
        raise KeyError(f"no place {place_id!r} on surface {self.name!r}")

    @property
    def place_ids(self) -> tuple[str, ...]:
        return tuple(f.place_id for f in self.places)

    @property
    def reducible_places(self) -> tuple[str, ...]:
        """Places whose fiber has at least two components, in ascending id order."""
        return tuple(sorted(f.place_id for f in self.places if f.is_reducible))


def fiber_vector(f: FiberModel) -> FibralDivisor:
    return FibralDivisor(f.place_id, {c: Fraction(n) for c, n in f.components})


def check_choice(s: SurfaceModel, choice: ChoiceMap, places: Iterable[str] | None = None) -> None:
    """Raise ValueError unless ``choice`` is defined exactly on ``places`` (default: all reducible places)."""
    expected = set(s.reducible_places if places is None else places)
    got = set(choice)
    if got != expected:
        missing, extra = sorted(expected - got), sorted(got - expected)
        raise ValueError(f"choice map mismatch: missing {missing}, extra {extra}")
    for v, c in choice.items():
        if c not in s.fiber(v).component_ids:
            raise ValueError(f"choice {v}={c}: no such component")


# --- document I/O -----------------------------------------------------------


def _rational(value: Any, locus: str) -> Fraction:
    try:
        return parse_rational(value)
    except NonRationalNumeral as exc:
        raise NonRationalError(str(exc), locus) from None


def _require(obj: Mapping, key: str, kind, locus: str):
    if not isinstance(obj, Mapping):
        raise SurfaceFormatError("expected an object", locus)
    if key not in obj:
        raise SurfaceFormatError(f"missing field {key!r}", locus)
    value = obj[key]
    if not isinstance(value, kind) or (kind is not bool and isinstance(value, bool)):
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise SurfaceFormatError(f"field {key!r} must be {names}", f"{locus}.{key}" if locus else key)
    return value


def _parse_fiber(obj: Mapping, locus: str) -> FiberModel:
    place_id = _require(obj, "id", str, locus)
    comps_raw = _require(obj, "components", list, locus)
    components: list[tuple[str, int]] = []
    seen: set[str] = set()
    for i, comp in enumerate(comps_raw):
        cl = f"{locus}.components[{i}]"
        cid = _require(comp, "id", str, cl)
        mult = _require(comp, "multiplicity", int, cl)
        if mult <= 0:
            raise SurfaceFormatError("multiplicity must be a positive integer", f"{cl}.multiplicity")
        if cid in seen:
            raise DuplicateIdentifierError(f"duplicate component id {cid!r}", f"{cl}.id")
        seen.add(cid)
        components.append((cid, mult))
    if not components:
        raise SurfaceFormatError("fiber has no components", f"{locus}.components")
    rows = _require(obj, "pairing", list, locus)
    n = len(components)
    if len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise SurfaceFormatError(f"pairing must be a {n}x{n} array", f"{locus}.pairing")
    matrix = tuple(
        tuple(_rational(x, f"{locus}.pairing[{i}][{j}]") for j, x in enumerate(row)) for i, row in enumerate(rows)
    )
    return FiberModel(place_id, tuple(components), matrix)


def _parse_profile(obj: Mapping, fibers: Mapping[str, FiberModel], locus: str) -> HorizontalProfile:
    pid = _require(obj, "id", str, locus)
    degree = _rational(_require(obj, "generic_degree", (str, int), locus), f"{locus}.generic_degree")
    raw = _require(obj, "pairings", dict, locus)
    pairings: dict[str, dict[str, Fraction]] = {}
    for v, row in raw.items():
        pl = f"{locus}.pairings.{v}"
        if v not in fibers:
            raise SurfaceFormatError(f"unknown place {v!r}", pl)
        if not isinstance(row, dict):
            raise SurfaceFormatError("expected an object", pl)
        for c in row:
            if c not in fibers[v].component_ids:
                raise SurfaceFormatError(f"unknown component {c!r}", f"{pl}.{c}")
        pairings[v] = {c: _rational(x, f"{pl}.{c}") for c, x in row.items()}
    support = _require(obj, "support", list, locus)
    if not all(isinstance(x, str) for x in support):
        raise SurfaceFormatError("support entries must be strings", f"{locus}.support")
    if len(set(support)) != len(support):
        raise DuplicateIdentifierError("duplicate support identifier", f"{locus}.support")
    return HorizontalProfile(pid, degree, pairings, frozenset(support))


def surface_from_dict(doc: Mapping) -> SurfaceModel:
    if not isinstance(doc, Mapping):
        raise SurfaceFormatError("top level must be an object", "$")
    name = _require(doc, "name", str, "")
    torsion = _require(doc, "class_group_torsion", bool, "")
    places_raw = _require(doc, "places", list, "")
    fibers: dict[str, FiberModel] = {}
    ordered = []
    for i, p in enumerate(places_raw):
        f = _parse_fiber(p, f"places[{i}]")
        if f.place_id in fibers:
            raise DuplicateIdentifierError(f"duplicate place id {f.place_id!r}", f"places[{i}].id")
        fibers[f.place_id] = f
        ordered.append(f)
    ample = _parse_profile(_require(doc, "ample", dict, ""), fibers, "ample")
    return SurfaceModel(name, tuple(ordered), torsion, ample)


def load_surface(text: str) -> SurfaceModel:
    """Parse a JSON surface document. All numerals are read exactly."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SurfaceFormatError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return surface_from_dict(doc)


def fiber_to_dict(f: FiberModel) -> dict:
    return {
        "id": f.place_id,
        "components": [{"id": c, "multiplicity": n} for c, n in f.components],
        "pairing": [[format_rational(x) for x in row] for row in f.pairing_matrix],
    }


def profile_to_dict(p: HorizontalProfile, place_order: Iterable[FiberModel] | None = None) -> dict:
    if place_order is None:
        pairings = {v: {c: format_rational(x) for c, x in row.items()} for v, row in p.pairings.items()}
    else:
        pairings = {}
        for f in place_order:
            if f.place_id in p.pairings:
                row = p.pairings[f.place_id]
                pairings[f.place_id] = {c: format_rational(row[c]) for c in f.component_ids if c in row}
    return {
        "id": p.profile_id,
        "generic_degree": format_rational(p.generic_degree),
        "pairings": pairings,
        "support": sorted(p.support),
    }


def surface_to_dict(s: SurfaceModel) -> dict:
    return {
        "name": s.name,
        "class_group_torsion": s.class_group_torsion,
        "places": [fiber_to_dict(f) for f in s.places],
        "ample": profile_to_dict(s.ample, s.places),
    }


def serialize_surface(s: SurfaceModel) -> str:
    """Canonical text form; ``load_surface`` inverts it exactly."""
    return json.dumps(surface_to_dict(s), indent=2) + "\n"
