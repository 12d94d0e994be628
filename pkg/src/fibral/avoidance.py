"""Homogeneous forms over small prime fields that avoid a finite point set.

Points of projective m-space over F_q are stored with their first nonzero
coordinate equal to 1. :func:`find_avoiding_form` searches degree by
degree, enumerating coefficient vectors in a fixed order, so the first
form found has the least possible degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

MAX_PRIME = 13
MAX_DIMENSION = 3
DEFAULT_MAX_CANDIDATES = 5_000_000


class AvoidanceError(ValueError):
    pass


class SearchLimitError(AvoidanceError):
    """The search space at the next degree exceeds the configured guard."""


def is_prime(q: int) -> bool:
    return q >= 2 and all(q % p for p in range(2, int(q**0.5) + 1))


@dataclass(frozen=True)
class ProjectivePoint:
    prime: int
    coords: tuple[int, ...]

    def __post_init__(self):
        q = self.prime
        c = tuple(x % q for x in self.coords)
        lead = next((x for x in c if x), None)
        if lead is None:
            raise AvoidanceError("projective point cannot have all coordinates zero")
        inv = pow(lead, -1, q)
        object.__setattr__(self, "coords", tuple(x * inv % q for x in c))

    @property
    def dimension(self) -> int:
        return len(self.coords) - 1

    def __str__(self) -> str:
        return "(" + ":".join(map(str, self.coords)) + ")"


def all_points(q: int, m: int) -> list[ProjectivePoint]:
    """Every point of P^m(F_q), in canonical order."""
    pts = []
    for lead in range(m + 1):
        for tail in itertools.product(range(q), repeat=m - lead):
            pts.append(ProjectivePoint(q, (0,) * lead + (1,) + tail))
    return pts


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total ``degree``, lexicographically descending (x0^n first)."""
    out = []

    def rec(prefix: list[int], remaining: int, slots: int):
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + [e], remaining - e, slots - 1)

    rec([], degree, nvars)
    return out


@dataclass(frozen=True)
class HomogeneousForm:
    prime: int
    variables: int
    degree: int
    coefficients: Mapping[tuple[int, ...], int]

    def __post_init__(self):
        coeffs = {e: c % self.prime for e, c in self.coefficients.items() if c % self.prime}
        if not coeffs:
            raise AvoidanceError("form has no nonzero coefficient")
        for e in coeffs:
            if len(e) != self.variables or sum(e) != self.degree:
                raise AvoidanceError(f"monomial {e} is not of degree {self.degree} in {self.variables} variables")
        object.__setattr__(self, "coefficients", coeffs)

    def __str__(self) -> str:
        terms = []
        for e in monomials(self.variables, self.degree):
            c = self.coefficients.get(e)
            if not c:
                continue
            factors = [f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k]
            mono = "*".join(factors)
            terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)


def evaluate_form(f: HomogeneousForm, p: ProjectivePoint) -> int:
    if f.prime != p.prime or f.variables != len(p.coords):
        raise AvoidanceError("form and point disagree on field or number of variables")
    q = f.prime
    total = 0
    for e, c in f.coefficients.items():
        term = c
        for x, k in zip(p.coords, e):
            term = term * pow(x, k, q) % q
        total += term
    return total % q


def iter_forms(q: int, nvars: int, degree: int) -> Iterator[HomogeneousForm]:
    """Degree-``degree`` forms up to scalars: coefficient tuples whose first nonzero entry is 1."""
    monos = monomials(nvars, degree)
    for coeffs in itertools.product(range(q), repeat=len(monos)):
        lead = next((c for c in coeffs if c), 0)
        if lead != 1:
            continue
        yield HomogeneousForm(q, nvars, degree, dict(zip(monos, coeffs)))


def _check_args(q: int, m: int, points: Sequence[ProjectivePoint]) -> None:
    if not is_prime(q) or q > MAX_PRIME:
        raise AvoidanceError(f"q must be a prime <= {MAX_PRIME}, got {q}")
    if not 1 <= m <= MAX_DIMENSION:
        raise AvoidanceError(f"m must be in 1..{MAX_DIMENSION}, got {m}")
    for p in points:
        if p.prime != q or p.dimension != m:
            raise AvoidanceError(f"point {p} does not lie in P^{m}(F_{q})")


def find_avoiding_form(
    q: int,
    m: int,
    points: Iterable[ProjectivePoint],
    *,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> HomogeneousForm:
    pts = sorted(set(points), key=lambda p: p.coords)
    _check_args(q, m, pts)
    degree = 1
    while True:
        monos = monomials(m + 1, degree)
        space = q ** len(monos)
        if space > max_candidates:
            raise SearchLimitError(f"degree {degree} search space has {space} candidates (limit {max_candidates})")
        # monomial values at each point, so candidates are checked by dot products
        table = [[_monomial_value(p.coords, e, q) for e in monos] for p in pts]
        for coeffs in itertools.product(range(q), repeat=len(monos)):
            if next((c for c in coeffs if c), 0) != 1:
                continue
            if all(sum(c * v for c, v in zip(coeffs, row)) % q for row in table):
                return HomogeneousForm(q, m + 1, degree, dict(zip(monos, coeffs)))
        degree += 1


def _monomial_value(coords: Sequence[int], exponents: Sequence[int], q: int) -> int:
    out = 1
    for x, k in zip(coords, exponents):
        out = out * pow(x, k, q) % q
    return out
