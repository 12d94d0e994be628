"""Exact rational helpers: parsing, formatting and small dense linear algebra.

Everything here works on :class:`fractions.Fraction`; floats are never
accepted, since every certificate downstream relies on exact equality.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

Matrix = list[list[Fraction]]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class NonRationalNumeral(ValueError):
    """A numeral that is not an integer or ``p/q`` string (e.g. ``"0.5"``)."""


def parse_rational(value: object) -> Fraction:
    """Parse an integer or a ``"p/q"`` string into a Fraction.

    Booleans, floats and decimal strings are rejected.
    """
    if isinstance(value, bool):
        raise NonRationalNumeral(f"boolean is not a rational numeral: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value)
        if match:
            num, den = match.groups()
            if den is not None and int(den) == 0:
                raise NonRationalNumeral(f"zero denominator in {value!r}")
            return Fraction(int(num), int(den) if den else 1)
    raise NonRationalNumeral(f"not a rational numeral (use 'p/q' or an integer): {value!r}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, Fraction(v).denominator)
    return out


def to_matrix(rows: Sequence[Sequence[object]]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_vec(a: Matrix, x: Sequence[Fraction]) -> list[Fraction]:
    return [sum((aij * xj for aij, xj in zip(row, x)), Fraction(0)) for row in a]


def vec_mat(x: Sequence[Fraction], a: Matrix) -> list[Fraction]:
    """Row vector times matrix: ``x^T A``."""
    if not a:
        return []
    return [sum((xi * a[i][j] for i, xi in enumerate(x)), Fraction(0)) for j in range(len(a[0]))]


def bilinear(x: Sequence[Fraction], a: Matrix, y: Sequence[Fraction]) -> Fraction:
    return sum((xi * v for xi, v in zip(x, mat_vec(a, y))), Fraction(0))


def submatrix(a: Matrix, drop: int) -> Matrix:
    """Delete row and column ``drop``."""
    return [[v for j, v in enumerate(row) if j != drop] for i, row in enumerate(a) if i != drop]


def leading_principal_minors(a: Matrix) -> list[Fraction]:
    """All leading principal minors of ``a``, computed by one Gaussian sweep.

    Uses the fact that without pivoting the k-th minor is the product of
    the first k pivots; once a zero pivot appears, the remaining minors are
    computed directly by cofactor-free elimination on each leading block.
    """
    n = len(a)
    work = [row[:] for row in a]
    minors: list[Fraction] = []
    running = Fraction(1)
    for k in range(n):
        pivot = work[k][k]
        if pivot == 0:
            # rare path: fall back to an explicit determinant per block
            minors.extend(determinant([row[:j] for row in a[:j]]) for j in range(k + 1, n + 1))
            return minors
        running *= pivot
        minors.append(running)
        for i in range(k + 1, n):
            factor = work[i][k] / pivot
            if factor:
                for j in range(k, n):
                    work[i][j] -= factor * work[k][j]
    return minors


def determinant(a: Matrix) -> Fraction:
    n = len(a)
    work = [row[:] for row in a]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if work[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            work[k], work[piv] = work[piv], work[k]
            det = -det
        det *= work[k][k]
        for i in range(k + 1, n):
            factor = work[i][k] / work[k][k]
            if factor:
                for j in range(k, n):
                    work[i][j] -= factor * work[k][j]
    return det


class SingularSystem(ArithmeticError):
    pass


def solve(a: Matrix, b: Sequence[Fraction]) -> list[Fraction]:
    """Solve ``a x = b`` for square nonsingular ``a`` by Gauss-Jordan elimination."""
    n = len(a)
    aug = [list(row) + [Fraction(bi)] for row, bi in zip(a, b)]
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise SingularSystem(f"singular matrix at column {k}")
        aug[k], aug[piv] = aug[piv], aug[k]
        inv = 1 / aug[k][k]
        aug[k] = [v * inv for v in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                factor = aug[i][k]
                aug[i] = [vi - factor * vk for vi, vk in zip(aug[i], aug[k])]
    return [row[n] for row in aug]
