"""Positive row-kernel vectors for zero-row-sum matrices with a fixed sign pattern.

Given a square rational matrix whose diagonal is negative, whose
off-diagonal is positive and whose rows each sum to zero, some strictly
positive combination of the rows vanishes. :func:`positive_row_kernel`
finds one by eliminating the last row and recursing on a smaller matrix
of the same kind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import Matrix, to_matrix


class KernelHypothesisError(ValueError):
    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("; ".join(violations))


@dataclass(frozen=True)
class KernelProblem:
    size: int
    entries: tuple[tuple[Fraction, ...], ...]

    def matrix(self) -> Matrix:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class PositiveKernelVector:
    weights: tuple[Fraction, ...]

    @property
    def integer_weights(self) -> tuple[int, ...]:
        """Smallest positive integer vector on the same ray."""
        lcd = 1
        for w in self.weights:
            lcd = math.lcm(lcd, w.denominator)
        ints = [int(w * lcd) for w in self.weights]
        g = math.gcd(*ints)
        return tuple(x // g for x in ints)


def hypothesis_violations(w: Sequence[Sequence[Fraction]]) -> list[str]:
    t = len(w)
    if t == 0 or any(len(row) != t for row in w):
        return ["matrix is not square and non-empty"]
    out = []
    if t == 1:
        if w[0][0] != 0:
            out.append("1x1 matrix must be zero (row-sum violation at row 1)")
        return out
    for i in range(t):
        for j in range(t):
            x = w[i][j]
            if (i == j and not x < 0) or (i != j and not x > 0):
                out.append(f"sign violation at ({i + 1},{j + 1})")
    for i, row in enumerate(w):
        if sum(row, Fraction(0)) != 0:
            out.append(f"row-sum violation at row {i + 1}")
    return out


def verify_kernel_hypotheses(w: Sequence[Sequence[object]]) -> KernelProblem:
    m = to_matrix(w)
    bad = hypothesis_violations(m)
    if bad:
        raise KernelHypothesisError(bad)
    return KernelProblem(len(m), tuple(tuple(r) for r in m))


def reduce_problem(p: KernelProblem) -> tuple[KernelProblem, list[Fraction]]:
    """One elimination step for ``size >= 3``.

    Rows are rescaled to diagonal -1, then a multiple of the last row is
    added to each other row to clear the last column. Returns the
    ``(t-1) x (t-1)`` leading block (re-validated) and the row scale
    factors used.
    """
    t = p.size
    if t < 3:
        raise ValueError("reduction applies to size >= 3")
    w = p.entries
    scale = [-1 / w[i][i] for i in range(t)]
    r = [[scale[i] * x for x in w[i]] for i in range(t)]
    last = r[t - 1]
    reduced = [[r[i][j] + r[i][t - 1] * last[j] for j in range(t - 1)] for i in range(t - 1)]
    try:
        return verify_kernel_hypotheses(reduced), scale
    except KernelHypothesisError as exc:  # pragma: no cover - would contradict the sign argument
        raise AssertionError(f"reduced matrix lost the kernel hypotheses: {exc}") from None


def _solve(p: KernelProblem) -> list[Fraction]:
    t = p.size
    w = p.entries
    if t == 1:
        return [Fraction(1)]
    if t == 2:
        # rows (-a, a) and (b, -b): b * row1 + a * row2 = 0
        return [w[1][0], w[0][1]]
    sub, scale = reduce_problem(p)
    b = _solve(sub)
    last_col = [scale[i] * w[i][t - 1] for i in range(t - 1)]
    coeffs = b + [sum((bi * ci for bi, ci in zip(b, last_col)), Fraction(0))]
    return [c * s for c, s in zip(coeffs, scale)]


def positive_row_kernel(p: KernelProblem) -> PositiveKernelVector:
    weights = _solve(p)
    if not all(a > 0 for a in weights):  # pragma: no cover
        raise AssertionError("non-positive weight produced")
    return PositiveKernelVector(tuple(weights))
