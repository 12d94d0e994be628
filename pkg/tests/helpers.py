"""Random generators and independent oracles shared by the test modules.

The oracles here deliberately avoid the library's own linear algebra:
nullspaces come from fraction-free integer elimination, semidefiniteness
from brute-force evaluation on a grid, and form avoidance from plain
enumeration of every coefficient vector.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from fractions import Fraction

import numpy as np

from fibral.fibers import cycle_fiber, d4_fiber, irreducible_fiber
from fibral.model import FiberModel, HorizontalProfile, SurfaceModel, load_surface

# --- generators -------------------------------------------------------------


def rand_positive_rational(rng: random.Random, max_den: int = 12, max_num: int = 12) -> Fraction:
    return Fraction(rng.randint(1, max_num), rng.randint(1, max_den))


def random_kernel_matrix(rng: random.Random, t: int) -> list[list[Fraction]]:
    """Positive off-diagonal entries with denominators <= 12; diagonal forced by zero row sums."""
    if t == 1:
        return [[Fraction(0)]]
    w = [[Fraction(0)] * t for _ in range(t)]
    for i in range(t):
        for j in range(t):
            if i != j:
                w[i][j] = rand_positive_rational(rng)
        w[i][i] = -sum(w[i][j] for j in range(t) if j != i)
    return w


def random_fiber(rng: random.Random, size: int, place_id: str) -> FiberModel:
    """A valid fiber: connected support graph, positive multiplicities, G n = 0."""
    mult = [rng.randint(1, 3) for _ in range(size)]
    g = [[Fraction(0)] * size for _ in range(size)]
    order = list(range(size))
    rng.shuffle(order)
    edges = set()
    for k in range(1, size):
        a, b = order[k], order[rng.randrange(k)]
        edges.add((min(a, b), max(a, b)))
    for a in range(size):
        for b in range(a + 1, size):
            if rng.random() < 0.3:
                edges.add((a, b))
    for a, b in edges:
        x = Fraction(rng.randint(1, 4), rng.choice([1, 1, 2, 3]))
        g[a][b] = g[b][a] = x
    for i in range(size):
        g[i][i] = -sum(mult[j] * g[i][j] for j in range(size) if j != i) / mult[i]
    comps = tuple((f"C{i}", m) for i, m in enumerate(mult))
    return FiberModel(place_id, comps, tuple(tuple(r) for r in g))


def random_ample(rng: random.Random, fibers: list[FiberModel], profile_id: str = "D") -> HorizontalProfile:
    degree = Fraction(rng.randint(1, 12), rng.choice([1, 1, 2, 3]))
    pairings = {}
    for f in fibers:
        raw = [rand_positive_rational(rng, 4, 6) for _ in f.components]
        total = sum(n * x for (_, n), x in zip(f.components, raw))
        pairings[f.place_id] = {c: degree * x / total for (c, _), x in zip(f.components, raw)}
    return HorizontalProfile(profile_id, degree, pairings, frozenset({f"{profile_id}/P1", f"{profile_id}/P2"}))


def random_surface(rng: random.Random, idx: int, max_places: int = 4, max_size: int = 6, max_width: int | None = None) -> SurfaceModel:
    while True:
        k = rng.randint(1, max_places)
        fibers = []
        for p in range(k):
            place = f"p{p}"
            kind = rng.random()
            size = rng.randint(2, max_size)
            if kind < 0.15:
                fibers.append(irreducible_fiber(place, rng.randint(1, 3)))
            elif kind < 0.35:
                fibers.append(cycle_fiber(size, place))
            elif kind < 0.45 and max_size >= 5:
                fibers.append(d4_fiber(place))
            else:
                fibers.append(random_fiber(rng, size, place))
        width = math.prod(f.size for f in fibers if f.is_reducible)
        if max_width is None or width <= max_width:
            break
    return SurfaceModel(f"random-{idx}", tuple(fibers), True, random_ample(rng, fibers))


def i2_document() -> dict:
    return {
        "name": "i2",
        "class_group_torsion": True,
        "places": [
            {
                "id": "v",
                "components": [{"id": "C0", "multiplicity": 1}, {"id": "C1", "multiplicity": 1}],
                "pairing": [["-2", "2"], ["2", "-2"]],
            }
        ],
        "ample": {"id": "D", "generic_degree": "2", "pairings": {"v": {"C0": "1", "C1": "1"}}, "support": ["D/P"]},
    }


def i2_surface() -> SurfaceModel:
    return load_surface(json.dumps(i2_document()))


def irreducible_surface() -> SurfaceModel:
    fibers = [irreducible_fiber("a"), irreducible_fiber("b", 2)]
    amp = HorizontalProfile("D", Fraction(3), {"a": {"C0": Fraction(3)}, "b": {"C0": Fraction(3, 2)}}, frozenset({"D/P"}))
    return SurfaceModel("irr", tuple(fibers), True, amp)


# --- oracles ----------------------------------------------------------------


def _integer_rows(rows: list[list[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        lcd = math.lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * lcd) for x in row])
    return out


def nullspace_fraction_free(a: list[list[Fraction]]) -> list[list[Fraction]]:
    """Right nullspace of ``a`` via Bareiss fraction-free elimination over the integers."""
    m = _integer_rows(a)
    rows, cols = len(m), len(m[0]) if m else 0
    pivots = []
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                num, rem = divmod(m[r][c] * m[i][j] - m[i][c] * m[r][j], prev)
                assert rem == 0, "Bareiss division must be exact"
                m[i][j] = num
            m[i][c] = 0
        prev = m[r][c]
        pivots.append((r, c))
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in {pc for _, pc in pivots}]
    basis = []
    for fc in free:
        x = [Fraction(0)] * cols
        x[fc] = Fraction(1)
        for pr, pc in reversed(pivots):
            s = sum(Fraction(m[pr][j]) * x[j] for j in range(pc + 1, cols))
            x[pc] = -s / m[pr][pc]
        basis.append(x)
    return basis


def transpose_nullspace(w: list[list[Fraction]]) -> list[list[Fraction]]:
    return nullspace_fraction_free([list(col) for col in zip(*w)])


def proportional(x, y) -> bool:
    return all(x[i] * y[j] == x[j] * y[i] for i in range(len(x)) for j in range(len(x)))


GRID = np.arange(-6, 7)  # halves in [-3, 3], scaled by 2


def grid_semidefinite_verdict(matrix, multiplicities) -> bool:
    """True iff ``x^T G x <= 0`` on the grid and vanishes exactly on the fiber line there."""
    g = [[Fraction(x) for x in row] for row in matrix]
    n = len(g)
    lcd = math.lcm(*(x.denominator for row in g for x in row))
    gi = np.array([[int(x * lcd) for x in row] for row in g], dtype=np.int64)
    mult = np.array(multiplicities, dtype=np.int64)
    tail = np.array(list(itertools.product(GRID, repeat=n - 1)), dtype=np.int64).reshape(-1, n - 1)
    for head in GRID:
        x = np.hstack([np.full((tail.shape[0], 1), head, dtype=np.int64), tail])
        q = np.einsum("ij,jk,ik->i", x, gi, x)
        if (q > 0).any():
            return False
        on_line = np.ones(x.shape[0], dtype=bool)
        for i in range(n):
            for j in range(i + 1, n):
                on_line &= x[:, i] * mult[j] == x[:, j] * mult[i]
        if not np.array_equal(q == 0, on_line):
            return False
    return True


def brute_monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def some_form_avoids(q: int, nvars: int, degree: int, points: list[tuple[int, ...]]) -> bool:
    """Does any nonzero degree-``degree`` form avoid all ``points``? Full enumeration."""
    monos = brute_monomials(nvars, degree)
    values = [[math.prod(pow(x, k, q) for x, k in zip(p, e)) % q for e in monos] for p in points]
    for coeffs in itertools.product(range(q), repeat=len(monos)):
        if not any(coeffs):
            continue
        if all(sum(c * v for c, v in zip(coeffs, row)) % q for row in values):
            return True
    return False
