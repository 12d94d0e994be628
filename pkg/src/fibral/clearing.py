"""Clearing vertical components place by place.

Starting from one synthesized witness per full choice of components,
:func:`clear` works up through the reducible places in ascending id order.
At each place ``v0`` it combines the witnesses for every choice of
component there with positive integer weights taken from
:func:`~fibral.kernel.positive_row_kernel`; the combined vertical part at
``v0`` pairs to zero with every component, hence is a rational multiple
of the fiber, and is removed by scaling (the multiple of the fiber is the
divisor of a constant once the class group of the base is torsion).
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .exact import format_rational
from .kernel import KernelHypothesisError, positive_row_kernel, verify_kernel_hypotheses
from .model import ChoiceMap, FibralDivisor, HorizontalProfile, SurfaceModel, fiber_vector, serialize_surface
from .pairing import pair_fibral, pairing_values
from .validation import ValidationReport, validate_surface
from .witness import (
    LogStep,
    Witness,
    WitnessError,
    _sign_pattern,
    check_disjoint_effective,
    check_vertical_common,
    integrality_scale,
    path_id,
    synthesize_witness,
    witness_from_dict,
)

DEFAULT_MAX_WIDTH = 10**6

AMPLENESS_NOTE = (
    "D2 has the support of the ample divisor; replacing both divisors by a suitable positive "
    "multiple makes them ample (recorded, not computed)"
)


class ClearingError(RuntimeError):
    pass


class TorsionHypothesisError(ClearingError):
    def __init__(self):
        super().__init__(
            "class_group_torsion is false: the base class group must be torsion so that fiber "
            "multiples are principal; refusing to clear"
        )


class WidthGuardError(ClearingError):
    pass


class PrincipalFiberError(ClearingError):
    pass


def recursion_width(s: SurfaceModel, places: Iterable[str]) -> int:
    return math.prod(s.fiber(v).size for v in places)


def _merge_profiles(parts: list[tuple[int, HorizontalProfile]], profile_id: str, support: frozenset[str]) -> HorizontalProfile:
    degree = sum((a * p.generic_degree for a, p in parts), Fraction(0))
    pairings: dict[str, dict[str, Fraction]] = {}
    for a, p in parts:
        for v, row in p.pairings.items():
            acc = pairings.setdefault(v, {})
            for c, x in row.items():
                acc[c] = acc.get(c, Fraction(0)) + a * x
    return HorizontalProfile(profile_id, degree, pairings, support)


def _concat_logs(witnesses: Iterable[Witness]) -> tuple[LogStep, ...]:
    out: list[LogStep] = []
    for w in witnesses:
        out.extend(w.log)
    return tuple(out)


def kernel_matrix(s: SurfaceModel, v0: str, parts: Mapping[str, Witness]) -> list[list[Fraction]]:
    """``W[C][C'] = <E_{C,v0}, n(C') C'>`` with rows and columns in fiber order."""
    f = s.fiber(v0)
    rows = []
    for c in f.component_ids:
        e = parts[c].vertical_at(v0)
        rows.append([mult * pair_fibral(f, e, FibralDivisor.component(f, cp)) for cp, mult in f.components])
    return rows


def combine_witnesses(
    s: SurfaceModel,
    v0: str,
    parts: Mapping[str, Witness],
    weights: Mapping[str, int],
    witness_id: str | None = None,
    preceding: tuple[LogStep, ...] = (),
) -> Witness:
    """Weighted sum ``sum_C a_C div(h_C)`` of the witnesses indexed by the components at ``v0``."""
    f = s.fiber(v0)
    keys = list(f.component_ids)
    if set(parts) != set(keys) or set(weights) != set(keys):
        raise ClearingError(f"parts/weights must be keyed by the components of {v0!r}: {keys}")
    if any(not isinstance(weights[c], int) or weights[c] <= 0 for c in keys):
        raise ClearingError("weights must be positive integers")

    ordered = [parts[c] for c in keys]
    supports_d1 = [w.d1.support for w in ordered]
    d2_support = frozenset().union(*(w.d2.support for w in ordered))
    seen: set[str] = set()
    for sup in supports_d1:
        if sup & seen or sup & d2_support:
            raise ClearingError(f"support collision while combining at {v0!r}: {sorted(sup & (seen | d2_support))}")
        seen |= sup

    base_choice = {k: v for k, v in ordered[0].choice.items() if k != v0}
    for w in ordered:
        if {k: v for k, v in w.choice.items() if k != v0} != base_choice:
            raise ClearingError("parts disagree on the choice map away from the combined place")

    wid = witness_id or path_id(base_choice) + "+sum"
    d1 = _merge_profiles([(weights[c], parts[c].d1) for c in keys], f"{wid}/D1", frozenset(seen))
    d2 = _merge_profiles([(weights[c], parts[c].d2) for c in keys], f"{wid}/D2", d2_support)
    places = sorted(set().union(*(w.vertical for w in ordered)))
    vertical = {}
    for v in places:
        acc = FibralDivisor(v)
        for c in keys:
            acc = acc + weights[c] * parts[c].vertical_at(v)
        vertical[v] = acc
    n = sum(weights[c] * parts[c].n for c in keys)
    degree = sum((weights[c] * parts[c].degree for c in keys), Fraction(0))
    w = Witness(wid, base_choice, n, d1, d2, vertical, degree, integrality_scale(s, vertical))
    step = LogStep(
        "combine",
        wid,
        {"place": v0, "parts": {c: parts[c].witness_id for c in keys}, "weights": {c: weights[c] for c in keys}},
        {"witness": w.data_dict(s)},
    )
    return Witness(wid, base_choice, n, d1, d2, vertical, degree, w.scale, _concat_logs(ordered) + preceding + (step,))


def fiber_multiple(s: SurfaceModel, e: FibralDivisor) -> Fraction:
    """The rational ``r`` with ``e = r * fiber``; raises if ``e`` is not orthogonal to the fiber."""
    f = s.fiber(e.place_id)
    vals = pairing_values(f, e)
    nonzero = {c: x for c, x in vals.items() if x != 0}
    if nonzero:
        c, x = next(iter(nonzero.items()))
        raise PrincipalFiberError(f"vertical part at {e.place_id!r} pairs to {format_rational(x)} with {c}")
    c0, n0 = f.components[0]
    r = e.coefficient(c0) / n0
    if e != r * fiber_vector(f):
        raise PrincipalFiberError(
            f"vertical part at {e.place_id!r} is orthogonal to every component but not a fiber multiple; "
            "the fiber form certificate is inconsistent"
        )
    return r


def remove_principal_fiber(s: SurfaceModel, w: Witness, v0: str, witness_id: str | None = None) -> tuple[Witness, int]:
    """Drop ``E_{v0} = r * fiber`` after scaling everything by ``d = denominator(r)``."""
    if not s.class_group_torsion:
        raise TorsionHypothesisError()
    r = fiber_multiple(s, w.vertical_at(v0))
    d = r.denominator
    wid = witness_id or w.witness_id
    vertical = {v: d * e for v, e in w.vertical.items() if v != v0}
    d1 = w.d1.scaled(d, f"{wid}/D1")
    d2 = w.d2.scaled(d, f"{wid}/D2")
    out = Witness(wid, w.choice, w.n * d, d1, d2, vertical, d * w.degree, integrality_scale(s, vertical))
    step = LogStep(
        "remove_fiber",
        wid,
        {"place": v0, "source": w.witness_id},
        {
            "fiber_multiple": format_rational(r),
            "d": d,
            "constant": f"a[{wid}@{v0}]: div(a) = {d} * ({format_rational(r)}) * fiber({v0})",
            "witness": out.data_dict(s),
        },
    )
    return Witness(wid, w.choice, out.n, d1, d2, vertical, out.degree, out.scale, w.log + (step,)), d


def _check_clear_args(s: SurfaceModel, m_prime: Iterable[str], c0: ChoiceMap, max_width: int) -> frozenset[str]:
    if not s.class_group_torsion:
        raise TorsionHypothesisError()
    mp = frozenset(m_prime)
    M = set(s.reducible_places)
    if not mp <= M:
        raise ClearingError(f"places {sorted(mp - M)} are not reducible")
    if set(c0) != mp:
        raise ClearingError("the choice map must be defined exactly on the given places")
    for v, c in c0.items():
        if c not in s.fiber(v).component_ids:
            raise ClearingError(f"choice {v}={c}: no such component")
    width = recursion_width(s, M - mp)
    if width > max_width:
        raise WidthGuardError(f"recursion width {width} exceeds the guard {max_width}")
    return mp


def clear(
    s: SurfaceModel,
    m_prime: Iterable[str] = (),
    c0: ChoiceMap | None = None,
    *,
    max_width: int = DEFAULT_MAX_WIDTH,
) -> Witness:
    """Witness with vertical parts only on ``m_prime``, with the sign pattern fixed by ``c0`` there."""
    c0 = dict(c0 or {})
    mp = _check_clear_args(s, m_prime, c0, max_width)
    return _clear(s, mp, c0)


def _clear(s: SurfaceModel, mp: frozenset[str], c0: dict[str, str]) -> Witness:
    rest = sorted(set(s.reducible_places) - mp)
    if not rest:
        return synthesize_witness(s, c0, 1, witness_id=path_id(c0))
    v0 = rest[0]
    f = s.fiber(v0)
    parts = {c: _clear(s, mp | {v0}, {**c0, v0: c}) for c in f.component_ids}

    matrix = kernel_matrix(s, v0, parts)
    try:
        problem = verify_kernel_hypotheses(matrix)
    except KernelHypothesisError as exc:
        raise ClearingError(f"kernel matrix at {v0!r} violates the sign/row-sum hypotheses: {exc}") from None
    kv = positive_row_kernel(problem)
    weights = dict(zip(f.component_ids, kv.integer_weights))

    sum_id = path_id(c0) + "+sum"
    kstep = LogStep(
        "kernel",
        sum_id,
        {"place": v0, "parts": {c: parts[c].witness_id for c in f.component_ids}},
        {
            "matrix": [[format_rational(x) for x in row] for row in matrix],
            "weights": [format_rational(x) for x in kv.weights],
            "integer_weights": list(kv.integer_weights),
        },
    )
    combined = combine_witnesses(s, v0, parts, weights, witness_id=sum_id, preceding=(kstep,))
    result, _ = remove_principal_fiber(s, combined, v0, witness_id=path_id(c0))
    return result


def check_clearing_witness(s: SurfaceModel, w: Witness, m_prime: Iterable[str], c0: ChoiceMap) -> ValidationReport:
    """Conditions a cleared witness must meet: disjoint effective horizontal parts,
    ``D2`` an ample multiple, principality, vertical support inside ``m_prime``,
    and the strict sign pattern chosen by ``c0``."""
    report = ValidationReport()
    check_disjoint_effective(s, w, report, "clear")
    check_vertical_common(s, w, report, "clear", set(m_prime))
    report.add("clear.vertical-signs", *_sign_pattern(s, w, c0, weighted=False))
    return report


# --- certificate ------------------------------------------------------------


def surface_digest(s: SurfaceModel) -> str:
    return hashlib.sha256(serialize_surface(s).encode()).hexdigest()


@dataclass(frozen=True)
class MorphismCertificate:
    surface: str
    surface_digest: str
    final_witness: Witness
    recursion_width: int
    places_cleared: tuple[str, ...]
    notes: tuple[str, ...] = field(default=(AMPLENESS_NOTE,))

    @property
    def degree(self) -> Fraction:
        return self.final_witness.degree

    @property
    def log(self):
        return self.final_witness.log

    @property
    def disjointness(self) -> dict:
        w = self.final_witness
        return {
            "d1_support": sorted(w.d1.support),
            "d2_support": sorted(w.d2.support),
            "intersection": sorted(w.d1.support & w.d2.support),
        }

    def to_dict(self, s: SurfaceModel | None = None) -> dict:
        w = self.final_witness
        return {
            "surface": self.surface,
            "surface_digest": self.surface_digest,
            "degree": format_rational(self.degree),
            "recursion_width": self.recursion_width,
            "places_cleared": list(self.places_cleared),
            "disjointness": self.disjointness,
            "final_witness": w.data_dict(s),
            "log": [step.to_dict() for step in w.log],
            "notes": list(self.notes),
        }

    def to_json(self, s: SurfaceModel | None = None) -> str:
        return json.dumps(self.to_dict(s), indent=2) + "\n"


def certificate_from_dict(d: Mapping) -> MorphismCertificate:
    wd = dict(d["final_witness"])
    wd["log"] = d.get("log", [])
    return MorphismCertificate(
        surface=d["surface"],
        surface_digest=d["surface_digest"],
        final_witness=witness_from_dict(wd),
        recursion_width=int(d["recursion_width"]),
        places_cleared=tuple(d["places_cleared"]),
        notes=tuple(d.get("notes", ())),
    )


def prove_theorem(s: SurfaceModel, *, max_width: int = DEFAULT_MAX_WIDTH, validate: bool = True) -> MorphismCertificate:
    """Run the clearing from the empty set of places and package the result."""
    if not s.class_group_torsion:
        raise TorsionHypothesisError()
    if validate:
        report = validate_surface(s)
        if not report.ok:
            raise ClearingError("surface fails validation:\n" + "\n".join(c.line() for c in report.failures()))
    w = clear(s, (), {}, max_width=max_width)
    if w.vertical:
        raise ClearingError(f"vertical parts remain at {sorted(w.vertical)}")
    if w.d1.support & w.d2.support:
        raise ClearingError("final horizontal divisors share support")
    if w.d1.generic_degree != w.d2.generic_degree:
        raise ClearingError("final horizontal divisors have different degrees")
    final = check_clearing_witness(s, w, (), {})
    if not final.ok:
        raise ClearingError("final witness fails its checks:\n" + final.format())
    note = LogStep("note", w.witness_id, {}, {"text": AMPLENESS_NOTE})
    w = Witness(w.witness_id, w.choice, w.n, w.d1, w.d2, w.vertical, w.degree, w.scale, w.log + (note,))
    return MorphismCertificate(
        surface=s.name,
        surface_digest=surface_digest(s),
        final_witness=w,
        recursion_width=recursion_width(s, s.reducible_places),
        places_cleared=s.reducible_places,
    )
