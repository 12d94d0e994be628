"""Principal-divisor witnesses: a horizontal pair plus vertical corrections.

A :class:`Witness` records the pairing data that the divisor of a function
``h`` must have when ``div(h) = D1 - D2 + sum_v E_v``: the two horizontal
profiles and one fibral divisor per reducible place. Nothing here builds
``h`` itself; the witness carries the numbers that any such ``h`` forces,
computed by exact linear solves against each fiber form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .exact import SingularSystem, format_rational, lcm_of_denominators, parse_rational, solve, submatrix
from .model import (
    ChoiceMap,
    FibralDivisor,
    HorizontalProfile,
    SurfaceModel,
    check_choice,
    profile_to_dict,
)
from .pairing import pair_horizontal, pairing_values
from .validation import ValidationReport


class WitnessError(ValueError):
    pass


@dataclass(frozen=True)
class LogStep:
    """One replayable step: what ran, on which earlier results, and what it produced."""

    op: str
    target: str
    inputs: Mapping[str, Any] = field(default_factory=dict)
    outputs: Mapping[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"op": self.op, "target": self.target, "inputs": dict(self.inputs), "outputs": dict(self.outputs)}

    @classmethod
    def from_dict(cls, d: Mapping) -> "LogStep":
        return cls(d["op"], d["target"], dict(d.get("inputs", {})), dict(d.get("outputs", {})))


ConstructionLog = tuple[LogStep, ...]


@dataclass(frozen=True)
class Witness:
    witness_id: str
    choice: Mapping[str, str]
    n: int  # d2 = n * ample
    d1: HorizontalProfile
    d2: HorizontalProfile
    vertical: Mapping[str, FibralDivisor]
    degree: Fraction
    scale: int
    log: ConstructionLog = ()

    def vertical_at(self, place_id: str) -> FibralDivisor:
        return self.vertical.get(place_id, FibralDivisor(place_id))

    def data_dict(self, s: SurfaceModel | None = None) -> dict:
        """Serializable form without the log. With ``s``, entries follow the surface's order."""
        order = s.places if s is not None else None
        if s is not None:
            vertical = {
                f.place_id: {c: format_rational(self.vertical[f.place_id].coefficient(c)) for c in f.component_ids}
                for f in s.places
                if f.place_id in self.vertical
            }
        else:
            vertical = {v: {c: format_rational(x) for c, x in e.coefficients.items()} for v, e in self.vertical.items()}
        return {
            "id": self.witness_id,
            "choice": dict(sorted(self.choice.items())),
            "n": self.n,
            "degree": format_rational(self.degree),
            "scale": self.scale,
            "d1": profile_to_dict(self.d1, order),
            "d2": profile_to_dict(self.d2, order),
            "vertical": vertical,
        }

    def to_dict(self, s: SurfaceModel | None = None) -> dict:
        out = self.data_dict(s)
        out["log"] = [step.to_dict() for step in self.log]
        return out


def _profile_from_dict(d: Mapping) -> HorizontalProfile:
    return HorizontalProfile(
        profile_id=d["id"],
        generic_degree=parse_rational(d["generic_degree"]),
        pairings={v: {c: parse_rational(x) for c, x in row.items()} for v, row in d["pairings"].items()},
        support=frozenset(d["support"]),
    )


def witness_from_dict(d: Mapping) -> Witness:
    return Witness(
        witness_id=d["id"],
        choice=dict(d["choice"]),
        n=int(d["n"]),
        d1=_profile_from_dict(d["d1"]),
        d2=_profile_from_dict(d["d2"]),
        vertical={v: FibralDivisor(v, {c: parse_rational(x) for c, x in row.items()}) for v, row in d["vertical"].items()},
        degree=parse_rational(d["degree"]),
        scale=int(d["scale"]),
        log=tuple(LogStep.from_dict(x) for x in d.get("log", [])),
    )


def path_id(choice: ChoiceMap, n: int = 1) -> str:
    body = ",".join(f"{v}={c}" for v, c in sorted(choice.items()))
    return f"h[{body}]" + (f"^{n}" if n != 1 else "")


def integrality_scale(s: SurfaceModel, vertical: Mapping[str, FibralDivisor]) -> int:
    """Least common denominator of all vertical coefficients and their pairing values."""
    values: list[Fraction] = []
    for v, e in vertical.items():
        values.extend(e.coefficients.values())
        values.extend(pairing_values(s.fiber(v), e).values())
    return lcm_of_denominators(values)


def solve_vertical(s: SurfaceModel, place_id: str, target: Mapping[str, Fraction], anchor: str) -> FibralDivisor:
    """Solve ``<E, C> = target[C]`` for all components, with ``E``'s coefficient at ``anchor`` set to 0."""
    f = s.fiber(place_id)
    k = f.index(anchor)
    g = f.matrix()
    rhs = [target[c] for c in f.component_ids]
    restricted = submatrix(g, k)
    try:
        x = solve(restricted, rhs[:k] + rhs[k + 1 :])
    except SingularSystem as exc:
        raise WitnessError(f"fiber {place_id!r}: restricted form is singular ({exc})") from None
    x.insert(k, Fraction(0))
    e = FibralDivisor.from_vector(f, x)
    got = pairing_values(f, e)
    if any(got[c] != target[c] for c in f.component_ids):
        raise WitnessError(f"fiber {place_id!r}: target is not orthogonal to the fiber line; inconsistent data")
    return e


def synthesize_witness(s: SurfaceModel, choice: ChoiceMap, n: int = 1, witness_id: str | None = None) -> Witness:
    """Build the witness for one choice of component at each reducible place.

    ``D1`` meets only the chosen component at each reducible place (with
    pairing ``m / n_C`` there), ``D2 = n * ample``, and each ``E_v`` is the
    fibral divisor whose pairings restore principality, normalized to have
    coefficient 0 at the chosen component.
    """
    if not isinstance(n, int) or n <= 0:
        raise WitnessError(f"n must be a positive integer, got {n!r}")
    try:
        check_choice(s, choice)
    except ValueError as exc:
        raise WitnessError(str(exc)) from None
    wid = witness_id or path_id(choice, n)
    amp = s.ample
    m = n * amp.generic_degree

    d1_pairings: dict[str, dict[str, Fraction]] = {}
    for f in s.places:
        if f.is_reducible:
            chosen = choice[f.place_id]
            d1_pairings[f.place_id] = {
                c: (m / mult if c == chosen else Fraction(0)) for c, mult in f.components
            }
        else:
            c, mult = f.components[0]
            d1_pairings[f.place_id] = {c: m / mult}
    d1 = HorizontalProfile(f"{wid}/D1", m, d1_pairings, frozenset({f"{wid}/H1"}))
    d2 = amp.scaled(n, f"{wid}/D2")

    vertical = {}
    for v in s.reducible_places:
        f = s.fiber(v)
        target = {c: n * amp.pairing(v, c) - d1_pairings[v][c] for c in f.component_ids}
        vertical[v] = solve_vertical(s, v, target, choice[v])

    w = Witness(wid, dict(choice), n, d1, d2, vertical, m, integrality_scale(s, vertical))
    step = LogStep("synthesize", wid, {"choice": dict(sorted(choice.items())), "n": n}, {"witness": w.data_dict(s)})
    return _with_log(w, (step,))


def _with_log(w: Witness, log: ConstructionLog) -> Witness:
    return Witness(w.witness_id, w.choice, w.n, w.d1, w.d2, w.vertical, w.degree, w.scale, log)


# --- verification -----------------------------------------------------------


def _pair_d(p: HorizontalProfile, s: SurfaceModel, v: str, c: str) -> Fraction:
    f = s.fiber(v)
    return pair_horizontal(p, f, FibralDivisor.component(f, c))


def check_principality(s: SurfaceModel, w: Witness) -> list[str]:
    """Places/components where ``<D1,C> - <D2,C> + <E_v,C>`` is nonzero."""
    bad = []
    for f in s.places:
        e_vals = pairing_values(f, w.vertical_at(f.place_id))
        for c in f.component_ids:
            try:
                total = _pair_d(w.d1, s, f.place_id, c) - _pair_d(w.d2, s, f.place_id, c) + e_vals[c]
            except KeyError as exc:
                bad.append(str(exc))
                continue
            if total != 0:
                bad.append(f"{f.place_id}/{c}: {format_rational(total)}")
    return bad


def check_disjoint_effective(s: SurfaceModel, w: Witness, report: ValidationReport, name: str) -> None:
    neg = [
        f"{v}/{c}" for v, row in w.d1.pairings.items() for c, x in row.items() if x < 0
    ] + [f"D2 {v}/{c}" for v, row in w.d2.pairings.items() for c, x in row.items() if x < 0]
    report.add(f"{name}.effective", not neg and w.d1.generic_degree > 0, w.witness_id, f"negative pairings {neg}" if neg else "")
    overlap = w.d1.support & w.d2.support
    report.add(f"{name}.disjoint-support", not overlap and bool(w.d1.support), w.witness_id,
               f"shared support {sorted(overlap)}" if overlap else "")
    expected = s.ample.scaled(w.n)
    same = w.d2.support == s.ample.support and w.d2.pairings == expected.pairings and w.d2.generic_degree == expected.generic_degree
    report.add(f"{name}.d2-is-ample-multiple", same, w.witness_id, "" if same else f"D2 differs from {w.n} * ample")


def check_vertical_common(s: SurfaceModel, w: Witness, report: ValidationReport, name: str, allowed: set[str]) -> None:
    stray = sorted(set(w.vertical) - allowed)
    report.add(f"{name}.vertical-support", not stray, w.witness_id, f"vertical parts at undeclared places {stray}" if stray else "")
    bad = check_principality(s, w)
    report.add(f"{name}.principality", not bad, w.witness_id, "; ".join(bad[:5]))
    nonint = []
    for v, e in w.vertical.items():
        if v not in s.place_ids:
            continue
        for c, x in pairing_values(s.fiber(v), e).items():
            if (x * w.scale).denominator != 1:
                nonint.append(f"{v}/{c}")
    report.add(f"{name}.integral-after-scaling", not nonint, w.witness_id,
               f"scale {w.scale} leaves non-integral pairings at {nonint}" if nonint else f"scale {w.scale}")
    degs = {w.degree, w.d1.generic_degree, w.d2.generic_degree}
    report.add(f"{name}.degree-identity", len(degs) == 1, w.witness_id,
               "degrees " + ", ".join(format_rational(x) for x in (w.degree, w.d1.generic_degree, w.d2.generic_degree)))


def verify_witness(s: SurfaceModel, w: Witness) -> ValidationReport:
    """Check a witness against the five conclusions required of the function ``f``.

    (i) effective, disjoint horizontal parts; (ii) principality with
    integral pairings after scaling; (iii) ``0 < <D2, n_C C> < m``;
    (iv) ``D1`` meets only the chosen component, with total ``m``;
    (v) the vertical sign pattern.
    """
    report = ValidationReport()
    M = s.reducible_places
    m = w.degree

    check_disjoint_effective(s, w, report, "i")
    check_vertical_common(s, w, report, "ii", set(M))

    bounds = []
    for v in M:
        for c, mult in s.fiber(v).components:
            x = mult * _pair_d(w.d2, s, v, c)
            if not 0 < x < m:
                bounds.append(f"{v}/{c}: {format_rational(x)} not in (0, {format_rational(m)})")
    report.add("iii.bounds", not bounds, w.witness_id, "; ".join(bounds))

    if set(w.choice) != set(M):
        report.add("iv.d1-meets-chosen-only", False, w.witness_id, "choice map does not cover the reducible places")
        report.add("v.vertical-signs", False, w.witness_id, "choice map does not cover the reducible places")
        return report

    rank1 = []
    for v in M:
        chosen = w.choice[v]
        for c, mult in s.fiber(v).components:
            x = _pair_d(w.d1, s, v, c)
            if c == chosen and mult * x != m:
                rank1.append(f"{v}/{c}: <D1, n_C C> = {format_rational(mult * x)} != {format_rational(m)}")
            if c != chosen and x != 0:
                rank1.append(f"{v}/{c}: <D1, C> = {format_rational(x)} != 0")
    report.add("iv.d1-meets-chosen-only", not rank1, w.witness_id, "; ".join(rank1))

    report.add("v.vertical-signs", *_sign_pattern(s, w, w.choice))
    return report


def _sign_pattern(s: SurfaceModel, w: Witness, choice: ChoiceMap, weighted: bool = True) -> tuple[bool, str, str]:
    bad = []
    for v, chosen in sorted(choice.items()):
        f = s.fiber(v)
        vals = pairing_values(f, w.vertical_at(v))
        for c, mult in f.components:
            x = vals[c] * (mult if weighted else 1)
            if (c == chosen and not x < 0) or (c != chosen and not x > 0):
                bad.append(f"{v}/{c}: {format_rational(x)}")
    return not bad, w.witness_id, "; ".join(bad)
