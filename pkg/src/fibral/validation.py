"""Structural and positivity checks on a loaded surface."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import format_rational
from .model import FiberModel, SurfaceModel
from .pairing import FiberFormError, check_fiber_form


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    subject: str = ""
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        where = f" [{self.subject}]" if self.subject else ""
        tail = f": {self.detail}" if self.detail else ""
        return f"{tag} {self.name}{where}{tail}"


@dataclass
class ValidationReport:
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, subject: str = "", detail: str = "") -> None:
        self.checks.append(CheckResult(name, passed, subject, detail))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def names_failed(self) -> set[str]:
        return {c.name for c in self.failures()}

    def format(self) -> str:
        return "\n".join(c.line() for c in self.checks)


def _connected(f: FiberModel) -> bool:
    g = f.pairing_matrix
    n = f.size
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and j not in seen and g[i][j] > 0:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def _check_fiber(report: ValidationReport, f: FiberModel) -> None:
    g = f.pairing_matrix
    n = f.size
    subj = f.place_id

    asym = [(i, j) for i in range(n) for j in range(i) if g[i][j] != g[j][i]]
    report.add("symmetry", not asym, subj, f"G[{asym[0][0] + 1}][{asym[0][1] + 1}] != G[{asym[0][1] + 1}][{asym[0][0] + 1}]" if asym else "")

    neg = [(i, j) for i in range(n) for j in range(n) if i != j and g[i][j] < 0]
    report.add("off-diagonal-sign", not neg, subj, f"negative entry at ({neg[0][0] + 1},{neg[0][1] + 1})" if neg else "")

    conn = _connected(f)
    report.add("connectivity", conn, subj, "" if conn else "support graph is disconnected")

    mult = f.multiplicities
    bad_rows = []
    for i in range(n):
        s = sum((m * g[i][j] for j, m in enumerate(mult)), Fraction(0))
        if s != 0:
            bad_rows.append((i, s))
    detail = "; ".join(f"row {i + 1} ({f.component_ids[i]}) weighted sum {format_rational(s)}" for i, s in bad_rows)
    report.add("weighted-kernel-identity", not bad_rows, subj, detail)

    if asym or neg or not conn or bad_rows:
        report.add("semidefinite", False, subj, "skipped: structural checks failed")
        return
    try:
        cert = check_fiber_form(f)
        report.add("semidefinite", True, subj, "minors " + ", ".join(format_rational(m) for m in cert.restricted_minors))
    except FiberFormError as exc:
        report.add("semidefinite", False, subj, str(exc))


def _check_ample(report: ValidationReport, s: SurfaceModel) -> None:
    amp = s.ample
    report.add("ample-degree-positive", amp.generic_degree > 0, amp.profile_id, f"generic degree {format_rational(amp.generic_degree)}")
    for f in s.places:
        subj = f"{amp.profile_id}@{f.place_id}"
        row = amp.pairings.get(f.place_id)
        if row is None:
            report.add("ample-positivity", False, subj, "profile undefined at this place")
            continue
        missing = [c for c in f.component_ids if c not in row]
        nonpos = [c for c in f.component_ids if c in row and row[c] <= 0]
        detail = []
        if missing:
            detail.append(f"missing pairings for {missing}")
        if nonpos:
            detail.append(f"non-positive pairing on {nonpos}")
        report.add("ample-positivity", not missing and not nonpos, subj, "; ".join(detail))
        total = sum((n * row.get(c, Fraction(0)) for c, n in f.components), Fraction(0))
        report.add(
            "ample-degree-identity",
            total == amp.generic_degree,
            subj,
            f"weighted pairing sum {format_rational(total)} vs degree {format_rational(amp.generic_degree)}",
        )


def validate_surface(s: SurfaceModel) -> ValidationReport:
    report = ValidationReport()
    ids = s.place_ids
    report.add("unique-place-ids", len(set(ids)) == len(ids), s.name)
    for f in s.places:
        _check_fiber(report, f)
    _check_ample(report, s)
    return report
