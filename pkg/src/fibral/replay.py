"""Independent replay of a clearing certificate.

The verifier sees only the surface document and the certificate. It
walks the construction log in order, recomputes each step from the raw
fiber matrices, and stops at the first step whose recorded output differs
from the recomputation. Principality and the kernel solves are also
re-checked directly with plain matrix arithmetic, not through the
pairing helpers used to build the certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .clearing import (
    ClearingError,
    MorphismCertificate,
    certificate_from_dict,
    combine_witnesses,
    kernel_matrix,
    remove_principal_fiber,
    surface_digest,
)
from .exact import format_rational, parse_rational, vec_mat
from .kernel import KernelHypothesisError, positive_row_kernel, verify_kernel_hypotheses
from .model import SurfaceModel
from .witness import LogStep, Witness, WitnessError, synthesize_witness


@dataclass
class ReplayReport:
    ok: bool = True
    steps_checked: int = 0
    divergence: str | None = None
    messages: list[str] = field(default_factory=list)

    def fail(self, where: str, why: str) -> "ReplayReport":
        self.ok = False
        self.divergence = f"{where}: {why}"
        return self


def _raw_principality(s: SurfaceModel, w: Witness) -> str | None:
    """Recompute <D1,C> - <D2,C> + <E_v,C> from the raw matrices."""
    for f in s.places:
        e = w.vertical.get(f.place_id)
        coeffs = [e.coefficient(c) if e else Fraction(0) for c in f.component_ids]
        e_pair = vec_mat(coeffs, [list(r) for r in f.pairing_matrix])
        for j, c in enumerate(f.component_ids):
            d1 = w.d1.pairings.get(f.place_id, {}).get(c, Fraction(0))
            d2 = w.d2.pairings.get(f.place_id, {}).get(c, Fraction(0))
            if d1 - d2 + e_pair[j] != 0:
                return f"principality fails at {f.place_id}/{c}"
    return None


def _expect_equal(recorded, recomputed, what: str) -> str | None:
    if recorded != recomputed:
        return f"recorded {what} differs from recomputation"
    return None


def replay_certificate(s: SurfaceModel, cert: MorphismCertificate | Mapping) -> ReplayReport:
    report = ReplayReport()
    if not isinstance(cert, MorphismCertificate):
        try:
            cert = certificate_from_dict(cert)
        except (KeyError, TypeError, ValueError) as exc:
            return report.fail("certificate", f"unreadable ({exc})")

    if cert.surface != s.name or cert.surface_digest != surface_digest(s):
        return report.fail("binding", "certificate was not produced for this surface document")

    env: dict[str, Witness] = {}
    pending_kernel: dict[str, tuple[int, ...]] = {}
    for idx, step in enumerate(cert.log):
        where = f"step {idx} ({step.op} -> {step.target})"
        try:
            problem = _replay_step(s, step, env, pending_kernel)
        except (ClearingError, WitnessError, KernelHypothesisError, KeyError, ValueError, TypeError) as exc:
            problem = f"recomputation failed: {exc}"
        if problem:
            return report.fail(where, problem)
        report.steps_checked += 1

    final = cert.final_witness
    produced = env.get(final.witness_id)
    if produced is None:
        return report.fail("final", "final witness is not produced by the log")
    if produced.data_dict(s) != final.data_dict(s):
        return report.fail("final", "final witness differs from the replayed result")
    if final.vertical:
        return report.fail("final", f"vertical parts remain at {sorted(final.vertical)}")
    if final.d1.support & final.d2.support:
        return report.fail("final", "horizontal supports intersect")
    if final.d1.generic_degree != final.d2.generic_degree:
        return report.fail("final", "horizontal degrees differ")
    if final.d2.support != s.ample.support:
        return report.fail("final", "D2 support is not the ample support")
    bad = _raw_principality(s, final)
    if bad:
        return report.fail("final", bad)
    report.messages.append(f"replayed {report.steps_checked} steps; final degree {format_rational(final.degree)}")
    return report


def _replay_step(s: SurfaceModel, step: LogStep, env: dict, pending_kernel: dict) -> str | None:
    op = step.op
    if op == "synthesize":
        choice = dict(step.inputs["choice"])
        w = synthesize_witness(s, choice, int(step.inputs["n"]), witness_id=step.target)
        problem = _expect_equal(step.outputs.get("witness"), w.data_dict(s), "witness")
        if problem:
            return problem
        problem = _raw_principality(s, w)
        if problem:
            return problem
        env[step.target] = w
        return None

    if op == "kernel":
        v0 = step.inputs["place"]
        parts = {c: env[pid] for c, pid in step.inputs["parts"].items()}
        matrix = kernel_matrix(s, v0, parts)
        recorded = [[parse_rational(x) for x in row] for row in step.outputs["matrix"]]
        if recorded != matrix:
            return "recorded kernel matrix differs from recomputation"
        kv = positive_row_kernel(verify_kernel_hypotheses(matrix))
        if [parse_rational(x) for x in step.outputs["weights"]] != list(kv.weights):
            return "recorded kernel weights differ from recomputation"
        if tuple(step.outputs["integer_weights"]) != kv.integer_weights:
            return "recorded integer weights differ from recomputation"
        a = kv.integer_weights
        if any(x <= 0 for x in a) or any(x != 0 for x in vec_mat([Fraction(x) for x in a], matrix)):
            return "kernel weights are not a positive row-kernel vector"
        pending_kernel[step.target] = a
        return None

    if op == "combine":
        v0 = step.inputs["place"]
        ids = s.fiber(v0).component_ids
        weights = {c: int(step.inputs["weights"][c]) for c in ids}
        if pending_kernel.get(step.target) != tuple(weights[c] for c in ids):
            return "combination weights do not match the preceding kernel solve"
        parts = {c: env[pid] for c, pid in step.inputs["parts"].items()}
        w = combine_witnesses(s, v0, parts, weights, witness_id=step.target)
        problem = _expect_equal(step.outputs.get("witness"), w.data_dict(s), "witness")
        if problem:
            return problem
        env[step.target] = w
        return _raw_principality(s, w)

    if op == "remove_fiber":
        source = env[step.inputs["source"]]
        w, d = remove_principal_fiber(s, source, step.inputs["place"], witness_id=step.target)
        if step.outputs.get("d") != d:
            return "recorded exponent d differs from recomputation"
        vertical = source.vertical_at(step.inputs["place"])
        if step.outputs.get("fiber_multiple") is None:
            return "missing fiber multiple"
        r = parse_rational(step.outputs["fiber_multiple"])
        if r.denominator != d or any(
            vertical.coefficient(c) != r * n for c, n in s.fiber(step.inputs["place"]).components
        ):
            return "recorded fiber multiple differs from recomputation"
        problem = _expect_equal(step.outputs.get("witness"), w.data_dict(s), "witness")
        if problem:
            return problem
        env[step.target] = w
        return _raw_principality(s, w)

    if op == "note":
        return None
    return f"unknown operation {op!r}"
