import dataclasses
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fibral.model import FibralDivisor, HorizontalProfile, fiber_vector
from fibral.pairing import pair_fibral, pair_horizontal, pairing_values
from fibral.witness import WitnessError, synthesize_witness, verify_witness, witness_from_dict
from helpers import random_surface

F = Fraction


def test_i2_witness(i2):
    w = synthesize_witness(i2, {"v": "C0"})
    assert w.degree == 2 and w.n == 1
    assert w.d1.pairings["v"] == {"C0": 2, "C1": 0}
    assert w.d2.pairings == i2.ample.pairings and w.d2.support == i2.ample.support
    # -2 e0 + 2 e1 = -1, 2 e0 - 2 e1 = 1 forces e0 - e1 = 1/2; with e0 = 0, E = -1/2 C1
    assert w.vertical["v"] == FibralDivisor("v", {"C1": F(-1, 2)})
    assert pairing_values(i2.fiber("v"), w.vertical["v"]) == {"C0": -1, "C1": 1}
    assert not w.d1.support & w.d2.support
    assert w.scale == 2


def test_i2_verify_all_pass(i2):
    report = verify_witness(i2, synthesize_witness(i2, {"v": "C0"}))
    assert report.ok, report.format()
    assert {c.name.split(".")[0] for c in report.checks} == {"i", "ii", "iii", "iv", "v"}


def test_i2_doubling(i2):
    w1 = synthesize_witness(i2, {"v": "C0"})
    w2 = synthesize_witness(i2, {"v": "C0"}, n=2)
    assert w2.degree == 2 * w1.degree
    assert w2.d1.pairings["v"] == {c: 2 * x for c, x in w1.d1.pairings["v"].items()}
    assert w2.vertical["v"] == 2 * w1.vertical["v"]
    assert verify_witness(i2, w2).ok


def test_irreducible_only(irreducible):
    w = synthesize_witness(irreducible, {})
    assert w.vertical == {}
    assert w.d1.pairings == {"a": {"C0": 3}, "b": {"C0": F(3, 2)}}
    assert verify_witness(irreducible, w).ok


@pytest.mark.parametrize("choice", [{}, {"v": "C0", "w": "C0"}, {"v": "C7"}])
def test_bad_choices(i2, choice):
    with pytest.raises(WitnessError):
        synthesize_witness(i2, choice)


def test_bad_n(i2):
    with pytest.raises(WitnessError):
        synthesize_witness(i2, {"v": "C0"}, n=0)


def test_d1_on_wrong_component_fails_iv(i2):
    w = synthesize_witness(i2, {"v": "C0"})
    moved = dataclasses.replace(w.d1, pairings={"v": {"C0": F(0), "C1": F(2)}})
    report = verify_witness(i2, dataclasses.replace(w, d1=moved))
    assert "iv.d1-meets-chosen-only" in report.names_failed()


def test_zero_ample_pairing_fails_iii(i2):
    w = synthesize_witness(i2, {"v": "C0"})
    d2 = dataclasses.replace(w.d2, pairings={"v": {"C0": F(0), "C1": F(2)}})
    report = verify_witness(i2, dataclasses.replace(w, d2=d2))
    assert "iii.bounds" in report.names_failed()


def test_shared_support_fails_i(i2):
    w = synthesize_witness(i2, {"v": "C0"})
    d1 = dataclasses.replace(w.d1, support=w.d1.support | i2.ample.support)
    assert "i.disjoint-support" in verify_witness(i2, dataclasses.replace(w, d1=d1)).names_failed()


def test_wrong_vertical_fails_ii_and_v(i2):
    w = synthesize_witness(i2, {"v": "C0"})
    bad = dataclasses.replace(w, vertical={"v": FibralDivisor("v", {"C1": F(1, 2)})})
    failed = verify_witness(i2, bad).names_failed()
    assert {"ii.principality", "v.vertical-signs"} <= failed


def test_serialization_round_trip(i2):
    w = synthesize_witness(i2, {"v": "C1"}, n=3)
    again = witness_from_dict(json.loads(json.dumps(w.to_dict(i2))))
    assert again == w


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4), st.data())
def test_random_witnesses(seed, n, data):
    s = random_surface(random.Random(seed), seed)
    choice = {v: data.draw(st.sampled_from(s.fiber(v).component_ids)) for v in s.reducible_places}
    w = synthesize_witness(s, choice, n)
    report = verify_witness(s, w)
    assert report.ok, report.format()
    m = w.degree
    assert m == n * s.ample.generic_degree
    for f in s.places:
        # sum rule: the weighted pairings of n * ample add up to m
        assert sum(pair_horizontal(w.d2, f, FibralDivisor.component(f, c)) * k for c, k in f.components) == m
    for v, e in w.vertical.items():
        f = s.fiber(v)
        assert pair_fibral(f, e, fiber_vector(f)) == 0
        assert e.coefficient(choice[v]) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.data())
def test_fiber_shift_invariance(seed, data):
    s = random_surface(random.Random(seed), seed)
    choice = {v: s.fiber(v).component_ids[0] for v in s.reducible_places}
    w = synthesize_witness(s, choice)
    shifts = {v: data.draw(st.fractions(min_value=-5, max_value=5, max_denominator=7)) for v in w.vertical}
    shifted = {v: e + shifts[v] * fiber_vector(s.fiber(v)) for v, e in w.vertical.items()}
    before = [(c.name, c.passed) for c in verify_witness(s, w).checks]
    after = [(c.name, c.passed) for c in verify_witness(s, dataclasses.replace(w, vertical=shifted)).checks]
    assert before == after
