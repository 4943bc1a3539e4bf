import random
from fractions import Fraction

import numpy as np
import pytest

from zhps.generators import PATHSUM_INSTANCES, case_instance, hh_instance
from zhps.numeric import Phase, ScalarFactor
from zhps.oracle import compare, eval_pathsum
from zhps.pathsum import BoolPoly, PhasePoly, PurePathSum, purify
from zhps.rules import RuleError
from zhps.rules.pathsum_rules import (APPLIERS, MATCHERS, Match, apply_case, apply_elim,
                                      apply_hh, apply_omega, find_case_gate, match_case,
                                      match_elim, match_hh, match_omega)

F = Fraction
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


def ps(vars, phi, ins=(), outs=(), scalar=None):
    terms = {frozenset(k): Phase(c) for k, c in phi.items()}
    return PurePathSum(vars, ins, outs, PhasePoly(terms), scalar or ScalarFactor())


def test_elim_matches_and_scalars():
    e = ps([0], {})
    assert [m.vars for m in match_elim(e)] == [(0,)]
    out = apply_elim(e, match_elim(e)[0])
    assert out.num_vars == 0 and out.scalar.to_complex() == pytest.approx(2)
    two = ps([0, 1], {})
    once = apply_elim(two, match_elim(two)[0])
    twice = apply_elim(once, match_elim(once)[0])
    assert twice.scalar == ScalarFactor(4)
    assert not match_elim(ps([0], {(0,): "1/2"}))
    assert len(match_elim(ps([0, 1, 2, 3], {(3,): "1/4"}))) == 3


def test_elim_rejects_signature_variable():
    with pytest.raises(RuleError):
        apply_elim(ps([0], {}, outs=[0]), Match("Elim", (0,)))


def test_omega_without_coupling():
    e = ps([0], {(0,): "1/4"})
    out = apply_omega(e, match_omega(e)[0])
    assert out.num_vars == 0 and not out.phi.terms
    assert out.scalar == ScalarFactor(1, "1/8")
    assert out.scalar.to_complex() == pytest.approx(1 + 1j)


def test_omega_single_monomial():
    e = ps([0, 1], {(1,): "1/4", (0, 1): "1/2"}, outs=[0])
    out = apply_omega(e, match_omega(e)[0])
    assert out.phi.terms == {frozenset({0}): Phase("3/4")}
    assert compare(eval_pathsum(out), eval_pathsum(e))


def test_omega_two_monomials():
    e = ps([0, 1, 2], {(2,): "1/4", (0, 2): "1/2", (1, 2): "1/2"}, outs=[0, 1])
    out = apply_omega(e, match_omega(e)[0])
    assert out.phi.terms == {frozenset({0}): Phase("3/4"), frozenset({1}): Phase("3/4"),
                             frozenset({0, 1}): Phase("1/2")}
    assert compare(eval_pathsum(out), eval_pathsum(e))


def test_omega_conjugate_branch():
    e = ps([0, 1], {(1,): "3/4", (0, 1): "1/2"}, outs=[0])
    out = apply_omega(e, match_omega(e)[0])
    assert out.scalar == ScalarFactor(1, "-1/8")
    assert out.phi.terms == {frozenset({0}): Phase("1/4")}
    assert compare(eval_pathsum(out), eval_pathsum(e))


def test_omega_rejects_other_coefficients():
    assert not match_omega(ps([0, 1], {(1,): "1/8", (0, 1): "1/2"}, outs=[0]))
    assert not match_omega(ps([0, 1], {(1,): "1/4", (0, 1): "1/4"}, outs=[0]))


def test_hh_retargets_cnot_signature():
    e = purify([BoolPoly.var(0), BoolPoly([[0], [1]])], PhasePoly(), ScalarFactor(), 2, 0)
    assert e.num_vars == 6
    matches = match_hh(e)
    assert any(m.data["retarget"] is not None for m in matches)
    cur = e
    while match_hh(cur):
        cur = apply_hh(cur, match_hh(cur)[0])
    # stops at the three-term form: the target wire's parity is not a single variable
    assert cur.num_vars == 4 and len(cur.phi.terms) == 3
    assert all(c == Phase("1/2") for c in cur.phi.terms.values())
    assert compare(eval_pathsum(cur), CNOT)


def test_hh_with_independent_remainder():
    # R does not mention y1: the pair disappears and only the factor 2 remains
    e = ps([0, 1, 2], {(1, 2): "1/2", (0, 1): "1/2", (0,): "1/8"}, outs=[0])
    out = apply_hh(e, Match("HH", (1, 2)))
    assert out.phi.terms == {frozenset({0}): Phase("1/8")}
    assert out.scalar == ScalarFactor(2)
    assert compare(eval_pathsum(out), eval_pathsum(e))


def test_hh_substitutes_lift():
    # y1 = x0 xor x1 gets fed into 1/4 y1
    e = ps([0, 1, 2, 3], {(2, 3): "1/2", (0, 2): "1/2", (1, 2): "1/2", (3,): "1/4"}, outs=[0, 1])
    out = apply_hh(e, Match("HH", (2, 3)))
    assert out.phi.terms == {frozenset({0}): Phase("1/4"), frozenset({1}): Phase("1/4"),
                             frozenset({0, 1}): Phase("1/2")}
    assert compare(eval_pathsum(out), eval_pathsum(e))


def test_hh_rejects_bad_pairs():
    e = ps([0, 1, 2], {(1, 2): "1/4", (0, 1): "1/2"}, outs=[0])
    assert not match_hh(e)
    with pytest.raises(RuleError):
        apply_hh(e, Match("HH", (1, 2)))


def test_find_case_gate():
    g = frozenset({0})
    a0 = {frozenset({0}): Phase("1/8")}
    a1 = {frozenset(): Phase("1/8"), frozenset({0}): Phase("-1/8")}
    assert find_case_gate(a0, a1) == (True, g)
    assert find_case_gate({}, a1) == (True, None)
    assert find_case_gate(a0, {frozenset(): Phase("1/8")})[0] is False


def test_case_full_instance():
    # alpha = beta = 1/8, X = x0, Q = x1, Q' = x2
    e = ps([0, 1, 2, 3, 4],
           {(3, 4): "1/2", (1, 3): "1/2", (2, 4): "1/2",
            (0, 3): "1/8", (4,): "1/8", (0, 4): "-1/8"}, outs=[0, 1, 2])
    ms = match_case(e)
    assert ms and ms[0].data["gate"] == frozenset({0})
    out = apply_case(e, ms[0])
    assert out.num_vars == 3 and out.scalar == ScalarFactor(2)
    assert compare(eval_pathsum(out), eval_pathsum(e))


def test_case_degenerates_to_hh():
    e = ps([0, 1, 2, 3], {(2, 3): "1/2", (0, 2): "1/2", (1, 3): "1/2"}, outs=[0, 1])
    by_case = apply_case(e, Match("Case", (2, 3)))
    by_hh = apply_hh(e, Match("HH", (2, 3)))
    assert by_case == by_hh


def test_case_with_constant_gate():
    # X = 1: the beta branch is empty and alpha rides on y0 alone
    e = ps([0, 1, 2, 3], {(2, 3): "1/2", (0, 2): "1/2", (1, 3): "1/2", (2,): "1/8"}, outs=[0, 1])
    out = apply_case(e, Match("Case", (2, 3)))
    assert compare(eval_pathsum(out), eval_pathsum(e))


@pytest.mark.parametrize("name", sorted(PATHSUM_INSTANCES))
def test_rule_soundness_sample(name):
    rng = random.Random(hash(name) % 1000)
    done = 0
    for _ in range(200):
        e = PATHSUM_INSTANCES[name](rng)
        ms = MATCHERS[name](e)
        if not ms:
            continue
        out = APPLIERS[name](e, ms[0])
        assert out.num_vars < e.num_vars
        assert compare(eval_pathsum(out), eval_pathsum(e)), e
        done += 1
        if done == 40:
            break
    assert done == 40


def test_case_instances_mostly_in_precondition():
    rng = random.Random(1)
    hits = sum(bool(match_case(case_instance(rng))) for _ in range(100))
    assert hits >= 60


def test_hh_signature_instances():
    rng = random.Random(5)
    for _ in range(30):
        e = hh_instance(rng, y1_signature=True)
        for m in match_hh(e):
            assert compare(eval_pathsum(apply_hh(e, m)), eval_pathsum(e))
