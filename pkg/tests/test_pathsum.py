import itertools
from fractions import Fraction

import numpy as np
import pytest

from zhps.numeric import Phase, ScalarFactor
from zhps.oracle import compare, eval_pathsum
from zhps.pathsum import (BoolPoly, PhasePoly, PurePathSum, adjoint_pathsum, canonicalize,
                          compose_pathsums, evaluate_assignment, identity_pathsum, lift, purify,
                          scale_lift, substitute)

F = Fraction
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


def pp(**terms):
    """PhasePoly from keyword names like x0x1='1/2'."""
    out = {}
    for name, c in terms.items():
        m = frozenset(int(v) for v in name.split("x")[1:])
        out[m] = Phase(c)
    return PhasePoly(out)


def test_evaluate_assignment():
    phi = PhasePoly({frozenset({0, 1}): F(1, 2)})
    assert evaluate_assignment(phi, [1, 1]) == Phase("1/2")
    assert evaluate_assignment(phi, [1, 0]) == Phase(0)
    cnot = PhasePoly({frozenset({1, 2}): F(1, 2), frozenset({0, 2}): F(1, 2),
                      frozenset({2, 3}): F(1, 2)})
    assert evaluate_assignment(cnot, [1, 1, 1, 1]) == Phase("1/2")


def test_lift_examples():
    x, y, z = BoolPoly.var(0), BoolPoly.var(1), BoolPoly.var(2)
    assert lift(x) == {frozenset({0}): 1}
    assert lift(x ^ y) == {frozenset({0}): 1, frozenset({1}): 1, frozenset({0, 1}): -2}
    expected = {frozenset({0}): 1, frozenset({1}): 1, frozenset({2}): 1,
                frozenset({0, 1}): -2, frozenset({0, 2}): -2, frozenset({1, 2}): -2,
                frozenset({0, 1, 2}): 4}
    assert lift(x ^ y ^ z) == expected


def test_lift_agrees_on_booleans():
    q = BoolPoly([[0, 1], [2], [1, 2, 3], []])
    poly = lift(q)
    for bits in itertools.product([0, 1], repeat=4):
        val = sum(c for m, c in poly.items() if all(bits[v] for v in m))
        assert val == q.evaluate(bits)


def test_scale_lift_examples():
    m1, m2 = BoolPoly([[0, 1]]), BoolPoly([[2]])
    got = scale_lift(Phase("1/4"), m1 ^ m2)
    assert got == PhasePoly({frozenset({0, 1}): F(1, 4), frozenset({2}): F(1, 4),
                             frozenset({0, 1, 2}): F(1, 2)})
    assert scale_lift(Phase("1/2"), m1) == PhasePoly({frozenset({0, 1}): F(1, 2)})
    assert scale_lift(Phase("1/2"), m1 ^ m2) == PhasePoly({frozenset({0, 1}): F(1, 2),
                                                          frozenset({2}): F(1, 2)})


def test_canonicalize_examples():
    f = BoolPoly([[0], [1]])
    assert canonicalize(Phase("1/2"), f) == pp(x0="1/2", x1="1/2")
    assert canonicalize(Phase("1/4"), f) == pp(x0="1/4", x1="1/4", x0x1="1/2")
    assert canonicalize(Phase("3/8"), BoolPoly([[0, 2]])) == pp(x0x2="3/8")


def test_substitute_examples():
    r = PhasePoly({frozenset({9, 1}): F(1, 4)})
    assert substitute(r, 9, {frozenset({2}): 1}) == pp(x1x2="1/4")
    r = PhasePoly({frozenset({9}): F(1, 4)})
    assert substitute(r, 9, lift(BoolPoly([[0], [1]]))) == pp(x0="1/4", x1="1/4", x0x1="1/2")
    r = pp(x0x1="1/8")
    assert substitute(r, 9, {frozenset({2}): 1}) is r


def test_constant_migrates_to_scalar():
    e = PurePathSum([0], [0], [0], PhasePoly({frozenset(): F(1, 8), frozenset({0}): F(1, 2)}))
    assert e.scalar == ScalarFactor(0, "1/8")
    assert frozenset() not in e.phi.terms


def test_pathsum_validates_variables():
    with pytest.raises(ValueError):
        PurePathSum([0], [1], [0])
    with pytest.raises(ValueError):
        PurePathSum([0], [0], [0], pp(x0x3="1/2"))


def test_purify_cnot_matches_five_terms():
    f = [BoolPoly.var(0), BoolPoly([[0], [1]])]
    e = purify(f, PhasePoly(), ScalarFactor(), 2, 0)
    # v1=2, v2=3, w1=4, w2=5
    assert e.phi == pp(x2x4="1/2", x0x2="1/2", x3x5="1/2", x0x3="1/2", x1x3="1/2")
    assert e.inputs == (0, 1) and e.outputs == (4, 5)
    assert e.scalar == ScalarFactor(-4, 0)
    assert compare(eval_pathsum(e), CNOT, tol=1e-12)


def test_purify_identity_and_empty():
    e = purify([BoolPoly.var(0)], PhasePoly(), ScalarFactor(), 1, 0)
    assert compare(eval_pathsum(e), np.eye(2), tol=1e-12)
    e = purify([], PhasePoly(), ScalarFactor(2), 0, 0)
    assert e.num_vars == 0
    assert eval_pathsum(e)[0, 0] == pytest.approx(2)


def test_purify_with_paths_matches_direct_sum():
    # lam * sum_{x,y} e^{2 pi i phi} |x0 ^ y, x1 x0><x0 x1|
    f = [BoolPoly([[0], [2]]), BoolPoly([[0, 1]])]
    phi = pp(x0x2="1/4", x1="1/8")
    lam = ScalarFactor(1, "1/8")
    e = purify(f, phi, lam, 2, 1)
    direct = np.zeros((4, 4), complex)
    for x0, x1, y in itertools.product([0, 1], repeat=3):
        bits = [x0, x1, y]
        row = 2 * f[0].evaluate(bits) + f[1].evaluate(bits)
        direct[row, 2 * x0 + x1] += np.exp(2j * np.pi * float(phi.evaluate(bits).value))
    assert compare(eval_pathsum(e), direct * lam.to_complex())


def test_compose_order_is_matrix_product():
    h = PurePathSum([0, 1], [0], [1], pp(x0x1="1/2"), ScalarFactor(-1))
    t = PurePathSum([0], [0], [0], pp(x0="1/8"))
    ht = compose_pathsums(h, t)  # h first, then t
    assert compare(eval_pathsum(ht), eval_pathsum(t) @ eval_pathsum(h))


def test_compose_with_identity_and_copy():
    e = PurePathSum([0, 1, 2], [0, 1], [2], pp(x0x2="1/2", x1x2="1/4"))
    assert compare(eval_pathsum(compose_pathsums(e, identity_pathsum(1))), eval_pathsum(e))
    merge = PurePathSum([0], [0, 0], [0])  # sum_x |x><xx|
    assert np.array_equal(eval_pathsum(merge), np.array([[1, 0, 0, 0], [0, 0, 0, 1]]))
    copy = PurePathSum([0], [0], [0, 0])
    both = compose_pathsums(copy, merge)
    assert compare(eval_pathsum(both), np.eye(2))


def test_compose_arity_mismatch():
    with pytest.raises(ValueError, match="arity mismatch"):
        compose_pathsums(identity_pathsum(1), identity_pathsum(2))


def test_adjoint_pathsum():
    e = PurePathSum([0, 1, 2], [0, 1], [2], pp(x0x2="1/2", x1x2="1/8"), ScalarFactor(1, "1/8"))
    assert compare(eval_pathsum(adjoint_pathsum(e)), eval_pathsum(e).conj().T)


def test_json_roundtrip_compacts():
    e = PurePathSum([0, 3, 7], [3], [7, 7], pp(x0x3="1/8", x3x7="1/2"), ScalarFactor(-1, "3/4"))
    obj = e.to_json()
    assert obj["vars"] == 3 and obj["inputs"] == [1] and obj["outputs"] == [2, 2]
    assert obj["terms"][0] == {"coeff": "1/8", "monomial": [0, 1]}
    back = PurePathSum.from_json(obj)
    assert back == e.compacted()
    assert compare(eval_pathsum(back), eval_pathsum(e))
