import random
from fractions import Fraction

import numpy as np
import pytest

from zhps.diagram import (Diagram, HLabel, RawDiagram, cnot_zh, compose_par, compose_seq,
                          hypergraph_violations, iso_equal, normalize, reduce_parallel)
from zhps.generators import random_pathsum, random_raw_diagram
from zhps.numeric import Phase, ScalarFactor
from zhps.oracle import compare, eval_diagram
from zhps.translate import pathsum_to_zh

CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


def test_derived_generators():
    assert np.allclose(eval_diagram(RawDiagram.not_gate()), [[0, 1], [1, 0]])
    assert np.allclose(eval_diagram(RawDiagram.x_spider(1, 1)), np.eye(2))
    plus = eval_diagram(RawDiagram.x_spider(0, 1)).reshape(-1)
    assert np.allclose(plus, [1, 0])
    z = eval_diagram(RawDiagram.z_spider(1, 1, Fraction(1, 8)))
    assert np.allclose(z, np.diag([1, np.exp(1j * np.pi / 4)]))


def test_compose_seq_examples():
    idd = compose_seq(RawDiagram.identity(), RawDiagram.identity())
    assert np.allclose(eval_diagram(idd), np.eye(2))
    hh = compose_seq(RawDiagram.hadamard(), RawDiagram.hadamard())
    assert np.allclose(eval_diagram(hh), 2 * np.eye(2))
    zz = compose_seq(RawDiagram.z_spider(1, 2), RawDiagram.z_spider(2, 1))
    assert np.allclose(eval_diagram(zz), np.eye(2))


def test_compose_seq_arity_and_loops():
    with pytest.raises(ValueError, match="arity mismatch"):
        compose_seq(RawDiagram.identity(1), RawDiagram.identity(2))
    # closing an identity wire on itself is a loop of value 2
    cup = RawDiagram.z_spider(0, 2)
    cap = RawDiagram.z_spider(2, 0)
    circle = compose_seq(cup, cap)
    assert np.allclose(eval_diagram(circle), [[2]])
    bare = compose_seq(RawDiagram.identity(1), RawDiagram.identity(1))
    assert len(bare.edges) == 1


def test_compose_par_examples():
    d = RawDiagram.hadamard()
    assert np.allclose(eval_diagram(compose_par(d, RawDiagram.empty())), eval_diagram(d))
    zero = RawDiagram.x_spider(0, 1)
    two = eval_diagram(compose_par(zero, zero)).reshape(-1)
    assert np.allclose(two, [1, 0, 0, 0])
    hh = eval_diagram(compose_par(d, d))
    assert set(np.round(hh.real.reshape(-1)).astype(int)) == {1, -1}


def test_normalize_cnot_gadget():
    raw = cnot_zh()
    assert np.allclose(eval_diagram(raw), CNOT)
    d = normalize(raw)
    assert len(d.spiders) == 4 and len(d.hboxes) == 3
    assert all(lab.is_unlabeled() for lab, _ in d.hboxes.values())
    assert not hypergraph_violations(d)
    assert compare(eval_diagram(d), CNOT)


def test_normalize_idempotent_on_random():
    rng = random.Random(4)
    for _ in range(30):
        d = normalize(random_raw_diagram(rng, 1, 2, 5))
        again = normalize(d)
        assert iso_equal(d, again)


def test_normalize_preserves_semantics_and_shape():
    rng = random.Random(11)
    for _ in range(60):
        raw = random_raw_diagram(rng, rng.randint(0, 2), rng.randint(0, 2), rng.randint(1, 6))
        d = normalize(raw)
        assert hypergraph_violations(d) == []
        nbs = [nb for _, nb in d.hboxes.values()]
        assert len(set(nbs)) == len(nbs) and all(nbs)
        assert compare(eval_diagram(d), eval_diagram(raw))


def test_normalize_scalars_for_arity_zero_generators():
    d = RawDiagram()
    d.add_vertex("Z")
    d.add_vertex("H", HLabel.of_phase("1/4"))
    n = normalize(d)
    assert not n.spiders and not n.hboxes
    assert n.scalar == ScalarFactor(2, "1/4")


def test_zero_label_retained():
    d = RawDiagram.h_box(1, 0, HLabel.general(0))
    n = normalize(d)
    assert len(n.hboxes) == 1
    assert compare(eval_diagram(n), eval_diagram(d))


def _parallel(k):
    d = RawDiagram()
    z = d.add_vertex("Z")
    h = d.add_vertex("H", HLabel.of_phase("1/8"))
    d.add_edge(d.add_input(), z)
    d.add_edge(z, d.add_output())
    for _ in range(k):
        d.add_edge(z, h)
    return d, h, z


@pytest.mark.parametrize("k", [1, 2, 3])
def test_reduce_parallel(k):
    d, h, z = _parallel(k)
    r = reduce_parallel(d, h, z)
    assert r.neighbors(h) == [z]
    assert compare(eval_diagram(r), eval_diagram(d))
    n = normalize(d)
    assert [nb for _, nb in n.hboxes.values()] == [frozenset(n.inputs)]


def test_iso_equal():
    d = normalize(cnot_zh())
    perm = {s: 100 - s for s in d.spiders}
    shuffled = Diagram({perm[s] for s in d.spiders},
                       {10 + h: (lab, {perm[s] for s in nb}) for h, (lab, nb) in d.hboxes.items()},
                       [perm[s] for s in d.inputs], [perm[s] for s in d.outputs], d.scalar)
    assert iso_equal(d, shuffled)
    changed = d.copy()
    h = min(changed.hboxes)
    changed.hboxes[h] = (HLabel.of_phase("1/4"), changed.hboxes[h][1])
    assert not iso_equal(d, changed)
    other_scalar = d.copy()
    other_scalar.scalar = ScalarFactor(0)
    assert not iso_equal(d, other_scalar)


def test_iso_equal_respects_boundary_order():
    d = Diagram([0, 1], {0: (HLabel.of_phase("1/4"), [0])}, [0, 1], [0, 1])
    swapped = Diagram([0, 1], {0: (HLabel.of_phase("1/4"), [0])}, [1, 0], [1, 0])
    assert not iso_equal(d, swapped)


def test_diagram_json_roundtrip():
    rng = random.Random(2)
    for _ in range(20):
        d = pathsum_to_zh(random_pathsum(rng))
        assert Diagram.from_json(d.to_json()) == d
    g = Diagram([0], {0: (HLabel.general(0.25 - 1j), [0])}, [0], [])
    assert Diagram.from_json(g.to_json()) == g


def test_diagram_validation_and_adjoint():
    with pytest.raises(ValueError):
        Diagram([0], {0: (HLabel.unlabeled(), [0, 1])})
    d = normalize(cnot_zh())
    d.hboxes[0] = (HLabel.of_phase("1/8"), d.hboxes[0][1])
    assert compare(eval_diagram(d.adjoint()), eval_diagram(d).conj().T)


def test_hlabel_snapping():
    assert HLabel.general(1j).as_phase() == Phase("1/4")
    assert HLabel.general(np.exp(1j)).as_phase().exact is False
    assert HLabel.general(2).as_phase() is None


def test_to_dot_mentions_everything():
    dot = normalize(cnot_zh()).to_dot()
    assert dot.startswith("graph") and "in0" in dot and "out1" in dot
