import random

import numpy as np
import pytest

from zhps.diagram import HLabel, RawDiagram
from zhps.generators import BASIC_INSTANCES
from zhps.oracle import compare, eval_diagram
from zhps.rules import RuleError
from zhps.rules.basic import BASIC_RULES, apply_basic, match_basic


def same(a, b):
    return compare(eval_diagram(a), eval_diagram(b))


def test_hs2_two_hadamards_become_a_wire():
    d = RawDiagram()
    h1, h2 = d.add_vertex("H"), d.add_vertex("H")
    d.add_edge(d.add_input(), h1)
    d.add_edge(h1, h2)
    d.add_edge(h2, d.add_output())
    out = apply_basic(d, "HS2", (h1, h2))
    assert not any(out.kind(v) == "H" for v in out.vertices)
    assert np.allclose(eval_diagram(out), 2 * np.eye(2))
    assert same(out, d)


def test_m_multiplies_labels():
    d = RawDiagram()
    z = d.add_vertex("Z")
    d.add_edge(z, d.add_output())
    h1 = d.add_vertex("H", HLabel.of_phase("1/8"))
    h2 = d.add_vertex("H", HLabel.of_phase("1/4"))
    d.add_edge(h1, z)
    d.add_edge(h2, z)
    out = apply_basic(d, "M", (h1, h2))
    hs = [v for v in out.vertices if out.kind(v) == "H"]
    assert len(hs) == 1
    assert out.vertices[hs[0]].param.as_phase() == HLabel.of_phase("3/8").as_phase()
    assert same(out, d)


def test_zs1_fuses_spiders():
    d = RawDiagram()
    u, v = d.add_vertex("Z", "1/8"), d.add_vertex("Z", "1/8")
    d.add_edge(d.add_input(), u)
    d.add_edge(u, v)
    d.add_edge(v, d.add_output())
    out = apply_basic(d, "ZS1", (u, v))
    zs = [w for w in out.vertices if out.kind(w) == "Z"]
    assert len(zs) == 1 and out.vertices[zs[0]].param == HLabel.of_phase("1/4").phase
    assert same(out, d)


def test_out_of_pattern_rejected():
    d = RawDiagram.hadamard()
    (h,) = [v for v in d.vertices if d.kind(v) == "H"]
    with pytest.raises(RuleError):
        apply_basic(d, "ZS2", (h,))
    with pytest.raises(ValueError, match="unknown rule"):
        apply_basic(d, "XYZ", (h,))


@pytest.mark.parametrize("rule", sorted(BASIC_RULES))
def test_basic_rule_soundness(rule):
    rng = random.Random(rule)
    for _ in range(40):
        d, loc = BASIC_INSTANCES[rule](rng)
        assert loc in match_basic(d, rule)
        out = apply_basic(d, rule, loc)
        assert same(out, d), (rule, loc)
