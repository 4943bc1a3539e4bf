import numpy as np
import pytest

from zhps.diagram import HLabel, RawDiagram
from zhps.numeric import ScalarFactor
from zhps.oracle import (Mode, OracleCapExceeded, compare, default_cap, eval_diagram,
                         eval_pathsum)
from zhps.pathsum import PhasePoly, PurePathSum

CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
SWAP = np.eye(4)[[0, 2, 1, 3]]


def test_variable_free_pathsum():
    assert np.allclose(eval_pathsum(PurePathSum([], [], [], scalar=ScalarFactor(2))), [[2]])


def test_merge_pathsum():
    m = eval_pathsum(PurePathSum([0], [0, 0], [0]))
    assert m.shape == (2, 4)
    assert np.array_equal(m, [[1, 0, 0, 0], [0, 0, 0, 1]])


def test_hadamard_box():
    assert np.allclose(eval_diagram(RawDiagram.h_box(1, 1)), [[1, 1], [1, -1]])


def test_arity_zero_spider_is_two():
    d = RawDiagram()
    d.add_vertex("Z")
    assert np.allclose(eval_diagram(d), [[2]])


def test_arity_three_hbox():
    t = eval_diagram(RawDiagram.h_box(0, 3)).reshape(-1)
    assert np.allclose(t, [1, 1, 1, 1, 1, 1, 1, -1])


def test_general_label_hbox():
    t = eval_diagram(RawDiagram.h_box(1, 1, HLabel.general(0.5 + 2j)))
    assert np.allclose(t, [[1, 1], [1, 0.5 + 2j]])


def test_loops_and_disconnected_pieces():
    d = RawDiagram()
    z = d.add_vertex("Z", "1/4")
    d.add_edge(z, z)
    d.add_edge(d.add_input(), z)
    d.add_edge(z, d.add_output())
    x = d.add_vertex("X")  # arity 0 X-spider: (1 + 1) / 2 = 1
    h = d.add_vertex("H")
    d.add_edge(h, h)  # trace of the Hadamard: 1 + -1 = 0... times a disconnected scalar
    assert np.allclose(eval_diagram(d), np.zeros((2, 2)))
    d.remove_vertex(h)
    assert np.allclose(eval_diagram(d), np.diag([1, 1j]))


def test_cap():
    big = PurePathSum(range(25), [], [])
    with pytest.raises(OracleCapExceeded):
        eval_pathsum(big)
    assert default_cap() == 20
    assert eval_pathsum(PurePathSum(range(3), [], []), cap=3)[0, 0] == 8


def test_cap_env(monkeypatch):
    monkeypatch.setenv("ZHPS_ORACLE_CAP", "4")
    with pytest.raises(OracleCapExceeded):
        eval_pathsum(PurePathSum(range(5), [], []))


def test_compare_modes():
    assert compare(CNOT, CNOT)
    assert compare(CNOT, 1j * CNOT, Mode.GLOBAL_PHASE)
    assert not compare(CNOT, 1j * CNOT, Mode.EXACT)
    c = compare(CNOT, SWAP)
    assert c.status == "Unequal" and c.witness is not None
    assert compare(CNOT, np.eye(2)).status == "ShapeMismatch"
