import json
import random

import numpy as np
import pytest

from zhps.circuits import circuit_to_pathsum, parse_circuit
from zhps.cli import main
from zhps.data import fixture_path
from zhps.diagram import Diagram, HLabel
from zhps.generators import random_circuit_text
from zhps.numeric import ScalarFactor
from zhps.oracle import OracleCapExceeded, eval_pathsum
from zhps.pathsum import PhasePoly, PurePathSum
from zhps.verify import Verdict, verify

CNOT = "qubits 2\ncnot 0 1\n"
SWAP = "qubits 2\nswap 0 1\n"


def circ(text):
    return parse_circuit(text)


@pytest.mark.parametrize("engine", ["pathsum", "diagram"])
@pytest.mark.parametrize("text", ["qubits 3\ntof 0 1 2\ntof 0 1 2\n",
                                  "qubits 2\ncnot 0 1\ncnot 0 1\n",
                                  "qubits 1\nh 0\nh 0\n"])
def test_involutions_by_rewriting(text, engine):
    c = circ(text)
    v = verify(c, circ(f"qubits {c.n}\n"), engine=engine, use_oracle=False)
    assert v.status == "Equal" and v.method == "rewrite"


def test_fixture_by_rewriting():
    with open(fixture_path("toffoli_identity.qc")) as f:
        c = circ(f.read())
    for engine in ("pathsum", "diagram"):
        v = verify(c, circ("qubits 3\n"), engine=engine, use_oracle=False)
        assert v.status == "Equal", engine


def test_unequal_has_witness():
    v = verify(circ(CNOT), circ(SWAP))
    assert v.status == "Unequal" and v.exit_code == 2
    assert v.evidence.witness is not None
    assert "witness" in v.to_json()


def test_global_phase_mode():
    a = circ("qubits 1\nz 0\nx 0\nz 0\nx 0\n")   # -I
    b = circ("qubits 1\n")
    assert verify(a, b).status == "Unequal"
    assert verify(a, b, mode="global-phase").status == "EqualUpToGlobalPhase"


def test_not_proven_without_oracle():
    v = verify(circ("qubits 1\nt 0\nh 0\nt 0\nh 0\n"), circ("qubits 1\nh 0\nt 0\nh 0\nt 0\n"),
               use_oracle=False)
    assert v.status == "NotProven" and v.exit_code == 1


def test_arity_mismatch():
    with pytest.raises(ValueError, match="arity"):
        verify(circ("qubits 1\n"), circ("qubits 2\n"))


def test_non_circuit_operands_use_oracle():
    e = circuit_to_pathsum(circ(CNOT))
    v = verify(e, circ(CNOT))
    assert v.status == "Equal"
    v = verify(circ(CNOT), e)
    assert v.status == "Equal" and v.method == "oracle"


def test_random_self_equivalence():
    rng = random.Random(21)
    for _ in range(10):
        c = circ(random_circuit_text(rng, 3, 10, ("h", "cnot", "tof", "t")))
        assert verify(c, c).status == "Equal"


def test_pathsum_cap():
    e = PurePathSum(range(25), [], [0], PhasePoly({frozenset({i, i + 1}): "1/2" for i in range(24)}))
    with pytest.raises(OracleCapExceeded):
        eval_pathsum(e)


# -- command line ----------------------------------------------------------------

@pytest.fixture
def files(tmp_path):
    (tmp_path / "cnot.qc").write_text(CNOT)
    (tmp_path / "swap.qc").write_text(SWAP)
    (tmp_path / "bad.json").write_text("{not json")
    return tmp_path


def test_cli_verify_exit_codes(files, capsys):
    assert main(["verify", str(files / "cnot.qc"), str(files / "cnot.qc")]) == 0
    assert main(["verify", str(files / "cnot.qc"), str(files / "swap.qc")]) == 2
    assert "Unequal" in capsys.readouterr().out


def test_cli_usage_errors(files):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--bogus"])
    assert info.value.code == 3
    assert main(["verify"]) == 3
    assert main(["eval", "--in", str(files / "bad.json")]) == 3
    assert main(["eval", "--in", str(files / "missing.qc")]) == 3


def test_cli_translate_roundtrip(files):
    ps, zh, back = files / "c.ps.json", files / "c.zh.json", files / "back.ps.json"
    assert main(["translate", "--in", str(files / "cnot.qc"), "--to", "pathsum", "--out", str(ps)]) == 0
    assert main(["translate", "--in", str(ps), "--to", "zh", "--out", str(zh)]) == 0
    assert main(["translate", "--in", str(zh), "--to", "pathsum", "--out", str(back)]) == 0
    assert json.loads(ps.read_text()) == json.loads(back.read_text())
    assert main(["verify", str(zh), str(files / "cnot.qc")]) == 0


def test_cli_simplify_and_trace(files, capsys):
    (files / "hh.qc").write_text("qubits 1\nh 0\nh 0\n")
    out, trace = files / "o.json", files / "t.json"
    assert main(["simplify", "--in", str(files / "hh.qc"), "--out", str(out),
                 "--trace", str(trace)]) == 0
    steps = json.loads(trace.read_text())
    assert steps and steps[0]["rule"] == "HH"
    assert json.loads(out.read_text())["vars"] == 1
    assert "before: 3 variables" in capsys.readouterr().err


def test_cli_eval_json(files):
    out = files / "m.json"
    assert main(["eval", "--in", str(files / "cnot.qc"), "--format", "json", "--out", str(out)]) == 0
    m = np.array(json.loads(out.read_text()))
    assert np.allclose(m[..., 0], [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


def test_cli_cap_exit(files):
    (files / "wide.qc").write_text("qubits 3\nh 0\n")
    assert main(["eval", "--in", str(files / "wide.qc"), "--oracle-cap", "4"]) == 4


def test_cli_batch(files, capsys):
    (files / "pairs.txt").write_text("cnot.qc cnot.qc\ncnot.qc swap.qc\n")
    assert main(["verify", "--batch", str(files / "pairs.txt")]) == 2
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 2 and "Equal" in lines[0] and "Unequal" in lines[1]


def test_cli_selfcheck(capsys):
    assert main(["selfcheck", "--cases", "5", "--only", "Elim,HH"]) == 0
    assert "Elim" in capsys.readouterr().out
