"""Gate-list circuits and their compilation to diagrams and path-sums.

Format::

    qubits 3
    h 0
    tof 0 1 2      # controls first, target last
    rz 1/8 2

Qubit 0 is the most significant bit of the resulting matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .diagram import HLabel, RawDiagram
from .numeric import Phase, ScalarFactor
from .pathsum import PhasePoly, PurePathSum

__all__ = [
    "Gate",
    "Circuit",
    "CircuitParseError",
    "parse_circuit",
    "load_circuit",
    "gate_to_diagram",
    "circuit_to_diagram",
    "circuit_to_pathsum",
    "adjoint",
]

HALF = Fraction(1, 2)

# phase gates: turns applied to |1>
DIAGONAL = {"Z": HALF, "S": Fraction(1, 4), "Sdg": Fraction(3, 4),
            "T": Fraction(1, 8), "Tdg": Fraction(7, 8)}
ARITY = {"H": 1, "X": 1, "Z": 1, "S": 1, "Sdg": 1, "T": 1, "Tdg": 1, "RZ": 1,
         "CZ": 2, "CNOT": 2, "SWAP": 2, "CCZ": 3, "TOF": 3}
MNEMONICS = {"h": "H", "x": "X", "z": "Z", "s": "S", "sdg": "Sdg", "t": "T", "tdg": "Tdg",
             "rz": "RZ", "cz": "CZ", "cnot": "CNOT", "cx": "CNOT", "swap": "SWAP",
             "ccz": "CCZ", "tof": "TOF", "ccx": "TOF"}
INVERSE = {"S": "Sdg", "Sdg": "S", "T": "Tdg", "Tdg": "T"}


class CircuitParseError(ValueError):
    def __init__(self, line: int, msg: str) -> None:
        super().__init__(f"line {line}: {msg}")
        self.line = line


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: Tuple[int, ...]
    phase: Optional[Phase] = None  # RZ only

    def __post_init__(self):
        if self.kind not in ARITY:
            raise ValueError(f"unknown gate {self.kind!r}")
        if len(self.qubits) != ARITY[self.kind]:
            raise ValueError(f"{self.kind} acts on {ARITY[self.kind]} qubits")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind} needs distinct qubits, got {self.qubits}")
        if (self.kind == "RZ") != (self.phase is not None):
            raise ValueError("exactly the RZ gate carries a phase")

    @property
    def turns(self) -> Optional[Phase]:
        if self.kind == "RZ":
            return self.phase
        return Phase(DIAGONAL[self.kind]) if self.kind in DIAGONAL else None

    def inverse(self) -> "Gate":
        if self.kind == "RZ":
            return Gate("RZ", self.qubits, -self.phase)
        return Gate(INVERSE.get(self.kind, self.kind), self.qubits)

    def to_text(self) -> str:
        name = {v: k for k, v in MNEMONICS.items() if k not in ("cx", "ccx")}[self.kind]
        args = " ".join(str(q) for q in self.qubits)
        return f"rz {self.phase} {args}" if self.kind == "RZ" else f"{name} {args}"


@dataclass
class Circuit:
    n: int
    gates: List[Gate] = field(default_factory=list)

    def __post_init__(self):
        for g in self.gates:
            if any(q < 0 or q >= self.n for q in g.qubits):
                raise ValueError(f"{g.kind} on {g.qubits} is outside width {self.n}")

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.n != self.n:
            raise ValueError("circuit widths differ")
        return Circuit(self.n, self.gates + other.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def to_text(self) -> str:
        return "\n".join([f"qubits {self.n}"] + [g.to_text() for g in self.gates]) + "\n"


def parse_circuit(text: str) -> Circuit:
    n: Optional[int] = None
    gates: List[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if n is None:
            if words[0] != "qubits" or len(words) != 2 or not words[1].isdigit():
                raise CircuitParseError(lineno, "expected header 'qubits N'")
            n = int(words[1])
            continue
        name, args = words[0], words[1:]
        if name not in MNEMONICS:
            raise CircuitParseError(lineno, f"unknown gate {name!r}")
        kind = MNEMONICS[name]
        phase = None
        if kind == "RZ":
            if not args:
                raise CircuitParseError(lineno, "rz needs a phase p/q")
            try:
                phase = Phase.parse(args[0])
            except ValueError as exc:
                raise CircuitParseError(lineno, str(exc)) from None
            args = args[1:]
        if len(args) != ARITY[kind]:
            raise CircuitParseError(lineno, f"{name} takes {ARITY[kind]} qubit(s), got {len(args)}")
        try:
            qs = tuple(int(a) for a in args)
        except ValueError:
            raise CircuitParseError(lineno, f"bad qubit index in {line!r}") from None
        bad = [q for q in qs if q < 0 or q >= n]
        if bad:
            raise CircuitParseError(lineno, f"qubit index {bad[0]} out of range for {n} qubits")
        try:
            gates.append(Gate(kind, qs, phase))
        except ValueError as exc:
            raise CircuitParseError(lineno, str(exc)) from None
    if n is None:
        raise CircuitParseError(1, "missing header 'qubits N'")
    return Circuit(n, gates)


def load_circuit(path: str) -> Circuit:
    with open(path) as f:
        return parse_circuit(f.read())


def adjoint(c: Circuit) -> Circuit:
    return Circuit(c.n, [g.inverse() for g in reversed(c.gates)])


# -- diagrams --------------------------------------------------------------------

def _through(d: RawDiagram, front: List[int], q: int, v: int) -> None:
    d.add_edge(front[q], v)
    front[q] = v


def _place(d: RawDiagram, front: List[int], g: Gate) -> None:
    qs = g.qubits
    k = g.kind
    if k == "H":
        _through(d, front, qs[0], d.add_vertex("H"))
        d.scalar = d.scalar.times(pow2=-1)
    elif k == "X":
        _through(d, front, qs[0], d.add_vertex("X", HALF))
    elif g.turns is not None:
        z = d.add_vertex("Z")
        _through(d, front, qs[0], z)
        d.add_edge(z, d.add_vertex("H", HLabel(phase=g.turns)))
    elif k in ("CZ", "CCZ"):
        box = d.add_vertex("H")
        for q in qs:
            z = d.add_vertex("Z")
            _through(d, front, q, z)
            d.add_edge(z, box)
    elif k == "CNOT":
        c, t = d.add_vertex("Z"), d.add_vertex("X")
        _through(d, front, qs[0], c)
        _through(d, front, qs[1], t)
        d.add_edge(c, t)
    elif k == "TOF":
        _place(d, front, Gate("H", qs[2:]))
        _place(d, front, Gate("CCZ", qs))
        _place(d, front, Gate("H", qs[2:]))
    elif k == "SWAP":
        a, b = qs
        front[a], front[b] = front[b], front[a]
    else:  # pragma: no cover
        raise ValueError(k)


def circuit_to_diagram(c: Circuit) -> RawDiagram:
    d = RawDiagram()
    front = [d.add_input() for _ in range(c.n)]
    for g in c.gates:
        _place(d, front, g)
    for q in range(c.n):
        d.add_edge(front[q], d.add_output())
    return d


def gate_to_diagram(g: Gate) -> RawDiagram:
    """The gadget of one gate on its own qubits (renumbered from 0 in order)."""
    local = {q: i for i, q in enumerate(g.qubits)}
    return circuit_to_diagram(Circuit(len(g.qubits), [
        Gate(g.kind, tuple(local[q] for q in g.qubits), g.phase)]))


# -- path-sums -------------------------------------------------------------------

class _PathBuilder:
    def __init__(self, n: int) -> None:
        self.k = n
        self.front = list(range(n))
        self.terms: Dict[frozenset, Phase] = {}
        self.pow2 = 0

    def add(self, mono: Sequence[int], c) -> None:
        m = frozenset(mono)
        self.terms[m] = self.terms.get(m, Phase(0)) + Phase(c)

    def hadamard(self, q: int) -> None:
        y = self.k
        self.k += 1
        self.add([self.front[q], y], HALF)
        self.front[q] = y
        self.pow2 -= 1

    def gate(self, g: Gate) -> None:
        qs = g.qubits
        if g.kind == "H":
            self.hadamard(qs[0])
        elif g.kind == "X":
            self.hadamard(qs[0])
            self.add([self.front[qs[0]]], HALF)
            self.hadamard(qs[0])
        elif g.turns is not None:
            self.add([self.front[qs[0]]], g.turns)
        elif g.kind in ("CZ", "CCZ"):
            self.add([self.front[q] for q in qs], HALF)
        elif g.kind in ("CNOT", "TOF"):
            t = qs[-1]
            self.hadamard(t)
            self.add([self.front[q] for q in qs], HALF)
            self.hadamard(t)
        elif g.kind == "SWAP":
            a, b = qs
            self.front[a], self.front[b] = self.front[b], self.front[a]

    def build(self, n: int) -> PurePathSum:
        return PurePathSum(range(self.k), range(n), self.front, PhasePoly(self.terms),
                           ScalarFactor(self.pow2))


def circuit_to_pathsum(c: Circuit) -> PurePathSum:
    """Compose the minimal per-gate path-sums; only H (and H-conjugated gates) add variables."""
    b = _PathBuilder(c.n)
    for g in c.gates:
        b.gate(g)
    return b.build(c.n)
