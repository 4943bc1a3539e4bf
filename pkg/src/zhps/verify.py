"""Equivalence checking: rewrite ``B^dagger A`` to the identity, else ask the oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .circuits import Circuit, adjoint, circuit_to_diagram, circuit_to_pathsum
from .diagram import Diagram, RawDiagram, compose_seq, normalize
from .numeric import ScalarFactor
from .oracle import Comparison, Mode, OracleCapExceeded, compare, default_cap, eval_diagram, eval_pathsum
from .pathsum import PurePathSum, adjoint_pathsum, compose_pathsums
from .rules.strategy import simplify, simplify_diagram
from .rules.trace import RewriteTrace
from .translate import pathsum_to_zh

__all__ = ["Verdict", "verify", "evaluate", "is_identity_pathsum", "is_identity_diagram"]

Operand = Union[Circuit, PurePathSum, Diagram, RawDiagram]

EQUAL = "Equal"
EQUAL_PHASE = "EqualUpToGlobalPhase"
NOT_PROVEN = "NotProven"
UNEQUAL = "Unequal"

EXIT_CODES = {EQUAL: 0, EQUAL_PHASE: 0, NOT_PROVEN: 1, UNEQUAL: 2}


@dataclass
class Verdict:
    status: str
    method: str  # "rewrite" or "oracle" or "none"
    trace: RewriteTrace = field(default_factory=RewriteTrace)
    evidence: Optional[Comparison] = None
    residue: Optional[object] = None

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> dict:
        out = {"status": self.status, "method": self.method, "trace": self.trace.to_json()}
        if self.evidence is not None:
            out["max_abs_diff"] = self.evidence.max_abs_diff
            if self.evidence.witness is not None:
                out["witness"] = list(self.evidence.witness)
        return out


def _scalar_status(s: ScalarFactor, mode: Mode) -> Optional[str]:
    if s.is_one():
        return EQUAL
    if mode is Mode.GLOBAL_PHASE and s.pow2 == 0 and s.is_unit_modulus():
        return EQUAL_PHASE
    return None


def _identity_wiring(inputs, outputs, nodes) -> bool:
    return list(inputs) == list(outputs) and len(set(inputs)) == len(inputs) \
        and set(nodes) == set(inputs)


def is_identity_pathsum(e: PurePathSum, mode: Mode = Mode.EXACT) -> Optional[str]:
    if e.phi.terms or not _identity_wiring(e.inputs, e.outputs, e.vars):
        return None
    return _scalar_status(e.scalar, Mode(mode))


def is_identity_diagram(d: Diagram, mode: Mode = Mode.EXACT) -> Optional[str]:
    if d.hboxes or not _identity_wiring(d.inputs, d.outputs, d.spiders):
        return None
    return _scalar_status(d.scalar, Mode(mode))


def evaluate(x: Operand, cap: Optional[int] = None) -> np.ndarray:
    """Dense matrix of any operand; path-sums too wide to enumerate are contracted as diagrams."""
    cap = default_cap() if cap is None else cap
    if isinstance(x, Circuit):
        return eval_diagram(circuit_to_diagram(x), cap)
    if isinstance(x, PurePathSum):
        try:
            return eval_pathsum(x, cap)
        except OracleCapExceeded:
            return eval_diagram(pathsum_to_zh(x), cap)
    return eval_diagram(x, cap)


def _arity(x: Operand):
    if isinstance(x, Circuit):
        return x.n, x.n
    return len(x.inputs), len(x.outputs)


def _as_pathsum(x: Operand) -> PurePathSum:
    from .translate import zh_to_pathsum
    if isinstance(x, Circuit):
        return circuit_to_pathsum(x)
    if isinstance(x, PurePathSum):
        return x
    return zh_to_pathsum(normalize(x) if isinstance(x, RawDiagram) else x)


def _as_diagram(x: Operand) -> Diagram:
    if isinstance(x, Circuit):
        return normalize(circuit_to_diagram(x))
    if isinstance(x, PurePathSum):
        return pathsum_to_zh(x)
    return normalize(x) if isinstance(x, RawDiagram) else x


def verify(a: Operand, b: Operand, mode: Union[Mode, str] = Mode.EXACT,
           oracle_cap: Optional[int] = None, engine: str = "pathsum",
           use_oracle: bool = True) -> Verdict:
    """Decide ``a == b`` (or equality up to a global phase).

    The rewrite proof simplifies ``b^dagger a`` and looks for the identity;
    it is only sound when ``b`` is unitary, so it is attempted for circuit
    operands only. Anything else goes to the oracle, which compares ``a``
    and ``b`` directly.
    """
    mode = Mode(mode)
    if _arity(a) != _arity(b):
        raise ValueError(f"arity mismatch: {_arity(a)} vs {_arity(b)}")
    trace = RewriteTrace()
    residue = None
    if isinstance(b, Circuit):
        if engine == "pathsum":
            comp = compose_pathsums(_as_pathsum(a), adjoint_pathsum(_as_pathsum(b)))
            residue, trace = simplify(comp)
            status = is_identity_pathsum(residue, mode)
        elif engine == "diagram":
            da, db = _as_diagram(a), _as_diagram(b)
            comp = normalize(compose_seq(da.to_raw(), db.adjoint().to_raw()))
            residue, trace = simplify_diagram(comp)
            status = is_identity_diagram(residue, mode)
        else:
            raise ValueError(f"unknown engine {engine!r}")
        if status is not None:
            return Verdict(status, "rewrite", trace, residue=residue)
    if not use_oracle:
        return Verdict(NOT_PROVEN, "none", trace, residue=residue)
    try:
        ma, mb = evaluate(a, oracle_cap), evaluate(b, oracle_cap)
    except OracleCapExceeded:
        return Verdict(NOT_PROVEN, "none", trace, residue=residue)
    exact = compare(ma, mb, Mode.EXACT)
    if exact:
        return Verdict(EQUAL, "oracle", trace, exact, residue)
    if mode is Mode.GLOBAL_PHASE:
        loose = compare(ma, mb, Mode.GLOBAL_PHASE)
        if loose:
            return Verdict(EQUAL_PHASE, "oracle", trace, loose, residue)
    return Verdict(UNEQUAL, "oracle", trace, exact, residue)
