"""Brute-force dense evaluation: the ground truth for every rewrite.

Matrices map inputs to outputs: ``rows = 2**len(outputs)``,
``cols = 2**len(inputs)``; the first boundary wire is the most significant bit.
"""

from __future__ import annotations

import enum
import os
import string
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np

from .diagram import Diagram, RawDiagram
from .pathsum import PurePathSum

__all__ = [
    "OracleCapExceeded",
    "default_cap",
    "eval_pathsum",
    "eval_diagram",
    "compare",
    "Mode",
    "Comparison",
]


class OracleCapExceeded(RuntimeError):
    pass


def default_cap() -> int:
    return int(os.environ.get("ZHPS_ORACLE_CAP", "20"))


def eval_pathsum(e: PurePathSum, cap: Optional[int] = None) -> np.ndarray:
    """Sum ``exp(2 pi i phi(x))`` over all assignments into ``|x_o><x_i|``."""
    cap = default_cap() if cap is None else cap
    k = e.num_vars
    if k > cap:
        raise OracleCapExceeded(f"{k} path variables exceed the oracle cap of {cap}")
    n_out, n_in = len(e.outputs), len(e.inputs)
    if n_out + n_in > max(cap, 2):
        raise OracleCapExceeded(f"{n_out + n_in} boundary wires exceed the oracle cap of {cap}")
    col = {v: i for i, v in enumerate(e.vars)}
    idx = np.arange(1 << k, dtype=np.int64)
    bits = ((idx[:, None] >> np.arange(k)[None, :]) & 1).astype(bool) if k else np.zeros((1, 0), bool)
    phase = np.zeros(len(idx), dtype=float)
    for m, c in e.phi.terms.items():
        sel = np.ones(len(idx), dtype=bool)
        for v in m:
            sel &= bits[:, col[v]]
        phase[sel] += float(c)
    amps = np.exp(2j * np.pi * phase)
    row = np.zeros(len(idx), dtype=np.int64)
    for v in e.outputs:
        row = (row << 1) | bits[:, col[v]]
    colix = np.zeros(len(idx), dtype=np.int64)
    for v in e.inputs:
        colix = (colix << 1) | bits[:, col[v]]
    out = np.zeros((1 << n_out, 1 << n_in), dtype=complex)
    np.add.at(out, (row, colix), amps)
    return out * e.scalar.to_complex()


# -- tensor networks -----------------------------------------------------------------

def _vertex_tensor(kind: str, param, k: int) -> np.ndarray:
    if kind == "Z":
        t = np.zeros((2,) * k, dtype=complex)
        if k == 0:
            return np.array(1 + param.to_complex())
        t[(0,) * k] = 1
        t[(1,) * k] += param.to_complex()
        return t
    if kind == "X":
        idx = np.indices((2,) * k).sum(axis=0) if k else np.array(0)
        return (1 + param.to_complex() * (-1.0) ** idx) / 2 + 0j
    if kind == "H":
        t = np.ones((2,) * k, dtype=complex)
        if k == 0:
            return np.array(param.to_complex())
        t[(1,) * k] = param.to_complex()
        return t
    raise ValueError(kind)


def _contract(tensors: List[Tuple[np.ndarray, List[int]]], open_labels: List[int],
              max_rank: int) -> np.ndarray:
    """Greedy pairwise contraction; every non-open label occurs exactly twice."""
    letters = string.ascii_letters

    def einsum(ops, out_labels):
        used = sorted({l for _, ls in ops for l in ls} | set(out_labels))
        if len(used) > len(letters):
            raise OracleCapExceeded("tensor network too wide for the oracle")
        sym = {l: letters[i] for i, l in enumerate(used)}
        spec = ",".join("".join(sym[l] for l in ls) for _, ls in ops) + "->" + "".join(sym[l] for l in out_labels)
        return np.einsum(spec, *[t for t, _ in ops])

    opens = set(open_labels)
    work = []
    for t, ls in tensors:
        # traces of loops on a single generator
        counts = {l: ls.count(l) for l in ls}
        keep = [l for l in dict.fromkeys(ls) if counts[l] == 1]
        if len(keep) != len(ls):
            t = einsum([(t, ls)], keep)
            ls = keep
        work.append((t, ls))

    while len(work) > 1:
        best = None
        for i in range(len(work)):
            si = set(work[i][1])
            for j in range(i + 1, len(work)):
                shared = si & set(work[j][1])
                if not shared:
                    continue
                rank = len(si ^ set(work[j][1]))
                if best is None or rank < best[0]:
                    best = (rank, i, j, shared)
        if best is None:
            # disconnected pieces: outer product of the two smallest
            work.sort(key=lambda w: len(w[1]))
            (a, la), (b, lb) = work[0], work[1]
            work = work[2:] + [(np.multiply.outer(a, b), la + lb)]
            continue
        rank, i, j, shared = best
        if rank > max_rank:
            raise OracleCapExceeded(f"intermediate tensor of rank {rank} exceeds cap {max_rank}")
        (a, la), (b, lb) = work[i], work[j]
        out_ls = [l for l in la if l not in shared] + [l for l in lb if l not in shared]
        t = einsum([(a, la), (b, lb)], out_ls)
        work = [w for k, w in enumerate(work) if k not in (i, j)] + [(t, out_ls)]

    t, ls = work[0] if work else (np.array(1 + 0j), [])
    assert set(ls) == opens
    return np.transpose(t, [ls.index(l) for l in open_labels]) if ls else t


def eval_diagram(d: Union[RawDiagram, Diagram], cap: Optional[int] = None) -> np.ndarray:
    """Contract the generator tensors of a diagram along its wires."""
    cap = default_cap() if cap is None else cap
    raw = d.to_raw() if isinstance(d, Diagram) else d
    n_in, n_out = len(raw.inputs), len(raw.outputs)
    if n_in + n_out > max(cap, 2):
        raise OracleCapExceeded(f"{n_in + n_out} boundary wires exceed the oracle cap of {cap}")
    ends = {v: [] for v in raw.vertices}
    for e, (a, b) in raw.edges.items():
        ends[a].append(e)
        ends[b].append(e)
    tensors = []
    label_base = max(raw.edges, default=-1) + 1
    open_of = {}
    for v, x in raw.vertices.items():
        if x.kind == "B":
            o = label_base + v
            open_of[v] = o
            tensors.append((np.eye(2, dtype=complex), [o, ends[v][0]]))
        else:
            tensors.append((_vertex_tensor(x.kind, x.param, len(ends[v])), list(ends[v])))
    open_labels = [open_of[b] for b in raw.outputs] + [open_of[b] for b in raw.inputs]
    t = _contract(tensors, open_labels, max_rank=max(cap, 2) + 4)
    return np.asarray(t).reshape(1 << n_out, 1 << n_in) * raw.scalar.to_complex()


# -- comparison ------------------------------------------------------------------------

class Mode(str, enum.Enum):
    EXACT = "exact"
    GLOBAL_PHASE = "global-phase"


@dataclass
class Comparison:
    status: str  # "Equal", "Unequal", "ShapeMismatch"
    max_abs_diff: float = 0.0
    witness: Optional[Tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.status == "Equal"


def compare(a: np.ndarray, b: np.ndarray, mode: Union[Mode, str] = Mode.EXACT,
            tol: float = 1e-9) -> Comparison:
    """Entrywise comparison, optionally after dividing out a global phase."""
    mode = Mode(mode)
    if a.shape != b.shape:
        return Comparison("ShapeMismatch", float("inf"))
    if mode is Mode.GLOBAL_PHASE:
        overlap = np.vdot(b, a)
        if abs(overlap) > 1e-15:
            b = b * (overlap / abs(overlap))
    diff = np.abs(a - b)
    if diff.size == 0:
        return Comparison("Equal")
    worst = float(diff.max())
    if worst <= tol:
        return Comparison("Equal", worst)
    w = np.unravel_index(int(diff.argmax()), diff.shape)
    return Comparison("Unequal", worst, (int(w[0]), int(w[1])))
