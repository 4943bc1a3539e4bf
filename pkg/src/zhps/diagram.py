"""ZH-diagrams: raw generator-level terms and the hypergraph-like normal form.

A :class:`RawDiagram` is an undirected multigraph of generators (Z-spiders,
X-spiders, H-boxes) plus boundary vertices; wires may be parallel or loops.
Every generator used here is symmetric in its legs, so inputs and outputs
are told apart only through the ordered boundary lists.

A :class:`Diagram` is the hypergraph-like form: spiders are vertices,
H-boxes are hyperedges given by their neighbour sets.
"""

from __future__ import annotations

import cmath
import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .numeric import Phase, ScalarFactor

__all__ = [
    "HLabel",
    "Vertex",
    "RawDiagram",
    "Diagram",
    "compose_seq",
    "compose_par",
    "normalize",
    "reduce_parallel",
    "iso_equal",
    "hypergraph_violations",
    "cnot_zh",
]

HALF = Fraction(1, 2)
# unit-modulus complex labels within 1e-12 of p/q (q up to this) become exact phases
MAX_SNAP_DENOMINATOR = 1024


class HLabel:
    """Label of an H-box: either ``exp(2 pi i alpha)`` (exact or float phase) or a complex number."""

    __slots__ = ("phase", "value")

    def __init__(self, phase: Optional[Phase] = None, value: Optional[complex] = None) -> None:
        if (phase is None) == (value is None):
            raise ValueError("HLabel needs exactly one of phase or value")
        object.__setattr__(self, "phase", Phase(phase) if phase is not None else None)
        object.__setattr__(self, "value", complex(value) if value is not None else None)

    def __setattr__(self, name, value):
        raise AttributeError("HLabel is immutable")

    @classmethod
    def of_phase(cls, alpha) -> "HLabel":
        return cls(phase=Phase(alpha))

    @classmethod
    def unlabeled(cls) -> "HLabel":
        return cls(phase=Phase(HALF))

    @classmethod
    def general(cls, a: complex) -> "HLabel":
        return cls(value=a)

    @property
    def is_phase(self) -> bool:
        return self.phase is not None

    def is_unlabeled(self) -> bool:
        return self.is_phase and self.phase == Phase(HALF)

    def is_one(self) -> bool:
        if self.is_phase:
            return self.phase.is_zero()
        return abs(self.value - 1) < 1e-12

    def is_zero(self) -> bool:
        return not self.is_phase and abs(self.value) < 1e-15

    def to_complex(self) -> complex:
        return self.phase.to_complex() if self.is_phase else self.value

    def as_phase(self) -> Optional[Phase]:
        """Phase of a unit-modulus label, or None."""
        if self.is_phase:
            return self.phase
        if abs(abs(self.value) - 1) > 1e-12:
            return None
        turns = cmath.phase(self.value) / (2 * math.pi)
        snapped = Fraction(turns).limit_denominator(MAX_SNAP_DENOMINATOR)
        if abs(float(snapped) - turns) < 1e-12:
            return Phase(snapped)
        return Phase(turns)

    def __mul__(self, other: "HLabel") -> "HLabel":
        if self.is_phase and other.is_phase:
            return HLabel(phase=self.phase + other.phase)
        return HLabel(value=self.to_complex() * other.to_complex())

    def __pow__(self, k: int) -> "HLabel":
        if self.is_phase:
            return HLabel(phase=self.phase * k)
        if k < 0 and self.is_zero():
            raise ZeroDivisionError("negative power of a zero label")
        return HLabel(value=self.value ** k)

    def conjugate(self) -> "HLabel":
        if self.is_phase:
            return HLabel(phase=-self.phase)
        return HLabel(value=self.value.conjugate())

    def as_scalar(self) -> ScalarFactor:
        if self.is_phase:
            return ScalarFactor(phase=self.phase)
        return ScalarFactor(extras=[self.value])

    def key(self):
        """Hashable exact-where-possible identity used for canonical forms."""
        if self.is_phase and self.phase.exact:
            return ("p", self.phase.value)
        z = self.to_complex()
        return ("c", round(z.real, 9) + 0.0, round(z.imag, 9) + 0.0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HLabel):
            return NotImplemented
        if self.is_phase and other.is_phase:
            return self.phase == other.phase
        return abs(self.to_complex() - other.to_complex()) < 1e-12

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        if self.is_phase:
            return f"HLabel(phase={str(self.phase)})"
        return f"HLabel(value={self.value!r})"

    def to_json(self) -> dict:
        if self.is_phase:
            return {"phase": self.phase.to_json()}
        return {"re": self.value.real, "im": self.value.imag}

    @classmethod
    def from_json(cls, obj: dict) -> "HLabel":
        if "phase" in obj:
            return cls(phase=Phase.from_json(obj["phase"]))
        return cls(value=complex(obj["re"], obj.get("im", 0.0)))


# -- raw diagrams ---------------------------------------------------------------

@dataclass(frozen=True)
class Vertex:
    """A generator. ``kind`` is one of ``"Z"``, ``"X"``, ``"H"``, ``"B"`` (boundary).

    Z and X carry a :class:`Phase` (the X-spider with phase 1/2 is NOT when it
    has two legs); H carries an :class:`HLabel`.
    """

    kind: str
    param: object = None


class RawDiagram:
    """General ZH term: generators, wires between them and ordered boundaries."""

    def __init__(self) -> None:
        self.vertices: Dict[int, Vertex] = {}
        self.edges: Dict[int, Tuple[int, int]] = {}
        self.inputs: List[int] = []
        self.outputs: List[int] = []
        self.scalar = ScalarFactor()
        self._next_v = 0
        self._next_e = 0

    # construction
    def add_vertex(self, kind: str, param=None) -> int:
        if kind in ("Z", "X"):
            param = Phase(param if param is not None else 0)
        elif kind == "H":
            param = param if isinstance(param, HLabel) else (
                HLabel.unlabeled() if param is None else HLabel.of_phase(param))
        elif kind != "B":
            raise ValueError(f"unknown generator kind {kind!r}")
        v = self._next_v
        self._next_v += 1
        self.vertices[v] = Vertex(kind, param)
        return v

    def add_edge(self, u: int, v: int) -> int:
        if u not in self.vertices or v not in self.vertices:
            raise KeyError("edge endpoint does not exist")
        e = self._next_e
        self._next_e += 1
        self.edges[e] = (u, v)
        return e

    def add_input(self) -> int:
        b = self.add_vertex("B")
        self.inputs.append(b)
        return b

    def add_output(self) -> int:
        b = self.add_vertex("B")
        self.outputs.append(b)
        return b

    def remove_edge(self, e: int) -> None:
        del self.edges[e]

    def remove_vertex(self, v: int) -> None:
        for e in self.incident(v):
            del self.edges[e]
        del self.vertices[v]

    def copy(self) -> "RawDiagram":
        d = RawDiagram()
        d.vertices = dict(self.vertices)
        d.edges = dict(self.edges)
        d.inputs = list(self.inputs)
        d.outputs = list(self.outputs)
        d.scalar = self.scalar
        d._next_v = self._next_v
        d._next_e = self._next_e
        return d

    # queries
    def incident(self, v: int) -> List[int]:
        return [e for e, (a, b) in self.edges.items() if a == v or b == v]

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges.values())

    def neighbors(self, v: int) -> List[int]:
        """Neighbour multiset (a loop lists ``v`` twice)."""
        out = []
        for a, b in self.edges.values():
            if a == v:
                out.append(b)
            if b == v:
                out.append(a)
        return out

    def kind(self, v: int) -> str:
        return self.vertices[v].kind

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    @property
    def arity(self) -> Tuple[int, int]:
        return len(self.inputs), len(self.outputs)

    def check(self) -> None:
        for b in self.inputs + self.outputs:
            if self.kind(b) != "B" or self.degree(b) != 1:
                raise ValueError(f"boundary {b} must be a B vertex with one wire")
        boundaries = {v for v, x in self.vertices.items() if x.kind == "B"}
        if boundaries != set(self.inputs) | set(self.outputs) or \
                len(self.inputs) + len(self.outputs) != len(boundaries):
            raise ValueError("boundary vertices must appear exactly once in inputs/outputs")

    def relabeled(self, offset: int) -> "RawDiagram":
        d = RawDiagram()
        d.vertices = {v + offset: x for v, x in self.vertices.items()}
        d.edges = {e + offset: (a + offset, b + offset) for e, (a, b) in self.edges.items()}
        d.inputs = [v + offset for v in self.inputs]
        d.outputs = [v + offset for v in self.outputs]
        d.scalar = self.scalar
        d._next_v = self._next_v + offset
        d._next_e = self._next_e + offset
        return d

    def __repr__(self) -> str:
        kinds = Counter(x.kind for x in self.vertices.values())
        return (f"RawDiagram({dict(kinds)}, edges={len(self.edges)}, "
                f"in={len(self.inputs)}, out={len(self.outputs)}, scalar={self.scalar!r})")

    # generator constructors
    @classmethod
    def _generator(cls, kind: str, param, n_in: int, n_out: int) -> "RawDiagram":
        d = cls()
        g = d.add_vertex(kind, param)
        for _ in range(n_in):
            d.add_edge(d.add_input(), g)
        for _ in range(n_out):
            d.add_edge(g, d.add_output())
        return d

    @classmethod
    def z_spider(cls, n_in: int, n_out: int, phase=0) -> "RawDiagram":
        return cls._generator("Z", phase, n_in, n_out)

    @classmethod
    def x_spider(cls, n_in: int, n_out: int, phase=0) -> "RawDiagram":
        return cls._generator("X", phase, n_in, n_out)

    @classmethod
    def h_box(cls, n_in: int, n_out: int, label: Union[HLabel, None] = None) -> "RawDiagram":
        return cls._generator("H", label, n_in, n_out)

    @classmethod
    def hadamard(cls) -> "RawDiagram":
        """Unlabeled arity-2 H-box; equals sqrt(2) times the unitary Hadamard."""
        return cls.h_box(1, 1)

    @classmethod
    def not_gate(cls) -> "RawDiagram":
        return cls.x_spider(1, 1, HALF)

    @classmethod
    def identity(cls, n: int = 1) -> "RawDiagram":
        d = cls()
        ins = [d.add_input() for _ in range(n)]
        outs = [d.add_output() for _ in range(n)]
        for a, b in zip(ins, outs):
            d.add_edge(a, b)
        return d

    @classmethod
    def swap(cls) -> "RawDiagram":
        d = cls()
        a, b = d.add_input(), d.add_input()
        c, e = d.add_output(), d.add_output()
        d.add_edge(a, e)
        d.add_edge(b, c)
        return d

    @classmethod
    def empty(cls) -> "RawDiagram":
        return cls()


def _join_boundaries(d: RawDiagram, b1: int, b2: int) -> None:
    """Remove boundary vertices b1, b2 and wire their neighbours together."""
    (e1,) = d.incident(b1)
    n1 = d.other_end(e1, b1)
    if n1 == b2:
        # closed loop: trace of the identity wire
        d.remove_vertex(b1)
        d.remove_vertex(b2)
        d.scalar = d.scalar.times(pow2=2)
        return
    (e2,) = d.incident(b2)
    n2 = d.other_end(e2, b2)
    d.remove_vertex(b1)
    d.remove_vertex(b2)
    d.add_edge(n1, n2)


def compose_seq(d1: RawDiagram, d2: RawDiagram) -> RawDiagram:
    """``d1`` followed by ``d2``: outputs of ``d1`` are plugged into inputs of ``d2``."""
    if len(d1.outputs) != len(d2.inputs):
        raise ValueError(f"arity mismatch: {len(d1.outputs)} outputs vs {len(d2.inputs)} inputs")
    d = d1.copy()
    other = d2.relabeled(max(d._next_v, d._next_e))
    d.vertices.update(other.vertices)
    d.edges.update(other.edges)
    d._next_v = other._next_v
    d._next_e = other._next_e
    d.scalar = d1.scalar * d2.scalar
    for b1, b2 in zip(d1.outputs, other.inputs):
        _join_boundaries(d, b1, b2)
    d.outputs = list(other.outputs)
    return d


def compose_par(d1: RawDiagram, d2: RawDiagram) -> RawDiagram:
    """Tensor product; boundary lists concatenate."""
    d = d1.copy()
    other = d2.relabeled(max(d._next_v, d._next_e))
    d.vertices.update(other.vertices)
    d.edges.update(other.edges)
    d._next_v = other._next_v
    d._next_e = other._next_e
    d.inputs = d1.inputs + other.inputs
    d.outputs = d1.outputs + other.outputs
    d.scalar = d1.scalar * d2.scalar
    return d


# -- hypergraph-like diagrams ------------------------------------------------------

class Diagram:
    """Hypergraph-like ZH-diagram.

    ``hboxes`` maps an id to ``(label, neighbours)``; ``inputs`` and
    ``outputs`` list the spider each boundary wire attaches to (repeats allowed).
    """

    __slots__ = ("spiders", "hboxes", "inputs", "outputs", "scalar")

    def __init__(self, spiders: Iterable[int] = (),
                 hboxes: Optional[Dict[int, Tuple[HLabel, Iterable[int]]]] = None,
                 inputs: Sequence[int] = (), outputs: Sequence[int] = (),
                 scalar: Optional[ScalarFactor] = None) -> None:
        self.spiders = set(spiders)
        self.hboxes: Dict[int, Tuple[HLabel, FrozenSet[int]]] = {
            h: (lab, frozenset(nb)) for h, (lab, nb) in (hboxes or {}).items()}
        self.inputs = list(inputs)
        self.outputs = list(outputs)
        self.scalar = scalar if scalar is not None else ScalarFactor()
        for h, (_, nb) in self.hboxes.items():
            if not nb <= self.spiders:
                raise ValueError(f"H-box {h} references unknown spiders {sorted(nb - self.spiders)}")
        for s in self.inputs + self.outputs:
            if s not in self.spiders:
                raise ValueError(f"boundary references unknown spider {s}")

    def copy(self) -> "Diagram":
        return Diagram(self.spiders, dict(self.hboxes), self.inputs, self.outputs, self.scalar)

    def boundary_spiders(self) -> set:
        return set(self.inputs) | set(self.outputs)

    def interior_spiders(self) -> List[int]:
        b = self.boundary_spiders()
        return sorted(s for s in self.spiders if s not in b)

    def boxes_at(self, s: int) -> List[int]:
        return sorted(h for h, (_, nb) in self.hboxes.items() if s in nb)

    def label(self, h: int) -> HLabel:
        return self.hboxes[h][0]

    def nbrs(self, h: int) -> FrozenSet[int]:
        return self.hboxes[h][1]

    def box_on(self, nbrs: Iterable[int]) -> Optional[int]:
        nbrs = frozenset(nbrs)
        for h, (_, nb) in self.hboxes.items():
            if nb == nbrs:
                return h
        return None

    def fresh_box_id(self) -> int:
        return max(self.hboxes, default=-1) + 1

    def fresh_spider_id(self) -> int:
        return max(self.spiders, default=-1) + 1

    def add_box(self, label: HLabel, nbrs: Iterable[int]) -> None:
        """Add an H-box, fusing with an existing box on the same spiders (M).

        Arity-0 boxes become scalars and boxes whose label reaches 1 vanish.
        """
        nbrs = frozenset(nbrs)
        if not nbrs:
            self.scalar = self.scalar * label.as_scalar()
            return
        h = self.box_on(nbrs)
        if h is not None:
            label = self.hboxes[h][0] * label
            del self.hboxes[h]
        if label.is_one():
            return
        self.hboxes[h if h is not None else self.fresh_box_id()] = (label, nbrs)

    def remove_spider(self, s: int) -> None:
        """Delete a spider; its boxes must already be gone."""
        if any(s in nb for _, nb in self.hboxes.values()):
            raise ValueError(f"spider {s} still has H-boxes")
        self.spiders.discard(s)

    def adjoint(self) -> "Diagram":
        boxes = {h: (lab.conjugate(), nb) for h, (lab, nb) in self.hboxes.items()}
        return Diagram(self.spiders, boxes, self.outputs, self.inputs, self.scalar.conjugate())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return (self.spiders == other.spiders and self.hboxes == other.hboxes
                and self.inputs == other.inputs and self.outputs == other.outputs
                and self.scalar == other.scalar)

    def __repr__(self) -> str:
        boxes = ", ".join(f"{h}:{lab!r}@{sorted(nb)}" for h, (lab, nb) in sorted(self.hboxes.items()))
        return (f"Diagram(spiders={sorted(self.spiders)}, hboxes={{{boxes}}}, "
                f"inputs={self.inputs}, outputs={self.outputs}, scalar={self.scalar!r})")

    def to_raw(self) -> RawDiagram:
        """Generator-level form (Z vertex per spider, H vertex per box)."""
        d = RawDiagram()
        zmap = {s: d.add_vertex("Z") for s in sorted(self.spiders)}
        for h in sorted(self.hboxes):
            lab, nb = self.hboxes[h]
            hv = d.add_vertex("H", lab)
            for s in sorted(nb):
                d.add_edge(hv, zmap[s])
        for s in self.inputs:
            d.add_edge(d.add_input(), zmap[s])
        for s in self.outputs:
            d.add_edge(zmap[s], d.add_output())
        d.scalar = self.scalar
        return d

    def to_json(self) -> dict:
        return {
            "spiders": sorted(self.spiders),
            "hboxes": [{"id": h, "label": lab.to_json(), "neighbors": sorted(nb)}
                       for h, (lab, nb) in sorted(self.hboxes.items())],
            "inputs": list(self.inputs),
            "outputs": list(self.outputs),
            "scalar": self.scalar.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Diagram":
        boxes = {int(b["id"]): (HLabel.from_json(b["label"]), [int(s) for s in b["neighbors"]])
                 for b in obj.get("hboxes", [])}
        scalar = ScalarFactor.from_json(obj["scalar"]) if "scalar" in obj else ScalarFactor()
        return cls([int(s) for s in obj.get("spiders", [])], boxes,
                   [int(s) for s in obj.get("inputs", [])], [int(s) for s in obj.get("outputs", [])],
                   scalar)

    def to_dot(self) -> str:
        lines = ["graph zh {"]
        for s in sorted(self.spiders):
            lines.append(f'  s{s} [shape=circle, label="{s}"];')
        for h, (lab, nb) in sorted(self.hboxes.items()):
            text = "" if lab.is_unlabeled() else (str(lab.phase) if lab.is_phase else f"{lab.value:.3g}")
            lines.append(f'  h{h} [shape=box, label="{text}"];')
            for s in sorted(nb):
                lines.append(f"  h{h} -- s{s};")
        for i, s in enumerate(self.inputs):
            lines.append(f'  in{i} [shape=plaintext, label="in{i}"];  in{i} -- s{s};')
        for i, s in enumerate(self.outputs):
            lines.append(f'  out{i} [shape=plaintext, label="out{i}"];  s{s} -- out{i};')
        lines.append("}")
        return "\n".join(lines)


def cnot_zh() -> RawDiagram:
    """CNOT as a control spider and a target spider joined by a Hadamard,
    the target spider sandwiched between two Hadamards; scalar 1/2 makes it exact."""
    d = RawDiagram()
    c = d.add_vertex("Z")
    t = d.add_vertex("Z")
    h_in, h_mid, h_out = d.add_vertex("H"), d.add_vertex("H"), d.add_vertex("H")
    c_in, t_in = d.add_input(), d.add_input()
    c_out, t_out = d.add_output(), d.add_output()
    d.add_edge(c_in, c)
    d.add_edge(c, c_out)
    d.add_edge(t_in, h_in)
    d.add_edge(h_in, t)
    d.add_edge(t, h_out)
    d.add_edge(h_out, t_out)
    d.add_edge(c, h_mid)
    d.add_edge(h_mid, t)
    d.scalar = ScalarFactor(pow2=-2)
    return d


# -- normalization ------------------------------------------------------------------

def _expand_derived(d: RawDiagram) -> None:
    """X-spiders and phased Z-spiders in terms of phase-free Z-spiders and H-boxes.

    X_a with k legs is 1/2 times Z_a with a Hadamard on every leg; Z_a is a
    phase-free Z-spider carrying an arity-1 H-box labelled exp(2 pi i a).
    """
    for v in list(d.vertices):
        x = d.vertices[v]
        if x.kind == "X":
            d.vertices[v] = Vertex("Z", Phase(0))
            for e in d.incident(v):
                a, b = d.edges[e]
                if a == v and b == v:
                    # loop on an X-spider: two Hadamards in series along it
                    h1, h2 = d.add_vertex("H"), d.add_vertex("H")
                    del d.edges[e]
                    d.add_edge(v, h1)
                    d.add_edge(h1, h2)
                    d.add_edge(h2, v)
                    continue
                w = b if a == v else a
                h = d.add_vertex("H")
                del d.edges[e]
                d.add_edge(v, h)
                d.add_edge(h, w)
            d.scalar = d.scalar.times(pow2=-2)
            if not x.param.is_zero():
                d.add_edge(v, d.add_vertex("H", HLabel(phase=x.param)))
        elif x.kind == "Z" and not x.param.is_zero():
            d.vertices[v] = Vertex("Z", Phase(0))
            d.add_edge(v, d.add_vertex("H", HLabel(phase=x.param)))


def _is_hadamard(d: RawDiagram, v: int) -> bool:
    x = d.vertices[v]
    return x.kind == "H" and x.param.is_unlabeled() and d.degree(v) == 2


def _cancel_hadamard_pairs(d: RawDiagram) -> None:
    """(HS2): two Hadamards in series are twice a plain wire."""
    changed = True
    while changed:
        changed = False
        for v in sorted(d.vertices):
            if v not in d.vertices or not _is_hadamard(d, v):
                continue
            nbs = d.neighbors(v)
            if v in nbs:
                continue
            for w in nbs:
                if w == v or not _is_hadamard(d, w) or d.neighbors(w).count(v) != 1 \
                        or nbs.count(w) != 1:
                    continue
                (a,) = [n for n in nbs if n != w]
                (b,) = [n for n in d.neighbors(w) if n != v]
                d.remove_vertex(v)
                d.remove_vertex(w)
                d.add_edge(a, b)
                d.scalar = d.scalar.times(pow2=2)
                changed = True
                break


def _fuse_z(d: RawDiagram) -> None:
    """(ZS1): merge Z-spiders joined by wires; loops on a spider disappear."""
    parent = {}

    def find(v):
        while parent.get(v, v) != v:
            v = parent[v]
        return v

    for a, b in d.edges.values():
        if d.kind(a) == "Z" and d.kind(b) == "Z":
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    new_edges = {}
    for e, (a, b) in d.edges.items():
        if d.kind(a) == "Z":
            a = find(a)
        if d.kind(b) == "Z":
            b = find(b)
        if a == b and d.kind(a) == "Z":
            continue
        new_edges[e] = (a, b)
    d.edges = new_edges
    for v in list(parent):
        if find(v) != v:
            del d.vertices[v]


def _insert_identities(d: RawDiagram) -> None:
    """(ZS2): put an identity spider on every wire that is not spider-to-H or spider-to-boundary."""
    for e, (a, b) in list(d.edges.items()):
        ka, kb = d.kind(a), d.kind(b)
        if (ka == "Z") != (kb == "Z"):
            continue
        if ka == "Z" and kb == "Z":
            continue  # already fused away
        z = d.add_vertex("Z")
        del d.edges[e]
        d.add_edge(a, z)
        d.add_edge(z, b)


def reduce_parallel(d: RawDiagram, hbox: int, spider: int) -> RawDiagram:
    """Keep a single wire between an H-box and a Z-spider.

    The spider feeds the same bit into each parallel leg, and an H-box only
    looks at whether all of its legs are 1, so the extra legs are redundant.
    """
    if d.kind(hbox) != "H" or d.kind(spider) != "Z":
        raise ValueError("reduce_parallel needs an H-box and a Z-spider")
    wires = [e for e in d.incident(hbox) if d.other_end(e, hbox) == spider and hbox != spider]
    out = d.copy()
    for e in wires[1:]:
        out.remove_edge(e)
    return out


def normalize(d: Union[RawDiagram, Diagram]) -> Diagram:
    """Bring a ZH term into hypergraph-like form, tracking the exact scalar."""
    if isinstance(d, Diagram):
        d = d.to_raw()
    d = d.copy()
    d.check()
    _expand_derived(d)
    _cancel_hadamard_pairs(d)
    _fuse_z(d)
    _insert_identities(d)
    spiders = {v for v, x in d.vertices.items() if x.kind == "Z"}
    scalar = d.scalar
    boxes: List[Tuple[HLabel, FrozenSet[int]]] = []
    for v, x in sorted(d.vertices.items()):
        if x.kind == "H":
            # parallel wires collapse (see reduce_parallel)
            boxes.append((x.param, frozenset(d.neighbors(v))))
    inputs = [d.neighbors(b)[0] for b in d.inputs]
    outputs = [d.neighbors(b)[0] for b in d.outputs]
    out = Diagram(spiders, {}, inputs, outputs, scalar)
    for lab, nb in boxes:
        out.add_box(lab, nb)
    out.hboxes = {i: out.hboxes[h] for i, h in enumerate(sorted(out.hboxes))}
    _fold_isolated(out)
    return out


def _fold_isolated(d: Diagram) -> None:
    """An interior spider with no H-box is the scalar 2."""
    used = d.boundary_spiders()
    for _, nb in d.hboxes.values():
        used |= nb
    for s in sorted(d.spiders - used):
        d.spiders.discard(s)
        d.scalar = d.scalar.times(pow2=2)


def hypergraph_violations(d: Union[Diagram, RawDiagram]) -> List[str]:
    """Check the five hypergraph-like conditions on the generator-level form."""
    raw = d.to_raw() if isinstance(d, Diagram) else d
    problems = []
    for v, x in raw.vertices.items():
        if x.kind not in ("Z", "H", "B"):
            problems.append(f"vertex {v} is a {x.kind}-generator, not a Z-spider")
        elif x.kind == "Z" and not x.param.is_zero():
            problems.append(f"spider {v} carries a phase")
    for b in raw.inputs + raw.outputs:
        for n in raw.neighbors(b):
            if raw.kind(n) != "Z":
                problems.append(f"boundary {b} attached to a {raw.kind(n)}-vertex")
    for e, (a, b) in raw.edges.items():
        kinds = {raw.kind(a), raw.kind(b)}
        if kinds != {"Z", "H"} and "B" not in kinds:
            problems.append(f"wire {e} joins {raw.kind(a)} and {raw.kind(b)}")
    pairs = Counter()
    for a, b in raw.edges.values():
        if {raw.kind(a), raw.kind(b)} == {"Z", "H"}:
            pairs[frozenset((a, b))] += 1
    problems += [f"parallel wires between {sorted(p)}" for p, c in pairs.items() if c > 1]
    nsets = Counter(frozenset(raw.neighbors(v)) for v, x in raw.vertices.items() if x.kind == "H")
    problems += [f"H-boxes share neighbours {sorted(s)}" for s, c in nsets.items() if c > 1]
    return problems


# -- isomorphism -----------------------------------------------------------------

def _iso_graph(d: Diagram) -> nx.Graph:
    g = nx.Graph()
    ins, outs = defaultdict(list), defaultdict(list)
    for i, s in enumerate(d.inputs):
        ins[s].append(i)
    for i, s in enumerate(d.outputs):
        outs[s].append(i)
    for s in d.spiders:
        g.add_node(("s", s), tag=("s", tuple(ins[s]), tuple(outs[s])))
    for h, (lab, nb) in d.hboxes.items():
        g.add_node(("h", h), tag=("h", lab.key()))
        for s in nb:
            g.add_edge(("h", h), ("s", s))
    return g


def iso_equal(d1: Diagram, d2: Diagram) -> bool:
    """Equality up to renaming spiders and H-boxes."""
    if (len(d1.spiders), len(d1.hboxes), len(d1.inputs), len(d1.outputs)) != \
            (len(d2.spiders), len(d2.hboxes), len(d2.inputs), len(d2.outputs)):
        return False
    if d1.scalar != d2.scalar:
        return False
    g1, g2 = _iso_graph(d1), _iso_graph(d2)
    for g in (g1, g2):
        for n, data in g.nodes(data=True):
            data["wl"] = str(data["tag"])
    if nx.weisfeiler_lehman_graph_hash(g1, node_attr="wl") != \
            nx.weisfeiler_lehman_graph_hash(g2, node_attr="wl"):
        return False
    return nx.is_isomorphic(g1, g2, node_match=lambda a, b: a["tag"] == b["tag"])
