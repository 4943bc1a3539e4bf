"""Seeded random instances, mostly constructed to sit inside a rule's precondition."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .diagram import Diagram, HLabel, RawDiagram
from .numeric import Phase, ScalarFactor
from .pathsum import PhasePoly, PurePathSum

__all__ = [
    "random_phase",
    "random_pathsum",
    "PATHSUM_INSTANCES",
    "DIAGRAM_INSTANCES",
    "BASIC_INSTANCES",
    "random_circuit_text",
    "random_raw_diagram",
]

PHASES = [Fraction(k, 8) for k in range(1, 8)]


def random_phase(rng: random.Random, halves: float = 0.3) -> Fraction:
    if rng.random() < halves:
        return Fraction(1, 2)
    return rng.choice(PHASES)


def _monomial(rng: random.Random, pool: Sequence[int], max_deg: int = 3, allow_empty=False):
    lo = 0 if allow_empty else 1
    k = rng.randint(lo, min(max_deg, len(pool)))
    return frozenset(rng.sample(list(pool), k))


def _signature(rng: random.Random, pool: Sequence[int], max_in=2, max_out=2):
    pool = list(pool)
    ins = rng.sample(pool, rng.randint(0, min(max_in, len(pool)))) if pool else []
    outs = [rng.choice(pool) for _ in range(rng.randint(0, max_out))] if pool else []
    return ins, outs


def random_pathsum(rng: random.Random, k: Optional[int] = None, terms: Optional[int] = None
                   ) -> PurePathSum:
    k = rng.randint(1, 6) if k is None else k
    phi = {}
    for _ in range(rng.randint(0, 6) if terms is None else terms):
        m = _monomial(rng, range(k))
        phi[m] = phi.get(m, 0) + random_phase(rng)
    ins, outs = _signature(rng, range(k))
    return PurePathSum(range(k), ins, outs, PhasePoly(phi),
                       ScalarFactor(rng.randint(-2, 2), Fraction(rng.randrange(8), 8)))


def _background(rng: random.Random, n_x: int, avoid=()) -> Tuple[Dict, list, list]:
    """Random phase terms over the variables ``0..n_x-1`` plus a signature."""
    phi = {}
    for _ in range(rng.randint(0, 4)):
        m = _monomial(rng, range(n_x)) if n_x else frozenset()
        if m:
            phi[m] = phi.get(m, 0) + random_phase(rng)
    ins, outs = _signature(rng, range(n_x)) if n_x else ([], [])
    return phi, ins, outs


def _add(phi: Dict, m, c) -> None:
    phi[frozenset(m)] = phi.get(frozenset(m), 0) + c


def elim_instance(rng: random.Random) -> PurePathSum:
    e = random_pathsum(rng, rng.randint(1, 5))
    return PurePathSum(list(e.vars) + [e.fresh_var()], e.inputs, e.outputs, e.phi, e.scalar)


def omega_instance(rng: random.Random, all_half: bool = False) -> PurePathSum:
    n = rng.randint(1, 5)
    phi, ins, outs = _background(rng, n)
    y = n
    _add(phi, [y], rng.choice([Fraction(1, 4), Fraction(3, 4)]))
    for _ in range(rng.randint(0, 3)):
        _add(phi, _monomial(rng, range(n)) | {y}, Fraction(1, 2))
    if all_half:
        phi = {m: (c if y in m else Fraction(1, 2)) for m, c in phi.items()}
    return PurePathSum(range(n + 1), ins, outs, PhasePoly(phi), ScalarFactor(rng.randint(-2, 2)))


def hh_instance(rng: random.Random, labels: str = "any", y1_signature: bool = False) -> PurePathSum:
    """``labels``: "half" for all-1/2 terms on y1, "any" for arbitrary phases."""
    n = rng.randint(1, 4)
    y0, y1 = n, n + 1
    phi, ins, outs = _background(rng, n)
    _add(phi, [y0, y1], Fraction(1, 2))
    for _ in range(rng.randint(0, 3)):
        _add(phi, _monomial(rng, range(n), allow_empty=True) | {y0}, Fraction(1, 2))
    for _ in range(rng.randint(0, 3)):
        c = Fraction(1, 2) if labels == "half" else random_phase(rng)
        _add(phi, _monomial(rng, range(n), allow_empty=True) | {y1}, c)
    if labels == "half":
        phi = {m: (Fraction(1, 2) if (y0 in m or y1 in m) else c) for m, c in phi.items()}
    if y1_signature:
        phi = {m: c for m, c in phi.items() if y0 not in m}
        _add(phi, [y0, y1], Fraction(1, 2))
        _add(phi, [y0, rng.randrange(n)], Fraction(1, 2))
        outs = outs + [y1]
    return PurePathSum(range(n + 2), ins, outs, PhasePoly(phi), ScalarFactor(rng.randint(-2, 2)))


def case_instance(rng: random.Random) -> PurePathSum:
    """A pair with a gate monomial ``g``: y0's labelled terms contain ``g`` and
    y1's labelled terms come as ``b*m - b*(m | g)``."""
    n = rng.randint(2, 4)
    y0, y1 = n, n + 1
    phi, ins, outs = _background(rng, n)
    phi = {m: c for m, c in phi.items()}
    _add(phi, [y0, y1], Fraction(1, 2))
    g = _monomial(rng, range(n), max_deg=2)
    for _ in range(rng.randint(0, 2)):
        _add(phi, _monomial(rng, range(n), allow_empty=True) | {y0}, Fraction(1, 2))
    for _ in range(rng.randint(0, 2)):
        _add(phi, _monomial(rng, range(n), allow_empty=True) | {y1}, Fraction(1, 2))
    for _ in range(rng.randint(1, 2)):
        _add(phi, _monomial(rng, range(n), allow_empty=True) | g | {y0}, rng.choice(PHASES[:3]))
    for _ in range(rng.randint(1, 2)):
        m = _monomial(rng, range(n), allow_empty=True)
        if g <= m:
            continue
        b = rng.choice([Fraction(1, 8), Fraction(1, 4), Fraction(3, 8)])
        _add(phi, m | {y1}, b)
        _add(phi, m | g | {y1}, -b)
    return PurePathSum(range(n + 2), ins, outs, PhasePoly(phi), ScalarFactor(rng.randint(-2, 2)))


PATHSUM_INSTANCES: Dict[str, Callable[[random.Random], PurePathSum]] = {
    "Elim": elim_instance,
    "omega": omega_instance,
    "HH": hh_instance,
    "Case": case_instance,
}


# -- diagrams --------------------------------------------------------------------

def _as_diagram(e: PurePathSum) -> Diagram:
    from .translate import pathsum_to_zh
    return pathsum_to_zh(e)


def parity_gadget_instance(rng: random.Random, n: Optional[int] = None) -> Diagram:
    """A labelled box on the parity of ``n`` wires, inside a random diagram."""
    n = rng.randint(1, 4) if n is None else n
    k = n + rng.randint(0, 2)
    phi, ins, outs = _background(rng, k)
    p, z = k, k + 1
    wires = rng.sample(range(k), n)
    _add(phi, [p], random_phase(rng, 0.1))
    _add(phi, [p, z], Fraction(1, 2))
    for s in wires:
        _add(phi, [z, s], Fraction(1, 2))
    if not outs and not ins:
        outs = [wires[0]]
    return _as_diagram(PurePathSum(range(k + 2), ins, outs, PhasePoly(phi)))


def _interior_pair_ok(e: PurePathSum) -> bool:
    sig = e.signature_vars()
    return not ({max(e.vars), max(e.vars) - 1} & sig)


DIAGRAM_INSTANCES: Dict[str, Callable[[random.Random], Diagram]] = {
    "hyper_local_complement": lambda rng: _as_diagram(omega_instance(rng, all_half=True)),
    "hyper_pivot": lambda rng: _as_diagram(hh_instance(rng, labels="half")),
    "fourier_hyper_pivot": lambda rng: _as_diagram(hh_instance(rng, labels="any")),
    "case_hyper_pivot": lambda rng: _as_diagram(case_instance(rng)),
    "fourier_transform": parity_gadget_instance,
}


# -- raw diagrams for the base equations ----------------------------------------

def _leg(rng: random.Random, d: RawDiagram, v: int) -> None:
    """Hang a random decoration on ``v`` that ends at a fresh output."""
    r = rng.random()
    if r < 0.5:
        d.add_edge(v, d.add_output())
    elif r < 0.75:
        z = d.add_vertex("Z", rng.choice([0, Fraction(1, 4)]))
        d.add_edge(v, z)
        d.add_edge(z, d.add_output())
    else:
        h = d.add_vertex("H", HLabel.of_phase(random_phase(rng)))
        z = d.add_vertex("Z")
        d.add_edge(v, h)
        d.add_edge(h, z)
        d.add_edge(z, d.add_output())


def _spiders(rng: random.Random, d: RawDiagram, k: int) -> List[int]:
    out = []
    for _ in range(k):
        z = d.add_vertex("Z")
        d.add_edge(z, d.add_output())
        out.append(z)
    return out


def _label(rng: random.Random) -> HLabel:
    r = rng.random()
    if r < 0.6:
        return HLabel.of_phase(random_phase(rng))
    return HLabel.general(complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)))


def _b_zs1(rng):
    d = RawDiagram()
    u, v = d.add_vertex("Z", random_phase(rng)), d.add_vertex("Z", random_phase(rng))
    for _ in range(rng.randint(1, 2)):
        d.add_edge(u, v)
    for s in (u, v):
        for _ in range(rng.randint(0, 2)):
            _leg(rng, d, s)
    return d, (u, v)


def _b_zs2(rng):
    d = RawDiagram()
    v = d.add_vertex("Z")
    _leg(rng, d, v)
    if rng.random() < 0.5:
        d.add_edge(d.add_input(), v)
    else:
        _leg(rng, d, v)
    return d, (v,)


def _b_hs1(rng):
    d = RawDiagram()
    ha, h, hb = d.add_vertex("H", _label(rng)), d.add_vertex("H"), d.add_vertex("H")
    d.add_edge(ha, h)
    d.add_edge(h, hb)
    for s in (ha, hb):
        for _ in range(rng.randint(0, 2)):
            _leg(rng, d, s)
    return d, (ha, h, hb)


def _b_hs2(rng):
    d = RawDiagram()
    h1, h2 = d.add_vertex("H"), d.add_vertex("H")
    d.add_edge(h1, h2)
    _leg(rng, d, h1)
    _leg(rng, d, h2)
    return d, (h1, h2)


def _b_ba1(rng):
    d = RawDiagram()
    z, x = d.add_vertex("Z"), d.add_vertex("X")
    d.add_edge(z, x)
    for s in (z, x):
        for _ in range(rng.randint(0, 3)):
            _leg(rng, d, s)
    return d, (z, x)


def _b_ba2(rng):
    d = RawDiagram()
    z, h, hb = d.add_vertex("Z"), d.add_vertex("H"), d.add_vertex("H")
    d.add_edge(z, h)
    d.add_edge(h, hb)
    for s in (z, hb):
        for _ in range(rng.randint(0, 3)):
            _leg(rng, d, s)
    return d, (z, h, hb)


def _b_m(rng):
    d = RawDiagram()
    zs = _spiders(rng, d, rng.randint(1, 3))
    h1, h2 = d.add_vertex("H", _label(rng)), d.add_vertex("H", _label(rng))
    for z in zs:
        for h in (h1, h2):
            d.add_edge(h, z)
    return d, (h1, h2)


def _b_u(rng):
    d = RawDiagram()
    h = d.add_vertex("H", HLabel.of_phase(0))
    for _ in range(rng.randint(0, 3)):
        _leg(rng, d, h)
    return d, (h,)


def _b_i(rng):
    d = RawDiagram()
    h = d.add_vertex("H", _label(rng))
    for _ in range(rng.randint(0, 3)):
        _leg(rng, d, h)
    return d, (h,)


def _b_a(rng):
    d = RawDiagram()
    zs = _spiders(rng, d, rng.randint(0, 3))
    z, ha, n, hb = d.add_vertex("Z"), d.add_vertex("H", _label(rng)), \
        d.add_vertex("X", Fraction(1, 2)), d.add_vertex("H", _label(rng))
    d.add_edge(z, ha)
    d.add_edge(z, n)
    d.add_edge(n, hb)
    for s in zs:
        d.add_edge(ha, s)
        d.add_edge(hb, s)
    return d, (z, ha, n, hb)


def _b_o(rng):
    d = RawDiagram()
    h, z = d.add_vertex("H", HLabel.general(0)), d.add_vertex("Z", random_phase(rng))
    d.add_edge(h, z)
    for _ in range(rng.randint(0, 3)):
        _leg(rng, d, z)
    return d, (h, z)


BASIC_INSTANCES: Dict[str, Callable[[random.Random], Tuple[RawDiagram, tuple]]] = {
    "ZS1": _b_zs1, "ZS2": _b_zs2, "HS1": _b_hs1, "HS2": _b_hs2, "BA1": _b_ba1, "BA2": _b_ba2,
    "M": _b_m, "U": _b_u, "I": _b_i, "A": _b_a, "O": _b_o,
}


def random_raw_diagram(rng: random.Random, n_in: int = 2, n_out: int = 2, size: int = 5
                       ) -> RawDiagram:
    """A random connected-ish term built from Z, X and H generators."""
    d = RawDiagram()
    gens = []
    for _ in range(size):
        kind = rng.choice("ZZXH")
        if kind == "H":
            gens.append(d.add_vertex("H", _label(rng) if rng.random() < 0.3 else None))
        else:
            gens.append(d.add_vertex(kind, rng.choice([0, 0, Fraction(1, 2), Fraction(1, 4)])))
    for _ in range(size + rng.randint(0, size)):
        a, b = rng.choice(gens), rng.choice(gens)
        d.add_edge(a, b)
    for _ in range(n_in):
        d.add_edge(d.add_input(), rng.choice(gens))
    for _ in range(n_out):
        d.add_edge(rng.choice(gens), d.add_output())
    return d


# -- circuits --------------------------------------------------------------------

GATES_1 = ["h", "x", "z", "s", "sdg", "t", "tdg"]


def random_circuit_text(rng: random.Random, qubits: int, gates: int,
                        gate_set: Sequence[str] = ("h", "x", "z", "cnot", "cz", "tof")) -> str:
    lines = [f"qubits {qubits}"]
    for _ in range(gates):
        g = rng.choice([g for g in gate_set if qubits >= {"cnot": 2, "cz": 2, "swap": 2,
                                                            "tof": 3, "ccz": 3}.get(g, 1)])
        arity = {"cnot": 2, "cz": 2, "swap": 2, "tof": 3, "ccz": 3}.get(g, 1)
        qs = rng.sample(range(qubits), arity)
        if g == "rz":
            lines.append(f"rz {rng.randint(1, 7)}/8 {qs[0]}")
        else:
            lines.append(" ".join([g] + [str(q) for q in qs]))
    return "\n".join(lines) + "\n"
