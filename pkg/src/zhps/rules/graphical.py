"""Rewrites on hypergraph-like diagrams that delete interior spiders.

Each rule mirrors a path-sum rule under the diagram/path-sum translation:
spider ``s`` plays variable ``s``, an H-box on ``J`` the monomial ``prod J``.
Results are built with :meth:`Diagram.add_box`, so boxes landing on the
same spiders fuse, label-1 boxes vanish and arity-0 boxes become scalars.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb
from typing import Iterable, List, Optional, Sequence, Tuple

from ..diagram import Diagram, HLabel
from ..numeric import Phase
from .pathsum_rules import HALF, QUARTER, THREE_Q, Match, RuleError, find_case_gate

__all__ = [
    "hyper_local_complement",
    "hyper_pivot",
    "fourier_hyper_pivot",
    "fourier_transform",
    "case_hyper_pivot",
    "fuse_hadamard_wire",
    "remove_isolated",
    "match_hlc",
    "match_hyper_pivot",
    "match_fhp",
    "match_case_hp",
    "match_fuse_wire",
    "match_isolated",
    "case_exponent",
]

# most neighbour boxes a Fourier-type expansion will enumerate subsets of
SUBSET_LIMIT = 14


def _half(lab: HLabel) -> bool:
    return lab.is_unlabeled()


def _require_interior(d: Diagram, *spiders: int) -> None:
    b = d.boundary_spiders()
    for s in spiders:
        if s not in d.spiders:
            raise RuleError(f"spider {s} does not exist")
        if s in b:
            raise RuleError(f"spider {s} is on the boundary")


def _edge(d: Diagram, h: int) -> Tuple[int, int]:
    if h not in d.hboxes:
        raise RuleError(f"H-box {h} does not exist")
    lab, nb = d.hboxes[h]
    if len(nb) != 2 or not _half(lab):
        raise RuleError(f"H-box {h} is not an unlabelled arity-2 box")
    u, v = sorted(nb)
    return u, v


def _others(d: Diagram, s: int, skip: int) -> List[Tuple[HLabel, frozenset]]:
    return [(d.hboxes[h][0], d.hboxes[h][1] - {s}) for h in d.boxes_at(s) if h != skip]


def _strip(d: Diagram, spiders: Iterable[int]) -> Diagram:
    out = d.copy()
    spiders = set(spiders)
    for h in [h for h, (_, nb) in out.hboxes.items() if nb & spiders]:
        del out.hboxes[h]
    for s in spiders:
        out.remove_spider(s)
    return out


def _subset_power(label: HLabel, r: int) -> HLabel:
    return label ** ((-2) ** (r - 1))


def _max_subset(label: HLabel, n: int) -> int:
    # dyadic phases: alpha * (-2)**(r-1) is an integer once 2**(r-1) >= denominator
    if label.is_phase and label.phase.exact:
        den = label.phase.value.denominator
        if den & (den - 1) == 0:
            return min(n, den.bit_length())
    if n > SUBSET_LIMIT:
        raise RuleError(f"{n} neighbour boxes: subset expansion too large")
    return n


def _fourier_boxes(out: Diagram, label: HLabel, base: frozenset,
                   sets: Sequence[frozenset]) -> None:
    """Add ``label**((-2)**(|b|-1))`` on ``base | union(b)`` for nonempty ``b``."""
    if label.is_zero():
        raise RuleError("Fourier expansion needs a non-zero label")
    for r in range(1, _max_subset(label, len(sets)) + 1):
        lab = _subset_power(label, r)
        if lab.is_one():
            continue
        for b in itertools.combinations(sets, r):
            out.add_box(lab, base.union(*b))


# -- local complementation -------------------------------------------------------

def _hlc_site(d: Diagram, u: int):
    if u not in d.spiders or u in d.boundary_spiders():
        return None
    quarter, rest = None, []
    for h in d.boxes_at(u):
        lab, nb = d.hboxes[h]
        if nb == {u} and lab.is_phase and lab.phase in (QUARTER, THREE_Q):
            quarter = lab.phase
        elif _half(lab):
            rest.append(nb - {u})
        else:
            return None
    if quarter is None:
        return None
    return quarter, rest


def hyper_local_complement(d: Diagram, spider: int) -> Diagram:
    """Remove a spider carrying a 1/4 (or 3/4) phase box and only unlabelled boxes otherwise."""
    site = _hlc_site(d, spider)
    if site is None:
        raise RuleError(f"hyper-local complementation does not apply at spider {spider}")
    quarter, rest = site
    sign = 1 if quarter == QUARTER else -1
    out = _strip(d, [spider])
    out.scalar = out.scalar.times(pow2=1, phase=Fraction(sign, 8))
    neighbour = HLabel(phase=Phase(Fraction(-sign, 4)))
    for nb in rest:
        out.add_box(neighbour, nb)
    for a, b in itertools.combinations(rest, 2):
        out.add_box(HLabel(phase=HALF), a | b)
    return out


# -- pivots ----------------------------------------------------------------------

def _pivot_parts(d: Diagram, hbox: int, u: int):
    a, b = _edge(d, hbox)
    if u not in (a, b):
        raise RuleError(f"spider {u} is not an end of H-box {hbox}")
    v = b if u == a else a
    _require_interior(d, u, v)
    us, vs = _others(d, u, hbox), _others(d, v, hbox)
    if any(v in nb for _, nb in us):
        raise RuleError(f"another H-box touches both {u} and {v}")
    return v, us, vs


def hyper_pivot(d: Diagram, hbox: int) -> Diagram:
    """Pivot on an unlabelled edge whose ends only carry unlabelled boxes."""
    u, v = _edge(d, hbox)
    _, us, vs = _pivot_parts(d, hbox, u)
    if not all(_half(l) for l, _ in us + vs):
        raise RuleError("hyper-pivot needs unlabelled boxes on both ends")
    out = _strip(d, [u, v])
    out.scalar = out.scalar.times(pow2=2)
    for (_, na), (_, nb) in itertools.product(us, vs):
        out.add_box(HLabel(phase=HALF), na | nb)
    return out


def _fhp_side(d: Diagram, hbox: int) -> Optional[int]:
    u, v = _edge(d, hbox)
    for s in (u, v):
        if all(_half(l) for l, _ in _others(d, s, hbox)):
            return s
    return None


def fourier_hyper_pivot(d: Diagram, hbox: int, u: Optional[int] = None) -> Diagram:
    """Pivot where only one end ``u`` is restricted to unlabelled boxes.

    The other end's boxes may carry any non-zero label; each spreads over
    all subsets of ``u``'s neighbourhoods with exponent ``(-2)**(|b|-1)``.
    """
    if u is None:
        u = _fhp_side(d, hbox)
        if u is None:
            raise RuleError(f"neither end of H-box {hbox} has only unlabelled boxes")
    v, us, vs = _pivot_parts(d, hbox, u)
    if not all(_half(l) for l, _ in us):
        raise RuleError(f"spider {u} carries labelled boxes")
    out = _strip(d, [u, v])
    out.scalar = out.scalar.times(pow2=2)
    sets = [nb for _, nb in us]
    for lab, m in vs:
        _fourier_boxes(out, lab, m, sets)
    return out


def fourier_transform(d: Diagram, hbox: int) -> Diagram:
    """Expand a labelled box hanging off a parity gadget into subset boxes.

    The gadget is an arity-1 box (label ``a``) on a spider ``p`` whose only
    other box is an unlabelled edge to ``z``, and ``z`` reaches the wires
    ``s_1..s_n`` through unlabelled edges. This is ``a`` applied to the
    parity of the ``s_i``; it becomes ``a**((-2)**(|b|-1))`` on every
    nonempty subset ``b``, with the scalar picking up 2.
    """
    if hbox not in d.hboxes:
        raise RuleError(f"H-box {hbox} does not exist")
    lab, nb = d.hboxes[hbox]
    if len(nb) != 1:
        raise RuleError(f"H-box {hbox} is not arity 1")
    (p,) = nb
    _require_interior(d, p)
    if lab.is_zero():
        raise RuleError("Fourier transform needs a non-zero label")
    link = [h for h in d.boxes_at(p) if h != hbox]
    if len(link) != 1:
        raise RuleError(f"spider {p} is not a parity gadget")
    if len(d.nbrs(link[0])) != 2 or not _half(d.label(link[0])):
        raise RuleError(f"spider {p} is not a parity gadget")
    (z,) = d.nbrs(link[0]) - {p}
    _require_interior(d, z)
    wires = []
    for h in d.boxes_at(z):
        if h == link[0]:
            continue
        l2, n2 = d.hboxes[h]
        if not _half(l2) or len(n2) != 2 or p in n2:
            raise RuleError(f"spider {z} has a box that is not a plain Hadamard edge")
        wires.append(n2 - {z})
    out = _strip(d, [p, z])
    out.scalar = out.scalar.times(pow2=2)
    _fourier_boxes(out, lab, frozenset(), wires)
    return out


# -- Case ------------------------------------------------------------------------

def case_exponent(p: int, n: int) -> int:
    """``sum_{q=p}^{2n} sum_{r=1}^{p} C(p,r) C(r,q-p) (-2)**(q-1)``; equals ``-(-2)**(p-1)``."""
    return sum(comb(p, r) * comb(r, q - p) * (-2) ** (q - 1)
               for q in range(p, 2 * n + 1) for r in range(1, p + 1))


def _case_parts(d: Diagram, hbox: int, u: int):
    v, us, vs = _pivot_parts(d, hbox, u)
    if any(not l.is_phase or not l.phase.exact for l, _ in us + vs):
        return None
    q0 = [nb for l, nb in us if _half(l)]
    q1 = [nb for l, nb in vs if _half(l)]
    a0 = {nb: l.phase for l, nb in us if not _half(l)}
    a1 = {nb: l.phase for l, nb in vs if not _half(l)}
    ok, g = find_case_gate(a0, a1)
    if not ok:
        return None
    return v, q0, q1, a0, a1, g


def case_hyper_pivot(d: Diagram, hbox: int, u: Optional[int] = None) -> Diagram:
    """Eliminate both ends of an unlabelled edge whose labelled boxes are gated.

    ``u``'s labelled boxes must all contain a gate monomial ``g`` and ``v``'s
    must come in complementary pairs ``b`` on ``M`` and ``-b`` on ``M | g``.
    Without ``u`` both orientations are tried, lower spider first.
    """
    ends = _edge(d, hbox) if u is None else (u,)
    parts = None
    for s in ends:
        parts = _case_parts(d, hbox, s)
        if parts is not None:
            u = s
            break
    if parts is None:
        raise RuleError(f"no gated pattern around H-box {hbox}")
    v, q0, q1, a0, a1, _ = parts
    out = _strip(d, [u, v])
    out.scalar = out.scalar.times(pow2=2)
    for n0, n1 in itertools.product(q0, q1):
        out.add_box(HLabel(phase=HALF), n0 | n1)
    for m, c in a0.items():
        _fourier_boxes(out, HLabel(phase=c), m, q1)
    for m, c in a1.items():
        _fourier_boxes(out, HLabel(phase=c), m, q0)
    return out


# -- small cleanups --------------------------------------------------------------

def fuse_hadamard_wire(d: Diagram, spider: int, drop: Optional[int] = None) -> Diagram:
    """An interior spider with exactly two Hadamard edges identifies their far ends.

    ``drop`` (default: the lower id) is merged into the other far end.
    """
    _require_interior(d, spider)
    boxes = d.boxes_at(spider)
    if len(boxes) != 2 or any(len(d.nbrs(h)) != 2 or not _half(d.label(h)) for h in boxes):
        raise RuleError(f"spider {spider} is not a Hadamard wire")
    a, b = sorted(next(iter(d.nbrs(h) - {spider})) for h in boxes)
    if a == b:
        raise RuleError(f"spider {spider} has a doubled edge")
    drop = a if drop is None else drop
    if drop not in (a, b):
        raise RuleError(f"spider {drop} is not a far end of spider {spider}")
    keep = b if drop == a else a
    src = _strip(d, [spider])
    out = Diagram(src.spiders - {drop}, {}, [keep if s == drop else s for s in src.inputs],
                  [keep if s == drop else s for s in src.outputs], src.scalar.times(pow2=2))
    for h, (lab, nb) in sorted(src.hboxes.items()):
        out.add_box(lab, (nb - {drop}) | {keep} if drop in nb else nb)
    return out


def remove_isolated(d: Diagram, spider: int) -> Diagram:
    """An interior spider with no boxes is the scalar 2."""
    _require_interior(d, spider)
    if d.boxes_at(spider):
        raise RuleError(f"spider {spider} is not isolated")
    out = d.copy()
    out.remove_spider(spider)
    out.scalar = out.scalar.times(pow2=2)
    return out


# -- matchers --------------------------------------------------------------------

def _edges(d: Diagram) -> List[int]:
    interior = set(d.interior_spiders())
    return [h for h, (lab, nb) in sorted(d.hboxes.items())
            if len(nb) == 2 and _half(lab) and nb <= interior]


def _applies(f, *args) -> bool:
    try:
        f(*args)
    except RuleError:
        return False
    return True


def match_isolated(d: Diagram) -> List[Match]:
    return [Match("Elim", (s,)) for s in d.interior_spiders() if not d.boxes_at(s)]


def match_hlc(d: Diagram) -> List[Match]:
    return [Match("HLC", (s,)) for s in d.interior_spiders() if _hlc_site(d, s) is not None]


def match_hyper_pivot(d: Diagram) -> List[Match]:
    out = []
    for h in _edges(d):
        u, v = sorted(d.nbrs(h))
        if all(_half(l) for l, _ in _others(d, u, h) + _others(d, v, h)) and \
                not any(v in nb for _, nb in _others(d, u, h)):
            out.append(Match("RHP", (u, v), {"hbox": h}))
    return out


def match_fhp(d: Diagram) -> List[Match]:
    out = []
    for h in _edges(d):
        u = _fhp_side(d, h)
        if u is not None and _applies(_pivot_parts, d, h, u):
            v = next(iter(d.nbrs(h) - {u}))
            out.append(Match("FHP", (u, v), {"hbox": h}))
    return out


def match_case_hp(d: Diagram) -> List[Match]:
    out = []
    for h in _edges(d):
        for u in sorted(d.nbrs(h)):
            try:
                parts = _case_parts(d, h, u)
            except RuleError:
                break
            if parts is not None:
                out.append(Match("CHP", (u, parts[0]), {"hbox": h}))
                break
    return out


def match_fuse_wire(d: Diagram) -> List[Match]:
    return [Match("HW", (s,)) for s in d.interior_spiders() if _applies(fuse_hadamard_wire, d, s)]
