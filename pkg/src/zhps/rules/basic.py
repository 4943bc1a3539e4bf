"""The base equations of the ZH-calculus as rewrites on raw diagrams.

A location is a tuple of vertex ids naming the left-hand side; every
rewrite keeps the exact scalar. ``match_basic`` lists the locations
where a rule applies, lowest ids first.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from ..diagram import HLabel, RawDiagram, Vertex
from ..numeric import Phase
from .pathsum_rules import RuleError

__all__ = ["BASIC_RULES", "apply_basic", "match_basic"]

Location = Tuple[int, ...]


def _is(d: RawDiagram, v: int, kind: str) -> bool:
    return v in d.vertices and d.kind(v) == kind


def _plain_z(d: RawDiagram, v: int) -> bool:
    return _is(d, v, "Z") and d.vertices[v].param.is_zero()


def _hadamard(d: RawDiagram, v: int) -> bool:
    return _is(d, v, "H") and d.vertices[v].param.is_unlabeled() and d.degree(v) == 2 \
        and v not in d.neighbors(v)


def _not(d: RawDiagram, v: int) -> bool:
    return _is(d, v, "X") and d.vertices[v].param == Phase(Fraction(1, 2)) and d.degree(v) == 2 \
        and v not in d.neighbors(v)


def _single_link(d: RawDiagram, a: int, b: int) -> int:
    es = [e for e, (x, y) in d.edges.items() if {x, y} == {a, b} and a != b]
    if len(es) != 1:
        raise RuleError(f"vertices {a} and {b} are not joined by exactly one wire")
    return es[0]


def _other_ends(d: RawDiagram, v: int, skip: int) -> List[int]:
    """Far ends of ``v``'s wires other than the one edge ``skip``."""
    out = []
    for e in d.incident(v):
        if e == skip:
            continue
        a, b = d.edges[e]
        if a == b:
            raise RuleError(f"vertex {v} has a loop")
        out.append(b if a == v else a)
    return out


def _fail(rule: str, loc) -> RuleError:
    return RuleError(f"({rule}) does not apply at {tuple(loc)}")


# -- spider rules ----------------------------------------------------------------

def _zs1(d: RawDiagram, loc: Location) -> RawDiagram:
    u, v = loc
    if u == v or not (_is(d, u, "Z") and _is(d, v, "Z")):
        raise _fail("ZS1", loc)
    if not any({a, b} == {u, v} for a, b in d.edges.values()):
        raise _fail("ZS1", loc)
    out = d.copy()
    out.vertices[u] = Vertex("Z", d.vertices[u].param + d.vertices[v].param)
    for e, (a, b) in list(out.edges.items()):
        a, b = (u if a == v else a), (u if b == v else b)
        if a == b == u:
            del out.edges[e]
        else:
            out.edges[e] = (a, b)
    del out.vertices[v]
    return out


def _zs2(d: RawDiagram, loc: Location) -> RawDiagram:
    (v,) = loc
    if not _plain_z(d, v) or d.degree(v) != 2 or v in d.neighbors(v):
        raise _fail("ZS2", loc)
    a, b = d.neighbors(v)
    out = d.copy()
    out.remove_vertex(v)
    out.add_edge(a, b)
    return out


# -- H-box rules -----------------------------------------------------------------

def _hs1(d: RawDiagram, loc: Location) -> RawDiagram:
    """H(a) -- Hadamard -- H(-1): the far box's legs join H(a); scalar 2."""
    ha, h, hb = loc
    if len({ha, h, hb}) != 3 or not _is(d, ha, "H") or not _hadamard(d, h) \
            or not _is(d, hb, "H") or not d.vertices[hb].param.is_unlabeled():
        raise _fail("HS1", loc)
    _single_link(d, ha, h)
    link = _single_link(d, h, hb)
    ends = _other_ends(d, hb, link)
    out = d.copy()
    out.remove_vertex(h)
    out.remove_vertex(hb)
    for w in ends:
        out.add_edge(ha, w)
    out.scalar = out.scalar.times(pow2=2)
    return out


def _hs2(d: RawDiagram, loc: Location) -> RawDiagram:
    h1, h2 = loc
    if h1 == h2 or not (_hadamard(d, h1) and _hadamard(d, h2)):
        raise _fail("HS2", loc)
    link = _single_link(d, h1, h2)
    (a,) = _other_ends(d, h1, link)
    (b,) = _other_ends(d, h2, link)
    out = d.copy()
    out.remove_vertex(h1)
    out.remove_vertex(h2)
    out.add_edge(a, b)
    out.scalar = out.scalar.times(pow2=2)
    return out


def _mult(d: RawDiagram, loc: Location) -> RawDiagram:
    h1, h2 = loc
    if h1 == h2 or not (_is(d, h1, "H") and _is(d, h2, "H")):
        raise _fail("M", loc)
    n1, n2 = sorted(d.neighbors(h1)), sorted(d.neighbors(h2))
    if n1 != n2 or not all(_is(d, w, "Z") for w in n1):
        raise _fail("M", loc)
    out = d.copy()
    out.remove_vertex(h2)
    out.vertices[h1] = Vertex("H", d.vertices[h1].param * d.vertices[h2].param)
    return out


def _unit(d: RawDiagram, loc: Location) -> RawDiagram:
    (h,) = loc
    if not _is(d, h, "H") or not d.vertices[h].param.is_one() or h in d.neighbors(h):
        raise _fail("U", loc)
    ends = d.neighbors(h)
    out = d.copy()
    out.remove_vertex(h)
    for w in ends:
        out.add_edge(w, out.add_vertex("Z"))
    return out


def _ident(d: RawDiagram, loc: Location) -> RawDiagram:
    """An H-box may grab an extra leg pinned to 1 by an arity-1 NOT-phase X-spider."""
    (h,) = loc
    if not _is(d, h, "H"):
        raise _fail("I", loc)
    out = d.copy()
    out.add_edge(h, out.add_vertex("X", Fraction(1, 2)))
    return out


def _average(d: RawDiagram, loc: Location) -> RawDiagram:
    """H(a) and H(b) joined through a spider and a NOT become H((a+b)/2); scalar 2."""
    z, ha, n, hb = loc
    if len({z, ha, n, hb}) != 4 or not _plain_z(d, z) or d.degree(z) != 2 or not _not(d, n) \
            or not _is(d, ha, "H") or not _is(d, hb, "H"):
        raise _fail("A", loc)
    ea = _single_link(d, z, ha)
    _single_link(d, z, n)
    eb = _single_link(d, n, hb)
    rest_a, rest_b = sorted(_other_ends(d, ha, ea)), sorted(_other_ends(d, hb, eb))
    if rest_a != rest_b or not all(_is(d, w, "Z") for w in rest_a):
        raise _fail("A", loc)
    a, b = d.vertices[ha].param.to_complex(), d.vertices[hb].param.to_complex()
    la, lb = d.vertices[ha].param, d.vertices[hb].param
    label = la if la == lb else HLabel.general((a + b) / 2)
    out = d.copy()
    for v in (z, n, hb):
        out.remove_vertex(v)
    out.vertices[ha] = Vertex("H", label)
    out.scalar = out.scalar.times(pow2=2)
    return out


def _zero(d: RawDiagram, loc: Location) -> RawDiagram:
    """An arity-1 H(0) on a spider pins every other leg of the spider to 0."""
    h, z = loc
    lab = d.vertices[h].param if _is(d, h, "H") else None
    if lab is None or lab.is_phase or not lab.is_zero() or d.degree(h) != 1 or not _is(d, z, "Z"):
        raise _fail("O", loc)
    link = _single_link(d, h, z)
    ends = _other_ends(d, z, link)
    out = d.copy()
    out.remove_vertex(h)
    out.remove_vertex(z)
    for w in ends:
        out.add_edge(w, out.add_vertex("X", 0))
    return out


# -- bialgebras ------------------------------------------------------------------

def _ba1(d: RawDiagram, loc: Location) -> RawDiagram:
    """Plain Z and X joined by one wire become a complete bipartite graph."""
    z, x = loc
    if not _plain_z(d, z) or not (_is(d, x, "X") and d.vertices[x].param.is_zero()):
        raise _fail("BA1", loc)
    link = _single_link(d, z, x)
    zs, xs = _other_ends(d, z, link), _other_ends(d, x, link)
    out = d.copy()
    out.remove_vertex(z)
    out.remove_vertex(x)
    new_x = [out.add_vertex("X") for _ in zs]
    new_z = [out.add_vertex("Z") for _ in xs]
    for w, v in zip(zs, new_x):
        out.add_edge(w, v)
    for w, v in zip(xs, new_z):
        out.add_edge(w, v)
    for a in new_x:
        for b in new_z:
            out.add_edge(a, b)
    return out


def _ba2(d: RawDiagram, loc: Location) -> RawDiagram:
    """Z -- Hadamard -- H(-1): each Z-leg gets its own Hadamard and H-box.

    The left side is ``2 [every Z-leg = AND of the H-legs]``; the right
    side computes the AND once per Z-leg, so the scalar is ``2**(1-m)``.
    """
    z, h, hb = loc
    if len({z, h, hb}) != 3 or not _plain_z(d, z) or not _hadamard(d, h) \
            or not _is(d, hb, "H") or not d.vertices[hb].param.is_unlabeled():
        raise _fail("BA2", loc)
    e1 = _single_link(d, z, h)
    e2 = _single_link(d, h, hb)
    zs, hs = _other_ends(d, z, e1), _other_ends(d, hb, e2)
    out = d.copy()
    for v in (z, h, hb):
        out.remove_vertex(v)
    copies = [out.add_vertex("Z") for _ in hs]
    for w, c in zip(hs, copies):
        out.add_edge(w, c)
    for w in zs:
        had, box = out.add_vertex("H"), out.add_vertex("H")
        out.add_edge(w, had)
        out.add_edge(had, box)
        for c in copies:
            out.add_edge(box, c)
    out.scalar = out.scalar.times(pow2=2 * (1 - len(zs)))
    return out


BASIC_RULES: Dict[str, Callable[[RawDiagram, Location], RawDiagram]] = {
    "ZS1": _zs1, "ZS2": _zs2, "HS1": _hs1, "HS2": _hs2, "BA1": _ba1, "BA2": _ba2,
    "M": _mult, "U": _unit, "I": _ident, "A": _average, "O": _zero,
}


def apply_basic(d: RawDiagram, rule: str, location) -> RawDiagram:
    """Rewrite the left-hand side of ``rule`` found at ``location``."""
    if rule not in BASIC_RULES:
        raise ValueError(f"unknown rule {rule!r}")
    loc = tuple(location) if not isinstance(location, int) else (location,)
    try:
        return BASIC_RULES[rule](d, loc)
    except (KeyError, ValueError) as exc:
        if isinstance(exc, RuleError):
            raise
        raise _fail(rule, loc) from exc


def _candidates(d: RawDiagram, rule: str):
    vs = sorted(d.vertices)
    adj: Dict[int, List[int]] = {v: [] for v in vs}
    for a, b in d.edges.values():
        if a != b:
            adj[a].append(b)
            adj[b].append(a)
    if rule in ("ZS2", "U", "I"):
        yield from ((v,) for v in vs)
    elif rule in ("ZS1", "HS2", "BA1", "O"):
        yield from ((u, w) for u in vs for w in sorted(set(adj[u])))
    elif rule == "M":
        yield from ((u, w) for u in vs for w in vs if u < w)
    elif rule in ("HS1", "BA2"):
        yield from ((a, h, b) for h in vs for a in sorted(set(adj[h])) for b in sorted(set(adj[h]))
                    if a != b)
    elif rule == "A":
        for z in vs:
            for ha in sorted(set(adj[z])):
                for n in sorted(set(adj[z])):
                    for hb in sorted(set(adj[n])):
                        yield z, ha, n, hb


def match_basic(d: RawDiagram, rule: str) -> List[Location]:
    """Every location where ``rule`` applies; (I) applies at every H-box."""
    out = []
    for loc in _candidates(d, rule):
        if rule == "I" and not _is(d, loc[0], "H"):
            continue
        try:
            apply_basic(d, rule, loc)
        except RuleError:
            continue
        out.append(loc)
    return out
