"""Pure path-sums: Boolean and phase polynomials, lifting, purification.

Variables are small non-negative integers. A monomial is a ``frozenset`` of
variables (the empty set is the constant monomial 1). Eliminated variables
leave gaps in the numbering; serialization compacts them.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .numeric import Phase, ScalarFactor

__all__ = [
    "Monomial",
    "BoolPoly",
    "PhasePoly",
    "PurePathSum",
    "evaluate_assignment",
    "lift",
    "scale_lift",
    "canonicalize",
    "substitute",
    "purify",
    "compose_pathsums",
    "identity_pathsum",
    "adjoint_pathsum",
]

Monomial = FrozenSet[int]
IntPoly = Dict[Monomial, Fraction]
Assignment = Union[Mapping[int, int], Sequence[int]]

ONE: Monomial = frozenset()


def mono(*vs: int) -> Monomial:
    return frozenset(vs)


def _mono_key(m: Monomial):
    # graded lexicographic
    return (len(m), sorted(m))


def _holds(m: Monomial, x: Assignment) -> bool:
    return all(x[v] for v in m)


class BoolPoly:
    """XOR of Boolean monomials (an F2 polynomial)."""

    __slots__ = ("monomials",)

    def __init__(self, monomials: Iterable[Iterable[int]] = ()) -> None:
        acc: set = set()
        for m in monomials:
            acc ^= {frozenset(m)}
        self.monomials: FrozenSet[Monomial] = frozenset(acc)

    @classmethod
    def var(cls, v: int) -> "BoolPoly":
        return cls([[v]])

    @classmethod
    def const(cls, bit: int) -> "BoolPoly":
        return cls([[]] if bit % 2 else [])

    def __xor__(self, other: "BoolPoly") -> "BoolPoly":
        return BoolPoly(list(self.monomials) + list(other.monomials))

    def __and__(self, other: "BoolPoly") -> "BoolPoly":
        return BoolPoly(a | b for a in self.monomials for b in other.monomials)

    def __eq__(self, other) -> bool:
        return isinstance(other, BoolPoly) and self.monomials == other.monomials

    def __hash__(self) -> int:
        return hash(self.monomials)

    def __bool__(self) -> bool:
        return bool(self.monomials)

    def __len__(self) -> int:
        return len(self.monomials)

    def variables(self) -> set:
        return set().union(*self.monomials) if self.monomials else set()

    def evaluate(self, x: Assignment) -> int:
        return sum(_holds(m, x) for m in self.monomials) % 2

    def sorted_monomials(self) -> List[Monomial]:
        return sorted(self.monomials, key=_mono_key)

    def __repr__(self) -> str:
        if not self.monomials:
            return "BoolPoly(0)"
        parts = ["".join(f"x{v}" for v in sorted(m)) or "1" for m in self.sorted_monomials()]
        return "BoolPoly(" + " + ".join(parts) + ")"


# -- exact rational polynomials (internal) -------------------------------------

def _padd(p: IntPoly, q: Mapping[Monomial, Fraction], scale: Fraction = Fraction(1)) -> IntPoly:
    out = dict(p)
    for m, c in q.items():
        s = out.get(m, 0) + scale * c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def _pmul(p: Mapping[Monomial, Fraction], q: Mapping[Monomial, Fraction]) -> IntPoly:
    out: IntPoly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = m1 | m2
            s = out.get(m, 0) + c1 * c2
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def lift(q: BoolPoly) -> IntPoly:
    """Integer multilinear polynomial agreeing with ``q`` on Boolean inputs.

    Built from the recursion ``lift(P ^ Q) = lift(P) + lift(Q) - 2 lift(P) lift(Q)``
    folding one monomial at a time.
    """
    acc: IntPoly = {}
    for m in q.sorted_monomials():
        single = {m: Fraction(1)}
        acc = _padd(_padd(acc, single), _pmul(acc, single), Fraction(-2))
    return acc


def _truncation(alpha: Phase, n: int) -> int:
    """Largest subset size whose term ``alpha * (-2)**(r-1)`` can be nonzero mod 1."""
    if alpha.exact:
        den = alpha.value.denominator
        if den & (den - 1) == 0:  # dyadic: larger subsets give integers
            return min(n, den.bit_length())
    return n


def scale_lift(alpha: Phase, q: BoolPoly) -> "PhasePoly":
    """``alpha * lift(q)`` via the subset expansion of the lifting.

    ``lift(m_1 ^ ... ^ m_n) = sum over nonempty subsets b of (-2)**(|b|-1) * prod_{i in b} m_i``.
    """
    alpha = Phase(alpha)
    ms = q.sorted_monomials()
    out: Dict[Monomial, Phase] = {}
    for r in range(1, _truncation(alpha, len(ms)) + 1):
        coeff = alpha * ((-2) ** (r - 1))
        if coeff.is_zero():
            continue
        for subset in itertools.combinations(ms, r):
            m = frozenset().union(*subset)
            out[m] = out.get(m, Phase(0)) + coeff
    return PhasePoly(out)


def canonicalize(alpha: Phase, f: BoolPoly) -> "PhasePoly":
    """Write ``alpha * f`` (f an XOR of monomials) as a sum of monomials with phase coefficients."""
    return scale_lift(alpha, f)


class PhasePoly:
    """Multilinear polynomial with coefficients in R/Z (a :class:`Phase` per monomial)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Iterable[int], object]] = None) -> None:
        out: Dict[Monomial, Phase] = {}
        for m, c in (terms or {}).items():
            m = frozenset(m)
            c = Phase(c) if not isinstance(c, Phase) else c
            s = out.get(m, Phase(0)) + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        self.terms: Dict[Monomial, Phase] = out

    @classmethod
    def from_rational(cls, poly: Mapping[Monomial, Fraction], alpha: Phase = Phase(0)) -> "PhasePoly":
        """``alpha * poly`` for an integer-coefficient ``poly``."""
        return cls({ONE: Phase(alpha)}).times_rational(poly)

    def __add__(self, other: "PhasePoly") -> "PhasePoly":
        merged: Dict[Monomial, Phase] = dict(self.terms)
        for m, c in other.terms.items():
            merged[m] = merged[m] + c if m in merged else c
        return PhasePoly(merged)

    def __neg__(self) -> "PhasePoly":
        return PhasePoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "PhasePoly") -> "PhasePoly":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return isinstance(other, PhasePoly) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.sorted_items())

    def sorted_items(self) -> List[Tuple[Monomial, Phase]]:
        return sorted(self.terms.items(), key=lambda t: _mono_key(t[0]))

    def variables(self) -> set:
        return set().union(*self.terms) if self.terms else set()

    def constant(self) -> Phase:
        return self.terms.get(ONE, Phase(0))

    def without_constant(self) -> "PhasePoly":
        return PhasePoly({m: c for m, c in self.terms.items() if m})

    def split(self, y: int) -> Tuple["PhasePoly", "PhasePoly"]:
        """Return ``(S, T)`` with ``self = y*S + T`` and neither mentioning ``y``."""
        s, t = {}, {}
        for m, c in self.terms.items():
            if y in m:
                s[m - {y}] = c
            else:
                t[m] = c
        return PhasePoly(s), PhasePoly(t)

    def times_monomial(self, m: Iterable[int]) -> "PhasePoly":
        m = frozenset(m)
        out: Dict[Monomial, Phase] = {}
        for k, c in self.terms.items():
            out[k | m] = out.get(k | m, Phase(0)) + c
        return PhasePoly(out)

    def times_rational(self, poly: Mapping[Monomial, Fraction]) -> "PhasePoly":
        """Product with an integer-coefficient polynomial (e.g. a lifting)."""
        out: Dict[Monomial, Phase] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in poly.items():
                if Fraction(c2).denominator != 1:
                    raise ValueError("mod-1 coefficients only multiply by integers")
                m = m1 | m2
                out[m] = out.get(m, Phase(0)) + c1 * int(c2)
        return PhasePoly(out)

    def rename(self, mapping: Mapping[int, int]) -> "PhasePoly":
        """Rename variables; monomials that collide merge (``x*x = x``)."""
        out: Dict[Monomial, Phase] = {}
        for m, c in self.terms.items():
            k = frozenset(mapping.get(v, v) for v in m)
            out[k] = out.get(k, Phase(0)) + c
        return PhasePoly(out)

    def evaluate(self, x: Assignment) -> Phase:
        total = Phase(0)
        for m, c in self.terms.items():
            if _holds(m, x):
                total = total + c
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "PhasePoly(0)"
        parts = [f"{c}*" + ("".join(f"x{v}" for v in sorted(m)) or "1") for m, c in self.sorted_items()]
        return "PhasePoly(" + " + ".join(parts) + ")"




def evaluate_assignment(phi: PhasePoly, x: Assignment) -> Phase:
    return phi.evaluate(x)


def substitute(r: PhasePoly, y: int, p: Mapping[Monomial, Fraction]) -> PhasePoly:
    """Replace every occurrence of ``y`` in ``r`` by the rational polynomial ``p``.

    ``p`` must not mention ``y``. With ``r = y*S + T`` the result is
    ``S*p + T``, multilinear, products taken exactly before reducing mod 1.
    """
    s, t = r.split(y)
    if not s.terms:
        return r
    return s.times_rational(p) + t


class PurePathSum:
    """``scalar * sum_x exp(2 pi i phi(x)) |x_outputs><x_inputs|``.

    A constant term in ``phi`` is moved into ``scalar.phase`` on construction.
    """

    __slots__ = ("vars", "inputs", "outputs", "phi", "scalar")

    def __init__(self, vars: Iterable[int], inputs: Sequence[int], outputs: Sequence[int],
                 phi: Optional[PhasePoly] = None, scalar: Optional[ScalarFactor] = None) -> None:
        phi = phi if phi is not None else PhasePoly()
        scalar = scalar if scalar is not None else ScalarFactor()
        const = phi.constant()
        if not const.is_zero():
            scalar = scalar.times(phase=const)
        if ONE in phi.terms:
            phi = phi.without_constant()
        self.vars: Tuple[int, ...] = tuple(sorted(set(vars)))
        self.inputs: Tuple[int, ...] = tuple(inputs)
        self.outputs: Tuple[int, ...] = tuple(outputs)
        self.phi = phi
        self.scalar = scalar
        live = set(self.vars)
        bad = [v for v in (*self.inputs, *self.outputs) if v not in live] + \
              [v for v in phi.variables() if v not in live]
        if bad:
            raise ValueError(f"path-sum references unknown variables {sorted(set(bad))}")

    @property
    def num_vars(self) -> int:
        return len(self.vars)

    def fresh_var(self) -> int:
        return self.vars[-1] + 1 if self.vars else 0

    def replace(self, **kw) -> "PurePathSum":
        args = dict(vars=self.vars, inputs=self.inputs, outputs=self.outputs,
                    phi=self.phi, scalar=self.scalar)
        args.update(kw)
        return PurePathSum(**args)

    def signature_vars(self) -> set:
        return set(self.inputs) | set(self.outputs)

    def compacted(self) -> "PurePathSum":
        """Renumber variables to 0..k-1 preserving order."""
        mapping = {v: i for i, v in enumerate(self.vars)}
        return PurePathSum(range(len(self.vars)), [mapping[v] for v in self.inputs],
                           [mapping[v] for v in self.outputs], self.phi.rename(mapping), self.scalar)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PurePathSum):
            return NotImplemented
        return (self.vars == other.vars and self.inputs == other.inputs
                and self.outputs == other.outputs and self.phi == other.phi
                and self.scalar == other.scalar)

    def __repr__(self) -> str:
        return (f"PurePathSum(vars={list(self.vars)}, inputs={list(self.inputs)}, "
                f"outputs={list(self.outputs)}, phi={self.phi!r}, scalar={self.scalar!r})")

    def to_json(self) -> dict:
        c = self.compacted()
        return {
            "vars": c.num_vars,
            "inputs": list(c.inputs),
            "outputs": list(c.outputs),
            "terms": [{"coeff": coeff.to_json(), "monomial": sorted(m)} for m, coeff in c.phi.sorted_items()],
            "scalar": c.scalar.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PurePathSum":
        k = int(obj["vars"])
        terms: Dict[Monomial, Phase] = {}
        for t in obj.get("terms", []):
            m = frozenset(int(v) for v in t["monomial"])
            terms[m] = terms.get(m, Phase(0)) + Phase.from_json(t["coeff"])
        scalar = ScalarFactor.from_json(obj["scalar"]) if "scalar" in obj else ScalarFactor()
        return cls(range(k), [int(v) for v in obj.get("inputs", [])],
                   [int(v) for v in obj.get("outputs", [])], PhasePoly(terms), scalar)


def identity_pathsum(n: int) -> PurePathSum:
    return PurePathSum(range(n), range(n), range(n))


def adjoint_pathsum(e: PurePathSum) -> PurePathSum:
    """Conjugate transpose: swap the signatures and negate every phase."""
    return PurePathSum(e.vars, e.outputs, e.inputs, -e.phi, e.scalar.conjugate())


def purify(f: Sequence[BoolPoly], phi: PhasePoly, lam: ScalarFactor,
           n_inputs: int, n_paths: int) -> PurePathSum:
    """Turn ``lam * sum_y exp(2 pi i phi) |f(x, y)><x|`` into a pure path-sum.

    Inputs are variables ``0..n_inputs-1`` and paths follow them. For each
    output ``j`` two fresh variables ``v_j, w_j`` enforce ``w_j = f_j`` through
    ``1/2 * v_j * (w_j + f_j)``; the scalar picks up ``2**-m``.
    """
    m = len(f)
    base = n_inputs + n_paths
    vs = [base + j for j in range(m)]
    ws = [base + m + j for j in range(m)]
    half = Phase(Fraction(1, 2))
    total = PhasePoly(phi.terms)
    for j, fj in enumerate(f):
        total = total + PhasePoly({frozenset({vs[j], ws[j]}): half})
        total = total + canonicalize(half, BoolPoly.var(vs[j]) & fj)
    return PurePathSum(range(base + 2 * m), range(n_inputs), ws, total,
                       lam.times(pow2=-2 * m))


def compose_pathsums(a: PurePathSum, b: PurePathSum) -> PurePathSum:
    """Sequential composition: ``a`` first, then ``b`` (operator ``B @ A``).

    ``b``'s variables are shifted clear of ``a``'s and every joined wire pair
    identifies two variables; repeated signature entries can chain several
    variables into one class, which is resolved with a union-find.
    """
    if len(a.outputs) != len(b.inputs):
        raise ValueError(f"arity mismatch: {len(a.outputs)} outputs vs {len(b.inputs)} inputs")
    shift = (a.vars[-1] + 1 if a.vars else 0) - (b.vars[0] if b.vars else 0)
    bmap = {v: v + shift for v in b.vars}

    parent = {v: v for v in a.vars}
    parent.update({v: v for v in bmap.values()})

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for o, i in zip(a.outputs, b.inputs):
        ro, ri = find(o), find(bmap[i])
        if ro != ri:
            lo, hi = min(ro, ri), max(ro, ri)
            parent[hi] = lo
    rep = {v: find(v) for v in parent}
    phi = a.phi.rename(rep) + b.phi.rename(bmap).rename(rep)
    return PurePathSum(set(rep.values()), [rep[v] for v in a.inputs],
                       [rep[bmap[v]] for v in b.outputs], phi, a.scalar * b.scalar)
