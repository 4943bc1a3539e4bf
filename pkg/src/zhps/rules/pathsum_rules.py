"""Variable-eliminating rewrites on pure path-sums.

Every rule removes at least one internal path variable and is exact,
scalar included. ``match_*`` functions list candidate sites in a fixed
order (lowest variable first); ``apply_*`` re-checks the site and raises
:class:`RuleError` if it no longer matches.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..numeric import Phase, ScalarFactor
from ..pathsum import (ONE, BoolPoly, Monomial, PhasePoly, PurePathSum, canonicalize, lift,
                       scale_lift)

__all__ = [
    "RuleError",
    "Match",
    "match_elim",
    "match_omega",
    "match_hh",
    "match_case",
    "apply_elim",
    "apply_omega",
    "apply_hh",
    "apply_case",
    "find_case_gate",
    "MATCHERS",
    "APPLIERS",
]

HALF = Phase(Fraction(1, 2))
QUARTER = Phase(Fraction(1, 4))
THREE_Q = Phase(Fraction(3, 4))

# subsets of the shared variables tried when looking for a gate monomial
GATE_SEARCH_LIMIT = 6


class RuleError(ValueError):
    """Raised when a rule is applied outside its precondition."""


@dataclass
class Match:
    rule: str
    vars: Tuple[int, ...]
    data: dict = field(default_factory=dict, compare=False)


def _internal(e: PurePathSum) -> List[int]:
    sig = e.signature_vars()
    return [v for v in e.vars if v not in sig]


def _cofactor(e: PurePathSum, y: int) -> Dict[Monomial, Phase]:
    return {m - {y}: c for m, c in e.phi.terms.items() if y in m}


# -- Elim ------------------------------------------------------------------------

def match_elim(e: PurePathSum) -> List[Match]:
    used = e.phi.variables()
    return [Match("Elim", (v,)) for v in _internal(e) if v not in used]


def apply_elim(e: PurePathSum, m: Match) -> PurePathSum:
    (y,) = m.vars
    if y not in e.vars or y in e.signature_vars() or y in e.phi.variables():
        raise RuleError(f"Elim does not apply to x{y}")
    return e.replace(vars=[v for v in e.vars if v != y], scalar=e.scalar.times(pow2=2))


# -- omega -----------------------------------------------------------------------

def _omega_site(e: PurePathSum, y: int) -> Optional[dict]:
    cof = _cofactor(e, y)
    lin = cof.get(ONE)
    if lin not in (QUARTER, THREE_Q):
        return None
    rest = [k for k in cof if k]
    if any(cof[k] != HALF for k in rest):
        return None
    return {"sign": 1 if lin == QUARTER else -1, "Q": BoolPoly(rest)}


def match_omega(e: PurePathSum) -> List[Match]:
    out = []
    for y in _internal(e):
        site = _omega_site(e, y)
        if site is not None:
            out.append(Match("omega", (y,), site))
    return out


def apply_omega(e: PurePathSum, m: Match) -> PurePathSum:
    """sum_y w^(2y + 4yQ) = sqrt2 w exp(-2 pi i/4 * Q) (and conjugate for 3/4)."""
    (y,) = m.vars
    if y not in e.vars or y in e.signature_vars():
        raise RuleError(f"omega does not apply to x{y}")
    site = _omega_site(e, y)
    if site is None:
        raise RuleError(f"omega does not apply to x{y}")
    _, rest = e.phi.split(y)
    sign = site["sign"]
    phi = rest + scale_lift(QUARTER * -sign, site["Q"])
    scalar = e.scalar.times(pow2=1, phase=Fraction(sign, 8))
    return e.replace(vars=[v for v in e.vars if v != y], phi=phi, scalar=scalar)


# -- HH --------------------------------------------------------------------------

def _hh_site(e: PurePathSum, y0: int, y1: int) -> Optional[dict]:
    if y1 == y0 or y1 not in e.vars:
        return None
    cof = _cofactor(e, y0)
    if cof.get(frozenset({y1})) != HALF:
        return None
    if any(c != HALF for c in cof.values()):
        return None
    qs = [k for k in cof if k != frozenset({y1})]
    if any(y1 in k for k in qs):
        return None
    site = {"Q": BoolPoly(qs), "retarget": None}
    if y1 in e.signature_vars():
        if len(qs) != 1 or len(qs[0]) != 1:
            return None
        (z,) = qs[0]
        site["retarget"] = z
    return site


def match_hh(e: PurePathSum) -> List[Match]:
    out = []
    for y0 in _internal(e):
        cof = _cofactor(e, y0)
        for k in sorted(cof, key=lambda k: sorted(k)):
            if len(k) != 1:
                continue
            (y1,) = k
            site = _hh_site(e, y0, y1)
            if site is not None:
                out.append(Match("HH", (y0, y1), site))
    return out


def apply_hh(e: PurePathSum, m: Match) -> PurePathSum:
    """sum_{y0} (-1)^(y0 (y1 + Q)) forces y1 = Q; substitute and drop both."""
    y0, y1 = m.vars
    if y0 not in e.vars or y0 in e.signature_vars():
        raise RuleError(f"HH does not apply to x{y0}")
    site = _hh_site(e, y0, y1)
    if site is None:
        raise RuleError(f"HH does not apply to (x{y0}, x{y1})")
    _, rest = e.phi.split(y0)
    scalar = e.scalar.times(pow2=2)
    z = site["retarget"]
    if z is not None:
        ren = {y1: z}
        return PurePathSum([v for v in e.vars if v not in (y0, y1)],
                           [ren.get(v, v) for v in e.inputs],
                           [ren.get(v, v) for v in e.outputs],
                           rest.rename(ren), scalar)
    s1, t = rest.split(y1)
    phi = s1.times_rational(lift(site["Q"])) + t
    return e.replace(vars=[v for v in e.vars if v not in (y0, y1)], phi=phi, scalar=scalar)


# -- Case ------------------------------------------------------------------------

def find_case_gate(a0: Dict[Monomial, Phase], a1: Dict[Monomial, Phase]):
    """Find a monomial ``g`` splitting the non-1/2 parts of the two cofactors.

    ``a0`` must be a multiple of ``g`` and ``a1`` must equal ``(1 - g) * S``
    for its own part ``S`` not divisible by ``g``. Returns ``(True, None)``
    when ``a0`` is empty (``g`` = 0, nothing to check), ``(True, g)`` on
    success and ``(False, None)`` otherwise.
    """
    if not a0:
        return True, None
    common = frozenset.intersection(*a0.keys())
    if len(common) > GATE_SEARCH_LIMIT:
        return False, None
    target = PhasePoly(a1)
    pool = sorted(common)
    for r in range(len(pool) + 1):
        for g in itertools.combinations(pool, r):
            g = frozenset(g)
            s = PhasePoly({k: c for k, c in a1.items() if not g <= k})
            if s - s.times_monomial(g) == target:
                return True, g
    return False, None


def _case_site(e: PurePathSum, y0: int, y1: int) -> Optional[dict]:
    sig = e.signature_vars()
    if y0 == y1 or y0 in sig or y1 in sig:
        return None
    pair = frozenset({y0, y1})
    if e.phi.terms.get(pair) != HALF:
        return None
    if any(pair < k for k in e.phi.terms):
        return None
    c0 = {k: c for k, c in _cofactor(e, y0).items() if k != frozenset({y1})}
    c1 = {k: c for k, c in _cofactor(e, y1).items() if k != frozenset({y0})}
    q0 = [k for k, c in c0.items() if c == HALF]
    q1 = [k for k, c in c1.items() if c == HALF]
    a0 = {k: c for k, c in c0.items() if c != HALF}
    a1 = {k: c for k, c in c1.items() if c != HALF}
    ok, g = find_case_gate(a0, a1)
    if not ok:
        return None
    return {"Q": BoolPoly(q0), "Qp": BoolPoly(q1), "A0": a0, "A1": a1, "gate": g}


def match_case(e: PurePathSum) -> List[Match]:
    out = []
    internal = _internal(e)
    for y0 in internal:
        for y1 in internal:
            site = _case_site(e, y0, y1)
            if site is not None:
                out.append(Match("Case", (y0, y1), site))
    return out


def apply_case(e: PurePathSum, m: Match) -> PurePathSum:
    """Eliminate a pair joined by ``1/2 y0 y1`` by splitting on the gate monomial."""
    y0, y1 = m.vars
    if y0 not in e.vars or y1 not in e.vars:
        raise RuleError(f"Case does not apply to (x{y0}, x{y1})")
    site = _case_site(e, y0, y1)
    if site is None:
        raise RuleError(f"Case does not apply to (x{y0}, x{y1})")
    rest = PhasePoly({k: c for k, c in e.phi.terms.items() if y0 not in k and y1 not in k})
    phi = (rest
           + canonicalize(HALF, site["Q"] & site["Qp"])
           + PhasePoly(site["A0"]).times_rational(lift(site["Qp"]))
           + PhasePoly(site["A1"]).times_rational(lift(site["Q"])))
    return e.replace(vars=[v for v in e.vars if v not in (y0, y1)], phi=phi,
                     scalar=e.scalar.times(pow2=2))


MATCHERS = {"Elim": match_elim, "HH": match_hh, "omega": match_omega, "Case": match_case}
APPLIERS = {"Elim": apply_elim, "HH": apply_hh, "omega": apply_omega, "Case": apply_case}
