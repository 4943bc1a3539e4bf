"""Greedy simplification loops for path-sums and diagrams."""

from __future__ import annotations

from typing import Callable, Dict, Optional, Sequence, Tuple

from ..diagram import Diagram
from ..numeric import ScalarFactor
from ..pathsum import PurePathSum
from . import graphical as G
from .pathsum_rules import APPLIERS, MATCHERS
from .trace import RewriteStep, RewriteTrace

__all__ = ["DEFAULT_POLICY", "DIAGRAM_POLICY", "simplify", "simplify_diagram"]

DEFAULT_POLICY: Tuple[str, ...] = ("Elim", "HH", "omega", "Case")
DIAGRAM_POLICY: Tuple[str, ...] = ("Elim", "RHP", "FHP", "HW", "HLC", "CHP")

_DIAGRAM_RULES: Dict[str, Tuple[Callable, Callable]] = {
    "Elim": (G.match_isolated, lambda d, m: G.remove_isolated(d, m.vars[0])),
    "RHP": (G.match_hyper_pivot, lambda d, m: G.hyper_pivot(d, m.data["hbox"])),
    "FHP": (G.match_fhp, lambda d, m: G.fourier_hyper_pivot(d, m.data["hbox"], m.vars[0])),
    "HW": (G.match_fuse_wire, lambda d, m: G.fuse_hadamard_wire(d, m.vars[0])),
    "HLC": (G.match_hlc, lambda d, m: G.hyper_local_complement(d, m.vars[0])),
    "CHP": (G.match_case_hp, lambda d, m: G.case_hyper_pivot(d, m.data["hbox"], m.vars[0])),
}


def _delta(before: ScalarFactor, after: ScalarFactor) -> ScalarFactor:
    return after * before.inverse()


def simplify(e: PurePathSum, policy: Optional[Sequence[str]] = None,
             rules: Optional[Dict[str, Tuple[Callable, Callable]]] = None
             ) -> Tuple[PurePathSum, RewriteTrace]:
    """Apply the first match of the first applicable rule until none is left.

    ``rules`` maps a rule name to ``(matcher, applier)`` and defaults to the
    built-in path-sum rules; it exists so tests can inject faulty rules.
    """
    policy = tuple(policy or DEFAULT_POLICY)
    table = rules or {k: (MATCHERS[k], APPLIERS[k]) for k in MATCHERS}
    unknown = [p for p in policy if p not in table]
    if unknown:
        raise ValueError(f"unknown rules in policy: {unknown}")
    trace = RewriteTrace()
    while True:
        for name in policy:
            matcher, applier = table[name]
            found = matcher(e)
            if found:
                m = found[0]
                new = applier(e, m)
                trace.record(RewriteStep(name, tuple(v for v in m.vars if v not in new.vars),
                                         _delta(e.scalar, new.scalar), e.num_vars, new.num_vars))
                if new.num_vars >= e.num_vars:
                    raise RuntimeError(f"rule {name} did not remove a variable")
                e = new
                break
        else:
            return e, trace


def simplify_diagram(d: Diagram, policy: Optional[Sequence[str]] = None
                     ) -> Tuple[Diagram, RewriteTrace]:
    """Greedy pivoting on interior spiders of a normalized diagram."""
    policy = tuple(policy or DIAGRAM_POLICY)
    unknown = [p for p in policy if p not in _DIAGRAM_RULES]
    if unknown:
        raise ValueError(f"unknown rules in policy: {unknown}")
    trace = RewriteTrace()
    while True:
        for name in policy:
            matcher, applier = _DIAGRAM_RULES[name]
            found = matcher(d)
            if found:
                m = found[0]
                new = applier(d, m)
                removed = tuple(sorted(d.spiders - new.spiders))
                trace.record(RewriteStep(name, removed, _delta(d.scalar, new.scalar),
                                         len(d.spiders), len(new.spiders),
                                         (m.data["hbox"],) if "hbox" in m.data else m.vars))
                d = new
                break
        else:
            return d, trace
