"""Seeded soundness sweep: every rule on random in-precondition instances vs the oracle."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from . import generators as gen
from .diagram import iso_equal, normalize
from .oracle import compare, eval_diagram, eval_pathsum
from .rules import graphical as G
from .rules.basic import BASIC_RULES, apply_basic
from .rules.pathsum_rules import APPLIERS, MATCHERS, RuleError
from .translate import pathsum_to_zh, zh_to_pathsum

__all__ = ["CheckResult", "CHECKS", "run_selfcheck", "format_report"]

TOL = 1e-9
MAX_TRIES = 50


@dataclass
class CheckResult:
    name: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    first_failure: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0


@dataclass
class Check:
    """``draw(rng)`` returns ``(obj, site)`` or None; ``apply(obj, site)`` rewrites."""
    draw: Callable
    apply: Callable
    evaluate: Callable


def _pathsum_check(name: str) -> Check:
    def draw(rng):
        e = gen.PATHSUM_INSTANCES[name](rng)
        ms = MATCHERS[name](e)
        return (e, rng.choice(ms)) if ms else None
    return Check(draw, APPLIERS[name], eval_pathsum)


def _diagram_check(kind: str, matcher, applier) -> Check:
    def draw(rng):
        d = gen.DIAGRAM_INSTANCES[kind](rng)
        ms = matcher(d)
        return (d, rng.choice(ms)) if ms else None
    return Check(draw, applier, eval_diagram)


def _ft_sites(d):
    out = []
    for h, (_, nb) in sorted(d.hboxes.items()):
        if len(nb) == 1:
            try:
                G.fourier_transform(d, h)
            except RuleError:
                continue
            out.append(h)
    return out


def _ft_draw(rng):
    d = gen.parity_gadget_instance(rng)
    sites = _ft_sites(d)
    return (d, rng.choice(sites)) if sites else None


def _basic_check(rule: str) -> Check:
    return Check(lambda rng: gen.BASIC_INSTANCES[rule](rng),
                 lambda d, loc: apply_basic(d, rule, loc), eval_diagram)


CHECKS: Dict[str, Check] = {
    "Elim": _pathsum_check("Elim"),
    "omega": _pathsum_check("omega"),
    "HH": _pathsum_check("HH"),
    "Case": _pathsum_check("Case"),
    "fourier_transform": Check(_ft_draw, G.fourier_transform, eval_diagram),
    "hyper_local_complement": _diagram_check(
        "hyper_local_complement", G.match_hlc, lambda d, m: G.hyper_local_complement(d, m.vars[0])),
    "hyper_pivot": _diagram_check(
        "hyper_pivot", G.match_hyper_pivot, lambda d, m: G.hyper_pivot(d, m.data["hbox"])),
    "fourier_hyper_pivot": _diagram_check(
        "fourier_hyper_pivot", G.match_fhp,
        lambda d, m: G.fourier_hyper_pivot(d, m.data["hbox"], m.vars[0])),
    "case_hyper_pivot": _diagram_check(
        "case_hyper_pivot", G.match_case_hp,
        lambda d, m: G.case_hyper_pivot(d, m.data["hbox"], m.vars[0])),
}
CHECKS.update({f"basic:{r}": _basic_check(r) for r in BASIC_RULES})


def _roundtrip_pathsum(rng) -> Tuple[bool, str]:
    e = gen.random_pathsum(rng, rng.randint(1, 8), rng.randint(0, 10))
    back = zh_to_pathsum(pathsum_to_zh(e))
    return back == e, repr(e)


def _roundtrip_diagram(rng) -> Tuple[bool, str]:
    d = pathsum_to_zh(gen.random_pathsum(rng, rng.randint(1, 8), rng.randint(0, 10)))
    return iso_equal(pathsum_to_zh(zh_to_pathsum(d)), d), repr(d)


def _normalize_sound(rng) -> Tuple[bool, str]:
    raw = gen.random_raw_diagram(rng, rng.randint(0, 2), rng.randint(0, 2), rng.randint(1, 5))
    return bool(compare(eval_diagram(normalize(raw)), eval_diagram(raw), tol=TOL)), repr(raw)


ROUNDTRIPS = {
    "roundtrip:pathsum": _roundtrip_pathsum,
    "roundtrip:diagram": _roundtrip_diagram,
    "normalize": _normalize_sound,
}


def run_selfcheck(seed: int = 0, cases: int = 100,
                  overrides: Optional[Dict[str, Callable]] = None,
                  only: Optional[List[str]] = None) -> List[CheckResult]:
    """Run every check ``cases`` times.

    ``overrides`` replaces the apply function of named checks, which lets
    a test plant a broken rule and watch it get caught.
    """
    overrides = overrides or {}
    results = []
    for name, check in CHECKS.items():
        if only and name not in only:
            continue
        rng = random.Random(f"{seed}:{name}")
        apply = overrides.get(name, check.apply)
        res = CheckResult(name)
        for _ in range(cases):
            drawn = None
            for _ in range(MAX_TRIES):
                drawn = check.draw(rng)
                if drawn is not None:
                    break
            if drawn is None:
                res.skipped += 1
                continue
            obj, site = drawn
            try:
                after = apply(obj, site)
                verdict = compare(check.evaluate(after), check.evaluate(obj), tol=TOL)
                good, why = bool(verdict), f"max diff {verdict.max_abs_diff:.3g}"
            except Exception as exc:  # a crashing rule is a failing rule
                good, why = False, f"{type(exc).__name__}: {exc}"
            if good:
                res.passed += 1
            else:
                res.failed += 1
                res.first_failure = res.first_failure or f"{why} at {site!r} on {obj!r}"
        results.append(res)
    for name, fn in ROUNDTRIPS.items():
        if only and name not in only:
            continue
        rng = random.Random(f"{seed}:{name}")
        res = CheckResult(name)
        for _ in range(cases):
            good, what = fn(rng)
            if good:
                res.passed += 1
            else:
                res.failed += 1
                res.first_failure = res.first_failure or what
        results.append(res)
    return results


def format_report(results: List[CheckResult]) -> str:
    width = max((len(r.name) for r in results), default=4)
    lines = []
    for r in results:
        tag = "PASS" if r.ok else "FAIL"
        line = f"{r.name:<{width}}  {tag}  {r.passed}/{r.passed + r.failed}"
        if r.skipped:
            line += f"  ({r.skipped} skipped)"
        lines.append(line)
        if r.first_failure:
            lines.append(f"  first failure: {r.first_failure[:300]}")
    return "\n".join(lines)
