from zhps.rules.pathsum_rules import apply_omega
from zhps.selfcheck import CHECKS, format_report, run_selfcheck


def test_all_checks_pass_small():
    results = run_selfcheck(seed=3, cases=15)
    assert {r.name for r in results} >= set(CHECKS)
    bad = [r for r in results if not r.ok]
    assert not bad, format_report(bad)


def test_deterministic():
    a = run_selfcheck(seed=5, cases=10, only=["Case", "basic:A", "roundtrip:diagram"])
    b = run_selfcheck(seed=5, cases=10, only=["Case", "basic:A", "roundtrip:diagram"])
    assert [(r.name, r.passed, r.failed, r.skipped) for r in a] == \
        [(r.name, r.passed, r.failed, r.skipped) for r in b]


def test_planted_bug_is_caught():
    def wrong_scalar(e, m):
        out = apply_omega(e, m)
        return out.replace(scalar=out.scalar.times(phase="1/8"))

    (res,) = run_selfcheck(seed=0, cases=20, overrides={"omega": wrong_scalar}, only=["omega"])
    assert res.failed == 20 and not res.ok
    assert "max diff" in res.first_failure


def test_crashing_rule_counts_as_failure():
    def boom(e, m):
        raise RuntimeError("nope")

    (res,) = run_selfcheck(cases=3, overrides={"Elim": boom}, only=["Elim"])
    assert res.failed == 3 and "RuntimeError" in res.first_failure
    assert "FAIL" in format_report([res])
