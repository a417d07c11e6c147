from drinheights.verify import run_verify


def test_suite_passes_small_budget():
    res = run_verify(seed=0, count=40)
    assert res.ok
    assert res.total_cases > 0
    assert [name for name, _, _ in res.rows][:2] == ["sum-formula",
                                                     "homomorphism"]


def test_zero_cases():
    res = run_verify(seed=0, count=0)
    assert res.ok and res.total_cases == 0


def test_deterministic_given_seed():
    a = run_verify(seed=9, count=20)
    b = run_verify(seed=9, count=20)
    assert a.rows == b.rows


def test_injected_bug_caught_with_counterexample():
    res = run_verify(seed=0, count=40, inject_mv_bug=True)
    assert not res.ok
    failures = {name: msg for name, _, msg in res.rows if msg}
    assert "reduction-data" in failures
    assert "M_v < 0 iff v in S" in failures["reduction-data"]


def test_injection_does_not_leak():
    run_verify(seed=0, count=10, inject_mv_bug=True)
    res = run_verify(seed=0, count=10)
    assert res.ok
