from hologroups.verify import CASE_NAMES, CASES, Case, CaseResult, get_case, run_case, run_suite


def test_case_table():
    assert len(CASE_NAMES) == len(set(CASE_NAMES)) == 11
    assert [c.criterion for c in CASES] == list(range(1, 12))
    limits = {c.criterion: c.limit for c in CASES}
    assert limits[2] == 1 and limits[5] == 900 and limits[7] == 1200


def test_crashing_case_is_a_failure():
    def boom():
        raise RuntimeError("bad")

    r = run_case(Case("boom", 0, 10, boom))
    assert not r.passed and not r.ok and "RuntimeError" in r.checks["error"]
    assert r.line().startswith("FAIL boom")


def test_time_limit_is_part_of_ok():
    r = CaseResult("slow", True, 5.0, 1.0)
    assert r.passed and not r.ok and "over time limit" in r.line()
    assert r.to_json()["ok"] is False


def test_quick_cases_pass():
    results = run_suite(["cyclic-four-chain", "alternating-five-normal-regular", "pairing-duality"])
    assert all(r.ok for r in results), [r.line() for r in results]
    assert get_case("pairing-duality").criterion == 9
