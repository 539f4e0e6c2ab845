import json

from efc.formulations import graphic_independence_ef
from efc.graph import complete_graph
from efc.matroid import graphic
from efc.verify import VerificationReport, XorShift64, check_projection_equality, three_sum_bases


def test_xorshift_reference_values():
    # xorshift64* with shifts 12/25/27 and multiplier 0x2545F4914F6CDD1D, output >> 11
    x = 42
    mask = (1 << 64) - 1
    x ^= x >> 12
    x ^= (x << 25) & mask
    x ^= x >> 27
    assert XorShift64(42).next() == ((x * 0x2545F4914F6CDD1D) & mask) >> 11


def test_xorshift_deterministic_and_in_range():
    a, b = XorShift64(7), XorShift64(7)
    xs = [a.randint(-5, 5) for _ in range(500)]
    assert xs == [b.randint(-5, 5) for _ in range(500)]
    assert set(xs) == set(range(-5, 6))
    assert XorShift64(0).next() != 0


def test_reports_are_seed_deterministic():
    g = complete_graph(4)
    ef, m = graphic_independence_ef(g), graphic(g)
    r1 = check_projection_equality(ef, m, 20, 3)
    r2 = check_projection_equality(ef, m, 20, 3)
    assert r1.lines() == r2.lines()


def test_trials_zero_only_lifts():
    g = complete_graph(4)
    rep = check_projection_equality(graphic_independence_ef(g), graphic(g), 0, 1)
    assert [c[0] for c in rep.checks] == ["lift_independent", "circuit_probes"]


def test_failure_reports_counterexample():
    g = complete_graph(4)
    ef = graphic_independence_ef(g)
    bad = ef.with_lp(ef.lp.remove_row("ctotal"))
    rep = check_projection_equality(bad, graphic(g), 20, 1, lifting=False)
    assert not rep.ok
    name, status, detail = rep.failures()[0]
    assert name == "objectives" and "first w=" in detail


def test_report_formats():
    rep = VerificationReport("x", 1, 2)
    rep.add("a", True, "fine")
    rep.add("b", False, "broken")
    assert rep.lines() == ["check=a status=pass detail=fine", "check=b status=fail detail=broken"]
    recs = [json.loads(ln) for ln in rep.json_lines().splitlines()]
    assert recs[-1]["ok"] is False and recs[1]["status"] == "fail"


def test_parallel_jobs_same_result():
    g = complete_graph(4)
    ef, m = graphic_independence_ef(g), graphic(g)
    assert (check_projection_equality(ef, m, 20, 5, jobs=1).lines()
            == check_projection_equality(ef, m, 20, 5, jobs=4).lines())
