"""The eleven acceptance criteria, one test each.

Each test records a single PASS/FAIL line (shown in the pytest terminal
summary, or printed when this file is run as a script).
"""
import io
import re
import time
from contextlib import redirect_stdout

from efc.cli import main
from efc.decomposition import CutFamily, compose_tree, read_tree, uncross_cuts
from efc.formulations import (circuit_dominant_ef, cographic_independence_ef, explicit_flat_ef,
                              graphic_independence_ef, pair_formulation_cographic,
                              pair_formulation_graphic, regular_pipeline)
from efc.decomposition import find_separation
from efc.graph import complete_bipartite, complete_graph, petersen
from efc.lp.solve import lift_feasible
from efc.matroid import cographic, dual, find_isomorphism, graphic, r10
from efc.parts import Part
from efc.verify import (check_3sum_bases, check_3sum_flats, check_circuit_dominant, check_mutations,
                        check_pair_sandwich, check_projection_equality, check_size_bounds)

from conftest import corpus, record, second_k5
from test_decomposition import crossing_graph
from test_lp import run_solver_agreement

SEED = 42
MUTATION_ROWS = ["ctotal", "cpl.12", "cons.2.1", "cons.3.4", "cap.2.12+"]


def _short(reps):
    bad = [(r.instance, f) for r in reps for f in r.failures()]
    return "" if not bad else " first failure %s %s" % bad[0]


def test_ac01_graphic_soundness():
    t0 = time.perf_counter()
    reps = []
    for name, g in [("K4", complete_graph(4)), ("K5", complete_graph(5)),
                    ("K33", complete_bipartite(3, 3)), ("Petersen", petersen())]:
        reps.append(check_projection_equality(graphic_independence_ef(g), graphic(g), 200, SEED, name))
    dt = time.perf_counter() - t0
    ok = all(r.ok for r in reps) and dt <= 60
    assert record(1, "graphic soundness", ok, "4 graphs x 200 objectives in %.1fs (limit 60s)%s"
                  % (dt, _short(reps)))


def test_ac02_cographic_soundness():
    reps = []
    for name, g in [("cK4", complete_graph(4)), ("cK5", complete_graph(5)), ("cK33", complete_bipartite(3, 3))]:
        reps.append(check_projection_equality(cographic_independence_ef(g), cographic(g), 200, SEED, name))
    ok = all(r.ok for r in reps)
    assert record(2, "cographic soundness", ok, "3 duals x 200 objectives%s" % _short(reps))


def test_ac03_r10():
    m = r10()
    ef = explicit_flat_ef(m)
    rep = check_projection_equality(ef, m, 200, SEED, "r10")
    wrong = []
    for mask in range(1 << m.n):
        x = [(mask >> m.index[g]) & 1 for g in ef.ground]
        indep = m.rank_mask(mask) == bin(mask).count("1")
        if (lift_feasible(ef, x) is not None) != indep:
            wrong.append(mask)
    three_connected = find_separation(m, 1) is None and find_separation(m, 2) is None
    self_dual = find_isomorphism(m, dual(m)) is not None
    ok = rep.ok and not wrong and three_connected and self_dual
    assert record(3, "R10", ok, "1024 subsets lift iff independent (%d wrong), 200 objectives %s, "
                  "3-connected=%s self-dual=%s" % (len(wrong), "ok" if rep.ok else "FAIL", three_connected,
                                                   self_dual))


def test_ac04_three_sum_structure():
    a, b = graphic(complete_graph(5)), graphic(second_k5())
    reps = [check_3sum_bases(a, b, "A+B"), check_3sum_bases(b, a, "B+A"), check_3sum_flats(a, b, "flats")]
    ok = all(r.ok for r in reps)
    detail = "; ".join(r.checks[-1][2] for r in reps)
    assert record(4, "3-sum bases and flats", ok, detail + _short(reps))


def test_ac05_asymmetric_gluing():
    t = read_tree(corpus("two_k5.dectree"))
    ef = regular_pipeline(t)
    m = compose_tree(t)
    rep = check_projection_equality(ef, m, 200, SEED, "two_k5")
    sizes = check_size_bounds(ef, "two_k5")
    st = ef.tags["star"]
    ok = rep.ok and sizes.ok
    assert record(5, "asymmetric gluing", ok, "projection %s; count=%d = R %d + pairs %s; bound %.1f "
                  "(c1=%.3f, |E0|=%d, leaves %s)%s" % (
                      "ok" if rep.ok else "FAIL", st["count"], st["count_R"], st["count_pairs"], st["bound"],
                      st["c1"], st["center_size"], st["count_leaves"], _short([rep, sizes])))


def test_ac06_pair_sandwich():
    tri = [("12", "13", "23")]
    k33 = complete_bipartite(3, 3)
    reps = [check_pair_sandwich(pair_formulation_graphic(complete_graph(4), tri), graphic(complete_graph(4)),
                                100, SEED, "K4"),
            check_pair_sandwich(pair_formulation_graphic(complete_graph(5), tri), graphic(complete_graph(5)),
                                100, SEED, "K5"),
            check_pair_sandwich(pair_formulation_cographic(k33, ["a1"]), cographic(k33), 100, SEED, "cK33")]
    ok = all(r.ok for r in reps)
    pts = ", ".join("%s %s" % (r.instance, r.checks[0][2]) for r in reps)
    assert record(6, "pair sandwich", ok, "vertices lifted: %s; 2 choices x 100 objectives each%s"
                  % (pts, _short(reps)))


def test_ac07_circuit_dominant():
    parts = [Part.from_graph("K4", "graphic", complete_graph(4)),
             Part.from_graph("cK5", "cographic", complete_graph(5)), Part.r10("r10")]
    notes = []
    ok = True
    for p in parts:
        ef = circuit_dominant_ef(p)
        rep = check_circuit_dominant(ef, p.matroid, 100, SEED, instance=p.id)
        n = p.matroid.n
        c = ef.inequality_count() / float(n * n)
        ok = ok and rep.ok and ef.tags["pieces"] == n
        notes.append("%s pieces=%d/%d C=%.2f%s" % (p.id, ef.tags["pieces"], n, c, _short([rep])))
    assert record(7, "circuit dominant", ok, "; ".join(notes))


def test_ac08_wong_size_arithmetic():
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(["stats", "--input", corpus("k5.graph"), "--kind", "graphic"])
    out = buf.getvalue()
    phi = re.search(r"phi_vars=(\d+) expected=(\d+)", out)
    ok = code == 0 and phi is not None and int(phi.group(1)) == 80 == int(phi.group(2)) and "MISMATCH" not in out
    assert record(8, "Wong size arithmetic", ok, "efc stats K5: phi_vars=%s, (|V|-1)*2|E| = 80"
                  % (phi.group(1) if phi else "?"))


def test_ac09_uncrossing():
    g = crossing_graph()
    fam = CutFamily(g, [("p1q1", "p2q2", "r2s1"), ("p1r1", "p2r2", "q2s2")])
    before = fam.crossing_pairs()
    history = []
    out = uncross_cuts(g, fam, history)
    m = cographic(g)
    counts = [before] + [h[-1] for h in history]
    monotone = all(x > y for x, y in zip(counts, counts[1:]))
    parallel = all(m.cols[m.index[e]] == m.cols[m.index[f]] for _, _, e, f, _ in history)
    ok = before > 0 and out.crossing_pairs() == 0 and monotone and parallel and history
    assert record(9, "uncrossing", ok, "crossing counts %s, swaps %s, all parallel=%s"
                  % (counts, [(h[2], h[3]) for h in history], parallel))


def test_ac10_exact_simplex():
    bad = run_solver_agreement(100, SEED)
    again = run_solver_agreement(100, SEED)
    ok = not bad and bad == again
    assert record(10, "exact simplex", ok, "100 random 0/1 LPs (<=10 vars) vs vertex enumeration, %d mismatches"
                  % len(bad))


def test_ac11_mutation_sensitivity():
    g = complete_graph(4)
    rep = check_mutations(graphic_independence_ef(g), graphic(g), MUTATION_ROWS, 200, SEED, "K4")
    caught = [c[0] for c in rep.checks if c[1] == "pass"]
    assert record(11, "mutation sensitivity", rep.ok, "%d/5 deletions caught (%s)"
                  % (len(caught), ", ".join(MUTATION_ROWS)))


if __name__ == "__main__":
    import sys
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_ac"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
