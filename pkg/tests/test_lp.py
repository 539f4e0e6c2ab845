import itertools
from fractions import Fraction

import pytest

from efc.lp.model import LinearProgram
from efc.lp.simplex import simplex_solve
from efc.lp.solve import solve
from efc.lp.textio import read_lp, write_lp
from efc.verify import XorShift64


def random_interval_lp(rng):
    """max c.x over 0 <= x <= 1 and random window constraints.

    Interval (consecutive-ones) rows give a totally unimodular system, so
    with integer right-hand sides every vertex is a 0/1 point.
    """
    n = rng.randint(2, 10)
    lp = LinearProgram()
    xs = [lp.add_var("x%d" % j, lb=0, ub=1) for j in range(n)]
    for i in range(rng.randint(1, 5)):
        a = rng.randint(0, n - 1)
        b = rng.randint(a, n - 1)
        sense = ("<=", ">=", "=")[rng.randint(0, 2)]
        rhs = rng.randint(0, b - a + 1)
        lp.add_row("w%d" % i, {xs[j]: 1 for j in range(a, b + 1)}, sense, rhs)
    c = {x: rng.randint(-5, 5) for x in xs}
    return lp, xs, c


def vertex_enumeration(lp, xs, c):
    best = None
    for bits in itertools.product((0, 1), repeat=len(xs)):
        pt = {x: Fraction(b) for x, b in zip(xs, bits)}
        if lp.evaluate(pt):
            continue
        val = sum(c[x] * pt[x] for x in xs)
        best = val if best is None else max(best, val)
    return best


def run_solver_agreement(n_lps=100, seed=42):
    rng = XorShift64(seed)
    mismatches = []
    for t in range(n_lps):
        lp, xs, c = random_interval_lp(rng)
        want = vertex_enumeration(lp, xs, c)
        got = simplex_solve(lp, c, "max")
        if want is None:
            ok = got.status == "infeasible"
        else:
            ok = got.status == "optimal" and got.value == want
        if not ok:
            mismatches.append((t, got.status, got.value, want))
    return mismatches


def test_exact_simplex_matches_vertex_enumeration():
    assert run_solver_agreement(100, 42) == []


def test_simplex_deterministic():
    rng1, rng2 = XorShift64(5), XorShift64(5)
    for _ in range(10):
        a, b = random_interval_lp(rng1), random_interval_lp(rng2)
        r1 = simplex_solve(a[0], a[2])
        r2 = simplex_solve(b[0], b[2])
        assert (r1.status, r1.value, r1.primal) == (r2.status, r2.value, r2.primal)


def test_certified_agrees_with_exact():
    rng = XorShift64(9)
    for _ in range(20):
        lp, xs, c = random_interval_lp(rng)
        a = solve(lp, c, "max", method="exact")
        b = solve(lp, c, "max", method="certified")
        assert a.status == b.status
        assert a.value == b.value


def test_unbounded_and_infeasible():
    lp = LinearProgram()
    x = lp.add_var("x", lb=0)
    assert simplex_solve(lp, {x: 1}).status == "unbounded"
    lp.add_row("r", {x: 1}, "<=", -1)
    assert simplex_solve(lp, {x: 1}).status == "infeasible"


def test_text_round_trip():
    rng = XorShift64(1)
    lp, _, _ = random_interval_lp(rng)
    assert read_lp(write_lp(lp)) == lp
