"""Certified LP solving: a floating-point oracle checked in exact arithmetic.

HiGHS proposes a primal point and row duals.  Neither is trusted:

* the primal point is rounded to small rationals and every row and bound is
  checked exactly (integer-scaled rows, Python/NumPy integers);
* the duals are rounded, the reduced costs ``d = c - A^T y`` are recomputed
  exactly, and the weak-duality bound ``sum_i y_i*row_bound_i +
  sum_j d_j*col_bound_j`` is evaluated in rationals.

The solve is accepted only when the exact primal value equals the exact dual
bound; that pair is an optimality certificate independent of HiGHS.  If any
step fails the problem is re-solved by the exact simplex in
:mod:`efc.lp.simplex`.  Setting ``EFC_EXACT_ONLY=1`` skips HiGHS entirely.
"""
import math
import os
import threading
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np

from .model import ExtendedFormulation, LinearProgram, Q
from .simplex import LpSolution, simplex_solve

try:  # pragma: no cover - optional at import time
    import highspy

    HAVE_HIGHS = True
except ImportError:  # pragma: no cover
    HAVE_HIGHS = False

INF = float("inf")
_INT_SAFE = 1 << 62


def exact_only() -> bool:
    return os.environ.get("EFC_EXACT_ONLY", "").strip().lower() in ("1", "true", "yes")


STATS = {"highs_certified": 0, "exact_fallback": 0, "witness_reuse": 0, "lift_lp": 0}


# ---------------------------------------------------------------------------
# array forms
# ---------------------------------------------------------------------------

class _Arrays:
    """Float and integer-scaled CSR views of an LP."""

    def __init__(self, lp: LinearProgram):
        n, m = lp.nvars, len(lp.rows)
        self.n, self.m = n, m
        indptr = [0]
        indices: List[int] = []
        fdata: List[float] = []
        idata: List[int] = []
        self.scale: List[int] = []
        rhs_int: List[int] = []
        self.sense = np.zeros(m, np.int8)  # -1: <=, 0: =, 1: >=
        row_lo = np.full(m, -INF)
        row_hi = np.full(m, INF)
        for i, r in enumerate(lp.rows):
            s = 1
            for a in r.coeffs.values():
                s = s * a.denominator // math.gcd(s, a.denominator)
            s = s * r.rhs.denominator // math.gcd(s, r.rhs.denominator)
            self.scale.append(s)
            for v, a in r.coeffs.items():
                indices.append(lp.var_index[v])
                fdata.append(float(a))
                idata.append(int(a * s))
            indptr.append(len(indices))
            rhs_int.append(int(r.rhs * s))
            b = float(r.rhs)
            if r.sense == "<=":
                self.sense[i] = -1
                row_hi[i] = b
            elif r.sense == ">=":
                self.sense[i] = 1
                row_lo[i] = b
            else:
                row_lo[i] = row_hi[i] = b
        self.indptr = np.array(indptr, np.int64)
        self.indices = np.array(indices, np.int64)
        self.fdata = np.array(fdata, float)
        maxabs = max((abs(x) for x in idata), default=0)
        self.int_ok = maxabs < (1 << 40) and max((abs(x) for x in rhs_int), default=0) < (1 << 40)
        self.idata = np.array(idata, np.int64 if self.int_ok else object)
        self.rhs_int = np.array(rhs_int, np.int64 if self.int_ok else object)
        self.maxabs = maxabs
        self.row_lo, self.row_hi = row_lo, row_hi
        self.col_lo = np.array([-INF if b is None else float(b) for b in lp.lb])
        self.col_hi = np.array([INF if b is None else float(b) for b in lp.ub])
        self.lb = lp.lb
        self.ub = lp.ub
        self.rhs = [r.rhs for r in lp.rows]
        self.row_len = np.diff(self.indptr)
        self.max_row_len = int(self.row_len.max()) if m else 0
        # transpose for dual computations
        order = np.argsort(self.indices, kind="stable") if len(self.indices) else np.zeros(0, np.int64)
        row_of = np.repeat(np.arange(m), self.row_len)
        self.t_rows = row_of[order]
        self.t_cols = self.indices[order]
        self.t_data = [lp.rows[i].coeffs[lp.variables[j]] for i, j in zip(self.t_rows, self.t_cols)]

    def activities_int(self, X: np.ndarray) -> np.ndarray:
        """Integer row activities for integer columns X (n,) or (n, k)."""
        if self.m == 0:
            return np.zeros((0,) + X.shape[1:], X.dtype)
        prod = self.idata[:, None] * X[self.indices] if X.ndim == 2 else self.idata * X[self.indices]
        out = np.zeros((self.m,) + X.shape[1:], dtype=prod.dtype)
        nz = self.row_len > 0
        if nz.any() and len(prod):
            starts = self.indptr[:-1][nz]
            out[nz] = np.add.reduceat(prod, starts, axis=0)
        return out


def arrays(lp: LinearProgram) -> _Arrays:
    return lp.cached("arrays", lambda: _Arrays(lp))


# ---------------------------------------------------------------------------
# exact checks
# ---------------------------------------------------------------------------

def rationalize(vals: Sequence[float], maxden: int = 1 << 20) -> List[Fraction]:
    vals = np.asarray(vals, float)
    out: List[Fraction] = []
    r = np.rint(vals)
    close = np.abs(vals - r) <= 1e-9
    for v, ri, c in zip(vals, r, close):
        if c:
            out.append(Fraction(int(ri)))
        else:
            out.append(Fraction(float(v)).limit_denominator(maxden))
    return out


def _common_den(fracs: Sequence[Fraction]) -> int:
    L = 1
    for f in fracs:
        d = f.denominator
        if d != 1:
            L = L * d // math.gcd(L, d)
    return L


def check_primal(lp: LinearProgram, x: Sequence[Fraction]) -> bool:
    """Exact feasibility of ``x`` (ordered like ``lp.variables``)."""
    return check_primal_batch(lp, [x])[0]


def check_primal_batch(lp: LinearProgram, xs: Sequence[Sequence[Fraction]]) -> List[bool]:
    """Exact feasibility for many points at once."""
    A = arrays(lp)
    if not xs:
        return []
    L = _common_den([f for x in xs for f in x])
    nums = [[int(f * L) for f in x] for x in xs]
    maxx = max((abs(v) for row in nums for v in row), default=0)
    big = (A.maxabs * maxx * max(A.max_row_len, 1) >= _INT_SAFE) or not A.int_ok \
        or max((abs(r) for r in A.rhs_int.tolist()), default=0) * L >= _INT_SAFE
    dtype = object if big else np.int64
    X = np.array(nums, dtype=dtype).T  # (n, k)
    ok = np.ones(len(xs), bool)
    # bounds
    for j in range(A.n):
        lo, hi = A.lb[j], A.ub[j]
        col = X[j]
        if lo is not None:
            ok &= np.array([Fraction(int(c), L) >= lo for c in col]) if (lo.denominator != 1 or big) \
                else (col >= int(lo) * L)
        if hi is not None:
            ok &= np.array([Fraction(int(c), L) <= hi for c in col]) if (hi.denominator != 1 or big) \
                else (col <= int(hi) * L)
    if A.m:
        idata = A.idata.astype(dtype) if big else A.idata
        saved = A.idata
        A.idata = idata
        try:
            act = A.activities_int(X)
        finally:
            A.idata = saved
        rhs = (A.rhs_int.astype(object) if big else A.rhs_int) * L
        rhs = rhs[:, None]
        le = A.sense == -1
        ge = A.sense == 1
        eq = A.sense == 0
        if le.any():
            ok &= np.all(act[le] <= rhs[le], axis=0)
        if ge.any():
            ok &= np.all(act[ge] >= rhs[ge], axis=0)
        if eq.any():
            ok &= np.all(act[eq] == rhs[eq], axis=0)
    return [bool(v) for v in ok]


def dual_bound(lp: LinearProgram, cost: Sequence[Fraction], y: Sequence[Fraction]) -> Optional[Fraction]:
    """Exact lower bound on min cost.x implied by row multipliers ``y``.

    Multipliers whose sign would need an infinite row bound are zeroed
    first.  Returns None if the bound is minus infinity.
    """
    A = arrays(lp)
    y = list(y)
    for i in range(A.m):
        if y[i] > 0 and A.sense[i] == -1:
            y[i] = Fraction(0)
        elif y[i] < 0 and A.sense[i] == 1:
            y[i] = Fraction(0)
    d = list(cost)
    for i, j, a in zip(A.t_rows, A.t_cols, A.t_data):
        yi = y[i]
        if yi:
            d[j] -= yi * a
    bound = Fraction(0)
    for i in range(A.m):
        if y[i]:
            bound += y[i] * A.rhs[i]
    for j in range(A.n):
        dj = d[j]
        if dj > 0:
            if A.lb[j] is None:
                return None
            bound += dj * A.lb[j]
        elif dj < 0:
            if A.ub[j] is None:
                return None
            bound += dj * A.ub[j]
    return bound


# ---------------------------------------------------------------------------
# HiGHS plumbing
# ---------------------------------------------------------------------------

def _new_highs(lp: LinearProgram):
    A = arrays(lp)
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("presolve", "off")
    model = highspy.HighsLp()
    model.num_col_ = A.n
    model.num_row_ = A.m
    model.col_cost_ = np.zeros(A.n)
    model.col_lower_ = A.col_lo.copy()
    model.col_upper_ = A.col_hi.copy()
    model.row_lower_ = A.row_lo.copy()
    model.row_upper_ = A.row_hi.copy()
    model.a_matrix_.format_ = highspy.MatrixFormat.kRowwise
    model.a_matrix_.start_ = A.indptr.astype(np.int32)
    model.a_matrix_.index_ = A.indices.astype(np.int32)
    model.a_matrix_.value_ = A.fdata
    model.a_matrix_.num_col_ = A.n
    model.a_matrix_.num_row_ = A.m
    h.passModel(model)
    return h


def _highs(lp: LinearProgram, key: str = "opt"):
    # a Highs object is not safe to share between threads: one per thread
    return lp.cached("highs:%s:%d" % (key, threading.get_ident()), lambda: _new_highs(lp))


def _status(h) -> str:
    st = h.getModelStatus()
    S = highspy.HighsModelStatus
    if st == S.kOptimal:
        return "optimal"
    if st == S.kInfeasible:
        return "infeasible"
    if st in (S.kUnbounded, S.kUnboundedOrInfeasible):
        return "unbounded"
    return "other"


def _certified(lp: LinearProgram, cost: List[Fraction], want_min: bool) -> Optional[LpSolution]:
    """Try HiGHS plus exact certification; None means 'fall back'."""
    if not HAVE_HIGHS or exact_only():
        return None
    A = arrays(lp)
    h = _highs(lp)
    sgn = 1 if want_min else -1
    mcost = [sgn * c for c in cost]
    h.changeColsCost(A.n, np.arange(A.n, dtype=np.int32), np.array([float(c) for c in mcost]))
    h.run()
    if _status(h) != "optimal":
        return None
    sol = h.getSolution()
    x = rationalize(sol.col_value)
    if not check_primal(lp, x):
        return None
    val = sum((c * xi for c, xi in zip(mcost, x) if c), Fraction(0))
    y = rationalize(sol.row_dual) if A.m else []
    bound = dual_bound(lp, mcost, y)
    if bound is None or bound != val:
        return None
    primal = dict(zip(lp.variables, x))
    value = val if want_min else -val
    STATS["highs_certified"] += 1
    return LpSolution("optimal", value, primal, {"method": "highs+certificate", "dual_bound": sgn * bound,
                                                  "duals": y})


def solve(lp: LinearProgram, objective: Mapping[str, object], sense: str = "max",
          method: str = "auto") -> LpSolution:
    """Optimise a linear objective exactly.

    Args:
        lp: the program.
        objective: variable -> coefficient.
        sense: ``"max"`` or ``"min"``.
        method: ``"exact"`` (rational simplex only), ``"certified"`` / ``"auto"``
            (HiGHS with exact certificate, exact simplex as fallback).
    """
    if sense not in ("min", "max"):
        raise ValueError("sense must be min or max")
    if method not in ("auto", "exact", "certified"):
        raise ValueError("unknown method %r" % method)
    if method != "exact":
        cost = [Fraction(0)] * lp.nvars
        for v, a in objective.items():
            cost[lp.var_index[v]] += Q(a)
        res = _certified(lp, cost, sense == "min")
        if res is not None:
            return res
    STATS["exact_fallback"] += 1
    return simplex_solve(lp, objective, sense, rule="bland" if method == "exact" else "dantzig")


def maximize_over_projection(ef: ExtendedFormulation, w: Mapping[str, object], method: str = "auto",
                             sense: str = "max") -> LpSolution:
    """max (or min) of w.x over the projection of ``ef``; value includes offsets."""
    obj, const = ef.pullback(w)
    res = solve(ef.lp, obj, sense, method)
    if res.status == "optimal":
        res.value = res.value + const
    return res


# ---------------------------------------------------------------------------
# lifting
# ---------------------------------------------------------------------------

def _augmented(ef: ExtendedFormulation) -> LinearProgram:
    """ef.lp plus one equation per ground coordinate (rhs set per query)."""
    key = ef.lp._version
    hit = ef.__dict__.get("_augmented")
    if hit is not None and hit[0] is ef.lp and hit[1] == key:
        return hit[2]
    lp = ef.lp.copy()
    for g in ef.ground:
        coeffs, _ = ef.projection[g]
        lp.add_row("__proj__." + g, coeffs, "=", 0)
    ef.__dict__["_augmented"] = (ef.lp, key, lp)
    return lp


def _proj_rhs(ef: ExtendedFormulation, x: Sequence[Fraction]) -> List[Fraction]:
    return [Q(xi) - ef.projection[g][1] for g, xi in zip(ef.ground, x)]


def _deviation_lp(ef: ExtendedFormulation, x: Sequence[Fraction]) -> LinearProgram:
    lp = ef.lp.copy()
    for g, xi in zip(ef.ground, x):
        coeffs, off = ef.projection[g]
        sp = lp.add_var("__dev+__." + g, lb=0)
        sm = lp.add_var("__dev-__." + g, lb=0)
        row = dict(coeffs)
        row[sp] = 1
        row[sm] = -1
        lp.add_row("__dev__." + g, row, "=", Q(xi) - off)
    return lp


def _exact_lift(ef: ExtendedFormulation, x: Sequence[Fraction]):
    lp = ef.lp.copy()
    for g, xi in zip(ef.ground, x):
        coeffs, off = ef.projection[g]
        lp.add_row("__proj__." + g, coeffs, "=", Q(xi) - off)
    res = simplex_solve(lp, {}, "min")
    if res.status != "optimal":
        return None
    return {v: res.primal[v] for v in ef.lp.variables}


def lift_feasible(ef: ExtendedFormulation, x, method: str = "auto") -> Optional[Dict[str, Fraction]]:
    """Witness y with y feasible and pi(y) = x, or None if no such y exists.

    ``x`` is a mapping ground -> value or a sequence in ground order.  A
    returned witness has been checked exactly; a None answer is backed by an
    exact certificate (positive optimal deviation, or exact simplex).
    """
    if isinstance(x, Mapping):
        x = [Q(x.get(g, 0)) for g in ef.ground]
    else:
        x = [Q(v) for v in x]
    if len(x) != len(ef.ground):
        raise ValueError("point has %d coordinates, ground has %d" % (len(x), len(ef.ground)))
    if method == "exact" or exact_only() or not HAVE_HIGHS:
        return _exact_lift(ef, x)
    aug = _augmented(ef)
    A = arrays(aug)
    h = _highs(aug, "lift")
    rhs = _proj_rhs(ef, x)
    m0 = len(ef.lp.rows)
    idx = np.arange(m0, m0 + len(rhs), dtype=np.int32)
    vals = np.array([float(v) for v in rhs])
    h.changeRowsBounds(len(rhs), idx, vals, vals)
    h.run()
    STATS["lift_lp"] += 1
    st = _status(h)
    if st == "optimal":
        y = rationalize(h.getSolution().col_value)
        witness = dict(zip(aug.variables, y))
        if check_witness(ef, witness, x):
            return witness
        return _exact_lift(ef, x)
    # certify emptiness through the deviation LP
    dev = _deviation_lp(ef, x)
    obj = {v: 1 for v in dev.variables if v.startswith("__dev")}
    res = solve(dev, obj, "min")
    if res.status == "optimal" and res.value > 0:
        return None
    return _exact_lift(ef, x)


def check_witness(ef: ExtendedFormulation, witness: Mapping[str, Fraction], x: Sequence[Fraction]) -> bool:
    """Exact test that ``witness`` satisfies ef.lp and projects onto ``x``."""
    y = [Q(witness.get(v, 0)) for v in ef.lp.variables]
    if not check_primal(ef.lp, y):
        return False
    p = ef.project(dict(zip(ef.lp.variables, y)))
    return all(p[g] == Q(xi) for g, xi in zip(ef.ground, x))


def lift_many(ef: ExtendedFormulation, points: Sequence[Sequence[int]]) -> List[Optional[Dict[str, Fraction]]]:
    """Lift many 0/1 points, reusing witnesses where the projection allows.

    When each ground coordinate is a plain variable (see
    :meth:`ExtendedFormulation.direct_variables`), a witness for a point ``p``
    is tried for every ``q <= p`` by overwriting the coordinate variables with
    ``q``; the candidate is accepted only after an exact check of every row.
    Points are processed in order of decreasing support so that maximal
    points are lifted by LP first.
    """
    pts = [tuple(int(v) for v in p) for p in points]
    out: List[Optional[Dict[str, Fraction]]] = [None] * len(pts)
    direct = ef.direct_variables()
    if direct is None:
        for i, p in enumerate(pts):
            out[i] = lift_feasible(ef, p)
        return out
    col = [ef.lp.var_index[v] for v in direct]
    order = sorted(range(len(pts)), key=lambda i: -sum(pts[i]))
    if len(ef.ground) > 64:
        return [lift_feasible(ef, p) for p in pts]
    cache_masks = np.zeros(0, np.uint64)
    cache_w: List[List[Fraction]] = []
    pending: List[int] = []

    def mask_of(p):
        return sum(1 << k for k, v in enumerate(p) if v)

    def find_super(m):
        if not len(cache_masks):
            return -1
        um = np.uint64(m)
        hit = np.flatnonzero((cache_masks & um) == um)
        return int(hit[0]) if len(hit) else -1

    def flush():
        if not pending:
            return
        cands = []
        for i in pending:
            src = find_super(mask_of(pts[i]))
            y = list(cache_w[src])
            for k, j in enumerate(col):
                y[j] = Fraction(pts[i][k])
            cands.append(y)
        oks = check_primal_batch(ef.lp, cands)
        for i, y, ok in zip(pending, cands, oks):
            if ok:
                STATS["witness_reuse"] += 1
                out[i] = dict(zip(ef.lp.variables, y))
            else:
                out[i] = lift_feasible(ef, pts[i])
        pending.clear()

    for i in order:
        p = pts[i]
        if any(v not in (0, 1) for v in p):
            out[i] = lift_feasible(ef, p)
            continue
        m = mask_of(p)
        if find_super(m) >= 0:
            pending.append(i)
            if len(pending) >= 512:
                flush()
            continue
        w = lift_feasible(ef, p)
        out[i] = w
        if w is not None:
            cache_masks = np.append(cache_masks, np.uint64(m))
            cache_w.append([w[v] for v in ef.lp.variables])
    flush()
    return out
