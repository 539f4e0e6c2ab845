"""Exact two-phase primal simplex on sparse rational tableaux.

The LP is brought into the form ``min c.s  s.t.  T s = b, s >= 0, b >= 0``
by shifting bounded variables, splitting free ones and adding slacks.  Each
tableau row is a dict ``column -> rational``.  Bland's rule (lowest-index
entering column, lowest-index leaving basic variable among ratio ties) makes
the method terminate and deterministic.  ``rule="dantzig"`` picks the most
negative reduced cost instead and drops back to Bland after a run of
degenerate pivots; it is offered for the larger fallback solves.

Arithmetic uses ``gmpy2.mpq`` when available and ``fractions.Fraction``
otherwise; results are always returned as Fractions.
"""
from fractions import Fraction
from typing import Dict, List, Mapping, Optional

from .model import LinearProgram, Q

try:  # pragma: no cover - import guard
    from gmpy2 import mpq as _num

    def _to_fraction(v) -> Fraction:
        return Fraction(int(v.numerator), int(v.denominator))

    def _from_fraction(f: Fraction):
        return _num(f.numerator, f.denominator)
except ImportError:  # pragma: no cover
    _num = Fraction

    def _to_fraction(v) -> Fraction:
        return v

    def _from_fraction(f: Fraction):
        return f


class LpSolution:
    """Result of a solve.

    Attributes:
        status: ``optimal``, ``infeasible`` or ``unbounded``.
        value: optimal objective value (Fraction) or None.
        primal: variable -> Fraction for optimal solutions.
        certificate: solver-specific evidence (basis, dual bound, ...).
    """

    def __init__(self, status: str, value=None, primal=None, certificate=None):
        self.status = status
        self.value = value
        self.primal = primal or {}
        self.certificate = certificate or {}

    def __repr__(self):
        return "LpSolution(%s, value=%s)" % (self.status, self.value)


class _Standard:
    """Bookkeeping for the standard-form transformation."""

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        self.cols: List[str] = []          # names of standard columns
        self.var_map: List[List] = []      # per original var: [const, [(col, sign), ...]]
        self.rows: List[Dict[int, object]] = []
        self.rhs: List[object] = []
        self.slack_of_row: List[Optional[int]] = []
        zero = _num(0)
        for j, v in enumerate(lp.variables):
            lo, hi = lp.lb[j], lp.ub[j]
            if lo is not None:
                c = self._new_col(v + "+")
                self.var_map.append([_from_fraction(lo), [(c, 1)]])
                if hi is not None:
                    s = self._new_col("slk:ub:" + v)
                    self._add({c: _num(1), s: _num(1)}, _from_fraction(hi - lo), s)
            elif hi is not None:
                c = self._new_col(v + "-")
                self.var_map.append([_from_fraction(hi), [(c, -1)]])
            else:
                cp = self._new_col(v + "+")
                cm = self._new_col(v + "-")
                self.var_map.append([zero, [(cp, 1), (cm, -1)]])
        for r in lp.rows:
            coeffs: Dict[int, object] = {}
            rhs = _from_fraction(r.rhs)
            for v, a in r.coeffs.items():
                const, parts = self.var_map[lp.var_index[v]]
                a = _from_fraction(a)
                rhs -= a * const
                for col, sign in parts:
                    coeffs[col] = coeffs.get(col, zero) + (a if sign > 0 else -a)
            coeffs = {k: x for k, x in coeffs.items() if x}
            slack = None
            if r.sense == "<=":
                slack = self._new_col("slk:" + r.name)
                coeffs[slack] = _num(1)
            elif r.sense == ">=":
                slack = self._new_col("slk:" + r.name)
                coeffs[slack] = _num(-1)
            self._add(coeffs, rhs, slack)

    def _new_col(self, name) -> int:
        self.cols.append(name)
        return len(self.cols) - 1

    def _add(self, coeffs, rhs, slack):
        if rhs < 0:
            coeffs = {k: -x for k, x in coeffs.items()}
            rhs = -rhs
        self.rows.append(coeffs)
        self.rhs.append(rhs)
        self.slack_of_row.append(slack)


def _pivot(rows, rhs, obj, r, col):
    prow = rows[r]
    piv = prow[col]
    if piv != 1:
        inv = 1 / piv
        for k in prow:
            prow[k] = prow[k] * inv
        rhs[r] = rhs[r] * inv
    items = list(prow.items())
    prhs = rhs[r]
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row.get(col)
        if not f:
            continue
        for k, v in items:
            nv = row.get(k, 0) - f * v
            if nv:
                row[k] = nv
            else:
                row.pop(k, None)
        rhs[i] = rhs[i] - f * prhs
    f = obj[0].get(col)
    if f:
        o = obj[0]
        for k, v in items:
            nv = o.get(k, 0) - f * v
            if nv:
                o[k] = nv
            else:
                o.pop(k, None)
        obj[1] = obj[1] - f * prhs


def _run(rows, rhs, basis, obj, allowed, rule, max_iter):
    """Minimise; ``obj = [reduced-cost dict, -value]``.  Returns status."""
    degenerate = 0
    it = 0
    while True:
        it += 1
        if it > max_iter:
            raise RuntimeError("simplex iteration limit reached")
        red = obj[0]
        use_bland = rule == "bland" or degenerate > 50
        enter = None
        if use_bland:
            best = None
            for k, v in red.items():
                if v < 0 and allowed(k) and (best is None or k < best):
                    best = k
            enter = best
        else:
            bestv = 0
            for k, v in red.items():
                if v < bestv and allowed(k):
                    bestv, enter = v, k
                elif v == bestv and v < 0 and enter is not None and k < enter and allowed(k):
                    enter = k
        if enter is None:
            return "optimal"
        leave = None
        best_ratio = None
        for i, row in enumerate(rows):
            a = row.get(enter)
            if a is None or a <= 0:
                continue
            ratio = rhs[i] / a
            if best_ratio is None or ratio < best_ratio or (ratio == best_ratio and basis[i] < basis[leave]):
                best_ratio, leave = ratio, i
        if leave is None:
            return "unbounded"
        degenerate = degenerate + 1 if best_ratio == 0 else 0
        _pivot(rows, rhs, obj, leave, enter)
        basis[leave] = enter


def simplex_solve(lp: LinearProgram, objective: Mapping[str, object], sense: str = "max",
                  rule: str = "bland", max_iter: int = 10 ** 7) -> LpSolution:
    """Exact optimum of ``objective`` over ``lp`` (``sense`` in {min, max})."""
    if sense not in ("min", "max"):
        raise ValueError("sense must be min or max")
    st = _Standard(lp)
    ncols = len(st.cols)
    rows = [dict(r) for r in st.rows]
    rhs = list(st.rhs)
    m = len(rows)
    # Phase I: reuse +1 slacks as starting basis, artificials elsewhere.
    basis: List[int] = []
    art_start = ncols
    nart = 0
    for i in range(m):
        s = st.slack_of_row[i]
        if s is not None and rows[i].get(s) == 1:
            basis.append(s)
        else:
            a = art_start + nart
            nart += 1
            rows[i][a] = _num(1)
            basis.append(a)
    is_art = lambda k: k >= art_start
    if nart:
        red: Dict[int, object] = {}
        val = _num(0)
        for i in range(m):
            if is_art(basis[i]):
                for k, v in rows[i].items():
                    if not is_art(k):
                        red[k] = red.get(k, 0) - v
                val -= rhs[i]
        obj = [{k: v for k, v in red.items() if v}, val]
        _run(rows, rhs, basis, obj, lambda k: not is_art(k), rule, max_iter)
        if obj[1] != 0:
            return LpSolution("infeasible", certificate={"phase1_value": _to_fraction(-obj[1])})
        # drive remaining artificials out of the basis
        keep_rows = []
        for i in range(m):
            if is_art(basis[i]):
                col = next((k for k in sorted(rows[i]) if not is_art(k) and rows[i][k] != 0), None)
                if col is None:
                    continue  # redundant row
                _pivot(rows, rhs, [{}, 0], i, col)
                basis[i] = col
            keep_rows.append(i)
        rows = [{k: v for k, v in rows[i].items() if not is_art(k)} for i in keep_rows]
        rhs = [rhs[i] for i in keep_rows]
        basis = [basis[i] for i in keep_rows]
    # Phase II objective in standard columns
    sign = -1 if sense == "max" else 1
    cost: Dict[int, object] = {}
    const = _num(0)
    for v, a in objective.items():
        j = lp.var_index[v]
        a = _from_fraction(Q(a)) * sign
        c0, parts = st.var_map[j]
        const += a * c0
        for col, sg in parts:
            cost[col] = cost.get(col, 0) + (a if sg > 0 else -a)
    red = {k: v for k, v in cost.items() if v}
    val = _num(0)
    for i, b in enumerate(basis):
        cb = cost.get(b)
        if cb:
            for k, v in rows[i].items():
                nv = red.get(k, 0) - cb * v
                if nv:
                    red[k] = nv
                else:
                    red.pop(k, None)
            val -= cb * rhs[i]
    obj = [red, val]
    status = _run(rows, rhs, basis, obj, lambda k: True, rule, max_iter)
    if status == "unbounded":
        return LpSolution("unbounded")
    colval = [_num(0)] * ncols
    for i, b in enumerate(basis):
        colval[b] = rhs[i]
    primal = {}
    for j, v in enumerate(lp.variables):
        c0, parts = st.var_map[j]
        x = c0
        for col, sg in parts:
            x = x + colval[col] if sg > 0 else x - colval[col]
        primal[v] = _to_fraction(x)
    value = sum((Q(a) * primal[v] for v, a in objective.items()), Fraction(0))
    cert = {"basis": [st.cols[b] for b in basis], "method": "exact-simplex", "rule": rule}
    return LpSolution("optimal", value, primal, cert)
