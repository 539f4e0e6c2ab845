"""Exact-rational linear programs and extended formulations.

Coefficients are :class:`fractions.Fraction` throughout.  A
:class:`LinearProgram` is a list of named variables (each with optional
finite bounds) and named rows ``sum coef*var  (<=|=|>=)  rhs``.  An
:class:`ExtendedFormulation` adds an affine projection from the variables onto
an ordered ground set.

Size convention: equations are free; every row with sense ``<=``/``>=`` and
every finite variable bound counts as one inequality.  A variable whose lower
and upper bound coincide is counted as an equation.
"""
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..errors import (DuplicateName, EmptyList, GroundMismatch, GroundOverlap, UnknownElement)

SENSES = ("<=", "=", ">=")


def Q(v) -> Fraction:
    """Coerce ints, strings like ``'3/4'`` and Fractions to Fraction."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        raise TypeError("floats are not accepted in exact LP data: %r" % v)
    return Fraction(v)


class Row:
    __slots__ = ("name", "coeffs", "sense", "rhs")

    def __init__(self, name: str, coeffs: Dict[str, Fraction], sense: str, rhs: Fraction):
        self.name = name
        self.coeffs = coeffs
        self.sense = sense
        self.rhs = rhs

    def __eq__(self, other):
        return (isinstance(other, Row) and self.name == other.name and self.sense == other.sense
                and self.rhs == other.rhs and self.coeffs == other.coeffs)

    def __repr__(self):
        return "Row(%s %s %s)" % (self.name, self.sense, self.rhs)


class LinearProgram:
    """Sparse exact LP.  Build with :meth:`add_var` / :meth:`add_row`."""

    def __init__(self):
        self.variables: List[str] = []
        self.var_index: Dict[str, int] = {}
        self.lb: List[Optional[Fraction]] = []
        self.ub: List[Optional[Fraction]] = []
        self.rows: List[Row] = []
        self.row_index: Dict[str, int] = {}
        self._version = 0
        self._cache: Dict[str, object] = {}

    # -- construction ----------------------------------------------------
    def add_var(self, name: str, lb=None, ub=None) -> str:
        if name in self.var_index:
            raise DuplicateName("variable %r declared twice" % name)
        if not name or any(ch.isspace() for ch in name):
            raise ValueError("bad variable name %r" % name)
        self.var_index[name] = len(self.variables)
        self.variables.append(name)
        self.lb.append(None if lb is None else Q(lb))
        self.ub.append(None if ub is None else Q(ub))
        self._touch()
        return name

    def add_row(self, name: str, coeffs: Mapping[str, object], sense: str, rhs=0) -> str:
        if sense not in SENSES:
            raise ValueError("bad sense %r" % sense)
        if name in self.row_index:
            raise DuplicateName("row %r declared twice" % name)
        clean: Dict[str, Fraction] = {}
        for v, a in coeffs.items():
            if v not in self.var_index:
                raise UnknownElement("row %r uses undeclared variable %r" % (name, v))
            a = Q(a)
            if a:
                clean[v] = clean.get(v, Fraction(0)) + a
                if not clean[v]:
                    del clean[v]
        self.row_index[name] = len(self.rows)
        self.rows.append(Row(name, clean, sense, Q(rhs)))
        self._touch()
        return name

    def set_bounds(self, name: str, lb=None, ub=None):
        j = self.var_index[name]
        self.lb[j] = None if lb is None else Q(lb)
        self.ub[j] = None if ub is None else Q(ub)
        self._touch()

    def remove_row(self, name: str) -> "LinearProgram":
        """Copy of this LP without the named row (used by mutation tests)."""
        out = self.copy()
        i = out.row_index.pop(name)
        del out.rows[i]
        out.row_index = {r.name: k for k, r in enumerate(out.rows)}
        out._touch()
        return out

    def copy(self) -> "LinearProgram":
        out = LinearProgram()
        out.variables = list(self.variables)
        out.var_index = dict(self.var_index)
        out.lb = list(self.lb)
        out.ub = list(self.ub)
        out.rows = [Row(r.name, dict(r.coeffs), r.sense, r.rhs) for r in self.rows]
        out.row_index = dict(self.row_index)
        return out

    def _touch(self):
        self._version += 1
        self._cache.clear()

    def cached(self, key, build):
        """Memoise derived data (array forms, solver handles) per LP version."""
        k = (key, self._version)
        if k not in self._cache:
            self._cache[k] = build()
        return self._cache[k]

    # -- queries ---------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.variables)

    def counts(self) -> Tuple[int, int, int]:
        """(variables, inequalities, equations) under the module convention."""
        ineq = eq = 0
        for r in self.rows:
            if r.sense == "=":
                eq += 1
            else:
                ineq += 1
        for lo, hi in zip(self.lb, self.ub):
            if lo is not None and hi is not None and lo == hi:
                eq += 1
                continue
            ineq += (lo is not None) + (hi is not None)
        return len(self.variables), ineq, eq

    def evaluate(self, assignment: Mapping[str, Fraction]) -> List[str]:
        """Names of rows/bounds violated by an exact assignment (missing = 0)."""
        bad = []
        for j, v in enumerate(self.variables):
            x = Q(assignment.get(v, 0))
            if self.lb[j] is not None and x < self.lb[j]:
                bad.append("lb:" + v)
            if self.ub[j] is not None and x > self.ub[j]:
                bad.append("ub:" + v)
        for r in self.rows:
            act = sum((a * Q(assignment.get(v, 0)) for v, a in r.coeffs.items()), Fraction(0))
            if (r.sense == "<=" and act > r.rhs) or (r.sense == ">=" and act < r.rhs) or \
                    (r.sense == "=" and act != r.rhs):
                bad.append(r.name)
        return bad

    def __eq__(self, other):
        return (isinstance(other, LinearProgram) and self.variables == other.variables
                and self.lb == other.lb and self.ub == other.ub and self.rows == other.rows)

    def __repr__(self):
        v, i, e = self.counts()
        return "LinearProgram(vars=%d, ineqs=%d, eqs=%d)" % (v, i, e)


Affine = Tuple[Dict[str, Fraction], Fraction]


class ExtendedFormulation:
    """An LP together with an affine map onto named ground coordinates.

    Args:
        lp: the lifted system.
        ground: ordered ground-set names.
        projection: ground name -> (coefficients on lp variables, offset).
        tags: optional free-form metadata (block layout, root, ...).
    """

    def __init__(self, lp: LinearProgram, ground: Sequence[str], projection: Mapping[str, Affine],
                 tags: Optional[dict] = None):
        ground = tuple(ground)
        if len(set(ground)) != len(ground):
            raise DuplicateName("ground set has repeated names")
        proj: Dict[str, Affine] = {}
        for g in ground:
            coeffs, off = projection.get(g, ({}, 0))
            clean = {}
            for v, a in coeffs.items():
                if v not in lp.var_index:
                    raise UnknownElement("projection of %r uses undeclared variable %r" % (g, v))
                a = Q(a)
                if a:
                    clean[v] = a
            proj[g] = (clean, Q(off))
        extra = set(projection) - set(ground)
        if extra:
            raise UnknownElement("projection given for non-ground names %s" % sorted(extra))
        self.lp = lp
        self.ground = ground
        self.projection = proj
        self.tags = dict(tags or {})

    def inequality_count(self) -> int:
        return self.lp.counts()[1]

    def equation_count(self) -> int:
        return self.lp.counts()[2]

    def size_report(self) -> Tuple[int, int, int]:
        return self.lp.counts()

    def direct_variables(self) -> Optional[List[str]]:
        """If every ground coordinate is a distinct variable with coefficient 1
        and zero offset, return those variables in ground order."""
        out = []
        seen = set()
        for g in self.ground:
            coeffs, off = self.projection[g]
            if off != 0 or len(coeffs) != 1:
                return None
            (v, a), = coeffs.items()
            if a != 1 or v in seen:
                return None
            seen.add(v)
            out.append(v)
        return out

    def pullback(self, weights: Mapping[str, object]) -> Tuple[Dict[str, Fraction], Fraction]:
        """Objective on lp variables (and constant) equal to w . pi(y)."""
        obj: Dict[str, Fraction] = {}
        const = Fraction(0)
        for g in self.ground:
            w = Q(weights.get(g, 0))
            if not w:
                continue
            coeffs, off = self.projection[g]
            for v, a in coeffs.items():
                obj[v] = obj.get(v, Fraction(0)) + w * a
            const += w * off
        return obj, const

    def project(self, assignment: Mapping[str, Fraction]) -> Dict[str, Fraction]:
        out = {}
        for g in self.ground:
            coeffs, off = self.projection[g]
            out[g] = off + sum((a * Q(assignment.get(v, 0)) for v, a in coeffs.items()), Fraction(0))
        return out

    def with_lp(self, lp: LinearProgram) -> "ExtendedFormulation":
        return ExtendedFormulation(lp, self.ground, self.projection, self.tags)

    def __repr__(self):
        v, i, e = self.size_report()
        return "ExtendedFormulation(|ground|=%d, vars=%d, ineqs=%d, eqs=%d)" % (len(self.ground), v, i, e)


# ---------------------------------------------------------------------------
# algebra
# ---------------------------------------------------------------------------

def _copy_into(dst: LinearProgram, src: LinearProgram, prefix: str) -> Dict[str, str]:
    ren = {}
    for j, v in enumerate(src.variables):
        ren[v] = dst.add_var(prefix + v, src.lb[j], src.ub[j])
    for r in src.rows:
        dst.add_row(prefix + r.name, {ren[v]: a for v, a in r.coeffs.items()}, r.sense, r.rhs)
    return ren


def _map_affine(aff: Affine, ren: Mapping[str, str]) -> Affine:
    coeffs, off = aff
    return {ren[v]: a for v, a in coeffs.items()}, off


def product(ef1: ExtendedFormulation, ef2: ExtendedFormulation, prefixes=("a.", "b.")) -> ExtendedFormulation:
    """Cartesian product of two formulations over disjoint grounds."""
    if not ef1.ground or not ef2.ground:
        raise EmptyList("product factors must have a non-empty ground set")
    common = set(ef1.ground) & set(ef2.ground)
    if common:
        raise GroundOverlap("grounds overlap in %s" % sorted(common))
    lp = LinearProgram()
    r1 = _copy_into(lp, ef1.lp, prefixes[0])
    r2 = _copy_into(lp, ef2.lp, prefixes[1])
    proj = {g: _map_affine(ef1.projection[g], r1) for g in ef1.ground}
    proj.update({g: _map_affine(ef2.projection[g], r2) for g in ef2.ground})
    return ExtendedFormulation(lp, ef1.ground + ef2.ground, proj)


def product_many(efs: Sequence[ExtendedFormulation]) -> ExtendedFormulation:
    if not efs:
        raise EmptyList("nothing to multiply")
    if len(efs) == 1:
        return efs[0]
    lp = LinearProgram()
    proj = {}
    ground: List[str] = []
    for i, ef in enumerate(efs):
        if set(ground) & set(ef.ground):
            raise GroundOverlap("grounds overlap")
        ren = _copy_into(lp, ef.lp, "f%d." % i)
        for g in ef.ground:
            proj[g] = _map_affine(ef.projection[g], ren)
        ground.extend(ef.ground)
    return ExtendedFormulation(lp, ground, proj)


def intersect(ef1: ExtendedFormulation, ef2: ExtendedFormulation, prefixes=("i1.", "i2.")) -> ExtendedFormulation:
    """Intersection of the projections: both systems tied to one ground block."""
    if set(ef1.ground) != set(ef2.ground) or len(ef1.ground) != len(ef2.ground):
        raise GroundMismatch("intersect needs identical grounds")
    lp = LinearProgram()
    xs = {g: lp.add_var("x." + g) for g in ef1.ground}
    proj = {}
    for ef, pre in ((ef1, prefixes[0]), (ef2, prefixes[1])):
        ren = _copy_into(lp, ef.lp, pre)
        for g in ef.ground:
            coeffs, off = _map_affine(ef.projection[g], ren)
            row = dict(coeffs)
            row[xs[g]] = row.get(xs[g], Fraction(0)) - 1
            lp.add_row(pre + "tie." + g, row, "=", -off)
    for g in ef1.ground:
        proj[g] = ({xs[g]: Fraction(1)}, Fraction(0))
    return ExtendedFormulation(lp, ef1.ground, proj)


def balas_union(efs: Sequence[ExtendedFormulation], common_recession: bool = False) -> ExtendedFormulation:
    """Disjunctive formulation of the convex hull of a union.

    Piece ``i`` is copied with every variable scaled by a multiplier
    ``lam_i``: a row ``a.y (sense) b`` becomes ``a.y' - b*lam_i (sense) 0`` and
    a finite bound ``l <= y`` becomes ``y' - l*lam_i >= 0``.  The multipliers
    satisfy ``lam_i >= 0`` and ``sum lam_i = 1``; the projection is the sum of
    the scaled projections, offsets multiplied by ``lam_i``.  Bounds equal to
    zero stay variable bounds.

    The construction is exact for non-empty bounded pieces, including
    single points.  With ``common_recession=True`` the caller asserts that all
    pieces share one recession cone; the same system then describes the
    convex hull of the union.  The inequality count is the sum over the
    pieces plus one per multiplier.
    """
    if not efs:
        raise EmptyList("balas_union needs at least one piece")
    ground = efs[0].ground
    for ef in efs[1:]:
        if set(ef.ground) != set(ground) or len(ef.ground) != len(ground):
            raise GroundMismatch("all pieces need the same ground set")
    lp = LinearProgram()
    lams = [lp.add_var("lam%d" % i, lb=0) for i in range(len(efs))]
    lp.add_row("convexity", {l: 1 for l in lams}, "=", 1)
    proj_coeffs: Dict[str, Dict[str, Fraction]] = {g: {} for g in ground}
    for i, ef in enumerate(efs):
        pre = "u%d." % i
        lam = lams[i]
        ren = {}
        src = ef.lp
        for j, v in enumerate(src.variables):
            lo, hi = src.lb[j], src.ub[j]
            name = lp.add_var(pre + v, lb=0 if lo == 0 else None, ub=0 if hi == 0 else None)
            ren[v] = name
            if lo is not None and lo != 0:
                lp.add_row(pre + "lb." + v, {name: 1, lam: -lo}, ">=", 0)
            if hi is not None and hi != 0:
                lp.add_row(pre + "ub." + v, {name: 1, lam: -hi}, "<=", 0)
        for r in src.rows:
            coeffs = {ren[v]: a for v, a in r.coeffs.items()}
            if r.rhs:
                coeffs[lam] = coeffs.get(lam, Fraction(0)) - r.rhs
            lp.add_row(pre + r.name, coeffs, r.sense, 0)
        for g in ground:
            coeffs, off = ef.projection[g]
            tgt = proj_coeffs[g]
            for v, a in coeffs.items():
                tgt[ren[v]] = tgt.get(ren[v], Fraction(0)) + a
            if off:
                tgt[lam] = tgt.get(lam, Fraction(0)) + off
    proj = {g: (proj_coeffs[g], Fraction(0)) for g in ground}
    tags = {"pieces": len(efs), "common_recession": common_recession}
    return ExtendedFormulation(lp, ground, proj, tags)


def size_report(ef: ExtendedFormulation) -> Tuple[int, int, int]:
    """(variables, inequalities, equations) recomputed from the emitted LP."""
    return ef.size_report()


def point_ef(ground: Sequence[str], point: Mapping[str, object]) -> ExtendedFormulation:
    """The single point ``point`` as a formulation with no variables."""
    lp = LinearProgram()
    return ExtendedFormulation(lp, ground, {g: ({}, Q(point.get(g, 0))) for g in ground})


def embed(ef: ExtendedFormulation, ground: Sequence[str], fixed: Mapping[str, object]) -> ExtendedFormulation:
    """Extend ``ef`` to a larger ground by constant coordinates ``fixed``."""
    proj = dict(ef.projection)
    for g in ground:
        if g not in proj:
            if g not in fixed:
                raise GroundMismatch("no value for new coordinate %r" % g)
            proj[g] = ({}, Q(fixed[g]))
    return ExtendedFormulation(ef.lp, ground, {g: proj[g] for g in ground}, ef.tags)
