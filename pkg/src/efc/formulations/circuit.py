"""Circuit dominants of regular matroids from totally unimodular representations.

For a TU matrix ``A`` representing ``M`` over the reals and an element ``e``,

    P(e) = {x : exists y, -x <= y <= x, A y = 0, y_e = 1, -1 <= y <= 1}

is the dominant of the circuits through ``e``; the dominant of all circuits
is the disjunctive union of the ``|E|`` pieces (they share the recession
cone ``R^E_+``).
"""
import itertools
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .. import _kernels as K
from .. import gf2
from ..errors import NoCircuit, NoRepresentation, NotTU
from ..graph import Graph
from ..lp.model import ExtendedFormulation, LinearProgram, balas_union
from ..lp.solve import solve
from ..matroid import BinaryMatroid
from ..parts import Part
from .flows import orient_tree

# R10 signed: row i has -1 on its own D column and +1 on the two neighbours.
_R10_SIGNS = {0: -1, 1: 1, 4: 1}


def incidence_matrix(g: Graph) -> np.ndarray:
    """Vertex-edge incidence with edge ``uv`` oriented ``u -> v`` (+1 at u, -1 at v)."""
    vpos = {v: i for i, v in enumerate(g.vertices)}
    a = np.zeros((len(g.vertices), len(g.edges)), dtype=np.int64)
    for j, (_, u, v) in enumerate(g.edges):
        a[vpos[u], j] = 1
        a[vpos[v], j] = -1
    return a


def _spanning_tree(g: Graph) -> List[str]:
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    out = []
    for name, u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[rv] = ru
            out.append(name)
    return out


def cycle_matrix(g: Graph) -> np.ndarray:
    """Signed fundamental cycles w.r.t. the first spanning forest in edge order.

    One row per non-tree edge ``f = uv``: ``+1`` at ``f`` and, along the tree
    path from ``v`` back to ``u``, ``+1`` or ``-1`` as each edge's file
    orientation agrees with the direction of travel.  This is a network
    matrix (hence TU) whose kernel is the real cut space of ``g``.
    """
    if not g.is_connected():
        raise NoRepresentation("cycle matrix needs a connected graph")
    tree = _spanning_tree(g)
    root = g.vertices[0]
    _, parent = orient_tree(g, tree, root)
    col = {n: j for j, n in enumerate(g.edge_names)}
    ends = {n: (u, v) for n, u, v in g.edges}

    def up(x):
        path = [x]
        while x in parent:
            x = parent[x][0]
            path.append(x)
        return path

    rows = []
    tset = set(tree)
    par_edge = {x: arc[:-1] for x, (_, arc) in parent.items()}  # arcs are edge + "+"/"-"
    for n, u, v in g.edges:
        if n in tset:
            continue
        r = np.zeros(len(g.edges), dtype=np.int64)
        r[col[n]] = 1
        pv, pu = up(v), up(u)
        common = set(pv) & set(pu)
        lca = next(x for x in pv if x in common)
        # travel v -> lca (child to parent), then lca -> u (parent to child)
        x = v
        while x != lca:
            p = parent[x][0]
            e = par_edge[x]
            r[col[e]] += 1 if ends[e] == (x, p) else -1
            x = p
        down = []
        x = u
        while x != lca:
            down.append(x)
            x = parent[x][0]
        for x in reversed(down):
            p = parent[x][0]
            e = par_edge[x]
            r[col[e]] += 1 if ends[e] == (p, x) else -1
        rows.append(r)
    if not rows:
        return np.zeros((0, len(g.edges)), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def r10_signed() -> np.ndarray:
    """Signed ``[I5 | D]`` for the stored R10 representation."""
    a = np.zeros((5, 10), dtype=np.int64)
    for i in range(5):
        a[i, i] = 1
        for s, sign in _R10_SIGNS.items():
            a[i, 5 + (i + s) % 5] = sign
    return a


def _mod2_rows(a: np.ndarray) -> List[int]:
    rows = []
    for r in a:
        v = 0
        for j, x in enumerate(r):
            if x % 2:
                v |= 1 << j
        rows.append(v)
    return rows


def represents(a: np.ndarray, m: BinaryMatroid) -> bool:
    """True when ``a`` reduced mod 2 has the same row space as ``m``."""
    if a.shape[1] != m.n:
        return False
    red, _ = gf2.rref(_mod2_rows(a), m.n)
    return tuple(red) == tuple(m.rows)


def tu_representation(part) -> Tuple[np.ndarray, Tuple[str, ...]]:
    """A real TU matrix for a part, columns in the part's element order.

    Graphic parts use the oriented incidence matrix, cographic parts the
    signed fundamental cycle matrix, R10 its stored signing.  Other binary
    parts have no derivable signing here (:class:`NoRepresentation`).
    """
    if isinstance(part, BinaryMatroid):
        raise NoRepresentation("a bare binary matroid carries no signing; pass a Part")
    m = part.matroid
    if part.kind == "graphic":
        a = incidence_matrix(part.graph)
    elif part.kind == "cographic":
        a = cycle_matrix(part.graph)
    elif part.kind == "r10":
        a = r10_signed()
    else:
        raise NoRepresentation("no TU signing is derivable for a %s part" % part.kind)
    if not represents(a, m):
        raise NoRepresentation("signed matrix does not reduce to the part's matroid")
    return a, m.elements


def check_tu(a: np.ndarray, max_size: Optional[int] = 5) -> bool:
    """Every square submatrix up to ``max_size`` has determinant in {-1, 0, 1}.

    ``max_size=None`` checks every square size.  Raises :class:`NotTU` with
    the offending rows, columns and determinant.
    """
    a = np.asarray(a, dtype=np.int64)
    r, c = a.shape
    if np.abs(a).max(initial=0) > 1:
        i, j = np.argwhere(np.abs(a) > 1)[0]
        raise NotTU("entry (%d, %d) = %d" % (i, j, a[i, j]))
    top = min(r, c) if max_size is None else min(r, c, max_size)
    for k in range(2, top + 1):
        rsets = list(itertools.combinations(range(r), k))
        csets = list(itertools.combinations(range(c), k))
        for rs in rsets:
            sub = a[list(rs)]
            mats = np.stack([sub[:, list(cs)] for cs in csets])
            dets = K.small_dets(mats)
            bad = np.flatnonzero(np.abs(dets) > 1)
            if bad.size:
                cs = csets[int(bad[0])]
                raise NotTU("rows %s, columns %s have determinant %d" % (rs, cs, dets[bad[0]]))
    return True


def _box_lp(a: np.ndarray, support: Sequence[int]) -> Tuple[LinearProgram, List[str]]:
    lp = LinearProgram()
    sset = set(support)
    ys = []
    for j in range(a.shape[1]):
        if j in sset:
            ys.append(lp.add_var("y%d" % j, lb=-1, ub=1))
        else:
            ys.append(lp.add_var("y%d" % j, lb=0, ub=0))
    for i, row in enumerate(a):
        lp.add_row("a%d" % i, {ys[j]: int(v) for j, v in enumerate(row) if v}, "=", 0)
    return lp, ys


def cycle_signing(a: np.ndarray, c: Sequence[int]) -> Optional[List[int]]:
    """Signing ``psi`` in {-1, 0, 1}^E with support exactly ``c`` and ``A psi = 0``.

    Repeatedly maximises ``y_e`` for a remaining ``e`` over the box
    ``{A y = 0, -1 <= y <= 1 on the remaining set, 0 elsewhere}``; with ``A``
    TU the optimal vertex is integral and, when the remaining set is a cycle,
    has ``y_e = 1``.  Its support is a cycle, which is removed; the pieces
    are disjoint and add up to a signing of ``c``.  Returns None when ``c`` is
    not a cycle.
    """
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[1]
    rest = sorted(set(int(j) for j in c))
    mask = sum(1 << j for j in rest)
    if any(bin(r & mask).count("1") % 2 for r in _mod2_rows(a)):
        return None
    psi = [0] * n
    while rest:
        lp, ys = _box_lp(a, rest)
        e = rest[0]
        res = solve(lp, {ys[e]: 1}, "max", method="exact")
        if res.status != "optimal" or res.value != 1:
            return None
        vals = [res.primal.get(y, Fraction(0)) for y in ys]
        if any(v.denominator != 1 for v in vals):
            raise NotTU("fractional vertex in the signing box")
        supp = [j for j, v in enumerate(vals) if v != 0]
        for j in supp:
            psi[j] = int(vals[j])
        rest = [j for j in rest if j not in set(supp)]
    return psi


def circuit_piece_ef(a: np.ndarray, elements: Sequence[str], e: str) -> ExtendedFormulation:
    """Dominant of the circuits through ``e``."""
    lp = LinearProgram()
    x = {g: lp.add_var("x." + g) for g in elements}
    y = {g: lp.add_var("y." + g, lb=-1, ub=1) for g in elements}
    for g in elements:
        lp.add_row("up." + g, {y[g]: 1, x[g]: -1}, "<=", 0)
        lp.add_row("lo." + g, {y[g]: -1, x[g]: -1}, "<=", 0)
    for i, row in enumerate(a):
        coeffs = {y[g]: int(v) for g, v in zip(elements, row) if v}
        if coeffs:
            lp.add_row("ker.%d" % i, coeffs, "=", 0)
    lp.add_row("pin", {y[e]: 1}, "=", 1)
    proj = {g: ({x[g]: 1}, 0) for g in elements}
    return ExtendedFormulation(lp, list(elements), proj, {"kind": "circuit-piece", "element": e})


def circuit_dominant_ef(part, a: Optional[np.ndarray] = None, verify_tu: bool = True,
                        max_minor: Optional[int] = 5) -> ExtendedFormulation:
    """Extended formulation of the circuit dominant of a regular part.

    ``a`` overrides the derived TU representation (columns in element order).
    Elements lying on no circuit (coloops) get no piece; a matroid without
    circuits raises :class:`NoCircuit`.
    """
    if a is None:
        a, elements = tu_representation(part)
    else:
        m = part.matroid if isinstance(part, Part) else part
        elements = m.elements
        if not represents(np.asarray(a), m):
            raise NoRepresentation("matrix does not represent the matroid")
    if verify_tu:
        check_tu(a, max_minor)
    m = part.matroid if isinstance(part, Part) else part
    full = (1 << m.n) - 1
    pieces = []
    for j, e in enumerate(elements):
        if m.rank_mask(full & ~(1 << j)) < m.rank:
            continue  # coloop: on no circuit
        pieces.append(circuit_piece_ef(a, elements, e))
    if not pieces:
        raise NoCircuit("the matroid has no circuit")
    ef = balas_union(pieces, common_recession=True)
    ef.tags.update({"kind": "circuit-dominant", "pieces": len(pieces)})
    return ef
