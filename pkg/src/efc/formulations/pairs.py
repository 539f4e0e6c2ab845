"""Pair formulations R_T(M0) for the centre of a star decomposition.

``R`` lives on ``E0`` (centre elements outside every triangle) together with
two copies of each triangle, named ``t'`` and ``t''``.  It contains every
point ``(chi^J0, chi^J1', chi^J1'', ...)`` with ``J0 + J1* + ... + Jk*``
independent for all choices ``Ji* in {Ji', Ji''}`` (where ``Ji' = Ji''`` or
``(Ji', Ji'') = ({alpha, beta}, {beta, gamma})``), and each choice-projection
of ``R`` lies in ``P(M0)``.

Graphic centres extend Wong's formulation with separate capacities on the two
triangle copies and a per-triangle circulation that reroutes each flow.
Cographic centres (every triangle the star of a degree-3 vertex) use the
complemented coupling ``x <= 1 - c - c``, flows only for vertices outside the
stars, and explicit in-capacity rows at the star vertices.

Variables: ``x.<e>``, ``xp.<t>``, ``xpp.<t>``, ``c.<arc>`` (arcs off the
triangles), ``cp.<arc>`` / ``cpp.<arc>`` (triangle arcs), ``phi.<v>.<arc>``
and ``delta.<v>.<arc>``.
"""
import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import (Disconnected, NoValidRoot, NotEdgeDisjoint, NotStable, NotTriangleClique,
                      WrongDegree)
from ..graph import Graph
from ..lp.model import ExtendedFormulation, LinearProgram
from ..matroid import BinaryMatroid
from .flows import arc_names, bidirect, orient_tree, tree_path_arcs


def prime(t: str) -> str:
    return t + "'"


def dprime(t: str) -> str:
    return t + "''"


def pair_ground(e0: Sequence[str], triangles: Sequence[Sequence[str]]) -> List[str]:
    ground = list(e0)
    for tri in triangles:
        ground += [prime(t) for t in tri]
        ground += [dprime(t) for t in tri]
    return ground


def _validate_cliques(g: Graph, triangles) -> List[Tuple[str, str, str]]:
    out = []
    used = set()
    for tri in triangles:
        tri = tuple(tri)
        if len(tri) != 3 or len(set(tri)) != 3 or any(not g.has_edge(e) for e in tri):
            raise NotTriangleClique("%s is not three distinct edges of the graph" % (tri,))
        ends = [frozenset(g.endpoints(e)) for e in tri]
        verts = set().union(*ends)
        if len(verts) != 3 or len(set(ends)) != 3:
            raise NotTriangleClique("%s does not form a 3-clique" % (tri,))
        if used & set(tri):
            raise NotEdgeDisjoint("triangle %s shares an edge with an earlier one" % (tri,))
        used |= set(tri)
        out.append(tri)
    return out


def _skeleton(g: Graph, triangles, root):
    """Shared variables: x-blocks, capacities and the coupling-free rows."""
    d = bidirect(g, root)
    tri_edges = {e for tri in triangles for e in tri}
    e0 = [e for e in g.edge_names if e not in tri_edges]
    lp = LinearProgram()
    x = {e: lp.add_var("x." + e, lb=0) for e in e0}
    xp, xpp, cp, cpp = {}, {}, {}, {}
    c0 = {}
    for e in e0:
        for a in arc_names(e):
            c0[a] = lp.add_var("c." + a)
    blocks = []
    for tri in triangles:
        arcs = [a for e in tri for a in arc_names(e)]
        for e in tri:
            xp[e] = lp.add_var("xp." + e, lb=0)
            xpp[e] = lp.add_var("xpp." + e, lb=0)
        for a in arcs:
            cp[a] = lp.add_var("cp." + a)
            cpp[a] = lp.add_var("cpp." + a)
        blocks.append(arcs)
    return d, e0, lp, x, xp, xpp, c0, cp, cpp, blocks


def _common_rows(lp, d, c0, cp, cpp, blocks):
    total = {v: 1 for v in c0.values()}
    for arcs in blocks:
        for a in arcs:
            total[cp[a]] = 1
    lp.add_row("ctotal", total, "=", len(d.nodes) - 1)
    for i, arcs in enumerate(blocks):
        row = {cp[a]: 1 for a in arcs}
        for a in arcs:
            row[cpp[a]] = -1
        lp.add_row("bal.%d" % i, row, "=", 0)


def _flow(lp, d, v, tag=None):
    phi = {a: lp.add_var("phi.%s.%s" % (v, a), lb=0) for a in d.arc_names}
    for u in d.nodes:
        if u == v:
            continue
        row = {phi[a]: 1 for a in d.out_arcs[u]}
        for a in d.in_arcs[u]:
            row[phi[a]] = row.get(phi[a], 0) - 1
        lp.add_row("cons.%s.%s" % (v, u), row, "=", 1 if u == d.root else 0)
    return phi


def _finish(lp, g, e0, triangles, x, xp, xpp, tags) -> ExtendedFormulation:
    ground = pair_ground(e0, triangles)
    proj = {e: ({x[e]: 1}, 0) for e in e0}
    for tri in triangles:
        for t in tri:
            proj[prime(t)] = ({xp[t]: 1}, 0)
            proj[dprime(t)] = ({xpp[t]: 1}, 0)
    tags = dict(tags)
    tags.update({"E0": list(e0), "triangles": [tuple(t) for t in triangles]})
    return ExtendedFormulation(lp, ground, proj, tags)


def pair_formulation_graphic(g: Graph, triangles: Sequence[Sequence[str]],
                             root: Optional[str] = None) -> ExtendedFormulation:
    """R_T(M(G)) for edge-disjoint triangles (3-cliques) of a connected graph.

    Triangle order ``(alpha, beta, gamma)`` is taken as given.
    """
    if not g.is_connected():
        raise Disconnected("graph is not connected")
    triangles = _validate_cliques(g, triangles)
    root = root if root is not None else min(g.vertices)
    d, e0, lp, x, xp, xpp, c0, cp, cpp, blocks = _skeleton(g, triangles, root)
    for e in e0:
        p, m = arc_names(e)
        lp.add_row("cpl." + e, {x[e]: 1, c0[p]: -1, c0[m]: -1}, "<=", 0)
    for tri in triangles:
        for e in tri:
            p, m = arc_names(e)
            lp.add_row("cplp." + e, {xp[e]: 1, cp[p]: -1, cp[m]: -1}, "<=", 0)
            lp.add_row("cplpp." + e, {xpp[e]: 1, cpp[p]: -1, cpp[m]: -1}, "<=", 0)
    _common_rows(lp, d, c0, cp, cpp, blocks)
    arc_ends = {a: (u, w) for a, u, w in d.arcs}
    for v in d.nodes:
        if v == d.root:
            continue
        phi = _flow(lp, d, v)
        for a, ca in c0.items():
            lp.add_row("cap.%s.%s" % (v, a), {phi[a]: 1, ca: -1}, "<=", 0)
        for i, arcs in enumerate(blocks):
            delta = {a: lp.add_var("delta.%s.%s" % (v, a)) for a in arcs}
            verts = sorted({w for a in arcs for w in arc_ends[a]}, key=d.nodes.index)
            for u in verts:
                row = {}
                for a in arcs:
                    tail, head = arc_ends[a]
                    if tail == u:
                        row[delta[a]] = row.get(delta[a], 0) + 1
                    if head == u:
                        row[delta[a]] = row.get(delta[a], 0) - 1
                lp.add_row("circ.%s.%d.%s" % (v, i, u), row, "=", 0)
            for a in arcs:
                lp.add_row("capp.%s.%s" % (v, a), {phi[a]: 1, cp[a]: -1}, "<=", 0)
                lp.add_row("rer0.%s.%s" % (v, a), {phi[a]: 1, delta[a]: 1}, ">=", 0)
                lp.add_row("rer1.%s.%s" % (v, a), {phi[a]: 1, delta[a]: 1, cpp[a]: -1}, "<=", 0)
    return _finish(lp, g, e0, triangles, x, xp, xpp, {"root": d.root, "kind": "pair-graphic"})


def star_triangles(g: Graph, star_vertices: Sequence[str]) -> List[Tuple[str, str, str]]:
    """Triangles ``delta(v)`` of the cographic matroid, edges in file order."""
    inc = g.incident()
    out = []
    for v in star_vertices:
        out.append(tuple(inc[v]))
    return out


def pair_formulation_cographic(g: Graph, star_vertices: Sequence[str],
                               root: Optional[str] = None,
                               triangles: Optional[Sequence[Sequence[str]]] = None) -> ExtendedFormulation:
    """R_T(M*(G)) where each triangle is the edge star of a degree-3 vertex.

    The root is the least vertex outside the star set unless given.
    ``triangles`` optionally fixes the (alpha, beta, gamma) order of each
    star; by default the edges are taken in file order.
    """
    if not g.is_connected():
        raise Disconnected("graph is not connected")
    stars = list(star_vertices)
    if len(set(stars)) != len(stars):
        raise NotStable("repeated star vertex")
    for v in stars:
        if v not in g.vertices:
            raise WrongDegree("unknown vertex %r" % v)
        if g.degree(v) != 3 or len(set(g.neighbors(v))) != 3:
            raise WrongDegree("vertex %r must have three distinct neighbours" % v)
    sset = set(stars)
    for name, u, w in g.edges:
        if u in sset and w in sset:
            raise NotStable("star vertices %r and %r are adjacent" % (u, w))
    others = sorted(v for v in g.vertices if v not in sset)
    if root is None:
        if not others:
            raise NoValidRoot("every vertex is a star vertex")
        root = others[0]
    elif root in sset:
        raise NoValidRoot("root %r is a star vertex" % root)
    default = star_triangles(g, stars)
    if triangles is None:
        triangles = default
    else:
        triangles = [tuple(t) for t in triangles]
        if len(triangles) != len(default) or any(set(a) != set(b) for a, b in zip(triangles, default)):
            raise WrongDegree("triangles must list the stars of the given vertices")
    d, e0, lp, x, xp, xpp, c0, cp, cpp, blocks = _skeleton(g, triangles, root)
    for e in e0:
        p, m = arc_names(e)
        lp.add_row("cpl." + e, {x[e]: 1, c0[p]: 1, c0[m]: 1}, "<=", 1)
    for tri in triangles:
        for e in tri:
            p, m = arc_names(e)
            lp.add_row("cplp." + e, {xp[e]: 1, cp[p]: 1, cp[m]: 1}, "<=", 1)
            lp.add_row("cplpp." + e, {xpp[e]: 1, cpp[p]: 1, cpp[m]: 1}, "<=", 1)
    _common_rows(lp, d, c0, cp, cpp, blocks)
    for v in d.nodes:
        if v == d.root or v in sset:
            continue
        phi = _flow(lp, d, v)
        for a, ca in c0.items():
            lp.add_row("cap.%s.%s" % (v, a), {phi[a]: 1, ca: -1}, "<=", 0)
        for arcs in blocks:
            for a in arcs:
                lp.add_row("capp.%s.%s" % (v, a), {phi[a]: 1, cp[a]: -1}, "<=", 0)
                lp.add_row("cappp.%s.%s" % (v, a), {phi[a]: 1, cpp[a]: -1}, "<=", 0)
    for i, v in enumerate(stars):
        ins = d.in_arcs[v]
        lp.add_row("inp.%s" % v, {cp[a]: 1 for a in ins}, ">=", 1)
        lp.add_row("inpp.%s" % v, {cpp[a]: 1 for a in ins}, ">=", 1)
    tags = {"root": d.root, "kind": "pair-cographic", "stars": stars}
    return _finish(lp, g, e0, triangles, x, xp, xpp, tags)


# ---------------------------------------------------------------------------
# vertices of P_T(M0) and explicit witnesses
# ---------------------------------------------------------------------------

def pair_vertices(m0: BinaryMatroid, triangles: Sequence[Sequence[str]]) -> List[Dict[str, int]]:
    """Every 0/1 point of P_T(M0) by exhaustive enumeration.

    For each triangle the pair ``(Ji', Ji'')`` ranges over ``Ji' = Ji''`` (any
    subset of ``Ti``) and ``({alpha, beta}, {beta, gamma})``; ``J0`` ranges
    over subsets of ``E0``.  A combination is kept when every choice is
    independent in ``m0``.
    """
    tri_el = {e for tri in triangles for e in tri}
    e0 = [e for e in m0.elements if e not in tri_el]
    opts_per_tri = []
    for tri in triangles:
        opts = []
        for r in range(4):
            for sub in itertools.combinations(tri, r):
                opts.append((frozenset(sub), frozenset(sub)))
        opts.append((frozenset(tri[:2]), frozenset(tri[1:])))
        opts_per_tri.append(opts)
    idx = m0.index
    out = []
    for r in range(len(e0) + 1):
        for j0 in itertools.combinations(e0, r):
            base = 0
            for e in j0:
                base |= 1 << idx[e]
            if m0.rank_mask(base) != len(j0):
                continue
            for combo in itertools.product(*opts_per_tri):
                ok = True
                for choice in itertools.product((0, 1), repeat=len(combo)):
                    mk = base
                    size = len(j0)
                    for (jp, jpp), ch in zip(combo, choice):
                        js = jpp if ch else jp
                        for e in js:
                            mk |= 1 << idx[e]
                        size += len(js)
                    if m0.rank_mask(mk) != size:
                        ok = False
                        break
                if not ok:
                    continue
                pt = {e: (1 if e in j0 else 0) for e in e0}
                for tri, (jp, jpp) in zip(triangles, combo):
                    for t in tri:
                        pt[prime(t)] = int(t in jp)
                        pt[dprime(t)] = int(t in jpp)
                out.append(pt)
    return out


def graphic_pair_witness(ef: ExtendedFormulation, g: Graph, j0, jp: Sequence, jpp: Sequence) -> Dict[str, int]:
    """Explicit lifting of a spanning-tree vertex into the graphic R.

    ``jp[i]`` / ``jpp[i]`` are the edge sets chosen in triangle ``i``; every
    combination must be a spanning tree.  Capacities and flows come from the
    tree ``J0 + J1' + ... + Jk'`` oriented away from the root.  For a
    triangle with ``Ji' != Ji''`` the alternative capacities orient the tree
    with ``Ji''`` swapped in, and the circulation is the difference between
    the two root paths inside the triangle.
    """
    root = ef.tags["root"]
    triangles = ef.tags["triangles"]
    tree1 = set(j0).union(*[set(s) for s in jp])
    chosen1, parent1 = orient_tree(g, tree1, root)
    w: Dict[str, int] = {}
    for e in ef.tags["E0"]:
        w["x." + e] = int(e in j0)
        for a in arc_names(e):
            w["c." + a] = int(chosen1.get(e) == a)
    verts = [v for v in g.vertices if v != root]
    paths1 = {v: set(tree_path_arcs(parent1, v)) for v in verts}
    for v in verts:
        for a in bidirect(g, root).arc_names:
            w["phi.%s.%s" % (v, a)] = int(a in paths1[v])
    for i, tri in enumerate(triangles):
        arcs = [a for e in tri for a in arc_names(e)]
        for e in tri:
            w["xp." + e] = int(e in jp[i])
            w["xpp." + e] = int(e in jpp[i])
        for a in arcs:
            w["cp." + a] = int(any(chosen1.get(e) == a for e in tri))
        if set(jp[i]) == set(jpp[i]):
            for a in arcs:
                w["cpp." + a] = w["cp." + a]
                for v in verts:
                    w["delta.%s.%s" % (v, a)] = 0
            continue
        tree2 = (tree1 - set(jp[i])) | set(jpp[i])
        chosen2, parent2 = orient_tree(g, tree2, root)
        for a in arcs:
            w["cpp." + a] = int(any(chosen2.get(e) == a for e in tri))
        for v in verts:
            p2 = set(tree_path_arcs(parent2, v))
            for a in arcs:
                w["delta.%s.%s" % (v, a)] = int(a in p2) - int(a in paths1[v])
    return w


def cographic_pair_witness(ef: ExtendedFormulation, g: Graph, j0, jp: Sequence, jpp: Sequence) -> Dict[str, int]:
    """Explicit lifting of a basis vertex into the cographic R.

    Bases of M*(G) are complements of spanning trees.  Capacities and flows
    come from the tree ``E - (J0 + J1' + ... + Jk')``.  When ``Ji' != Ji''``
    the star vertex ``vi`` is a leaf entered through ``gamma_i``, and the
    alternative capacity is the arc entering ``vi`` along ``alpha_i``.
    """
    root = ef.tags["root"]
    triangles = ef.tags["triangles"]
    stars = ef.tags["stars"]
    basis = set(j0).union(*[set(s) for s in jp])
    tree = [e for e in g.edge_names if e not in basis]
    chosen, parent = orient_tree(g, tree, root)
    d = bidirect(g, root)
    w: Dict[str, int] = {}
    for e in ef.tags["E0"]:
        w["x." + e] = int(e in j0)
        for a in arc_names(e):
            w["c." + a] = int(chosen.get(e) == a)
    flows = [v for v in g.vertices if v != root and v not in set(stars)]
    for v in flows:
        path = set(tree_path_arcs(parent, v))
        for a in d.arc_names:
            w["phi.%s.%s" % (v, a)] = int(a in path)
    for i, tri in enumerate(triangles):
        for e in tri:
            w["xp." + e] = int(e in jp[i])
            w["xpp." + e] = int(e in jpp[i])
            for a in arc_names(e):
                w["cp." + a] = int(chosen.get(e) == a)
                w["cpp." + a] = w["cp." + a]
        if set(jp[i]) != set(jpp[i]):
            v = stars[i]
            alpha = tri[0]
            for e in tri:
                for a in arc_names(e):
                    w["cpp." + a] = 0
            for a in arc_names(alpha):
                if a in d.in_arcs[v]:
                    w["cpp." + a] = 1
    return w
