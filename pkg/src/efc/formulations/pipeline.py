"""The recursive construction of P(M) for a regular matroid given by a decomposition tree.

Dispatch:

* one graphic, cographic, R10 or binary part: its own independence EF;
* an edge sharing no element (1-sum): product of the two sides;
* an edge sharing one element (2-sum): :func:`compose_2sum` of the two sides;
* otherwise every edge is a 3-sum: the tree is centred at its weight
  centroid, the centre contributes a pair formulation, each leaf its P' and
  P'' polytopes, and :func:`glue_star` ties them together.

Every call appends size lines ``level=<d> part=<id> vars=<n> ineqs=<n> eqs=<n>``
to ``ef.tags["ledger"]``.
"""
import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from ..decomposition import (CutFamily, DecompositionTree, detect_and_fix_bad_cuts, is_good_cut,
                             single_part_tree, star_decompose, swap_parallel)
from ..errors import UnsupportedPart
from ..lp.model import ExtendedFormulation, LinearProgram, _copy_into, _map_affine, product
from ..matroid import BinaryMatroid
from ..parts import Part
from .explicit import explicit_flat_ef
from .flows import cographic_independence_ef, graphic_independence_ef
from .glue import _tie, compose_2sum, glue_star
from .minors import p_prime_ef
from .pairs import dprime, pair_formulation_cographic, pair_formulation_graphic, pair_ground, prime


def ledger_line(level: int, part: str, ef: ExtendedFormulation) -> str:
    v, i, e = ef.size_report()
    return "level=%d part=%s vars=%d ineqs=%d eqs=%d" % (level, part, v, i, e)


def part_ef(part: Part) -> ExtendedFormulation:
    """Independence EF of a single part, ground in the part's element order."""
    if part.kind == "graphic":
        ef = graphic_independence_ef(part.graph)
    elif part.kind == "cographic":
        ef = cographic_independence_ef(part.graph)
    elif part.kind in ("r10", "binary"):
        ef = explicit_flat_ef(part.matroid)
    else:
        raise UnsupportedPart("no formulation for part kind %r" % part.kind)
    return _reground(ef, list(part.elements), {"case": part.kind})


def _reground(ef: ExtendedFormulation, ground: Sequence[str], extra: Optional[dict] = None) -> ExtendedFormulation:
    if sorted(ground) != sorted(ef.ground):
        raise ValueError("ground sets differ")
    tags = dict(ef.tags)
    tags.update(extra or {})
    return ExtendedFormulation(ef.lp, list(ground), {g: ef.projection[g] for g in ground}, tags)


def _rename_ground(ef: ExtendedFormulation, ren: Dict[str, str]) -> ExtendedFormulation:
    ground = [ren.get(g, g) for g in ef.ground]
    proj = {ren.get(g, g): a for g, a in ef.projection.items()}
    return ExtendedFormulation(ef.lp, ground, proj, ef.tags)


def generic_pair_formulation(m0: BinaryMatroid, triangles: Sequence[Sequence[str]]) -> ExtendedFormulation:
    """The largest admissible pair polytope, for centres of any kind.

    One copy of P(M0) per choice of ``t'`` or ``t''`` in every triangle; the
    copies are tied to the shared ``E0`` coordinates and to the chosen
    triangle blocks.  This is exactly the set of points whose every
    choice-projection lies in P(M0), so it contains every pair point.  Its
    size grows with ``2^k``.
    """
    triangles = [tuple(t) for t in triangles]
    tri_el = {e for t in triangles for e in t}
    e0 = [e for e in m0.elements if e not in tri_el]
    ground = pair_ground(e0, triangles)
    lp = LinearProgram()
    var = {g: lp.add_var("x." + g, lb=0) for g in ground}
    base = explicit_flat_ef(m0)
    for s, choice in enumerate(itertools.product((0, 1), repeat=len(triangles))):
        ren = _copy_into(lp, base.lp, "ch%d." % s)
        target = {e: e for e in e0}
        for tri, ch in zip(triangles, choice):
            for t in tri:
                target[t] = dprime(t) if ch else prime(t)
        for e in m0.elements:
            _tie(lp, "tie.ch%d.%s" % (s, e), _map_affine(base.projection[e], ren), ({var[target[e]]: 1}, 0))
    proj = {g: ({var[g]: 1}, 0) for g in ground}
    return ExtendedFormulation(lp, ground, proj, {"kind": "pair-generic", "E0": e0, "triangles": triangles})


def _star_vertex(g, tri) -> Optional[str]:
    for v in g.vertices:
        if g.degree(v) == 3 and set(g.incident()[v]) == set(tri):
            return v
    return None


def _centre_ef(t: DecompositionTree, sd, ledger: List[str]) -> Tuple[ExtendedFormulation, DecompositionTree, Dict[str, str]]:
    """Pair formulation of the centre; may rename elements (cographic swaps).

    Returns (R, possibly modified tree, renaming to undo on the final ground).
    """
    centre = sd.center
    tris = sd.triangles
    if centre.kind == "graphic":
        return pair_formulation_graphic(centre.graph, tris), t, {}
    if centre.kind == "cographic":
        g = centre.graph
        stars = [_star_vertex(g, tri) for tri in tris]
        if all(stars):
            return pair_formulation_cographic(g, stars, triangles=tris), t, {}
        # try the parallel swaps that turn bad cuts into vertex stars
        try:
            relabel, fam, splits = detect_and_fix_bad_cuts(g, CutFamily(g, tris))
        except Exception as exc:  # not 2-connected, or cuts not bonds
            ledger.append("note=cographic centre %s kept generic (%s)" % (sd.center_id, exc.__class__.__name__))
            relabel, fam, splits = None, None, None
        if fam is not None and not splits and all(is_good_cut(g, c) for c in fam.cuts):
            t2 = t
            undo: Dict[str, str] = {}
            for old, new in zip(tris, fam.cuts):
                for alpha in old:
                    if alpha in new:
                        continue
                    (alpha_p,) = [e for e in new if e not in old and
                                  g.has_edge(e) and _parallel(centre.matroid, alpha, e)]
                    t2 = swap_parallel(t2, sd.center_id, alpha, alpha_p)
                    undo[alpha] = alpha_p
                    undo[alpha_p] = alpha
            sd2 = star_decompose(t2)
            stars = [_star_vertex(g, tri) for tri in sd2.triangles]
            ledger.append("note=cographic centre %s normalized by %d swaps" % (sd.center_id, len(undo) // 2))
            return pair_formulation_cographic(g, stars, triangles=sd2.triangles), t2, undo
        ledger.append("note=cographic centre %s uses the generic pair formulation" % sd.center_id)
    return generic_pair_formulation(centre.matroid, tris), t, {}


def _parallel(m: BinaryMatroid, a: str, b: str) -> bool:
    return m.cols[m.index[a]] == m.cols[m.index[b]]


def _split_at(t: DecompositionTree, i: int) -> Tuple[DecompositionTree, DecompositionTree]:
    a, b, _ = t.edges[i]
    rest = [e for j, e in enumerate(t.edges) if j != i]
    side = {a}
    changed = True
    while changed:
        changed = False
        for x, y, _ in rest:
            if (x in side) != (y in side):
                side |= {x, y}
                changed = True
    n1 = [(v, p) for v, p in t.nodes.items() if v in side]
    n2 = [(v, p) for v, p in t.nodes.items() if v not in side]
    e1 = [e for e in rest if e[0] in side]
    e2 = [e for e in rest if e[0] not in side]
    return DecompositionTree(n1, e1, validate=False), DecompositionTree(n2, e2, validate=False)


def regular_pipeline(obj, level: int = 0) -> ExtendedFormulation:
    """EF of P(M) for a decomposition tree, a single part, or a binary matroid.

    The result's ground is the composed ground (per node, unshared elements
    in node order).  ``tags["ledger"]`` holds the size lines of every
    recursion level; star levels also record ``tags["star"]`` with the
    centre count, the leaf counts and the measured constant ``c1``.
    """
    if isinstance(obj, BinaryMatroid):
        obj = Part("m", "binary", obj)
    if isinstance(obj, Part):
        obj = single_part_tree(obj)
    t: DecompositionTree = obj
    ledger: List[str] = []
    if len(t.nodes) == 1:
        (vid, part), = t.nodes.items()
        ef = part_ef(part)
        ledger.append(ledger_line(level, vid, ef))
        ef.tags["ledger"] = ledger
        return ef
    small = [i for i, (_, _, s) in enumerate(t.edges) if len(s) < 3]
    if small:
        i = small[0]
        t1, t2 = _split_at(t, i)
        ef1 = regular_pipeline(t1, level + 1)
        ef2 = regular_pipeline(t2, level + 1)
        shared = t.edges[i][2]
        if shared:
            ef = compose_2sum(ef1, ef2, shared[0])
            case = "two_sum"
        else:
            ef = product(ef1, ef2, prefixes=("s1.", "s2."))
            case = "one_sum"
        ef = _reground(ef, t.ground(), {"case": case})
        ledger += ef1.tags["ledger"] + ef2.tags["ledger"]
        ledger.append(ledger_line(level, "%s:%s-%s" % (case, t.edges[i][0], t.edges[i][1]), ef))
        ef.tags["ledger"] = ledger
        return ef
    sd = star_decompose(t)
    ef_r, t2, undo = _centre_ef(t, sd, ledger)
    if t2 is not t:
        sd = star_decompose(t2)
    ledger.append(ledger_line(level, "%s/R" % sd.center_id, ef_r))
    pairs = []
    leaf_counts = []
    pp_counts = []
    for leaf, tri in zip(sd.leaves, sd.triangles):
        pp = p_prime_ef(leaf, tri, "prime")
        ppp = p_prime_ef(leaf, tri, "double_prime")
        ledger.append(ledger_line(level, "%s/P'" % leaf.id, pp))
        ledger.append(ledger_line(level, "%s/P''" % leaf.id, ppp))
        pairs.append((pp, ppp))
        pp_counts.append(pp.inequality_count() + ppp.inequality_count())
        leaf_counts.append(regular_pipeline(_leaf_tree(t2, sd, leaf), level + 1).inequality_count())
    ef = glue_star(ef_r, pairs)
    ef = _reground(ef, t2.ground(), {"case": "star"})
    if undo:
        ef = _rename_ground(ef, undo)
        ef = _reground(ef, t.ground())
    e0 = sd.center.matroid.n
    count_r = ef_r.inequality_count()
    total = ef.inequality_count()
    c1 = count_r / float(e0 * e0)
    ef.tags["star"] = {"center": sd.center_id, "center_size": e0, "count_R": count_r,
                       "count_pairs": pp_counts, "count_leaves": leaf_counts, "count": total, "c1": c1,
                       "bound": c1 * e0 * e0 + 16 * sum(leaf_counts)}
    ledger.append(ledger_line(level, "star:%s" % sd.center_id, ef))
    ef.tags["ledger"] = ledger
    return ef


def _leaf_tree(t: DecompositionTree, sd, leaf: Part) -> DecompositionTree:
    i = sd.leaves.index(leaf)
    members = set(sd.members[i])
    nodes = [(v, p) for v, p in t.nodes.items() if v in members]
    edges = [e for e in t.edges if e[0] in members and e[1] in members]
    return DecompositionTree(nodes, edges, validate=False)
