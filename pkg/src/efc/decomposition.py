"""Sums of binary matroids, decomposition trees and their normalizations.

* :func:`delta_sum` glues two matroids along 0, 1 or 3 shared elements
  (1-, 2- and 3-sums) by intersecting the span of the two cycle spaces with
  the subspace that vanishes on the shared elements.
* :func:`find_separation` is an exhaustive search for exact k-separations.
* :class:`DecompositionTree` holds labelled parts and the shared elements of
  each tree edge; :func:`compose_tree` folds the sums, :func:`star_decompose`
  picks a weight centroid and composes the components around it.
* :class:`CutFamily`, :func:`uncross_cuts`, :func:`swap_parallel` and
  :func:`detect_and_fix_bad_cuts` normalize the 3-cuts of the graph behind a
  cographic part so that every cut becomes the star of a degree-3 vertex.
"""
import itertools
import os
import re
from collections import OrderedDict
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import gf2
from .errors import (InvalidOverlap, InvalidTree, InvalidTriangle, NotParallel, NotTwoConnected,
                     ParseError, SharedLoopOrColoop, SingleNode, TooLarge, TooSmallParts,
                     UnsupportedPart)
from .graph import Graph, read_graph
from .matroid import DEFAULT_CAP, BinaryMatroid, _is_triangle, read_matrix
from .parts import KINDS, Part

# ---------------------------------------------------------------------------
# sums
# ---------------------------------------------------------------------------


def _check_overlap(m1: BinaryMatroid, m2: BinaryMatroid, shared: Sequence[str]) -> int:
    """Validate the side conditions of a sum; return its kind (1, 2 or 3)."""
    s = len(shared)
    if s == 0:
        return 1
    if s == 1:
        (p,) = shared
        if m1.n < 3 or m2.n < 3:
            raise TooSmallParts("2-sum parts need at least 3 elements")
        for m in (m1, m2):
            full = (1 << m.n) - 1
            if m.rank_mask(full & ~m.mask([p])) < m.rank:
                raise SharedLoopOrColoop("shared element %r is a coloop of a part" % p)
        return 2
    if s == 3:
        if m1.n < 7 or m2.n < 7:
            raise TooSmallParts("3-sum parts need at least 7 elements")
        for m in (m1, m2):
            if not _is_triangle(m, shared):
                raise InvalidTriangle("%s is not a triangle of both parts" % (tuple(shared),))
            full = (1 << m.n) - 1
            if m.rank_mask(full & ~m.mask(shared)) < m.rank:
                raise InvalidTriangle("%s contains a cocircuit of a part" % (tuple(shared),))
        return 3
    raise InvalidOverlap("parts share %d elements; a sum needs 0, 1 or 3" % s)


def _cycle_vectors(m: BinaryMatroid, pos: Dict[str, int]) -> List[int]:
    """Cycle-space basis of ``m`` with bits placed at ``pos[element]``."""
    out = []
    for v in gf2.null_space(m.rows, m.n):
        w = 0
        for j in gf2.iter_bits(v):
            w |= 1 << pos[m.elements[j]]
        out.append(w)
    return out


def delta_sum(m1: BinaryMatroid, m2: BinaryMatroid, check: bool = True) -> Tuple[BinaryMatroid, int]:
    """Matroid on ``E1 ^ E2`` whose cycles are ``C1 ^ C2`` (``C1, C2`` cycles).

    The shared elements are ``E1 & E2`` (by name); the element order of the
    result is ``E1`` then ``E2``, shared elements omitted.  With
    ``check=False`` the side conditions are skipped (used after a tree has
    been validated as a whole).

    Returns:
        (matroid, kind) with kind 1, 2 or 3.
    """
    shared = [e for e in m1.elements if e in m2.index]
    if check:
        kind = _check_overlap(m1, m2, shared)
    else:
        kind = {0: 1, 1: 2, 3: 3}.get(len(shared))
        if kind is None:
            raise InvalidOverlap("parts share %d elements; a sum needs 0, 1 or 3" % len(shared))
    sset = set(shared)
    order = [e for e in m1.elements if e not in sset] + [e for e in m2.elements if e not in sset]
    pos = {e: i for i, e in enumerate(order)}
    base = len(order)
    for i, e in enumerate(shared):
        pos[e] = base + i
    vecs = _cycle_vectors(m1, pos) + _cycle_vectors(m2, pos)
    # eliminate the shared coordinates; what is left spans the cycles of the sum
    for i in range(len(shared)):
        bit = 1 << (base + i)
        piv = next((v for v in vecs if v & bit), None)
        if piv is None:
            continue
        vecs = [v ^ piv if v & bit else v for v in vecs if v is not piv]
    cycles = [v for v in vecs if v]
    rows = gf2.null_space(cycles, base) if cycles else [1 << j for j in range(base)]
    return BinaryMatroid(order, rows), kind


# ---------------------------------------------------------------------------
# separations
# ---------------------------------------------------------------------------


def connectivity(m: BinaryMatroid, mask: int) -> int:
    """``rk(A) + rk(E - A) - rk(E)`` for the element mask ``A``."""
    full = (1 << m.n) - 1
    return m.rank_mask(mask) + m.rank_mask(full & ~mask) - m.rank


def find_separation(m: BinaryMatroid, k: int, cap: int = DEFAULT_CAP) -> Optional[Tuple[frozenset, frozenset]]:
    """Exact k-separation ``(A, B)`` with the lexicographically least ``A``.

    Exact means ``rk(A) + rk(B) - rk(E) = k - 1`` and ``|A|, |B| >= k``; for
    ``k = 3`` both sides must have at least 4 elements (non-trivial).  By
    symmetry ``A`` always contains the first element.  Returns None when no
    such separation exists.
    """
    if k not in (1, 2, 3):
        raise ValueError("k must be 1, 2 or 3")
    n = m.n
    if n > cap:
        raise TooLarge("%d elements exceed the enumeration cap %d" % (n, cap))
    if n < 2:
        return None
    least = 4 if k == 3 else k
    full = (1 << n) - 1
    rest = np.arange(1 << (n - 1), dtype=np.uint64)
    masks = (rest << np.uint64(1)) | np.uint64(1)
    sizes = _popcounts(masks)
    keep = (sizes >= least) & (n - sizes >= least)
    masks = masks[keep]
    if masks.size == 0:
        return None
    comp = np.uint64(full) ^ masks
    lam = m.ranks(masks).astype(np.int64) + m.ranks(comp).astype(np.int64) - m.rank
    hits = masks[lam == k - 1]
    if hits.size == 0:
        return None
    best = min((int(x) for x in hits), key=lambda x: tuple(gf2.iter_bits(x)))
    return m.names(best), m.names(full & ~best)


def _popcounts(masks: np.ndarray) -> np.ndarray:
    out = np.zeros(masks.shape, dtype=np.int64)
    work = masks.copy()
    one = np.uint64(1)
    while work.any():
        out += (work & one).astype(np.int64)
        work >>= one
    return out


# ---------------------------------------------------------------------------
# decomposition trees
# ---------------------------------------------------------------------------


def _natural_key(s: str):
    return [(0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.split(r"(\d+)", s) if t]


class DecompositionTree:
    """Tree of labelled parts; each edge lists the elements its parts share.

    Args:
        nodes: mapping id -> :class:`Part` (order is kept).
        edges: ``(a, b, shared)`` triples; ``shared`` has 3 elements for a
            3-sum, 1 for a 2-sum, 0 for a 1-sum.  The order of a triangle is
            significant for the leaf formulations.
        validate: run :meth:`validate` (default).
    """

    def __init__(self, nodes, edges: Iterable[Tuple[str, str, Sequence[str]]], validate: bool = True):
        self.nodes: "OrderedDict[str, Part]" = OrderedDict(nodes)
        self.edges: List[Tuple[str, str, Tuple[str, ...]]] = [(a, b, tuple(t)) for a, b, t in edges]
        if validate:
            self.validate()

    def __repr__(self):
        return "DecompositionTree(%d nodes, %d edges)" % (len(self.nodes), len(self.edges))

    # -- structure -------------------------------------------------------
    def neighbours(self, v: str) -> List[Tuple[str, Tuple[str, ...]]]:
        out = []
        for a, b, t in self.edges:
            if a == v:
                out.append((b, t))
            elif b == v:
                out.append((a, t))
        return out

    def weight(self, v: str) -> int:
        """Number of elements of the part that survive in the composition."""
        shared = set()
        for _, t in self.neighbours(v):
            shared |= set(t)
        return sum(1 for e in self.nodes[v].elements if e not in shared)

    def ground(self) -> List[str]:
        """Elements of the composed matroid: per node, unshared elements in order."""
        shared = set()
        for _, _, t in self.edges:
            shared |= set(t)
        out = []
        for part in self.nodes.values():
            out += [e for e in part.elements if e not in shared]
        return out

    def validate(self):
        ids = list(self.nodes)
        if not ids:
            raise InvalidTree("tree has no nodes")
        if len(self.edges) != len(ids) - 1:
            raise InvalidTree("%d nodes need %d edges, got %d" % (len(ids), len(ids) - 1, len(self.edges)))
        parent = {v: v for v in ids}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for a, b, t in self.edges:
            if a not in self.nodes or b not in self.nodes:
                raise InvalidTree("edge %s-%s uses an unknown node" % (a, b))
            if a == b:
                raise InvalidTree("edge %s-%s is a loop" % (a, b))
            ra, rb = find(a), find(b)
            if ra == rb:
                raise InvalidTree("edges contain a cycle through %s-%s" % (a, b))
            parent[ra] = rb
        owners: Dict[str, List[str]] = {}
        for v, part in self.nodes.items():
            for e in part.elements:
                owners.setdefault(e, []).append(v)
        labels = {}
        for a, b, t in self.edges:
            if len(set(t)) != len(t):
                raise InvalidTree("edge %s-%s repeats an element" % (a, b))
            for e in t:
                if sorted(owners.get(e, [])) != sorted((a, b)):
                    raise InvalidTree("element %r of edge %s-%s must lie in exactly those two parts" % (e, a, b))
                labels[e] = (a, b)
            _check_overlap(self.nodes[a].matroid, self.nodes[b].matroid, t)
        for e, vs in owners.items():
            if len(vs) > 1 and e not in labels:
                raise InvalidTree("element %r is shared by %s but labels no edge" % (e, vs))
        return True

    # -- I/O -------------------------------------------------------------
    def to_text(self, payloads: Optional[Dict[str, str]] = None) -> str:
        lines = []
        for v, part in self.nodes.items():
            src = (payloads or {}).get(v) or part.source or "-"
            lines.append("node %s %s %s" % (v, part.kind, src))
        for a, b, t in self.edges:
            lines.append(" ".join(["edge", a, b] + list(t)))
        return "\n".join(lines) + "\n"


def load_part(id: str, kind: str, payload: str, base: str = ".") -> Part:
    """Build a part from a payload file (graph file or matrix file)."""
    if kind not in KINDS:
        raise UnsupportedPart("unknown part kind %r" % kind)
    if kind == "r10" and payload in ("-", ""):
        return Part.r10(id)
    path = payload if os.path.isabs(payload) else os.path.join(base, payload)
    if kind in ("graphic", "cographic"):
        return Part.from_graph(id, kind, read_graph(path), source=payload)
    return Part(id, kind, read_matrix(path), source=payload)


def parse_tree(text: str, base: str = ".") -> DecompositionTree:
    """Parse ``node <id> <kind> <payload>`` / ``edge <a> <b> [elements]`` lines."""
    nodes = OrderedDict()
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "node":
            if len(tok) not in (3, 4):
                raise ParseError("line %d: expected 'node <id> <kind> <payload>'" % lineno)
            if tok[1] in nodes:
                raise ParseError("line %d: duplicate node %r" % (lineno, tok[1]))
            nodes[tok[1]] = load_part(tok[1], tok[2], tok[3] if len(tok) == 4 else "-", base)
        elif tok[0] == "edge":
            if len(tok) < 3:
                raise ParseError("line %d: expected 'edge <a> <b> <t1> <t2> <t3>'" % lineno)
            edges.append((tok[1], tok[2], tuple(tok[3:])))
        else:
            raise ParseError("line %d: unknown record %r" % (lineno, tok[0]))
    return DecompositionTree(nodes, edges)


def read_tree(path) -> DecompositionTree:
    with open(path, encoding="utf-8") as fh:
        return parse_tree(fh.read(), base=os.path.dirname(os.path.abspath(path)))


def single_part_tree(part: Part) -> DecompositionTree:
    return DecompositionTree([(part.id, part)], [])


def compose_tree(t: DecompositionTree, order: Optional[Sequence[int]] = None,
                 nodes: Optional[Sequence[str]] = None) -> BinaryMatroid:
    """Fold the sums of the tree edges (in ``order``, default file order).

    ``nodes`` restricts the fold to the subtree they induce.  The result uses
    the element order of :meth:`DecompositionTree.ground`.
    """
    keep = list(t.nodes) if nodes is None else list(nodes)
    kset = set(keep)
    idx = [i for i, (a, b, _) in enumerate(t.edges) if a in kset and b in kset]
    if order is not None:
        order = [i for i in order if i in set(idx)]
        if sorted(order) != sorted(idx):
            raise ValueError("order must list every edge of the subtree once")
        idx = list(order)
    comp = {v: v for v in keep}
    mat = {v: t.nodes[v].matroid for v in keep}

    def find(x):
        while comp[x] != x:
            x = comp[x]
        return x

    for i in idx:
        a, b, _ = t.edges[i]
        ra, rb = find(a), find(b)
        mat[ra], _ = delta_sum(mat[ra], mat[rb], check=False)
        comp[rb] = ra
        del mat[rb]
    (root,) = {find(v) for v in keep}
    out = mat[root]
    shared = set()
    for i in idx:
        shared |= set(t.edges[i][2])
    ground = []
    for v in keep:
        ground += [e for e in t.nodes[v].elements if e not in shared]
    return out.reorder(ground)


class StarDecomposition:
    """A centre part with leaves glued along pairwise disjoint triangles.

    Attributes:
        center: the centre :class:`Part`.
        center_id: its node id.
        leaves: list of leaf parts (a single node keeps its kind and graph;
            a composed component becomes a ``binary`` part).
        triangles: ``triangles[i]`` is the triangle shared by the centre and
            ``leaves[i]``, in edge-file order.
        members: node ids of each leaf component.
        n: number of elements of the composed matroid.
    """

    def __init__(self, center: Part, center_id: str, leaves: List[Part], triangles: List[Tuple[str, ...]],
                 members: List[List[str]], n: int):
        self.center = center
        self.center_id = center_id
        self.leaves = leaves
        self.triangles = triangles
        self.members = members
        self.n = n

    @property
    def k(self) -> int:
        return len(self.leaves)

    def check(self):
        n = self.n
        if self.center.matroid.n > n:
            raise InvalidTree("centre has %d > n = %d elements" % (self.center.matroid.n, n))
        for leaf in self.leaves:
            if 2 * leaf.matroid.n > n + 6:
                raise InvalidTree("leaf %s has %d > n/2 + 3 elements" % (leaf.id, leaf.matroid.n))
        if 4 * self.k > n:
            raise InvalidTree("%d leaves exceed n/4 for n = %d" % (self.k, n))
        seen = set()
        for leaf, tri in zip(self.leaves, self.triangles):
            own = set(leaf.elements) - set(tri)
            if own & seen or own & set(self.center.elements):
                raise InvalidTree("leaf %s is not element-disjoint from the others" % leaf.id)
            seen |= own
        return True

    def summary(self) -> str:
        lines = ["center=%s kind=%s size=%d n=%d k=%d" % (self.center_id, self.center.kind,
                                                          self.center.matroid.n, self.n, self.k)]
        for leaf, tri, mem in zip(self.leaves, self.triangles, self.members):
            lines.append("leaf=%s nodes=%s size=%d triangle=%s" % (leaf.id, ",".join(mem), leaf.matroid.n,
                                                                 ",".join(tri)))
        return "\n".join(lines)


def centroid(t: DecompositionTree) -> str:
    """Node whose removal leaves components of weight at most half the total.

    Orienting every tree edge towards its heavier side yields a sink, which is
    such a node; among all of them the lowest id (natural order) is taken.
    """
    total = sum(t.weight(v) for v in t.nodes)
    best = []
    for v in t.nodes:
        worst = max((sum(t.weight(u) for u in comp) for comp in _components_without(t, v)), default=0)
        if 2 * worst <= total:
            best.append(v)
    if not best:  # cannot happen for a tree; kept as a guard
        raise InvalidTree("no centroid found")
    return min(best, key=_natural_key)


def _components_without(t: DecompositionTree, v: str) -> List[List[str]]:
    out = []
    seen = {v}
    for u, _ in t.neighbours(v):
        comp = [u]
        seen.add(u)
        todo = [u]
        while todo:
            x = todo.pop()
            for y, _ in t.neighbours(x):
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    todo.append(y)
        out.append([w for w in t.nodes if w in set(comp)])
    return out


def star_decompose(t: DecompositionTree) -> StarDecomposition:
    """Centre the tree at its weight centroid and compose each component around it."""
    if len(t.nodes) < 2:
        raise SingleNode("a single part needs no star decomposition")
    for a, b, tri in t.edges:
        if len(tri) != 3:
            raise InvalidTree("edge %s-%s is not a 3-sum; split 1- and 2-sums first" % (a, b))
    v0 = centroid(t)
    leaves, tris, members = [], [], []
    for u, tri in t.neighbours(v0):
        comp = next(c for c in _components_without(t, v0) if u in c)
        if len(comp) == 1:
            leaf = t.nodes[u]
        else:
            # keep the triangle elements by composing the component alone
            leaf = Part("+".join(comp), "binary", compose_tree(t, nodes=comp))
        leaves.append(leaf)
        tris.append(tuple(tri))
        members.append(comp)
    sd = StarDecomposition(t.nodes[v0], v0, leaves, tris, members, len(t.ground()))
    sd.check()
    return sd


def swap_parallel(t: DecompositionTree, node: str, alpha: str, alpha_prime: str) -> DecompositionTree:
    """Let ``alpha_prime`` take the place of ``alpha`` in a triangle at ``node``.

    ``alpha`` must lie in the triangle of an edge at ``node`` and
    ``alpha_prime`` must be a parallel element of ``node``'s part that no
    edge uses.  The part itself keeps its names; the triangle label and the
    neighbour across that edge rename ``alpha`` to ``alpha_prime``.  Since
    the two elements are parallel the gluing is unchanged, so the composed
    matroid differs from the old one only by exchanging the two names.
    """
    part = t.nodes[node]
    m = part.matroid
    if alpha not in m.index or alpha_prime not in m.index:
        raise NotParallel("both elements must belong to part %s" % node)
    if alpha == alpha_prime or m.cols[m.index[alpha]] != m.cols[m.index[alpha_prime]]:
        raise NotParallel("%r and %r are not parallel in part %s" % (alpha, alpha_prime, node))
    hit = [i for i, (a, b, tri) in enumerate(t.edges) if node in (a, b) and alpha in tri]
    if not hit:
        raise NotParallel("%r lies in no triangle at node %s" % (alpha, node))
    if any(alpha_prime in tri for _, _, tri in t.edges):
        raise NotParallel("%r already lies on a tree edge" % alpha_prime)
    (i,) = hit
    a, b, tri = t.edges[i]
    other = b if a == node else a
    nodes = OrderedDict(t.nodes)
    nodes[other] = _relabel_part(t.nodes[other], {alpha: alpha_prime})
    edges = list(t.edges)
    edges[i] = (a, b, tuple(alpha_prime if e == alpha else e for e in tri))
    return DecompositionTree(nodes, edges)


def _relabel_part(part: Part, ren: Dict[str, str]) -> Part:
    g = part.graph.rename_edges(ren) if part.graph is not None else None
    return Part(part.id, part.kind, part.matroid.relabel(ren), g, part.source)


# ---------------------------------------------------------------------------
# 3-cuts of a graph (cographic parts)
# ---------------------------------------------------------------------------


def _sides(g: Graph, cut) -> Optional[Tuple[set, set]]:
    """Vertex sides of ``cut`` when it is a bond (minimal cut), else None."""
    rest = [e for e in g.edge_names if e not in set(cut)]
    comps = g.components(rest)
    if len(comps) != 2:
        return None
    a, b = set(comps[0]), set(comps[1])
    for e in cut:
        u, v = g.endpoints(e)
        if (u in a) == (v in a):
            return None
    return a, b


def is_bond(g: Graph, edges) -> bool:
    return _sides(g, edges) is not None


def _inner_edges(g: Graph, vs: set) -> List[str]:
    return [n for n, u, v in g.edges if u in vs and v in vs]


def is_good_cut(g: Graph, cut) -> bool:
    """True when the cut is the star of a degree-3 vertex."""
    sides = _sides(g, cut)
    if sides is None:
        return False
    return any(len(s) == 1 and g.degree(next(iter(s))) == 3 for s in sides)


class CutFamily:
    """Pairwise disjoint 3-edge bonds of a connected graph."""

    def __init__(self, graph: Graph, cuts: Sequence[Sequence[str]]):
        self.graph = graph
        self.cuts: List[Tuple[str, ...]] = [tuple(c) for c in cuts]
        seen = set()
        for c in self.cuts:
            if len(set(c)) != 3:
                raise ValueError("cut %s does not have 3 edges" % (c,))
            if seen & set(c):
                raise ValueError("cuts are not disjoint")
            seen |= set(c)
            if _sides(graph, c) is None:
                raise ValueError("%s is not a minimal cut" % (c,))

    def sides(self, i: int) -> Tuple[set, set]:
        return _sides(self.graph, self.cuts[i])

    def side_edges(self, cut) -> Tuple[List[str], List[str]]:
        a, b = _sides(self.graph, cut)
        return _inner_edges(self.graph, a), _inner_edges(self.graph, b)

    def crosses(self, i: int, j: int) -> bool:
        """``T_j`` meets both edge sides of ``T_i`` (a symmetric relation)."""
        e1, e2 = self.side_edges(self.cuts[i])
        tj = set(self.cuts[j])
        return bool(tj & set(e1)) and bool(tj & set(e2))

    def crossing_pairs(self) -> int:
        k = len(self.cuts)
        return sum(1 for i in range(k) for j in range(i + 1, k) if self.crosses(i, j))

    def bad(self) -> List[int]:
        return [i for i, c in enumerate(self.cuts) if not is_good_cut(self.graph, c)]

    def replace(self, changes: Dict[int, Sequence[str]]) -> "CutFamily":
        cuts = list(self.cuts)
        for i, cut in changes.items():
            cuts[i] = tuple(cut)
        return CutFamily(self.graph, cuts)

    def __repr__(self):
        return "CutFamily(%s)" % (self.cuts,)


def _require_two_connected(g: Graph):
    if not g.is_two_connected():
        raise NotTwoConnected("graph is not 2-connected")


def uncross_cuts(g: Graph, cuts: CutFamily, history: Optional[List] = None) -> CutFamily:
    """Swap parallel edges between crossing cuts until no two of them cross.

    For a crossing pair ``T_i, T_j`` an edge ``e`` of ``T_i`` and ``f`` of
    ``T_j`` form a 2-edge bond, and ``T_i - e + f``, ``T_j - f + e`` are
    disjoint non-crossing 3-cuts.  Each swap strictly lowers the number of
    crossing pairs (asserted).  ``history``, when given, receives tuples
    ``(i, j, e, f, crossing_count_after)``.
    """
    _require_two_connected(g)
    fam = CutFamily(g, cuts.cuts)
    count = fam.crossing_pairs()
    while count:
        swapped = False
        k = len(fam.cuts)
        for i, j in itertools.combinations(range(k), 2):
            if not fam.crosses(i, j):
                continue
            for e, f in itertools.product(fam.cuts[i], fam.cuts[j]):
                if not is_bond(g, (e, f)):
                    continue
                ti = tuple(f if x == e else x for x in fam.cuts[i])
                tj = tuple(e if x == f else x for x in fam.cuts[j])
                if not (is_bond(g, ti) and is_bond(g, tj)):
                    continue
                new = fam.replace({i: ti, j: tj})
                if new.crosses(i, j):
                    continue
                c2 = new.crossing_pairs()
                if c2 >= count:
                    continue
                fam, count, swapped = new, c2, True
                if history is not None:
                    history.append((i, j, e, f, c2))
                break
            if swapped:
                break
        assert swapped, "no monotone swap found for a crossing pair"
    return fam


class SplitInstruction:
    """Replace a cographic part ``M*(G)`` by a chain of cographic 3-sums along ``cut``.

    With ``(V1, V2)`` the sides of the cut and ``U1``, ``U2`` the cut
    endpoints on each side:

    * ``graphs[0]`` is ``G[V1]`` plus a new vertex joined to ``U1`` by fresh
      edges ``Z1``;
    * ``graphs[1]`` joins the star ``Z1`` to the star ``Z2`` of a second new
      vertex through the cut edges (a 9-edge gadget in which every cut edge
      is parallel, in the cographic matroid, to one edge of each star);
    * ``graphs[2]`` is ``G[V2]`` plus a new vertex joined to ``U2`` by ``Z2``.

    When ``G[V2]`` has fewer than 4 edges the last two graphs are merged, so
    only one 3-sum is needed.  ``edges`` lists ``(i, j, triangle)`` between
    consecutive graphs; every triangle is the star of a degree-3 vertex.
    """

    def __init__(self, cut, side1, side2, graphs: List[Graph], edges: List[Tuple[int, int, Tuple[str, ...]]]):
        self.cut = tuple(cut)
        self.side1 = list(side1)
        self.side2 = list(side2)
        self.graphs = graphs
        self.edges = edges

    def tree(self, prefix: str = "c") -> DecompositionTree:
        nodes = [("%s%d" % (prefix, i), Part.from_graph("%s%d" % (prefix, i), "cographic", h))
                 for i, h in enumerate(self.graphs)]
        return DecompositionTree(nodes, [(nodes[i][0], nodes[j][0], t) for i, j, t in self.edges])

    def compose(self) -> BinaryMatroid:
        return compose_tree(self.tree())

    def __repr__(self):
        return "SplitInstruction(cut=%s, |E1|=%d, |E2|=%d, parts=%d)" % (
            self.cut, len(self.side1), len(self.side2), len(self.graphs))


def _split_graph(g: Graph, cut, tag: str) -> Optional[SplitInstruction]:
    a, b = _sides(g, cut)
    ea, eb = _inner_edges(g, a), _inner_edges(g, b)
    if len(ea) < len(eb):
        a, b, ea, eb = b, a, eb, ea
    if len(ea) < 4:
        return None
    z1 = ["%s.z1.%s" % (tag, c) for c in cut]
    z2 = ["%s.z2.%s" % (tag, c) for c in cut]
    w1, w2 = tag + ".w1", tag + ".w2"
    ends = []
    for c in cut:
        u, v = g.endpoints(c)
        ends.append((u, v) if u in a else (v, u))
    g1 = Graph([e for e in g.edges if e[0] in set(ea)] + [(z, u1, w1) for z, (u1, _) in zip(z1, ends)],
               vertices=[x for x in g.vertices if x in a] + [w1])
    p = ["%s.p.%s" % (tag, c) for c in cut]
    star1 = [(z, w1, pi) for z, pi in zip(z1, p)]
    if len(eb) >= 4:
        q = ["%s.q.%s" % (tag, c) for c in cut]
        mid = Graph(star1 + [(c, pi, qi) for c, pi, qi in zip(cut, p, q)]
                    + [(z, qi, w2) for z, qi in zip(z2, q)])
        g2 = Graph([e for e in g.edges if e[0] in set(eb)] + [(z, u2, w2) for z, (_, u2) in zip(z2, ends)],
                   vertices=[x for x in g.vertices if x in b] + [w2])
        graphs = [g1, mid, g2]
        edges = [(0, 1, tuple(z1)), (1, 2, tuple(z2))]
    else:
        g2 = Graph([e for e in g.edges if e[0] in set(eb)] + star1
                   + [(c, pi, u2) for c, pi, (_, u2) in zip(cut, p, ends)],
                   vertices=[x for x in g.vertices if x in b] + p + [w1])
        graphs = [g1, g2]
        edges = [(0, 1, tuple(z1))]
    return SplitInstruction(cut, ea, eb, graphs, edges)


def detect_and_fix_bad_cuts(g: Graph, cuts: CutFamily):
    """Turn every 3-cut into the star of a degree-3 vertex.

    Steps, applied to the bad cuts (those that are not such a star):

    1. when one side meets the cut in two vertices ``u`` (one cut edge
       ``alpha``) and ``v`` (two cut edges), ``alpha`` is exchanged with the
       side edge ``alpha'`` at ``v``; the two are parallel in ``M*(G)`` and the
       cut becomes the star of ``v``;
    2. the remaining bad cuts are uncrossed;
    3. each remaining bad cut (three pairwise non-incident edges) whose
       larger side has at least 4 edges yields a 3-sum split along the cut.

    Returns:
        (relabel, CutFamily, splits): ``relabel`` is the composed permutation
        of swapped names (old name -> new name), the family holds the cuts
        after the swaps, and ``splits`` lists :class:`SplitInstruction`\\ s
        in the order applied (a later split refers to a graph produced by an
        earlier one).
    """
    _require_two_connected(g)
    fam = CutFamily(g, cuts.cuts)
    relabel: Dict[str, str] = {}
    while True:
        changed = True
        while changed:
            changed = False
            for i in fam.bad():
                fix = _two_vertex_swap(g, fam.cuts[i])
                if fix is None:
                    continue
                alpha, alpha_p, cut = fix
                if any(alpha_p in c for j, c in enumerate(fam.cuts) if j != i):
                    continue
                fam = fam.replace({i: cut})
                _record_swap(relabel, alpha, alpha_p)
                changed = True
                break
        hist: List = []
        fam = uncross_cuts(g, fam, hist)
        for _, _, e, f, _ in hist:
            _record_swap(relabel, e, f)
        if not hist:
            break
    splits: List[SplitInstruction] = []
    pieces = [g]
    for i in fam.bad():
        cut = fam.cuts[i]
        host = next(k for k, h in enumerate(pieces) if all(h.has_edge(e) for e in cut))
        h = pieces[host]
        if is_good_cut(h, cut) or not _non_incident(h, cut):
            continue
        sp = _split_graph(h, cut, "s%d" % len(splits))
        if sp is None:
            continue
        splits.append(sp)
        pieces[host:host + 1] = sp.graphs
    return relabel, fam, splits


def _record_swap(relabel: Dict[str, str], a: str, b: str):
    """Compose the transposition ``a <-> b`` into ``relabel``."""
    inv = {v: k for k, v in relabel.items()}
    ka, kb = inv.get(a, a), inv.get(b, b)
    relabel[ka], relabel[kb] = b, a
    for k in [k for k, v in relabel.items() if k == v]:
        del relabel[k]


def _non_incident(g: Graph, cut) -> bool:
    ends = [v for e in cut for v in g.endpoints(e)]
    return len(set(ends)) == 6


def _two_vertex_swap(g: Graph, cut):
    """Swap data ``(alpha, alpha', new cut)`` when a side meets the cut in 2 vertices."""
    sides = _sides(g, cut)
    for side in sides:
        ends = {}
        for e in cut:
            u, v = g.endpoints(e)
            ends.setdefault(u if u in side else v, []).append(e)
        if len(ends) != 2:
            continue
        (v,) = [x for x, es in ends.items() if len(es) == 2]
        (alpha,) = [es[0] for x, es in ends.items() if len(es) == 1]
        inner = [n for n in _inner_edges(g, side) if v in g.endpoints(n)]
        if len(inner) != 1:
            continue
        alpha_p = inner[0]
        new = tuple(alpha_p if e == alpha else e for e in cut)
        if is_bond(g, (alpha, alpha_p)) and is_good_cut(g, new):
            return alpha, alpha_p, new
    return None


def three_cuts(g: Graph) -> List[Tuple[str, ...]]:
    """All 3-edge bonds of ``g`` (edge-file order inside each)."""
    return [c for c in itertools.combinations(g.edge_names, 3) if is_bond(g, c)]

