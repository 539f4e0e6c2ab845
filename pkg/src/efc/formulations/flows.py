"""Flow-based formulations: Wong's arborescence dominant and its graph relatives.

Every undirected edge ``e = uv`` (in file orientation ``u -> v``) becomes two
arcs named ``e+`` (``u -> v``) and ``e-`` (``v -> u``).  Variable names:

* ``c.<arc>``           arc capacity,
* ``phi.<v>.<arc>``     unit flow from the root to ``v``,
* ``x.<edge>``          edge coordinate (projected onto the ground set).

The root is the lexicographically least admissible vertex unless given.
"""
from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import BridgePresent, Disconnected, EmptyList
from ..graph import Graph
from ..lp.model import ExtendedFormulation, LinearProgram, product_many

Arc = Tuple[str, str, str]  # (arc name, tail, head)


class DirectedGraphModel:
    """Directed multigraph with a root.

    Attributes:
        nodes: vertex ids in a fixed order.
        arcs: list of ``(name, tail, head)``.
        root: the root vertex.
        edge_of: arc name -> undirected edge name (for bidirected models).
    """

    def __init__(self, nodes: Sequence[str], arcs: Sequence[Arc], root: str,
                 edge_of: Optional[Dict[str, str]] = None):
        self.nodes = list(nodes)
        self.arcs = [tuple(a) for a in arcs]
        if root not in self.nodes:
            raise ValueError("root %r is not a node" % root)
        self.root = root
        self.edge_of = dict(edge_of or {})
        self.out_arcs: Dict[str, List[str]] = {v: [] for v in self.nodes}
        self.in_arcs: Dict[str, List[str]] = {v: [] for v in self.nodes}
        for name, u, v in self.arcs:
            self.out_arcs[u].append(name)
            self.in_arcs[v].append(name)

    @property
    def arc_names(self) -> List[str]:
        return [a[0] for a in self.arcs]

    def reachable(self) -> set:
        seen = {self.root}
        todo = deque([self.root])
        heads = {}
        for name, u, v in self.arcs:
            heads.setdefault(u, []).append(v)
        while todo:
            u = todo.popleft()
            for v in heads.get(u, ()):
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        return seen

    def __repr__(self):
        return "DirectedGraphModel(|V|=%d, |A|=%d, root=%s)" % (len(self.nodes), len(self.arcs), self.root)


def arc_names(edge: str) -> Tuple[str, str]:
    return edge + "+", edge + "-"


def bidirect(g: Graph, root: Optional[str] = None) -> DirectedGraphModel:
    """Two opposite arcs per edge; root defaults to the least vertex id."""
    if not g.vertices:
        raise EmptyList("graph has no vertices")
    arcs = []
    edge_of = {}
    for name, u, v in g.edges:
        p, m = arc_names(name)
        arcs.append((p, u, v))
        arcs.append((m, v, u))
        edge_of[p] = edge_of[m] = name
    return DirectedGraphModel(g.vertices, arcs, root if root is not None else min(g.vertices), edge_of)


def add_unit_flow(lp: LinearProgram, d: DirectedGraphModel, v: str, cap: Dict[str, str]) -> Dict[str, str]:
    """Add a unit r->v flow bounded by the capacity variables ``cap[arc]``.

    Rows: conservation at every node except ``v`` and ``0 <= phi <= c``.
    Returns arc -> flow variable.
    """
    phi = {a: lp.add_var("phi.%s.%s" % (v, a), lb=0) for a in d.arc_names}
    for u in d.nodes:
        if u == v:
            continue
        row = {phi[a]: 1 for a in d.out_arcs[u]}
        for a in d.in_arcs[u]:
            row[phi[a]] = row.get(phi[a], 0) - 1
        lp.add_row("cons.%s.%s" % (v, u), row, "=", 1 if u == d.root else 0)
    for a in d.arc_names:
        if a in cap:
            lp.add_row("cap.%s.%s" % (v, a), {phi[a]: 1, cap[a]: -1}, "<=", 0)
    return phi


def _wong_lp(d: DirectedGraphModel) -> Tuple[LinearProgram, Dict[str, str]]:
    if d.reachable() != set(d.nodes):
        raise Disconnected("not every node is reachable from the root %r" % d.root)
    lp = LinearProgram()
    cap = {a: lp.add_var("c." + a) for a in d.arc_names}
    for v in d.nodes:
        if v != d.root:
            add_unit_flow(lp, d, v, cap)
    return lp, cap


def wong_arborescence_dominant(d: DirectedGraphModel) -> ExtendedFormulation:
    """Flow formulation of the dominant of the r-arborescence polytope.

    Ground = arc names; one unit flow per non-root node with ``0 <= phi <= c``.
    Variable count is ``(|V|-1)*|A| + |A|``.
    """
    lp, cap = _wong_lp(d)
    proj = {a: ({cap[a]: 1}, 0) for a in d.arc_names}
    return ExtendedFormulation(lp, d.arc_names, proj, {"root": d.root, "kind": "arborescence-dominant"})


def _tree_face(g: Graph, root: Optional[str]):
    d = bidirect(g, root)
    lp, cap = _wong_lp(d)
    lp.add_row("ctotal", {c: 1 for c in cap.values()}, "=", len(d.nodes) - 1)
    return d, lp, cap


def _check_connected(g: Graph):
    if not g.is_connected():
        raise Disconnected("graph is not connected")


def spanning_tree_ef(g: Graph, root: Optional[str] = None) -> ExtendedFormulation:
    """Spanning-tree polytope: the arborescence face plus ``x_e = c_e+ + c_e-``."""
    _check_connected(g)
    d, lp, cap = _tree_face(g, root)
    x = {}
    for e in g.edge_names:
        p, m = arc_names(e)
        x[e] = lp.add_var("x." + e)
        lp.add_row("couple." + e, {x[e]: 1, cap[p]: -1, cap[m]: -1}, "=", 0)
    proj = {e: ({x[e]: 1}, 0) for e in g.edge_names}
    return ExtendedFormulation(lp, g.edge_names, proj, {"root": d.root, "kind": "spanning-tree"})


def _per_component(g: Graph, build) -> ExtendedFormulation:
    comps = [c for c in g.components() if len(c) > 1]
    if not g.edges:
        raise EmptyList("graph has no edges")
    if len(comps) == 1:
        return build(g)
    parts = []
    for comp in comps:
        cs = set(comp)
        parts.append(build(Graph([e for e in g.edges if e[1] in cs], vertices=comp)))
    ef = product_many(parts)
    # restore the graph's edge order on the ground set
    return ExtendedFormulation(ef.lp, g.edge_names, ef.projection, {"components": len(parts)})


def graphic_independence_ef(g: Graph, root: Optional[str] = None) -> ExtendedFormulation:
    """P(M(G)) via ``0 <= x_e <= c_e+ + c_e-`` with ``c`` on the arborescence face.

    The face ``c(A) = |V| - 1`` of the dominant is the arborescence polytope
    itself; without it the capacities (and hence ``x``) would be unbounded.

    Disconnected graphs are handled component by component (product).
    """

    def build(h: Graph) -> ExtendedFormulation:
        d, lp, cap = _tree_face(h, root if root in h.vertices else None)
        x = {}
        for e in h.edge_names:
            p, m = arc_names(e)
            x[e] = lp.add_var("x." + e, lb=0)
            lp.add_row("cpl." + e, {x[e]: 1, cap[p]: -1, cap[m]: -1}, "<=", 0)
        proj = {e: ({x[e]: 1}, 0) for e in h.edge_names}
        return ExtendedFormulation(lp, h.edge_names, proj, {"root": d.root, "kind": "graphic"})

    return _per_component(g, build)


def cographic_independence_ef(g: Graph, root: Optional[str] = None) -> ExtendedFormulation:
    """P(M*(G)) via ``0 <= x_e <= 1 - c_e+ - c_e-`` on the arborescence face.

    Bases of M*(G) are complements of spanning trees, so ``1 - x`` ranges over
    the spanning-tree polytope on the face ``c(A) = |V| - 1``; the
    inequality gives the down-closure.
    """
    br = g.bridges()
    if br:
        raise BridgePresent("bridges %s would be loops of the cographic matroid" % br)

    def build(h: Graph) -> ExtendedFormulation:
        d, lp, cap = _tree_face(h, root if root in h.vertices else None)
        x = {}
        for e in h.edge_names:
            p, m = arc_names(e)
            x[e] = lp.add_var("x." + e, lb=0)
            lp.add_row("cpl." + e, {x[e]: 1, cap[p]: 1, cap[m]: 1}, "<=", 1)
        proj = {e: ({x[e]: 1}, 0) for e in h.edge_names}
        return ExtendedFormulation(lp, h.edge_names, proj, {"root": d.root, "kind": "cographic"})

    return _per_component(g, build)


# ---------------------------------------------------------------------------
# witnesses from trees (used by tests and by the pair formulations)
# ---------------------------------------------------------------------------

def orient_tree(g: Graph, tree_edges, root: str) -> Tuple[Dict[str, str], Dict[str, Tuple[str, str]]]:
    """Orient a spanning tree away from ``root``.

    Returns (arc chosen per tree edge, parent map vertex -> (parent, arc)).
    """
    tree = set(tree_edges)
    adj: Dict[str, List[Tuple[str, str, str]]] = {v: [] for v in g.vertices}
    for name, u, v in g.edges:
        if name in tree:
            p, m = arc_names(name)
            adj[u].append((v, name, p))
            adj[v].append((u, name, m))
    chosen: Dict[str, str] = {}
    parent: Dict[str, Tuple[str, str]] = {}
    seen = {root}
    todo = deque([root])
    while todo:
        u = todo.popleft()
        for w, name, arc in adj[u]:
            if w in seen:
                continue
            seen.add(w)
            chosen[name] = arc
            parent[w] = (u, arc)
            todo.append(w)
    if len(seen) != len(g.vertices) or len(chosen) != len(tree):
        raise ValueError("edge set is not a spanning tree")
    return chosen, parent


def tree_path_arcs(parent: Dict[str, Tuple[str, str]], v: str) -> List[str]:
    out = []
    while v in parent:
        u, arc = parent[v]
        out.append(arc)
        v = u
    return out
