"""Undirected multigraphs with named edges, plus a few named families."""
from collections import defaultdict
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import DuplicateName, ParseError, SelfLoop

Edge = Tuple[str, str, str]  # (name, u, v)


def check_name(name: str, what: str = "element") -> str:
    if not isinstance(name, str) or not name or any(ch.isspace() for ch in name):
        raise ParseError("invalid %s name %r" % (what, name))
    return name


class Graph:
    """Undirected multigraph; parallel edges allowed, self-loops rejected.

    Vertex order is first appearance unless ``vertices`` is given.  Edge order
    is the construction order and is what file formats and formulations use.
    """

    def __init__(self, edges: Iterable[Sequence[str]], vertices: Optional[Iterable[str]] = None):
        self.edges: List[Edge] = []
        seen = set()
        verts: List[str] = []
        vset = set()
        if vertices is not None:
            for v in vertices:
                check_name(v, "vertex")
                if v not in vset:
                    vset.add(v)
                    verts.append(v)
        for e in edges:
            name, u, v = e
            check_name(name)
            check_name(u, "vertex")
            check_name(v, "vertex")
            if name in seen:
                raise DuplicateName("duplicate edge name %r" % name)
            if u == v:
                raise SelfLoop("edge %r is a self-loop at %r" % (name, u))
            seen.add(name)
            for w in (u, v):
                if w not in vset:
                    if vertices is not None:
                        raise ParseError("edge %r uses unknown vertex %r" % (name, w))
                    vset.add(w)
                    verts.append(w)
            self.edges.append((name, u, v))
        self.vertices: List[str] = verts
        self._by_name = {e[0]: e for e in self.edges}

    # -- basic queries -------------------------------------------------
    @property
    def edge_names(self) -> List[str]:
        return [e[0] for e in self.edges]

    def endpoints(self, name: str) -> Tuple[str, str]:
        e = self._by_name[name]
        return e[1], e[2]

    def has_edge(self, name: str) -> bool:
        return name in self._by_name

    def __len__(self):
        return len(self.edges)

    def __repr__(self):
        return "Graph(|V|=%d, |E|=%d)" % (len(self.vertices), len(self.edges))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.edges == other.edges and self.vertices == other.vertices

    def incident(self) -> Dict[str, List[str]]:
        inc: Dict[str, List[str]] = {v: [] for v in self.vertices}
        for name, u, v in self.edges:
            inc[u].append(name)
            inc[v].append(name)
        return inc

    def degree(self, v: str) -> int:
        return sum((u == v) + (w == v) for _, u, w in self.edges)

    def neighbors(self, v: str) -> List[str]:
        out = []
        for _, a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return out

    def delta(self, vset) -> List[str]:
        """Names of edges with exactly one endpoint in ``vset``."""
        vset = set(vset)
        return [n for n, u, v in self.edges if (u in vset) != (v in vset)]

    # -- structure -------------------------------------------------------
    def components(self, edge_subset=None) -> List[List[str]]:
        """Vertex sets of connected components (optionally of a spanning subgraph)."""
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        keep = None if edge_subset is None else set(edge_subset)
        for name, u, v in self.edges:
            if keep is not None and name not in keep:
                continue
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv, key=self.vertices.index)] = min(ru, rv, key=self.vertices.index)
        groups: Dict[str, List[str]] = defaultdict(list)
        for v in self.vertices:
            groups[find(v)].append(v)
        return list(groups.values())

    def is_connected(self) -> bool:
        return len(self.vertices) <= 1 or len(self.components()) == 1

    def bridges(self) -> List[str]:
        """Edges whose removal disconnects their component (parallel-aware)."""
        base = len(self.components())
        out = []
        for name, _, _ in self.edges:
            rest = [n for n in self.edge_names if n != name]
            if len(self.components(rest)) > base:
                out.append(name)
        return out

    def is_two_connected(self) -> bool:
        """2-vertex-connected (and loopless); graphs with < 3 vertices count if connected."""
        if not self.is_connected():
            return False
        if len(self.vertices) < 3:
            return True
        for w in self.vertices:
            sub = self.remove_vertex(w)
            if not sub.is_connected():
                return False
        return True

    # -- edits -----------------------------------------------------------
    def remove_vertex(self, w: str) -> "Graph":
        return Graph([e for e in self.edges if w not in (e[1], e[2])],
                     vertices=[v for v in self.vertices if v != w])

    def subgraph_edges(self, names) -> "Graph":
        keep = set(names)
        return Graph([e for e in self.edges if e[0] in keep], vertices=self.vertices)

    def rename_edges(self, mapping: Dict[str, str]) -> "Graph":
        return Graph([(mapping.get(n, n), u, v) for n, u, v in self.edges], vertices=self.vertices)

    def rename_vertices(self, mapping: Dict[str, str]) -> "Graph":
        return Graph([(n, mapping.get(u, u), mapping.get(v, v)) for n, u, v in self.edges],
                     vertices=[mapping.get(v, v) for v in self.vertices])

    def contract_edges(self, names) -> "Graph":
        """Contract the given edges; resulting self-loops are dropped."""
        names = set(names)
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for n, u, v in self.edges:
            if n in names:
                ru, rv = find(u), find(v)
                if ru != rv:
                    lo, hi = sorted((ru, rv), key=self.vertices.index)
                    parent[hi] = lo
        edges = []
        for n, u, v in self.edges:
            if n in names:
                continue
            a, b = find(u), find(v)
            if a != b:
                edges.append((n, a, b))
        verts = [v for v in self.vertices if find(v) == v]
        return Graph(edges, vertices=verts)

    # -- I/O -------------------------------------------------------------
    def to_text(self) -> str:
        lines = ["e %s %s %s" % e for e in self.edges]
        return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse ``e <name> <u> <v>`` lines; ``#`` starts a comment."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "e" or len(parts) != 4:
            raise ParseError("line %d: expected 'e <name> <u> <v>'" % lineno)
        edges.append(tuple(parts[1:]))
    return Graph(edges)


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


# ---------------------------------------------------------------------------
# named families
# ---------------------------------------------------------------------------

def complete_graph(n: int, prefix: str = "") -> Graph:
    """K_n on vertices ``1..n``; edge ``uv`` is named ``<prefix>uv``.

    For ``n > 9`` a dash separates the endpoints to keep names unique.
    """
    sep = "" if n <= 9 else "-"
    verts = [str(i) for i in range(1, n + 1)]
    edges = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            edges.append(("%s%d%s%d" % (prefix, i, sep, j), str(i), str(j)))
    return Graph(edges, vertices=verts)


def complete_bipartite(a: int, b: int, prefix: str = "") -> Graph:
    left = ["a%d" % i for i in range(1, a + 1)]
    right = ["b%d" % j for j in range(1, b + 1)]
    edges = [("%s%d%d" % (prefix, i, j), "a%d" % i, "b%d" % j)
             for i in range(1, a + 1) for j in range(1, b + 1)]
    return Graph(edges, vertices=left + right)


def cycle_graph(n: int, prefix: str = "e") -> Graph:
    verts = [str(i) for i in range(1, n + 1)]
    edges = [("%s%d" % (prefix, i), str(i), str(i % n + 1)) for i in range(1, n + 1)]
    return Graph(edges, vertices=verts)


def petersen(prefix: str = "p") -> Graph:
    """Petersen graph: outer 5-cycle o0..o4, spokes, inner pentagram i0..i4."""
    verts = ["o%d" % i for i in range(5)] + ["i%d" % i for i in range(5)]
    edges = []
    for i in range(5):
        edges.append(("%so%d" % (prefix, i), "o%d" % i, "o%d" % ((i + 1) % 5)))
    for i in range(5):
        edges.append(("%ss%d" % (prefix, i), "o%d" % i, "i%d" % i))
    for i in range(5):
        edges.append(("%si%d" % (prefix, i), "i%d" % i, "i%d" % ((i + 2) % 5)))
    return Graph(edges, vertices=verts)
