"""Labelled matroid parts: a binary matroid plus the graph it came from, if any."""
from typing import Optional

from .errors import UnsupportedPart
from .graph import Graph
from .matroid import BinaryMatroid, cographic, graphic, r10

KINDS = ("graphic", "cographic", "r10", "binary")


class Part:
    """A node label of a decomposition tree.

    Attributes:
        id: node id.
        kind: one of ``graphic``, ``cographic``, ``r10``, ``binary``.
        matroid: the binary matroid.
        graph: the underlying graph for graphic / cographic parts, else None.
        source: payload path, when read from disk.
    """

    def __init__(self, id: str, kind: str, matroid: BinaryMatroid, graph: Optional[Graph] = None,
                 source: Optional[str] = None):
        if kind not in KINDS:
            raise UnsupportedPart("unknown part kind %r" % kind)
        if kind in ("graphic", "cographic") and graph is None:
            raise UnsupportedPart("%s part %r needs its graph" % (kind, id))
        self.id = id
        self.kind = kind
        self.matroid = matroid
        self.graph = graph
        self.source = source

    @classmethod
    def from_graph(cls, id: str, kind: str, g: Graph, source: Optional[str] = None) -> "Part":
        if kind == "graphic":
            return cls(id, kind, graphic(g), g, source)
        if kind == "cographic":
            return cls(id, kind, cographic(g), g, source)
        raise UnsupportedPart("kind %r is not graph based" % kind)

    @classmethod
    def r10(cls, id: str = "r10") -> "Part":
        return cls(id, "r10", r10())

    @property
    def elements(self):
        return self.matroid.elements

    def __repr__(self):
        return "Part(%s, %s, |E|=%d)" % (self.id, self.kind, self.matroid.n)
