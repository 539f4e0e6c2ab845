"""Binary matroids over GF(2) and their combinatorial oracles.

A :class:`BinaryMatroid` is a named ground set plus a GF(2) matrix with one
column per element.  The matrix is kept in reduced row echelon form with full
row rank, so its row space is the cocycle space and its null space is the
cycle space.  Two matroids on the same names are equal exactly when their
canonical matrices agree after aligning the column order.
"""
import itertools
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels as K
from . import gf2
from .errors import (BridgePresent, DuplicateName, LoopColumn, Overlap, ParseError,
                     RaggedRows, TooLarge, UnknownElement)
from .graph import Graph, check_name

DEFAULT_CAP = 24


class BinaryMatroid:
    """Loop-free binary matroid with a canonical reduced representation.

    Args:
        elements: ordered element names.
        rows: GF(2) rows as Python ints (bit j = column j); they need not be
            reduced or independent.
    """

    __slots__ = ("elements", "index", "rows", "pivots", "rank", "cols", "_u64")

    def __init__(self, elements: Sequence[str], rows: Iterable[int]):
        elements = tuple(elements)
        seen = set()
        for e in elements:
            check_name(e)
            if e in seen:
                raise DuplicateName("duplicate element %r" % e)
            seen.add(e)
        n = len(elements)
        full = (1 << n) - 1
        rows = [int(r) & full for r in rows]
        red, piv = gf2.rref(rows, n)
        cols = gf2.transpose(red, n)
        for j, c in enumerate(cols):
            if c == 0:
                raise LoopColumn("element %r is a loop (zero column)" % elements[j])
        self.elements: Tuple[str, ...] = elements
        self.index: Dict[str, int] = {e: i for i, e in enumerate(elements)}
        self.rows: Tuple[int, ...] = tuple(red)
        self.pivots: Tuple[int, ...] = tuple(piv)
        self.rank: int = len(red)
        self.cols: Tuple[int, ...] = tuple(cols)
        self._u64 = None

    # -- representation helpers -------------------------------------------
    @property
    def n(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return "BinaryMatroid(n=%d, rank=%d)" % (self.n, self.rank)

    def matrix(self) -> np.ndarray:
        """Dense uint8 copy of the canonical representation."""
        out = np.zeros((self.rank, self.n), np.uint8)
        for i, r in enumerate(self.rows):
            for j in gf2.iter_bits(r):
                out[i, j] = 1
        return out

    def col_masks(self) -> np.ndarray:
        """Columns as uint64 row-bitsets, for the batched kernels."""
        if self._u64 is None:
            if self.rank > 64:
                raise TooLarge("rank above 64 is not supported by the batched kernels")
            self._u64 = np.array(self.cols, dtype=np.uint64)
        return self._u64

    def mask(self, subset: Iterable[str]) -> int:
        m = 0
        for e in subset:
            try:
                m |= 1 << self.index[e]
            except KeyError:
                raise UnknownElement("unknown element %r" % (e,)) from None
        return m

    def names(self, mask: int) -> FrozenSet[str]:
        return frozenset(self.elements[j] for j in gf2.iter_bits(int(mask)))

    # -- rank oracle ---------------------------------------------------
    def rank_mask(self, mask: int) -> int:
        return gf2.rank(self.cols[j] for j in gf2.iter_bits(mask))

    def rank_of(self, subset: Iterable[str]) -> int:
        return self.rank_mask(self.mask(subset))

    def is_independent(self, subset) -> bool:
        subset = list(subset)
        return self.rank_of(subset) == len(set(subset))

    def closure_mask(self, mask: int) -> int:
        basis = gf2.XorBasis(self.cols[j] for j in gf2.iter_bits(mask))
        out = mask
        for j, c in enumerate(self.cols):
            if not (out >> j) & 1 and basis.contains(c):
                out |= 1 << j
        return out

    def closure(self, subset) -> FrozenSet[str]:
        return self.names(self.closure_mask(self.mask(subset)))

    def subset_report(self, subset) -> "SubsetReport":
        s = frozenset(subset)
        r = self.rank_of(s)
        return SubsetReport(s, r, r == len(s), self.closure(s))

    def ranks(self, masks) -> np.ndarray:
        """Batched ranks for an array of uint64 element masks."""
        if self.n > 64:
            raise TooLarge("ground sets above 64 elements need rank_of")
        return K.subset_ranks(self.col_masks(), np.asarray(masks, dtype=np.uint64))

    # -- comparisons ---------------------------------------------------
    def canonical(self, order: Optional[Sequence[str]] = None) -> Tuple[Tuple[str, ...], Tuple[int, ...]]:
        """(element order, reduced rows) under ``order`` (default: sorted names)."""
        order = tuple(sorted(self.elements)) if order is None else tuple(order)
        if set(order) != set(self.elements) or len(order) != self.n:
            raise UnknownElement("order must be a permutation of the ground set")
        perm = [self.index[e] for e in order]
        rows = []
        for r in self.rows:
            nr = 0
            for newj, oldj in enumerate(perm):
                if (r >> oldj) & 1:
                    nr |= 1 << newj
            rows.append(nr)
        red, _ = gf2.rref(rows, len(order))
        return order, tuple(red)

    def same_cycle_space(self, other: "BinaryMatroid") -> bool:
        if set(self.elements) != set(other.elements):
            return False
        return self.canonical() == other.canonical()

    def relabel(self, mapping: Dict[str, str]) -> "BinaryMatroid":
        return BinaryMatroid([mapping.get(e, e) for e in self.elements], self.rows)

    def reorder(self, order: Sequence[str]) -> "BinaryMatroid":
        order, rows = self.canonical(order)
        return BinaryMatroid(order, rows)


class SubsetReport:
    """Rank, independence and closure of one subset."""

    __slots__ = ("subset", "rank", "independent", "closure")

    def __init__(self, subset, rank, independent, closure):
        self.subset = subset
        self.rank = rank
        self.independent = independent
        self.closure = closure

    def __repr__(self):
        return "SubsetReport(rank=%d, independent=%s, |closure|=%d)" % (
            self.rank, self.independent, len(self.closure))


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def from_binary_matrix(rows: Sequence[Sequence[int]], names: Sequence[str]) -> BinaryMatroid:
    """Matroid whose cycle space is the GF(2) null space of ``rows``."""
    names = list(names)
    ints = []
    for r in rows:
        if len(r) != len(names):
            raise RaggedRows("row of length %d, expected %d" % (len(r), len(names)))
        v = 0
        for j, a in enumerate(r):
            if int(a) % 2:
                v |= 1 << j
        ints.append(v)
    return BinaryMatroid(names, ints)


def _incidence_rows(g: Graph) -> List[int]:
    vpos = {}
    comps = g.components()
    dropped = {c[0] for c in comps}
    for v in g.vertices:
        if v not in dropped:
            vpos[v] = len(vpos)
    rows = [0] * len(vpos)
    for j, (_, u, v) in enumerate(g.edges):
        for w in (u, v):
            if w in vpos:
                rows[vpos[w]] |= 1 << j
    return rows


def graphic(g: Graph) -> BinaryMatroid:
    """Cycle matroid M(G): incidence matrix minus one vertex per component."""
    return BinaryMatroid(g.edge_names, _incidence_rows(g))


def cographic(g: Graph) -> BinaryMatroid:
    """Bond matroid M*(G); bridges would be loops and are rejected."""
    br = g.bridges()
    if br:
        raise BridgePresent("graph has bridges: %s" % ", ".join(br))
    n = len(g.edges)
    return BinaryMatroid(g.edge_names, gf2.null_space(_incidence_rows(g), n))


def r10() -> BinaryMatroid:
    """R10 as [I5 | D], D circulant with row i supported on {i, i+1, i+4} mod 5."""
    rows = []
    for i in range(5):
        v = 1 << i
        for s in (i, (i + 1) % 5, (i + 4) % 5):
            v |= 1 << (5 + s)
        rows.append(v)
    return BinaryMatroid(["r%d" % k for k in range(1, 11)], rows)


def parse_matrix(text: str) -> BinaryMatroid:
    """Parse the ``elements: ...`` header followed by 0/1 rows."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("elements:"):
        raise ParseError("matrix file must start with 'elements:'")
    names = lines[0][len("elements:"):].split()
    rows = []
    for ln in lines[1:]:
        bits = ln.replace(" ", "")
        if set(bits) - {"0", "1"}:
            raise ParseError("matrix rows must be 0/1 strings: %r" % ln)
        rows.append([int(ch) for ch in bits])
    return from_binary_matrix(rows, names)


def read_matrix(path) -> BinaryMatroid:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def matrix_text(m: BinaryMatroid) -> str:
    out = ["elements: " + " ".join(m.elements)]
    for r in m.rows:
        out.append("".join("1" if (r >> j) & 1 else "0" for j in range(m.n)))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def rank_of(m: BinaryMatroid, s) -> int:
    return m.rank_of(s)


def is_independent(m: BinaryMatroid, s) -> bool:
    return m.is_independent(s)


def _sort_sets(m: BinaryMatroid, masks) -> List[FrozenSet[str]]:
    sets = [m.names(int(x)) for x in masks]
    sets.sort(key=lambda s: (len(s), tuple(sorted(s))))
    return sets


def cycle_masks(m: BinaryMatroid, cap: int = DEFAULT_CAP) -> np.ndarray:
    """All cycles (null-space vectors) as uint64 element masks, unordered."""
    if m.n > cap:
        raise TooLarge("|E| = %d exceeds the enumeration cap %d" % (m.n, cap))
    basis = gf2.null_space(m.rows, m.n)
    return K.span(np.array(basis, dtype=np.uint64))


def cocycle_masks(m: BinaryMatroid, cap: int = DEFAULT_CAP) -> np.ndarray:
    if m.n > cap:
        raise TooLarge("|E| = %d exceeds the enumeration cap %d" % (m.n, cap))
    return K.span(np.array(m.rows, dtype=np.uint64))


def circuit_masks(m: BinaryMatroid, cap: int = DEFAULT_CAP) -> np.ndarray:
    cyc = cycle_masks(m, cap)
    cyc = cyc[cyc != 0]
    r = m.ranks(cyc)
    return cyc[r == K.popcount(cyc) - 1]


def cocircuit_masks(m: BinaryMatroid, cap: int = DEFAULT_CAP) -> np.ndarray:
    co = cocycle_masks(m, cap)
    co = co[co != 0]
    full = np.uint64((1 << m.n) - 1)
    r = m.ranks(full & ~co)
    return co[r == m.rank - 1]


def cycles_and_circuits(m: BinaryMatroid, mode: str = "circuits", cap: int = DEFAULT_CAP) -> List[FrozenSet[str]]:
    """Enumerate cycles, circuits or cocircuits, ordered by size then names."""
    if mode == "cycles":
        return _sort_sets(m, cycle_masks(m, cap))
    if mode == "circuits":
        return _sort_sets(m, circuit_masks(m, cap))
    if mode == "cocircuits":
        return _sort_sets(m, cocircuit_masks(m, cap))
    raise ValueError("mode must be cycles, circuits or cocircuits")


def dual(m: BinaryMatroid) -> BinaryMatroid:
    """Dual matroid; raises LoopColumn when ``m`` has a coloop."""
    basis = gf2.null_space(m.rows, m.n)
    try:
        return BinaryMatroid(m.elements, basis)
    except LoopColumn as exc:
        raise LoopColumn("dual has a loop (coloop in the original): %s" % exc) from None


def coloops(m: BinaryMatroid) -> List[str]:
    return [e for j, e in enumerate(m.elements)
            if m.rank_mask(((1 << m.n) - 1) & ~(1 << j)) < m.rank]


class MinorReport:
    """Outcome of :func:`minor_report`: the minor and what was adjusted."""

    def __init__(self, matroid, removed_loops, moved_to_delete):
        self.matroid = matroid
        self.removed_loops = removed_loops
        self.moved_to_delete = moved_to_delete


def minor_report(m: BinaryMatroid, delete=(), contract=()) -> MinorReport:
    """Compute M / contract \\ delete by pivoting.

    A dependent contraction set is replaced by a maximal independent subset
    (taken greedily in ground-set order); the remaining elements are deleted
    instead, which yields the same minor.  Elements that become loops after
    contraction are deleted and listed in ``removed_loops``.
    """
    delete = set(delete)
    contract = set(contract)
    for e in delete | contract:
        if e not in m.index:
            raise UnknownElement("unknown element %r" % (e,))
    if delete & contract:
        raise Overlap("delete and contract overlap: %s" % sorted(delete & contract))
    basis = gf2.XorBasis()
    keep_c, moved = [], []
    for e in m.elements:
        if e in contract:
            if basis.add(m.cols[m.index[e]]):
                keep_c.append(e)
            else:
                moved.append(e)
    rows = list(m.rows)
    for e in keep_c:
        bit = 1 << m.index[e]
        p = next(i for i, r in enumerate(rows) if r & bit)
        prow = rows.pop(p)
        rows = [r ^ prow if r & bit else r for r in rows]
    gone = delete | set(keep_c) | set(moved)
    kept = [j for j, e in enumerate(m.elements) if e not in gone]

    def project(r):
        v = 0
        for newj, oldj in enumerate(kept):
            if (r >> oldj) & 1:
                v |= 1 << newj
        return v

    rows = [project(r) for r in rows]
    cols = gf2.transpose(rows, len(kept))
    loops = [m.elements[kept[j]] for j, c in enumerate(cols) if c == 0]
    if loops:
        keep2 = [j for j, c in enumerate(cols) if c != 0]
        rows = [sum(((r >> oj) & 1) << nj for nj, oj in enumerate(keep2)) for r in rows]
        kept = [kept[j] for j in keep2]
    res = BinaryMatroid([m.elements[j] for j in kept], rows)
    return MinorReport(res, loops, moved)


def minor(m: BinaryMatroid, delete=(), contract=()) -> BinaryMatroid:
    return minor_report(m, delete, contract).matroid


def restrict(m: BinaryMatroid, subset) -> BinaryMatroid:
    subset = set(subset)
    return minor(m, delete=[e for e in m.elements if e not in subset])


def components_mask(m: BinaryMatroid, mask: int) -> List[int]:
    """Connected components of the restriction to ``mask`` (element masks).

    Uses the fundamental-circuit graph relative to a greedy basis: two
    elements lie in one component exactly when they are linked through
    fundamental circuits.
    """
    idx = list(gf2.iter_bits(mask))
    vecs: List[int] = []
    pivs: List[int] = []
    tags: List[int] = []
    parent = {j: j for j in idx}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j in idx:
        v = m.cols[j]
        tag = 0
        for b, p, t in zip(vecs, pivs, tags):
            if v & p:
                v ^= b
                tag ^= t
        if v:
            vecs.append(v)
            pivs.append(v & -v)
            tags.append(tag | (1 << j))
        else:
            for b in gf2.iter_bits(tag):
                ra, rb = find(j), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    groups: Dict[int, int] = {}
    for j in idx:
        r = find(j)
        groups[r] = groups.get(r, 0) | (1 << j)
    return sorted(groups.values(), key=lambda g: g & -g)


def components(m: BinaryMatroid, subset=None) -> List[FrozenSet[str]]:
    mask = (1 << m.n) - 1 if subset is None else m.mask(subset)
    return [m.names(c) for c in components_mask(m, mask)]


def is_connected(m: BinaryMatroid) -> bool:
    return m.n == 0 or len(components_mask(m, (1 << m.n) - 1)) == 1


def flat_masks(m: BinaryMatroid, cap: int = DEFAULT_CAP) -> List[int]:
    """All flats, found by closing single-element extensions from the empty flat."""
    if m.n > cap:
        raise TooLarge("|E| = %d exceeds the enumeration cap %d" % (m.n, cap))
    start = m.closure_mask(0)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for f in frontier:
            for j in range(m.n):
                if not (f >> j) & 1:
                    g = m.closure_mask(f | (1 << j))
                    if g not in seen:
                        seen.add(g)
                        nxt.append(g)
        frontier = nxt
    return sorted(seen)


def connected_flats(m: BinaryMatroid, cap: int = DEFAULT_CAP) -> List[Tuple[FrozenSet[str], int]]:
    """Non-empty flats whose restriction has no 1-separation, with their ranks."""
    out = []
    for f in flat_masks(m, cap):
        if f == 0:
            continue
        if len(components_mask(m, f)) == 1:
            out.append((m.names(f), m.rank_mask(f)))
    out.sort(key=lambda fr: (fr[1], len(fr[0]), tuple(sorted(fr[0]))))
    return out


def simplify(m: BinaryMatroid) -> Tuple[BinaryMatroid, List[FrozenSet[str]]]:
    """Keep the lexicographically least element of each parallel class."""
    classes: Dict[int, List[str]] = {}
    for j, c in enumerate(m.cols):
        classes.setdefault(c, []).append(m.elements[j])
    groups = [frozenset(v) for v in classes.values()]
    reps = {min(g) for g in groups}
    groups.sort(key=min)
    return restrict(m, reps), groups


def parallel_classes(m: BinaryMatroid) -> List[FrozenSet[str]]:
    return simplify(m)[1]


def is_valid_triangle(m1: BinaryMatroid, m2: BinaryMatroid, t) -> bool:
    """Check the side conditions for gluing ``m1`` and ``m2`` along ``t``."""
    t = list(t)
    for e in t:
        if e not in m1.index or e not in m2.index:
            raise UnknownElement("triangle element %r missing from a part" % (e,))
    if len(set(t)) != 3:
        return False
    if m1.n < 7 or m2.n < 7:
        return False
    for m in (m1, m2):
        if not _is_triangle(m, t):
            return False
        rest = ((1 << m.n) - 1) & ~m.mask(t)
        if m.rank_mask(rest) < m.rank:  # t contains a cocircuit
            return False
    return True


def _is_triangle(m: BinaryMatroid, t) -> bool:
    if m.rank_of(t) != 2:
        return False
    return all(m.rank_of(p) == 2 for p in itertools.combinations(t, 2))


def is_triangle(m: BinaryMatroid, t) -> bool:
    """True when ``t`` is a 3-element circuit of ``m``."""
    return len(set(t)) == 3 and _is_triangle(m, t)


# ---------------------------------------------------------------------------
# subset enumeration
# ---------------------------------------------------------------------------

def independent_masks(m: BinaryMatroid, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Every independent set as a uint64 mask (increasing mask order)."""
    if m.n > cap:
        raise TooLarge("|E| = %d exceeds the enumeration cap %d" % (m.n, cap))
    allm = K.all_masks(m.n)
    r = m.ranks(allm)
    return allm[r == K.popcount(allm)]


def basis_masks(m: BinaryMatroid, cap: int = DEFAULT_CAP) -> np.ndarray:
    ind = independent_masks(m, cap)
    return ind[K.popcount(ind) == m.rank]


def circuit_profile(m: BinaryMatroid, cap: int = DEFAULT_CAP) -> Tuple[Tuple[int, int], ...]:
    """Sorted (size, count) pairs of the circuits; a cheap isomorphism invariant."""
    sizes = K.popcount(circuit_masks(m, cap))
    vals, counts = np.unique(sizes, return_counts=True)
    return tuple((int(v), int(c)) for v, c in zip(vals, counts))


def find_isomorphism(m1: BinaryMatroid, m2: BinaryMatroid, cap: int = DEFAULT_CAP) -> Optional[Dict[str, str]]:
    """Backtracking search for a bijection mapping circuits onto circuits."""
    if m1.n != m2.n or m1.rank != m2.rank:
        return None
    c1 = [int(x) for x in circuit_masks(m1, cap)]
    c2 = set(int(x) for x in circuit_masks(m2, cap))
    if len(c1) != len(c2):
        return None
    n = m1.n
    # circuits in which each element of m1 is the largest index
    by_last: List[List[int]] = [[] for _ in range(n)]
    for c in c1:
        by_last[c.bit_length() - 1].append(c)

    def sig(m, circs):
        out = []
        for j in range(m.n):
            out.append(tuple(sorted(gf2.popcount(c) for c in circs if (c >> j) & 1)))
        return out

    s1 = sig(m1, c1)
    s2 = sig(m2, list(c2))
    image = [0] * n
    used = [False] * n

    def rec(j):
        if j == n:
            return True
        for k in range(n):
            if used[k] or s1[j] != s2[k]:
                continue
            image[j] = k
            used[k] = True
            ok = True
            for c in by_last[j]:
                img = 0
                for b in gf2.iter_bits(c):
                    img |= 1 << image[b]
                if img not in c2:
                    ok = False
                    break
            if ok and rec(j + 1):
                return True
            used[k] = False
        return False

    if not rec(0):
        return None
    return {m1.elements[j]: m2.elements[image[j]] for j in range(n)}
