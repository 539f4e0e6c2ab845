"""GF(2) linear algebra on rows stored as Python integers.

A row over ``n`` columns is an ``int`` whose bit ``j`` is the entry in
column ``j``.  Python integers have no width limit, so these helpers work for
any matrix size; the batched kernels in :mod:`efc._kernels` take over when a
problem fits into 64-bit words.
"""
from typing import List, Sequence, Tuple


def lowbit(v: int) -> int:
    return v & -v


def bit_index(v: int) -> int:
    """Index of the single set bit of ``v``."""
    return v.bit_length() - 1


def iter_bits(v: int):
    while v:
        b = v & -v
        yield b.bit_length() - 1
        v ^= b


def popcount(v: int) -> int:
    return bin(v).count("1")


def rref(rows: Sequence[int], ncols: int) -> Tuple[List[int], List[int]]:
    """Reduced row echelon form with a deterministic pivot order.

    Columns are scanned left to right (bit 0 first); for each column the
    lowest-index remaining row holding a one becomes the pivot.  Zero rows are
    dropped.

    Returns:
        (rows, pivots) where ``pivots[i]`` is the pivot column of ``rows[i]``.
    """
    work = [r for r in rows if r]
    out: List[int] = []
    pivots: List[int] = []
    for c in range(ncols):
        bit = 1 << c
        p = None
        for i, r in enumerate(work):
            if r & bit:
                p = i
                break
        if p is None:
            continue
        prow = work.pop(p)
        work = [r ^ prow if r & bit else r for r in work]
        out = [r ^ prow if r & bit else r for r in out]
        out.append(prow)
        pivots.append(c)
        work = [r for r in work if r]
        if not work:
            break
    return out, pivots


def rank(rows: Sequence[int]) -> int:
    """Rank of a set of GF(2) vectors (order independent)."""
    basis: List[int] = []
    piv: List[int] = []
    for v in rows:
        for b, p in zip(basis, piv):
            if v & p:
                v ^= b
        if v:
            basis.append(v)
            piv.append(v & -v)
    return len(basis)


class XorBasis:
    """Incremental GF(2) basis used for span tests and closures."""

    __slots__ = ("vecs", "pivs")

    def __init__(self, vectors=()):
        self.vecs: List[int] = []
        self.pivs: List[int] = []
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> int:
        for b, p in zip(self.vecs, self.pivs):
            if v & p:
                v ^= b
        return v

    def add(self, v: int) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        self.vecs.append(v)
        self.pivs.append(v & -v)
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __len__(self):
        return len(self.vecs)


def null_space(rows: Sequence[int], ncols: int) -> List[int]:
    """Basis of {x : Ax = 0} over GF(2), one vector per free column.

    The vector for free column ``f`` has a one at ``f`` and at the pivot
    columns of the rows that contain ``f``; vectors are returned in increasing
    order of their free column.
    """
    r, piv = rref(rows, ncols)
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = 1 << f
        for row, p in zip(r, piv):
            if (row >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return basis


def transpose(rows: Sequence[int], ncols: int) -> List[int]:
    cols = [0] * ncols
    for i, r in enumerate(rows):
        for j in iter_bits(r):
            cols[j] |= 1 << i
    return cols
