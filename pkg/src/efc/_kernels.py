"""Hot enumeration kernels over GF(2) bitsets.

Every routine here has two implementations: a numba ``@njit`` version and a
vectorised pure-numpy version.  The numba path is used when numba imports
cleanly and the environment variable ``EFC_NO_JIT`` is unset (or ``0``).
Both paths are exercised by the test-suite and must agree bit for bit.

Bitset conventions: a column of a GF(2) matrix with ``m <= 64`` rows is a
``uint64`` whose bit ``i`` is the entry in row ``i``.  A subset of a ground
set with ``n <= 64`` elements is a ``uint64`` whose bit ``j`` marks element
``j``.
"""
import os

import numpy as np

_flag = os.environ.get("EFC_NO_JIT", "").strip().lower()
_WANT_JIT = _flag in ("", "0", "false", "no")

try:  # pragma: no cover - depends on the environment
    if not _WANT_JIT:
        raise ImportError("jit disabled by EFC_NO_JIT")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f


BACKEND = "numba" if HAVE_NUMBA else "numpy"

_CHUNK = 1 << 15


# --------------------------------------------------------------------------
# subset ranks
# --------------------------------------------------------------------------

@njit(cache=True)
def _subset_ranks_nb(cols, subsets):
    out = np.empty(subsets.shape[0], np.int64)
    basis = np.zeros(64, np.uint64)
    pivots = np.zeros(64, np.uint64)
    one = np.uint64(1)
    zero = np.uint64(0)
    for s in range(subsets.shape[0]):
        mask = subsets[s]
        r = 0
        j = 0
        while mask != zero:
            if mask & one:
                v = cols[j]
                for i in range(r):
                    if v & pivots[i]:
                        v ^= basis[i]
                if v != zero:
                    basis[r] = v
                    pivots[r] = v & (~v + one)
                    r += 1
            mask >>= one
            j += 1
        out[s] = r
    return out


def _subset_ranks_np(cols, subsets):
    nrows = 0
    for c in cols:
        nrows = max(nrows, int(c).bit_length())
    out = np.zeros(subsets.shape[0], np.int64)
    for start in range(0, subsets.shape[0], _CHUNK):
        sub = subsets[start:start + _CHUNK]
        basis = np.zeros((sub.shape[0], max(nrows, 1)), np.uint64)
        rank = np.zeros(sub.shape[0], np.int64)
        for j in range(cols.shape[0]):
            sel = ((sub >> np.uint64(j)) & np.uint64(1)).astype(bool)
            v = np.where(sel, cols[j], np.uint64(0))
            for h in range(nrows):
                has = ((v >> np.uint64(h)) & np.uint64(1)).astype(bool)
                if not has.any():
                    continue
                b = basis[:, h]
                red = has & (b != 0)
                v[red] ^= b[red]
                new = has & (b == 0)
                basis[new, h] = v[new]
                rank[new] += 1
                v[new] = 0
        out[start:start + sub.shape[0]] = rank
    return out


def subset_ranks(cols, subsets):
    """GF(2) rank of the column subsets selected by each mask in ``subsets``.

    Args:
        cols: uint64 array, one bitset per column (bit i = row i).
        subsets: uint64 array of column-selection masks.

    Returns:
        int64 array of ranks, aligned with ``subsets``.
    """
    cols = np.ascontiguousarray(cols, dtype=np.uint64)
    subsets = np.ascontiguousarray(subsets, dtype=np.uint64)
    if HAVE_NUMBA:
        return _subset_ranks_nb(cols, subsets)
    return _subset_ranks_np(cols, subsets)


# --------------------------------------------------------------------------
# span of a basis (cycle enumeration)
# --------------------------------------------------------------------------

@njit(cache=True)
def _span_nb(basis):
    d = basis.shape[0]
    out = np.zeros(1 << d, np.uint64)
    cur = np.uint64(0)
    for i in range(1, 1 << d):
        tz = 0
        while not (i >> tz) & 1:
            tz += 1
        cur ^= basis[tz]
        out[i] = cur
    return out


def _span_np(basis):
    out = np.zeros(1, np.uint64)
    for b in basis:
        out = np.concatenate([out, out ^ np.uint64(b)])
    return out


def span(basis):
    """All 2^d GF(2) combinations of the given bitset vectors.

    The numba version walks a Gray code; the numpy version doubles the
    array once per generator.  The two orders differ, so callers that need
    a canonical order must sort.
    """
    basis = np.ascontiguousarray(basis, dtype=np.uint64)
    if basis.shape[0] > 30:
        raise ValueError("span of more than 30 generators is not enumerable")
    if HAVE_NUMBA:
        return _span_nb(basis)
    return _span_np(basis)


# --------------------------------------------------------------------------
# popcount
# --------------------------------------------------------------------------

@njit(cache=True)
def _popcount_nb(arr):
    out = np.empty(arr.shape[0], np.int64)
    for i in range(arr.shape[0]):
        v = arr[i]
        c = 0
        while v:
            v &= v - np.uint64(1)
            c += 1
        out[i] = c
    return out


def popcount(arr):
    arr = np.ascontiguousarray(arr, dtype=np.uint64)
    if HAVE_NUMBA:
        return _popcount_nb(arr)
    return np.bitwise_count(arr).astype(np.int64)


# --------------------------------------------------------------------------
# small integer determinants (Bareiss)
# --------------------------------------------------------------------------

@njit(cache=True)
def _dets_nb(mats):
    k, n, _ = mats.shape
    out = np.empty(k, np.int64)
    a = np.empty((n, n), np.int64)
    for t in range(k):
        a[:, :] = mats[t]
        sign = 1
        prev = 1
        dead = False
        for c in range(n - 1):
            if a[c, c] == 0:
                p = -1
                for r in range(c + 1, n):
                    if a[r, c] != 0:
                        p = r
                        break
                if p < 0:
                    dead = True
                    break
                for j in range(n):
                    tmp = a[c, j]
                    a[c, j] = a[p, j]
                    a[p, j] = tmp
                sign = -sign
            for i in range(c + 1, n):
                for j in range(c + 1, n):
                    a[i, j] = (a[i, j] * a[c, c] - a[i, c] * a[c, j]) // prev
            prev = a[c, c]
        if dead:
            out[t] = 0
        else:
            out[t] = sign * a[n - 1, n - 1]
    return out


def _dets_np(mats):
    a = mats.astype(np.int64, copy=True)
    k, n, _ = a.shape
    if n == 0:
        return np.ones(k, np.int64)
    sign = np.ones(k, np.int64)
    prev = np.ones(k, np.int64)
    dead = np.zeros(k, bool)
    idx = np.arange(k)
    for c in range(n - 1):
        nz = a[:, c:, c] != 0
        has = nz.any(axis=1)
        dead |= ~has
        p = c + nz.argmax(axis=1)
        swap = has & (p != c)
        if swap.any():
            rows_c = a[idx[swap], c, :].copy()
            a[idx[swap], c, :] = a[idx[swap], p[swap], :]
            a[idx[swap], p[swap], :] = rows_c
            sign[swap] = -sign[swap]
        piv = a[:, c, c].copy()
        piv[dead] = 1
        sub = a[:, c + 1:, c + 1:] * piv[:, None, None] - a[:, c + 1:, c][:, :, None] * a[:, c, c + 1:][:, None, :]
        a[:, c + 1:, c + 1:] = sub // prev[:, None, None]
        prev = piv
    out = sign * a[:, n - 1, n - 1]
    out[dead] = 0
    return out


def small_dets(mats):
    """Exact determinants of a stack of small integer matrices (k, n, n)."""
    mats = np.ascontiguousarray(mats, dtype=np.int64)
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
        raise ValueError("expected a (k, n, n) stack")
    if mats.shape[0] == 0:
        return np.zeros(0, np.int64)
    if mats.shape[1] == 1:
        return mats[:, 0, 0].copy()
    if HAVE_NUMBA:
        return _dets_nb(mats)
    return _dets_np(mats)


def all_masks(n):
    """Every subset mask of an n-element ground set, in increasing order."""
    if n > 30:
        raise ValueError("too many subsets")
    return np.arange(1 << n, dtype=np.uint64)
