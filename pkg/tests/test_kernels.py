import importlib
import itertools
import os
import subprocess
import sys

import numpy as np

from efc import _kernels as K


def _gf2_rank(cols):
    rows = [int(c) for c in cols]
    rank = 0
    while rows:
        piv = max(rows)
        if piv == 0:
            break
        rank += 1
        hb = piv.bit_length() - 1
        rows = [r ^ piv if (r >> hb) & 1 else r for r in rows if r != piv]
    return rank


def test_popcount_matches_python():
    arr = np.array([0, 1, 3, 255, (1 << 63) | 5], dtype=np.uint64)
    assert list(K.popcount(arr)) == [bin(int(a)).count("1") for a in arr]


def test_subset_ranks_match_elimination():
    rng = np.random.default_rng(7)
    cols = rng.integers(0, 16, size=8).astype(np.uint64)
    subsets = np.arange(256, dtype=np.uint64)
    got = K.subset_ranks(cols, subsets)
    for s in range(256):
        chosen = [cols[j] for j in range(8) if (s >> j) & 1]
        assert got[s] == _gf2_rank(chosen)


def test_small_dets_match_numpy():
    rng = np.random.default_rng(3)
    for k in (1, 2, 3, 4, 5):
        mats = rng.integers(-1, 2, size=(40, k, k)).astype(np.int64)
        want = np.rint(np.linalg.det(mats.astype(float))).astype(np.int64)
        assert np.array_equal(K.small_dets(mats), want)


def test_span_is_closed():
    basis = np.array([1, 2, 4], dtype=np.uint64)
    assert sorted(int(x) for x in K.span(basis)) == list(range(8))


def test_numpy_fallback_agrees():
    code = ("import numpy as np; from efc import _kernels as K; "
            "print(K.BACKEND, (K.subset_ranks(np.array([1,2,3],dtype=np.uint64),"
            "np.arange(8,dtype=np.uint64))).tolist())")
    env = dict(os.environ, EFC_NO_JIT="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, rest = out.stdout.split(" ", 1)
    assert backend == "numpy"
    assert rest.strip() == "[0, 1, 1, 2, 1, 2, 2, 2]"
