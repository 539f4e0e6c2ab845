"""Time the enumeration kernels under numba and under the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

Each backend runs in its own interpreter (the backend is fixed at import
time by ``EFC_NO_JIT``).  The numba timing excludes the first call, which
pays for compilation; that cost is reported separately.
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from efc import _kernels as K
from efc.graph import complete_graph, petersen
from efc.matroid import graphic

repeat = int(sys.argv[1])
m = graphic(petersen())
cols = m.col_masks()
subsets = K.all_masks(m.n)
rng = np.random.default_rng(0)
mats = rng.integers(-1, 2, size=(20000, 5, 5)).astype(np.int64)

out = {"backend": K.BACKEND}
for name, fn in [("subset_ranks", lambda: K.subset_ranks(cols, subsets)),
                 ("small_dets", lambda: K.small_dets(mats)),
                 ("popcount", lambda: K.popcount(subsets))]:
    t0 = time.perf_counter(); first = fn(); out[name + "_first"] = time.perf_counter() - t0
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter(); res = fn(); best = min(best, time.perf_counter() - t0)
    out[name] = best
    out[name + "_sum"] = int(np.asarray(res, dtype=np.int64).sum())
print(json.dumps(out))
"""


def run(no_jit: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env["EFC_NO_JIT"] = "1" if no_jit else "0"
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True,
                         check=True)
    return json.loads(res.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    jit, ref = run(False, args.repeat), run(True, args.repeat)
    print("kernel          numba(s)   numpy(s)   speedup   jit-compile(s)   results-agree")
    for k in ("subset_ranks", "small_dets", "popcount"):
        print("%-14s %9.4f %10.4f %9.1fx %15.2f   %s" % (
            k, jit[k], ref[k], ref[k] / max(jit[k], 1e-9), jit[k + "_first"] - jit[k],
            jit[k + "_sum"] == ref[k + "_sum"]))
    if jit["backend"] != "numba":
        print("note: numba unavailable, both columns use the numpy path")


if __name__ == "__main__":
    main()
