"""Compare the numba and pure-numpy GF(2) kernels.

Each backend runs in its own interpreter because the backend is chosen at
import time from ``OGC_NO_NUMBA``.  Usage::

    python3 benchmarks/bench_f2.py            # both backends, default sizes
    python3 benchmarks/bench_f2.py --sizes 256 1024 --repeat 5
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from ogc import _kernels
from ogc.f2_linear import F2Mat, rank
from ogc.module_pres import present_K

sizes, repeat = json.loads(sys.argv[1]), int(sys.argv[2])
rng = np.random.default_rng(0)
out = {"numba": _kernels.USING_NUMBA, "rows": []}
# warm up (compiles the numba kernels, or loads them from cache)
rank(F2Mat.from_dense(rng.integers(0, 2, (70, 70), dtype=np.uint8)))
(F2Mat.from_dense(rng.integers(0, 2, (70, 70), dtype=np.uint8)) @ F2Mat.from_dense(rng.integers(0, 2, (70, 70), dtype=np.uint8)))
for n in sizes:
    A = F2Mat.from_dense(rng.integers(0, 2, (n, n), dtype=np.uint8))
    B = F2Mat.from_dense(rng.integers(0, 2, (n, n), dtype=np.uint8))
    t_rank, t_mul = [], []
    for _ in range(repeat):
        t0 = time.perf_counter(); rank(A); t_rank.append(time.perf_counter() - t0)
        t0 = time.perf_counter(); A @ B; t_mul.append(time.perf_counter() - t0)
    out["rows"].append({"n": n, "rank_s": min(t_rank), "matmul_s": min(t_mul)})
t0 = time.perf_counter(); present_K(5, 22); out["present_K_5_22_s"] = time.perf_counter() - t0
print(json.dumps(out))
"""


def run(no_numba: bool, sizes, repeat) -> dict:
    env = dict(os.environ)
    env["OGC_NO_NUMBA"] = "1" if no_numba else "0"
    res = subprocess.run([sys.executable, "-c", WORKER, json.dumps(sizes), str(repeat)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[128, 512, 1024, 2048])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    nb = run(False, args.sizes, args.repeat)
    npy = run(True, args.sizes, args.repeat)
    print(f"numba active: {nb['numba']}; numpy fallback active: {not npy['numba']}")
    print(f"{'n':>6} {'rank numba':>12} {'rank numpy':>12} {'speedup':>8} {'mul numba':>12} {'mul numpy':>12} {'speedup':>8}")
    for a, b in zip(nb["rows"], npy["rows"]):
        print(f"{a['n']:>6} {a['rank_s']:>12.5f} {b['rank_s']:>12.5f} {b['rank_s'] / a['rank_s']:>8.1f}"
              f" {a['matmul_s']:>12.5f} {b['matmul_s']:>12.5f} {b['matmul_s'] / a['matmul_s']:>8.1f}")
    print(f"end to end present_K(5, 22): numba {nb['present_K_5_22_s']:.2f}s, numpy {npy['present_K_5_22_s']:.2f}s")


if __name__ == "__main__":
    main()
