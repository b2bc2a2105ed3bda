"""Time the compiled defect-sum kernel against the pure-Python one.

    python3 benchmarks/bench_defect.py [--max-p 60] [--repeat 3]

Runs both kernels over the same lens grid, reports wall time per kernel and
the largest absolute difference between their outputs.
"""

from __future__ import annotations

import argparse
import time

from lenseta import _kernels
from lenseta.verify import lens_grid


def _time(kernel, cases, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        start = time.perf_counter()
        out = [kernel(p, s, (1, q)) for p, q, s in cases]
        best = min(best, time.perf_counter() - start)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-p", type=int, default=60)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    cases = list(lens_grid(args.max_p))
    py_t, py_out = _time(_kernels.py_defect_sum, cases, args.repeat)
    print(f"cases: {len(cases)}")
    print(f"python  {py_t:8.3f} s")
    if _kernels.c_defect_sum is None:
        print("cython  (extension not built)")
        return
    c_t, c_out = _time(_kernels.c_defect_sum, cases, args.repeat)
    diff = max(max(abs(a[0] - b[0]), abs(a[1] - b[1])) for a, b in zip(py_out, c_out))
    print(f"cython  {c_t:8.3f} s   speedup x{py_t / c_t:.1f}")
    print(f"max |python - cython| = {diff:.2e}")


if __name__ == "__main__":
    main()
