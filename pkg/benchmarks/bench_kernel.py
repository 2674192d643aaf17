"""Compare the compiled and numpy-object profile kernels on square boards.

    python benchmarks/bench_kernel.py --sizes 8 10 12 14 16 --repeat 3
"""

from __future__ import annotations

import argparse
import time

from domino2adic.grid_count import KERNELS


def best_time(fn, *args, repeat: int) -> tuple[float, int]:
    best, value = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, value


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[8, 10, 12, 14, 16])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    names = sorted(KERNELS)
    print(f"{'side':>5} " + " ".join(f"{k + ' [s]':>14}" for k in names) + f" {'speedup':>9}")
    for side in args.sizes:
        timings, values = {}, set()
        for name in names:
            t, v = best_time(KERNELS[name], side, side, repeat=args.repeat)
            timings[name] = t
            values.add(v)
        if len(values) != 1:
            raise SystemExit(f"kernels disagree on {side}x{side}: {values}")
        speedup = (
            f"{timings['python'] / timings['compiled']:9.1f}x" if "compiled" in timings else " " * 9
        )
        print(f"{side:>5} " + " ".join(f"{timings[k]:14.4f}" for k in names) + f" {speedup}")


if __name__ == "__main__":
    main()
