#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times each hot kernel on identical inputs and a full sampling trial, and
verifies on the way that both backends return identical results.

Usage:
    python benchmarks/bench_kernels.py [--sizes 10000,100000,1000000] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from mapcells.kernels import pure

try:
    from mapcells.kernels import _core as compiled
except ImportError:
    compiled = None


def timed(fn, *args, repeat: int = 3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_pipeline(n: int, repeat: int) -> list[tuple[str, float, float]]:
    rng = np.random.Generator(np.random.Philox(key=[123, n]))
    word = np.concatenate([np.ones(n, np.int8), -np.ones(n + 1, np.int8)])
    rng.shuffle(word)
    inc = rng.integers(-1, 2, size=n)

    rows = []

    def compare(name, fn_args):
        t_pure, out_pure = timed(getattr(pure, name), *fn_args, repeat=repeat)
        if compiled is None:
            rows.append((name, t_pure, float("nan")))
            return out_pure
        t_comp, out_comp = timed(getattr(compiled, name), *fn_args, repeat=repeat)
        flat_p = out_pure if isinstance(out_pure, tuple) else (out_pure,)
        flat_c = out_comp if isinstance(out_comp, tuple) else (out_comp,)
        for a, b in zip(flat_p, flat_c):
            if isinstance(a, np.ndarray):
                assert np.array_equal(a, b), f"{name}: backend mismatch"
            else:
                assert a == b, f"{name}: backend mismatch"
        rows.append((name, t_pure, t_comp))
        return out_comp

    contour = compare("rotate_to_dyck", (word,))
    vo, lo, nv = compare("tree_corner_tables", (contour, inc))
    eu, ev, center = compare("closure_edges", (vo, lo, nv))
    indptr, indices = compare("adjacency_csr", (eu, ev, nv + 1))
    compare("bfs_distances", (indptr, indices, int(center)))
    dists = np.stack(
        [pure.bfs_distances(indptr, indices, int(s)) for s in (0, int(center))]
    )
    compare("nearest_cell_counts", (dists,))
    return rows


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="10000,100000,1000000")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--survey", type=int, default=7, help="polygon-gluing survey size")
    args = parser.parse_args()

    print(f"compiled backend available: {compiled is not None}")
    for n in (int(s) for s in args.sizes.split(",")):
        print(f"\n== sampling pipeline, n = {n} ==")
        print(f"{'kernel':24s} {'pure (s)':>12s} {'compiled (s)':>12s} {'speedup':>9s}")
        for name, t_pure, t_comp in bench_pipeline(n, args.repeat):
            ratio = t_pure / t_comp if t_comp == t_comp and t_comp > 0 else float("nan")
            print(f"{name:24s} {t_pure:12.5f} {t_comp:12.5f} {ratio:8.1f}x")

    n = args.survey
    print(f"\n== polygon gluing survey, n = {n} ({2 * n - 1}!! pairings) ==")
    t_pure, out_pure = timed(pure.polygon_gluing_genus_counts, n, repeat=1)
    line = f"{'polygon_gluing_survey':24s} {t_pure:12.5f}"
    if compiled is not None:
        t_comp, out_comp = timed(compiled.polygon_gluing_genus_counts, n, repeat=1)
        assert np.array_equal(out_pure, out_comp)
        line += f" {t_comp:12.5f} {t_pure / t_comp:8.1f}x"
    print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
