"""Compare the compiled and numpy min-sum kernels on the embedded codes.

    python benchmarks/bench_decoder.py [--frames 20] [--snr 5.5]

Both backends decode the same LLR vectors; the script also checks that their
decisions and iteration counts agree.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from scldpc import decoder
from scldpc.channel import transmit, uniform_profile
from scldpc.codeconstruct import assemble_sc
from scldpc.presets import get_preset


def bench(name, frames, snr, seed):
    spec = get_preset(name)
    H = assemble_sc(spec)
    rng = np.random.default_rng(seed)
    zeros = np.zeros(H.cols, dtype=np.uint8)
    llrs = [transmit(zeros, uniform_profile(snr, 1), rng) for _ in range(frames)]
    timings, results = {}, {}
    for backend in sorted(decoder._BACKENDS):
        t0 = time.perf_counter()
        results[backend] = [decoder.min_sum_decode(H, llr, 50, backend=backend) for llr in llrs]
        timings[backend] = (time.perf_counter() - t0) / frames
    ref = results["python"]
    agree = all(
        all(np.array_equal(a.hard_bits, b.hard_bits) and a.iterations_used == b.iterations_used
            for a, b in zip(res, ref))
        for res in results.values()
    )
    iters = np.mean([r.iterations_used for r in ref])
    line = f"{name:13s} n={H.cols:6d} iters={iters:5.1f}"
    for backend, t in timings.items():
        line += f"  {backend}={t * 1e3:8.2f} ms/frame"
    if "cython" in timings:
        line += f"  speedup={timings['python'] / timings['cython']:6.1f}x"
    print(line + ("" if agree else "  MISMATCH"))
    return agree


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--frames", type=int, default=20)
    p.add_argument("--snr", type=float, default=5.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--codes", default="block-code-1,sc-code-1,sc-code-3")
    args = p.parse_args()
    print(f"active backend: {decoder.BACKEND}")
    ok = all(bench(name, args.frames, args.snr, args.seed) for name in args.codes.split(","))
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
