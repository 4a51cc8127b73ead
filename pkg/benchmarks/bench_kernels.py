"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--batch 256] [--repeat 5]

Each row reports the best of ``--repeat`` runs, plus the largest absolute
difference between the two backends' outputs.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from tuckernet import kernels
from tuckernet.huffman import frequencies, huffman_build


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def _maxdiff(a, b):
    if isinstance(a, tuple):
        return max(_maxdiff(x, y) for x, y in zip(a, b))
    if isinstance(a, (bytes, int)):
        return 0.0 if a == b else float("inf")
    return float(np.max(np.abs(np.asarray(a, np.float64) - np.asarray(b, np.float64))))


def cases(batch, rng):
    x1 = rng.random((batch, 28, 28, 1), dtype=np.float32)
    w1 = rng.standard_normal((5, 5, 1, 20)).astype(np.float32) * 0.2
    x2 = rng.random((batch, 12, 12, 20), dtype=np.float32)
    w2 = rng.standard_normal((5, 5, 20, 50)).astype(np.float32) * 0.05
    dy1 = rng.standard_normal((batch, 24, 24, 20)).astype(np.float32)
    dy2 = rng.standard_normal((batch, 8, 8, 50)).astype(np.float32)
    p = rng.standard_normal((batch, 24, 24, 20)).astype(np.float32)
    _, idx = kernels.python.maxpool2d_forward(p, 2)
    dyp = rng.standard_normal((batch, 12, 12, 20)).astype(np.float32)
    sym = np.clip(np.round(rng.laplace(256, 20, 200_000)), 0, 512).astype(np.int64)
    book = huffman_build(frequencies(sym))
    codes, lengths = book._arrays()
    packed, nbits = kernels.python.huffman_pack(sym, codes, lengths)
    left, right, leaf = (np.asarray(a, dtype=np.int64) for a in book._tree())
    return [
        ("conv1 forward", lambda k: k.conv2d_forward(x1, w1, 1, 0)),
        ("conv1 backward", lambda k: k.conv2d_backward(x1, w1, dy1, 1, 0)),
        ("conv2 forward", lambda k: k.conv2d_forward(x2, w2, 1, 0)),
        ("conv2 backward", lambda k: k.conv2d_backward(x2, w2, dy2, 1, 0)),
        ("maxpool forward", lambda k: k.maxpool2d_forward(p, 2)),
        ("maxpool backward", lambda k: k.maxpool2d_backward(dyp, idx, p.shape, 2)),
        ("huffman pack 200k", lambda k: k.huffman_pack(sym, codes, lengths)),
        ("huffman unpack 200k", lambda k: k.huffman_unpack(packed, nbits, sym.size,
                                                           left, right, leaf)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--batch", type=int, default=256)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if kernels.compiled is None:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<22}{'python [s]':>12}{'compiled [s]':>14}{'speedup':>9}{'max |diff|':>12}")
    for name, fn in cases(args.batch, rng):
        tp, op = best_of(lambda: fn(kernels.python), args.repeat)
        tc, oc = best_of(lambda: fn(kernels.compiled), args.repeat)
        print(f"{name:<22}{tp:>12.4f}{tc:>14.4f}{tp / tc:>9.2f}{_maxdiff(op, oc):>12.2e}")
    # the direct-loop convolution kept as the reference path
    x2 = rng.random((args.batch, 12, 12, 20), dtype=np.float32)
    w2 = rng.standard_normal((5, 5, 20, 50)).astype(np.float32) * 0.05
    td, _ = best_of(lambda: kernels.compiled.conv2d_forward_direct(x2, w2, 1, 0), args.repeat)
    print(f"{'conv2 fwd, direct':<22}{'':>12}{td:>14.4f}")


if __name__ == "__main__":
    main()
