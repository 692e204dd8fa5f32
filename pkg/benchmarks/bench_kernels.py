"""Compare the compiled kernels with the pure-Python fallback.

Run from the repository root::

    python3 benchmarks/bench_kernels.py [--size 60] [--repeat 5]
"""

import argparse
import random
import timeit

from steinpalf import _pykernels
from steinpalf.diagram import GridFront, _auto_labels

try:
    from steinpalf import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def random_front(n, seed):
    rng = random.Random(seed)
    while True:
        xs = list(range(n))
        os_ = list(range(n))
        rng.shuffle(xs)
        rng.shuffle(os_)
        if all(a != b for a, b in zip(xs, os_)):
            return GridFront(n, tuple(xs), tuple(os_), tuple(_auto_labels(n, xs, os_)))


def cases(f, rank_size, seed):
    rng = random.Random(seed)
    mat = [[rng.randint(-2, 2) for _ in range(rank_size)] for _ in range(rank_size)]
    return {
        "crossings": lambda k: k.crossings(f.hsegs, f.vsegs),
        "winding_numbers": lambda k: k.winding_numbers(f.vsegs, f.size),
        "interior_mask": lambda k: k.interior_mask(f.hsegs, f.vsegs, f.size),
        "rank_mod_p": lambda k: k.rank_mod_p(mat, 2147483629),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=60)
    ap.add_argument("--rank-size", type=int, default=80)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    f = random_front(args.size, args.seed)
    print(f"grid {args.size}, rank matrix {args.rank_size}x{args.rank_size}, best of {args.repeat}")
    print(f"{'kernel':18} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for name, call in cases(f, args.rank_size, args.seed).items():
        py = min(timeit.repeat(lambda: call(_pykernels), number=1, repeat=args.repeat)) * 1000
        if _ckernels is None:
            print(f"{name:18} {py:10.2f} {'n/a':>10} {'':>8}")
            continue
        a, b = call(_pykernels), call(_ckernels)
        assert (a == b) if name == "rank_mod_p" else list(a) == list(b)
        cy = min(timeit.repeat(lambda: call(_ckernels), number=1, repeat=args.repeat)) * 1000
        print(f"{name:18} {py:10.2f} {cy:10.2f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
