"""Compress random nonzero elements of each fixture into the cycline
subalgebra and report certificate statistics.

    python3 scripts/compression_demo.py --samples 20 --seed 1
"""
from __future__ import annotations

import argparse
import random
import time
from collections import Counter

from kpw.fixtures import NAMES, load
from kpw.sampling import random_element
from kpw.uniqueness import compress_to_cycline


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--show", type=int, default=2, help="examples printed per graph")
    args = ap.parse_args()
    for name in NAMES:
        g, R = load(name)
        rng = random.Random(f"{args.seed}-{name}")
        kinds = Counter()
        start = time.perf_counter()
        for i in range(args.samples):
            a = random_element(g, R, rng, 2, nonzero=True)
            m, rep = compress_to_cycline(a)
            kinds.update(c.kind for c in rep.certificates)
            if i < args.show:
                print(f"{name}: a = {a}")
                print(f"      m = {m}  (x = {rep.x}, r = {rep.r})")
        dt = time.perf_counter() - start
        print(f"{name}: {args.samples} compressions in {dt:.2f}s; certificates {dict(kinds)}\n")


if __name__ == "__main__":
    main()
