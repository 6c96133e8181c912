"""Print the cycline pairs of every fixture up to a degree bound, with the
aperiodicity verdict.

    python3 scripts/cycline_table.py --bound 3
"""
from __future__ import annotations

import argparse
from collections import Counter

from kpw.cycline import CYCLINE, cycline_pairs_up_to, is_aperiodic
from kpw.fixtures import NAMES, load


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=2)
    ap.add_argument("--depth", type=int, default=6)
    args = ap.parse_args()
    for name in NAMES:
        g, _ = load(name)
        pairs = cycline_pairs_up_to(g, (args.bound,) * g.rank, args.depth)
        counts = Counter(c.verdict.status for c in pairs)
        print(f"{name}: {is_aperiodic(g, args.depth)}")
        print(f"  {len(pairs)} pairs, " + ", ".join(f"{k}: {v}" for k, v in sorted(counts.items())))
        for c in pairs:
            if c.verdict.status == CYCLINE and c.alpha != c.beta:
                print(f"  ({c.alpha}, {c.beta})  {c.verdict.certificate}")


if __name__ == "__main__":
    main()
