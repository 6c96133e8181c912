"""Run the uniqueness harness on the shipped families and on the identity
representation of each fixture.

    python3 scripts/uniqueness_report.py --seed 0
"""
from __future__ import annotations

import argparse

from kpw.fixtures import NAMES, load, load_family
from kpw.uniqueness import UniversalRepresentation, uniqueness_check

FAMILIES = (("G4", "G4_units"), ("G1", "G1_swap"), ("G2", "G2_scalar"))


def show(title, rep):
    print(title)
    print(f"  {rep.summary()}")
    for k in rep.kernel:
        print(f"    {k.element}  ->  m = {k.m}")
    print(f"  aperiodic: {rep.aperiodic}; corollary: {rep.corollary}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=50)
    args = ap.parse_args()
    for name, fam_name in FAMILIES:
        g, _ = load(name)
        fam = load_family(fam_name, g)
        check = fam.validate(g)
        if not check.valid:
            print(f"{fam_name}: rejected: {check}\n")
            continue
        show(f"{fam_name}:", uniqueness_check(fam, g, samples=args.samples, seed=args.seed))
        print()
    for name in NAMES:
        g, R = load(name)
        show(f"{name} identity:", uniqueness_check(UniversalRepresentation(g, R), g,
                                                   samples=args.samples, seed=args.seed))


if __name__ == "__main__":
    main()
