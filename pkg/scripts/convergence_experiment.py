#!/usr/bin/env python3
"""Convergence of normalized discrete measures to the continuous limit.

Writes one JSON report per height: L1 distance of the binned normalized
(dinv, area) measure to the reference pushforward, for each m in the list.

    python scripts/convergence_experiment.py --n 4 --m-list 1 2 3 5 10 25 50
"""

import argparse
import json

from qtcatalan.measure import convergence_report


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--m-list", type=int, nargs="+", default=[1, 2, 3, 5, 10, 25, 50])
    ap.add_argument("--grid", type=int, default=60)
    ap.add_argument("--samples", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    report = convergence_report(
        args.n,
        args.m_list,
        resolution=(args.grid, args.grid),
        mc_count=args.samples,
        seed=args.seed,
    )
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")


if __name__ == "__main__":
    main()
