#!/usr/bin/env python3
"""Empirical invariance of the uniform polytope measure under the sorting
transform, across a range of heights.

    python scripts/preservation_experiment.py --n 3 4 5 --samples 1000000
"""

import argparse
import json

from qtcatalan.measure import measure_preservation_check


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--samples", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--resolution", type=int, default=10)
    args = ap.parse_args()

    for n in args.n:
        rep = measure_preservation_check(
            n, count=args.samples, seed=args.seed, resolution=args.resolution
        )
        print(json.dumps(rep, indent=2))


if __name__ == "__main__":
    main()
