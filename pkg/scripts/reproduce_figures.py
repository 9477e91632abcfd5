"""Run all four figure presets and print where each CSV landed.

    RELAYCAP_THREADS=8 python3 scripts/reproduce_figures.py --trials 100000 --out results
"""

import argparse
import sys

from relaycap.cli import PRESETS, main


def run():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=None)
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--out", default="results")
    args = ap.parse_args()
    for name in PRESETS:
        argv = ["preset", name, "--out", args.out, "--quiet"]
        if args.trials:
            argv += ["--trials", str(args.trials)]
        if args.seed is not None:
            argv += ["--seed", str(args.seed)]
        code = main(argv)
        if code:
            sys.exit(code)


if __name__ == "__main__":
    run()
