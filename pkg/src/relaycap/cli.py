"""Command-line entry point: ``relaycap sweep|preset|validate``.

Exit codes: 0 success, 1 failed validation check, 2 invalid configuration,
3 numerical failure.
"""

import argparse
from importlib import resources
import sys

from . import validation
from .config import ConfigError, load_config, parse_config, with_overrides
from .montecarlo import THREADS_ENV
from .sweep import evaluate, write_outputs

PRESETS = ("figure1", "figure2", "figure3", "figure4")

EXIT_OK, EXIT_CHECK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


def load_preset(name):
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {PRESETS}")
    text = resources.files("relaycap").joinpath("presets", f"{name}.yaml").read_text(encoding="utf-8")
    return parse_config(text)


def _run_sweep(cfg, out_dir, threads, quiet):
    def progress(row):
        if not quiet:
            print(" ".join(f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}" for k, v in row.items()),
                  file=sys.stderr)

    cols, rows = evaluate(cfg, threads=threads, progress=progress)
    for path in write_outputs(cfg, cols, rows, out_dir):
        print(path)


def _numeric_context(exc):
    tb = exc.__traceback__
    module = "relaycap"
    while tb is not None:
        name = tb.tb_frame.f_globals.get("__name__", "")
        if name.startswith("relaycap."):
            module = name
        tb = tb.tb_next
    return f"numerical failure in {module}: {type(exc).__name__}: {exc}"


def build_parser():
    parser = argparse.ArgumentParser(prog="relaycap", description=__doc__.splitlines()[0])
    parser.add_argument("--threads", type=int, default=None,
                        help=f"worker threads (default: ${THREADS_ENV} or the CPU count)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run a sweep described by a YAML config")
    p.add_argument("config")
    p.add_argument("--out", default="results")
    p.add_argument("--quiet", action="store_true")

    p = sub.add_parser("preset", help="run a shipped figure preset")
    p.add_argument("name", choices=PRESETS)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default="results")
    p.add_argument("--no-plot", action="store_true")
    p.add_argument("--quiet", action="store_true")

    p = sub.add_parser("validate", help="run the oracle suite and write a report")
    p.add_argument("--quick", action="store_true", help="reduced trial counts")
    p.add_argument("--out", default="validation_report.txt")
    p.add_argument("--only", action="append", default=None,
                   choices=[name for name, _ in validation.SUITE])
    p.add_argument("--perturb-theta", type=float, default=0.0, help=argparse.SUPPRESS)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.threads is not None and args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "sweep":
            _run_sweep(load_config(args.config), args.out, args.threads, args.quiet)
        elif args.command == "preset":
            cfg = load_preset(args.name)
            if args.trials is not None and args.trials < 1:
                raise ConfigError("must be positive", "--trials")
            if args.seed is not None and args.seed < 0:
                raise ConfigError("must be non-negative", "--seed")
            cfg = with_overrides(cfg, trials=args.trials, seed=args.seed, plot=False if args.no_plot else None)
            _run_sweep(cfg, args.out, args.threads, args.quiet)
        else:
            budget = validation.QUICK if args.quick else validation.FULL
            checks = validation.run_suite(budget, progress=lambda c: print(c.line(), file=sys.stderr),
                                          only=args.only, perturb_theta=args.perturb_theta)
            text = validation.report(checks, budget)
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
            print(args.out)
            failed = [c for c in checks if not c.passed]
            if failed:
                for c in failed:
                    print(f"failed: {c.criterion} {c.name}", file=sys.stderr)
                return EXIT_CHECK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, ArithmeticError, FloatingPointError) as exc:
        print(_numeric_context(exc), file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
