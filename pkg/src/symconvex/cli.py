"""Command line entry point: ``symconvex verify ...``."""
from __future__ import annotations

import argparse
import logging
import sys

from .verifier import (
    CHECKS, EXIT_NUMERICAL, VerificationConfig, export, load_config_file, parse_config_value,
    run_verification,
)

# CLI dest -> config key
_FLAGS = {
    "preset": "preset", "n": "n", "p": "p", "q": "q", "base_point": "base_point",
    "samples": "samples", "scale": "scale", "seed": "seed", "tol": "tol", "window": "window",
    "checks": "checks", "out": "out_path", "format": "format", "jobs": "jobs",
    "probes": "probes", "local_radius": "local_radius", "record_samples": "record_samples",
}


def build_parser():
    parser = argparse.ArgumentParser(prog="symconvex")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="sample Phi and check it against conv(W.X) + Gamma")
    v.add_argument("--config", help="flat key = value file; flags override it")
    v.add_argument("--preset", choices=("compact", "split", "supq"))
    v.add_argument("--n", type=int)
    v.add_argument("--p", type=int)
    v.add_argument("--q", type=int)
    v.add_argument("--base-point", dest="base_point", help='comma separated, e.g. "2,1"')
    v.add_argument("--samples", type=int)
    v.add_argument("--scale", type=float)
    v.add_argument("--seed", type=int)
    v.add_argument("--tol", type=float)
    v.add_argument("--window", type=float)
    v.add_argument("--checks", help="comma separated subset of " + ",".join(CHECKS))
    v.add_argument("--out")
    v.add_argument("--format", choices=("json", "csv"))
    v.add_argument("--jobs", type=int)
    v.add_argument("--probes", type=int)
    v.add_argument("--local-radius", dest="local_radius", type=float)
    v.add_argument("--record-samples", dest="record_samples", action="store_const", const="true")
    v.add_argument("-v", "--verbose", action="store_true")
    return parser


def config_from_args(args):
    values = load_config_file(args.config) if args.config else {}
    for dest, key in _FLAGS.items():
        raw = getattr(args, dest, None)
        if raw is not None:
            values.update([parse_config_value(key, raw)])
    return VerificationConfig(**values)


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
    except (ValueError, OSError) as exc:
        print(f"symconvex: {exc}", file=sys.stderr)
        return 1
    try:
        report = run_verification(cfg)
    except ValueError as exc:
        print(f"symconvex: {exc}", file=sys.stderr)
        return 1
    except ArithmeticError as exc:
        print(f"symconvex: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    for line in report.summary_lines():
        print(line)
    if cfg.out_path:
        for path in export(report, cfg.out_path, cfg.format):
            print(f"wrote {path}")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
