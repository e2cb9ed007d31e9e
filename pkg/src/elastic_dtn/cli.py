"""Command line entry point: ``elastic-dtn <experiment> [options]``."""
from __future__ import annotations

import argparse
import sys

from . import harness


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="elastic-dtn", description="Run a validation experiment and write CSV/JSON reports.")
    p.add_argument("experiment", choices=sorted(harness.EXPERIMENTS))
    p.add_argument("--config", help="JSON config; defaults are used when omitted")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (non-negative 64-bit integer)")
    p.add_argument("--out", default="results", help="output directory")
    p.add_argument("--threads", type=int, default=1, help="worker threads over grid points")
    p.add_argument("--orientation", choices=["inward", "outward"], default="inward",
                   help="normal used for the traction")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if not 0 <= args.seed < 2 ** 64:
        print("error: seed must be a 64-bit unsigned integer", file=sys.stderr)
        return 2
    try:
        cfg = harness.load_config(args.config) if args.config else {}
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    fn = harness.EXPERIMENTS[args.experiment]
    kw = {}
    if args.experiment in ("oracle-halfspace", "converge-disk", "eikonal-residual"):
        kw["threads"] = args.threads
    if args.experiment in ("oracle-halfspace", "converge-disk"):
        kw["orientation"] = args.orientation
    rep = fn(cfg, seed=args.seed, **kw)
    for line in rep.lines():
        print(line)
    for path in harness.write_report(rep, args.out):
        print(f"wrote {path}")
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
