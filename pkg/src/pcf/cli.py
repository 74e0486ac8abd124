"""Command-line entry point.

    pcf verify-lemmas|sweep-estimates|picard|appendix-b|gamma-trace
        [--config FILE] [--delta R] [--out DIR] [--seed N]
        [--ceiling NAME=R] [--jobs N]

Exit codes: 0 all checks passed, 1 a check failed, 2 configuration
error, 3 internal error.  PCF_OUT sets the default output directory.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ConfigError, PcfError
from .harness import COMMANDS, CampaignConfig, parse_config_file, run_command


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pcf",
                                description="quasiclassical verification "
                                            "campaigns for the Weber family")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="flat key = value config file")
        sp.add_argument("--delta", type=float)
        sp.add_argument("--out", help="output directory (default $PCF_OUT)")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--jobs", type=int)
        sp.add_argument("--ceiling", action="append", default=[],
                        metavar="NAME=R", help="override one ceiling")
        sp.add_argument("--lambda-grid", dest="lambda_grid",
                        help="space-separated modulus:arg pairs (radians)")
        sp.add_argument("--variants", help="comma list from 0,+,-,*")
        sp.add_argument("--x-max", dest="x_max", type=float)
        sp.add_argument("--x-count", dest="x_count", type=int)
    return p


def _build_config(args) -> CampaignConfig:
    kwargs: dict = {}
    if args.config:
        kwargs.update(parse_config_file(args.config))
    if args.delta is not None:
        kwargs["delta"] = args.delta
    if args.out:
        kwargs["output_dir"] = args.out
    if args.seed is not None:
        kwargs["seed"] = args.seed
    if args.jobs is not None:
        kwargs["jobs"] = args.jobs
    if args.x_max is not None:
        kwargs["x_max"] = args.x_max
    if args.x_count is not None:
        kwargs["x_count"] = args.x_count
    if args.lambda_grid:
        grid = []
        for tok in args.lambda_grid.split():
            m, a = tok.split(":")
            grid.append((float(m), float(a)))
        kwargs["lambda_grid"] = tuple(grid)
    if args.variants:
        kwargs["variants"] = tuple(v.strip() for v in args.variants.split(","))
    for item in args.ceiling:
        if "=" not in item:
            raise ConfigError(f"--ceiling expects NAME=R, got {item!r}")
        name, val = item.split("=", 1)
        kwargs.setdefault("ceilings", {})
        base = kwargs.get("ceilings")
        from .harness import DEFAULT_CEILINGS
        merged = dict(DEFAULT_CEILINGS)
        merged.update(base)
        merged[name] = float(val)
        kwargs["ceilings"] = merged
    return CampaignConfig(command=args.command, **kwargs)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _build_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        manifest, code = run_command(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except PcfError as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    for check in manifest.checks:
        obs = check["observed"]
        extra = "" if obs is None else f"  observed={obs:.6g}"
        lim = check["limit"]
        if lim is not None:
            extra += f" limit={lim:.6g}"
        print(f"[{check['status'].upper():4s}] {check['name']}{extra}")
    print(f"artifacts in {cfg.output_dir}")
    return code


if __name__ == "__main__":
    sys.exit(main())
