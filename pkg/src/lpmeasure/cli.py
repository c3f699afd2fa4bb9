"""Command-line front end.

Subcommands::

    lpmeasure norm --measure 'delta(0)' --p 1
    lpmeasure norm --measure 'cantor' --p 1.2 --restrict 0.25,0.5
    lpmeasure transform --measure 'gauss(0,1)' --y=-4,4,9
    lpmeasure suite hy --cases 100 --seed 7
    lpmeasure suite all --config desk.cfg

Exit codes: 0 pass, 1 failures present, 2 configuration or parse error,
3 numerical-integrity error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import RunConfig, load_config
from .errors import NumericalIntegrityError, PreconditionError, SpecParseError
from .grid import GridSpec
from .norms import _json_float, restricted_star_norm, star_norm
from .parsing import parse_interval, parse_measure
from .suites import SUITES, dumps, run_all, run_suite
from .transforms import fourier_stieltjes

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _exponent(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return float("inf")
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad exponent {text!r}") from None


def _ygrid(text: str) -> GridSpec:
    try:
        a, b, n = text.split(",")
        return GridSpec.linspace(float(a), float(b), int(n))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'start,stop,points', got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="lpmeasure", description="Star norms of measures and suites of Fourier inequalities.")
    ap.add_argument("--config", help="flat key = value configuration file")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    n = sub.add_parser("norm", help="star norm of a measure, JSON on stdout")
    n.add_argument("--measure", required=True, help="measure description, e.g. 'sum[0.5*delta(0), gauss(1,2)]'")
    n.add_argument("--p", type=_exponent, default=1.0)
    n.add_argument("--restrict", help="interval union 'a,b' or 'a,b;c,d'")

    t = sub.add_parser("transform", help="Fourier-Stieltjes samples as CSV (y, re, im, abs)")
    t.add_argument("--measure", required=True)
    t.add_argument("--y", type=_ygrid, default=GridSpec.linspace(-4.0, 4.0, 81), help="start,stop,points")

    s = sub.add_parser("suite", help="run a verification suite, JSON report to the output directory")
    s.add_argument("name", choices=SUITES + ("all",))
    s.add_argument("--cases", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--workers", type=int)
    s.add_argument("--output", help="output directory (overridden by LPMEASURE_OUTPUT_DIR)")
    s.add_argument("--stdout", action="store_true", help="also print the full JSON report")
    return ap


def _config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    changes = {k: getattr(args, k, None) for k in ("cases", "seed", "workers")}
    if getattr(args, "output", None):
        changes["output_dir"] = args.output
    try:
        return cfg.replace(**{k: v for k, v in changes.items() if v is not None})
    except ValueError as exc:
        raise SpecParseError(str(exc), 0, 0) from None


def cmd_norm(args, cfg: RunConfig) -> int:
    mu = parse_measure(args.measure)
    if args.restrict:
        res = restricted_star_norm(mu, args.p, parse_interval(args.restrict), cfg.norm_config())
    else:
        res = star_norm(mu, args.p, cfg.norm_config())
    out = res.to_dict()
    out.update(measure=args.measure, p=_json_float(args.p), config_digest=cfg.digest(), seed=cfg.seed)
    print(json.dumps(out, sort_keys=True))
    return EXIT_OK


def cmd_transform(args, cfg: RunConfig) -> int:
    res = fourier_stieltjes(parse_measure(args.measure), args.y)
    sys.stdout.write(res.to_csv())
    return EXIT_OK


def cmd_suite(args, cfg: RunConfig) -> int:
    result = run_all(cfg) if args.name == "all" else run_suite(args.name, cfg)
    text = dumps(result)
    out_dir = cfg.resolved_output_dir()
    out_dir.mkdir(parents=True, exist_ok=True)
    path = Path(out_dir) / f"{args.name}-seed{cfg.seed}.json"
    path.write_text(text + "\n")
    summary = result["summary"]
    if args.stdout:
        print(text)
    else:
        print(json.dumps({"suite": args.name, "seed": cfg.seed, "config_digest": cfg.digest(),
                          "report": str(path), "summary": summary}, sort_keys=True, indent=1))
    return EXIT_FAIL if summary["fail"] else EXIT_OK


COMMANDS = {"norm": cmd_norm, "transform": cmd_transform, "suite": cmd_suite}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except SpecParseError as exc:
        print(f"lpmeasure: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (PreconditionError, OSError) as exc:
        print(f"lpmeasure: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalIntegrityError as exc:
        print(f"lpmeasure: numerical integrity: {exc}", file=sys.stderr)
        print(json.dumps({"diagnostics": getattr(exc, "diagnostics", {})}, sort_keys=True, default=str),
              file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
