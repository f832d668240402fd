"""``moyaltwist`` command line: star products of expressions and verification suites.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from ..symbolic import ParseError, ThetaMatrix, format_poly, moyal_star, multiparticle_theta, parse_expression
from .config import SUITES, Config, ConfigError, load_config, parse_theta
from .report import write_json
from .suites import run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_VAR = re.compile(r"x(\d+)(?:_(\d+))?")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _nvars(texts, cpp: int) -> int:
    n = 2
    for t in texts:
        for mu, particle in _VAR.findall(t):
            idx = (int(particle) - 1) * cpp + int(mu) if particle else int(mu)
            n = max(n, idx)
    return n


def _pad_theta(theta: ThetaMatrix, n: int) -> ThetaMatrix:
    if theta.dim > n:
        raise ConfigError(f"theta is {theta.dim}x{theta.dim} but the expressions use {n} variables")
    rows = [[theta.entries[r][c] if r < theta.dim and c < theta.dim else 0 for c in range(n)] for r in range(n)]
    return ThetaMatrix(rows)


def cmd_star(args) -> int:
    theta = parse_theta(args.theta if args.theta is not None else "1")
    cpp = args.coords_per_particle
    n = max(_nvars([args.a, args.b], cpp), theta.dim)
    if theta.dim == cpp and any(p for t in (args.a, args.b) for _, p in _VAR.findall(t)):
        # particle aliases: every particle gets the same theta block
        particles = -(-n // cpp)
        theta, n = multiparticle_theta(theta, particles), particles * cpp
    a = parse_expression(args.a, n, args.coords_per_particle)
    b = parse_expression(args.b, n, args.coords_per_particle)
    print(format_poly(moyal_star(a, b, _pad_theta(theta, n))))
    return EXIT_OK


def cmd_parse(args) -> int:
    n = _nvars([args.expr], args.coords_per_particle)
    print(format_poly(parse_expression(args.expr, n, args.coords_per_particle)))
    return EXIT_OK


def _config(args) -> Config:
    cfg = load_config(args.config) if args.config else Config()
    suites = None
    if args.suite:
        suites = tuple(s for chunk in args.suite for s in chunk.replace(",", " ").split())
    theta = None
    if args.theta is not None:
        try:
            theta = Fraction(args.theta)
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"suites take a scalar theta, got {args.theta!r}") from None
    b = None
    if args.b is not None:
        try:
            b = Fraction(args.b)
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"bad value for b: {args.b!r}") from None
    return cfg.with_overrides(
        theta=theta, b=b, modes_file=args.modes, grid_n=args.grid_n, grid_l=args.grid_l, suites=suites,
        output_dir=args.out, seed=args.seed, jobs=args.jobs,
    )


def cmd_run(args) -> int:
    cfg = _config(args)
    if cfg.modes_file and not Path(cfg.modes_file).is_file():
        raise ConfigError(f"cannot read modes file {cfg.modes_file}")
    names = cfg.suite_list
    if cfg.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.jobs, len(names))) as pool:
            reports = list(pool.map(run_suite, names, [cfg] * len(names)))
    else:
        reports = [run_suite(n, cfg) for n in names]
    lines = []
    for r in reports:
        lines.extend(r.summary_lines())
    ok = all(r.passed for r in reports)
    lines.append(f"overall: {'PASS' if ok else 'FAIL'}")
    text = "\n".join(lines)
    print(text)
    if cfg.output_dir:
        out = Path(cfg.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_json(out / "report.json", reports)
        with open(out / "report.json") as fh:
            doc = json.load(fh)
        doc["config"] = cfg.as_dict()
        (out / "report.json").write_text(json.dumps(doc, indent=2))
        (out / "summary.txt").write_text(text + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="moyaltwist", description="Exact and numerical Moyal-twist calculations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("star", help="print the star product of two polynomial expressions")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--theta", help="theta^{12} as a rational, or a matrix 'r11,r12;r21,r22' (default 1)")
    s.add_argument("--coords-per-particle", type=int, default=2)
    s.set_defaults(func=cmd_star)

    q = sub.add_parser("parse", help="print an expression in canonical form")
    q.add_argument("expr")
    q.add_argument("--coords-per-particle", type=int, default=2)
    q.set_defaults(func=cmd_parse)

    r = sub.add_parser("run", help="run verification suites")
    r.add_argument("--suite", action="append", help=f"one of {', '.join(SUITES + ('all',))}; repeatable")
    r.add_argument("--theta", help="scalar theta^{12} (default 1/3)")
    r.add_argument("--b", help="magnetic parameter for the Landau suites (default 1/2)")
    r.add_argument("--modes", help="file with one momentum vector per line")
    r.add_argument("--grid-n", type=int)
    r.add_argument("--grid-l", type=float)
    r.add_argument("--out", help="directory for report.json, summary.txt and CSV tables")
    r.add_argument("--seed", type=int)
    r.add_argument("--jobs", type=int)
    r.add_argument("--config", help="key = value configuration file; flags take precedence")
    r.set_defaults(func=cmd_run)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ConfigError) as exc:
        print(f"moyaltwist: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"moyaltwist: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
