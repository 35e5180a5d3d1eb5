"""Command line front end.

Exit codes: 0 success, 1 target not found within the step budget or a
verification failure, 2 usage error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import analytics, equivalence, locator, serialization
from .config import FORMATS, Config, ConfigError, load_config
from .rational import Fraction, SeedPair, parse_fraction
from .tree import ResourceCapError, iter_rows

EXIT_OK = 0
EXIT_NOT_FOUND = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class UsageError(Exception):
    pass


def _seed(text: str) -> SeedPair:
    try:
        return SeedPair.parse(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _fraction(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


def _positive(text: str) -> int:
    n = _nonneg(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None,
                        help="output format (default from config, else text)")
    common.add_argument("--config", default=None,
                        help="key=value config file (overrides $STERNBROCOT_CONFIG)")
    common.add_argument("--depth-cap", type=_positive, default=None)
    common.add_argument("--parallelism", type=_positive, default=None)

    parser = argparse.ArgumentParser(
        prog="sternbrocot",
        description="Exact Stern-Brocot trees with arbitrary starting pairs.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_, allow_abbrev=False)

    p = add("gen", "print rows 0..N of a tree")
    p.add_argument("--seed", type=_seed, required=True, help="a/b,c/d (c/d may be 'inf')")
    p.add_argument("--rows", type=_nonneg, required=True)
    p.add_argument("--show-reductions", action="store_true",
                   help="text format: add a line of reduction factors under each row")

    p = add("locate", "find the first row containing a fraction")
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--target", type=_fraction, required=True)
    p.add_argument("--max-steps", type=_positive, default=None)

    p = add("equiv", "canonical equivalent tree T(0/1, D/V)")
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--verify-depth", type=_nonneg, default=equivalence.DEFAULT_VERIFY_DEPTH)

    p = add("detlist", "adjacent cross-determinants of each row")
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--rows", type=_nonneg, required=True)

    p = add("farey", "Farey sequence of a given order")
    p.add_argument("--order", type=_positive, required=True)

    p = add("approx", "chain of mediants leading to a fraction")
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--target", type=_fraction, required=True)
    p.add_argument("--max-steps", type=_positive, default=None)

    p = add("verify", "run the built-in identity checks")
    p.add_argument("--depth", type=_nonneg, default=10)
    return parser


def _resolve_config(args) -> Config:
    cfg = load_config(args.config)
    return cfg.override(output_format=args.format, depth_cap=args.depth_cap,
                        parallelism=args.parallelism)


def _fraction_list(fracs, fmt: str, key: str) -> str:
    if fmt == "json":
        return serialization.dumps({key: [str(f) for f in fracs]}) + "\n"
    if fmt == "csv":
        return serialization._csv(("index", "num", "den"),
                                  ((i, f.num, f.den) for i, f in enumerate(fracs)))
    return " ".join(str(f) for f in fracs) + "\n"


def cmd_gen(args, cfg: Config, out) -> int:
    rows = iter_rows(args.seed, args.rows, depth_cap=cfg.depth_cap)
    fmt = cfg.output_format
    for row in rows:
        if fmt == "json":
            out.write(serialization.rows_to_jsonl([row]))
        elif fmt == "csv":
            text = serialization.rows_to_csv([row])
            out.write(text if row.depth == 0 else text.split("\n", 1)[1])
        else:
            out.write(serialization.rows_to_text([row], args.show_reductions))
    return EXIT_OK


def _max_steps(args, cfg: Config) -> Optional[int]:
    return args.max_steps if args.max_steps is not None else cfg.default_max_steps


def cmd_locate(args, cfg: Config, out) -> int:
    if not args.seed.contains(args.target):
        raise UsageError(f"target {args.target} is outside [{args.seed.left}, {args.seed.right}]")
    res = locator.locate(args.seed, args.target, _max_steps(args, cfg))
    fmt = cfg.output_format
    if fmt == "json":
        out.write(serialization.dumps(res.to_dict()) + "\n")
    elif fmt == "csv":
        w = res.weights
        xyg = (w.x, w.y, w.g) if w else ("", "", "")
        out.write(serialization._csv(
            ("found", "depth", "index", "path", "x", "y", "g", "steps"),
            [(int(res.found), res.depth, res.index_in_row, "".join(res.path),
              *xyg, res.steps_used)]))
    else:
        if res.found:
            w = res.weights
            out.write(f"found depth={res.depth} index={res.index_in_row} "
                      f"path={''.join(res.path) or '-'} weights=({w.x},{w.y},{w.g}) "
                      f"steps={res.steps_used}\n")
        else:
            b = res.bracket
            out.write(f"not found within {res.steps_used} steps; "
                      f"bracket {b.left} .. {b.right} at depth {b.depth}\n")
    return EXIT_OK if res.found else EXIT_NOT_FOUND


def cmd_equiv(args, cfg: Config, out) -> int:
    canon = equivalence.canonical_seed(args.seed)
    report = equivalence.check_equivalent(args.seed, canon.seed, args.verify_depth,
                                          depth_cap=cfg.depth_cap)
    fmt = cfg.output_format
    if fmt == "json":
        obj = canon.to_dict()
        obj["report"] = report.to_dict()
        out.write(serialization.dumps(obj) + "\n")
    elif fmt == "csv":
        out.write(serialization._csv(
            ("D", "V", "prime_power", "case", "residue", "equivalent", "depth_checked", "fallback"),
            [(canon.D, canon.V, r.to_dict()["prime_power"], r.case, r.residue,
              int(report.equivalent), report.depth_checked, int(canon.fallback_used))
             for r in canon.residues] or
            [(canon.D, canon.V, "", "", "", int(report.equivalent), report.depth_checked,
              int(canon.fallback_used))]))
    else:
        out.write(f"D={canon.D} V={canon.V} canonical=0/1,{canon.D}/{canon.V}\n")
        for r in canon.residues:
            out.write(f"  {r.prime}^{r.exponent}: {r.case} residue {r.residue}\n")
        if canon.fallback_used:
            out.write("  warning: residue construction failed; V found by search\n")
        if report.equivalent:
            out.write(f"equivalent through depth {report.depth_checked} (bounded check)\n")
        else:
            d, i, f1, f2 = report.first_mismatch
            out.write(f"NOT equivalent: depth {d} insertion {i} factors {f1} vs {f2}\n")
    return EXIT_OK


def cmd_detlist(args, cfg: Config, out) -> int:
    fmt = cfg.output_format
    for row in iter_rows(args.seed, args.rows, depth_cap=cfg.depth_cap):
        dl = analytics.det_list(row)
        if fmt == "json":
            out.write(serialization.dumps({"depth": dl.depth, "values": list(dl.values)}) + "\n")
        elif fmt == "csv":
            text = serialization.detlists_to_csv([dl])
            out.write(text if dl.depth == 0 else text.split("\n", 1)[1])
        else:
            out.write(" ".join(map(str, dl.values)) + "\n")
    return EXIT_OK


def cmd_farey(args, cfg: Config, out) -> int:
    out.write(_fraction_list(analytics.farey(args.order), cfg.output_format, "farey"))
    return EXIT_OK


def cmd_approx(args, cfg: Config, out) -> int:
    if not args.seed.contains(args.target):
        raise UsageError(f"target {args.target} is outside [{args.seed.left}, {args.seed.right}]")
    try:
        ladder = locator.approximation_ladder(args.seed, args.target, _max_steps(args, cfg))
    except LookupError as exc:
        print(f"sternbrocot: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    out.write(_fraction_list(ladder, cfg.output_format, "ladder"))
    return EXIT_OK


def cmd_verify(args, cfg: Config, out) -> int:
    results = analytics.verification_suite(args.depth)
    fmt = cfg.output_format
    for r in results:
        if fmt == "json":
            out.write(serialization.dumps({"check": r.name, "passed": r.passed,
                                           "detail": r.detail}) + "\n")
        else:
            out.write(f"{'PASS' if r.passed else 'FAIL'}  {r.name}"
                      f"{'  (' + r.detail + ')' if r.detail else ''}\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_NOT_FOUND


COMMANDS = {
    "gen": cmd_gen,
    "locate": cmd_locate,
    "equiv": cmd_equiv,
    "detlist": cmd_detlist,
    "farey": cmd_farey,
    "approx": cmd_approx,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = _resolve_config(args)
        return COMMANDS[args.command](args, cfg, out)
    except (UsageError, ConfigError) as exc:
        print(f"sternbrocot: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print(f"sternbrocot: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
