"""Command line front end.

    webcat normalize --expr "split(1,1);merge(1,1)"
    webcat dim --source 1,1 --target 1,1 --level 2
    webcat check --suite relations --max-size 3

Everything printed on stdout is JSON except the ``check`` report.
Exit codes: 0 ok, 1 parse or usage error, 2 boundary mismatch,
3 suite failure, 4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .combinatorics import composition
from .diagram import BoundaryError, ParseError, parse
from .normalizer import (
    LevelParams,
    NormalizationError,
    RingError,
    cyclotomic_normalize,
    enumerate_cfds,
    graded_dimension,
    multiply_normal,
    normalize,
)
from .rep_oracle import OracleError, oracle_normalize
from .suites import SUITES, run_suite

EXIT_PARSE, EXIT_BOUNDARY, EXIT_SUITE, EXIT_INTERNAL = 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 is reserved for boundary errors here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _comp(text: str) -> tuple[int, ...]:
    try:
        parts = [int(x) for x in text.split(",") if x.strip()]
        return composition(parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad composition {text!r}: {exc}") from None


def _rationals(text: str) -> tuple:
    try:
        return tuple(Fraction(x.strip()) for x in text.split(",") if x.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals p/q, got {text!r}") from None


def _level(args) -> LevelParams | None:
    if args.level is None:
        if args.u is not None:
            raise UsageError("--u needs --level")
        return None
    if args.level < 1:
        raise UsageError("--level must be positive")
    u = args.u if args.u is not None else (0,) * args.level
    if len(u) != args.level:
        raise UsageError(f"--u has {len(u)} entries, level is {args.level}")
    return LevelParams.of(u)


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _nf_obj(nf) -> dict:
    return json.loads(nf.to_json())


# ---- verbs ----

def cmd_normalize(args, out) -> int:
    m = parse(args.expr)
    L = _level(args)
    nf = cyclotomic_normalize(m, L, ring=args.ring) if L else normalize(m, ring=args.ring)
    out.write(nf.to_json() + "\n")
    return 0


def cmd_basis(args, out) -> int:
    L = _level(args)
    if L is None and args.max_degree is None:
        raise UsageError("basis needs --max-degree or --level")
    cfds = enumerate_cfds(args.source, args.target, max_degree=args.max_degree, level=L and L.ell)
    out.write("[\n")
    for n, E in enumerate(cfds):
        sep = "," if n + 1 < len(cfds) else ""
        out.write(json.dumps(E.to_json(), separators=(",", ":")) + sep + "\n")
    out.write("]\n")
    return 0


def cmd_dim(args, out) -> int:
    L = _level(args)
    if L is None and args.max_degree is None:
        raise UsageError("dim needs --max-degree or --level")
    counts = graded_dimension(args.source, args.target, args.max_degree, level=L and L.ell)
    _emit({
        "source": list(args.source),
        "target": list(args.target),
        "level": L and L.ell,
        "max_degree": args.max_degree,
        "by_degree": counts,
        "total": sum(counts),
    }, out)
    return 0


def cmd_compose(args, out) -> int:
    lower = normalize(parse(args.lhs), ring=args.ring)
    upper = normalize(parse(args.rhs), ring=args.ring)
    if lower.target != upper.source:
        raise BoundaryError(f"{args.lhs!r} ends at {lower.target}, {args.rhs!r} starts at {upper.source}")
    out.write(multiply_normal(upper, lower).to_json() + "\n")
    return 0


def cmd_oracle_compare(args, out) -> int:
    m = parse(args.expr)
    nf = normalize(m, ring="Q")
    on = oracle_normalize(m, seed=args.seed)
    same = nf == on
    _emit({"normalize": _nf_obj(nf), "oracle": _nf_obj(on), "equal": same}, out)
    return 0 if same else EXIT_INTERNAL


def cmd_check(args, out) -> int:
    rep = run_suite(args.suite, args.max_size, seed=args.seed)
    for line in rep.lines:
        out.write(line + "\n")
    out.write(rep.summary() + "\n")
    return 0 if rep.passed else EXIT_SUITE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="webcat", description="Normal forms and checks for dotted web diagrams.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def ring(sp):
        sp.add_argument("--ring", choices=("Z", "Q"), default="Z")

    def level(sp):
        sp.add_argument("--level", type=int)
        sp.add_argument("--u", type=_rationals, help="cyclotomic parameters u1,...,u_level")

    sp = sub.add_parser("normalize", help="normal form of a diagram expression")
    sp.add_argument("--expr", required=True)
    ring(sp)
    level(sp)
    sp.set_defaults(run=cmd_normalize)

    for verb, fn, text in (("basis", cmd_basis, "list basis diagrams"),
                           ("dim", cmd_dim, "graded dimension table")):
        sp = sub.add_parser(verb, help=text)
        sp.add_argument("--source", type=_comp, required=True)
        sp.add_argument("--target", type=_comp, required=True)
        sp.add_argument("--max-degree", type=int)
        level(sp)
        sp.set_defaults(run=fn)

    sp = sub.add_parser("compose", help="normal form of lhs followed by rhs")
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)
    ring(sp)
    sp.set_defaults(run=cmd_compose)

    sp = sub.add_parser("oracle-compare", help="rewrite engine against the representation")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(run=cmd_oracle_compare)

    sp = sub.add_parser("check", help="run a verification suite")
    sp.add_argument("--suite", choices=SUITES, required=True)
    sp.add_argument("--max-size", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(run=cmd_check)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.run(args, out)
    except (UsageError, ParseError, RingError) as exc:
        err.write(f"webcat: error: {exc}\n")
        return EXIT_PARSE
    except BoundaryError as exc:
        err.write(f"webcat: boundary error: {exc}\n")
        return EXIT_BOUNDARY
    except (OracleError, NormalizationError) as exc:
        err.write(f"webcat: internal inconsistency: {exc}\n")
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


__all__ = ["run", "main", "build_parser"]
