"""Command-line frontend: ``python3 -m qschub <command> ...``.

Exit codes: 0 success, 1 unreadable input, 2 violated precondition,
3 failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .bases import BasisExpansion, forest_expand, gessel_coeffs, lr_coeff, lr_via_word, schubert_expand
from .divsym import ds_direct, ds_factorized, qds_direct, qds_factorized
from .errors import ParseError, PreconditionError, VerificationError
from .forest import MarkedNestedForest, parse_forest
from .gz import hhmp_locate
from .ops import format_word, parse_word
from .perm import Permutation, uv_of
from .poly import format_poly, parse
from .rtword import format_matrix, star_matrix, trim_set, validate_rtseq_n
from .verify import SUITES, VerifyConfig, run_suite

EXIT_PARSE, EXIT_PRECONDITION, EXIT_VERIFY = 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _rationals(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(v) for v in text.replace(",", " ").split())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"cannot read a list of rationals from {text!r}") from None


def _word(text: str):
    word = parse_word(text)
    if not word:
        raise ParseError("empty word")
    return validate_rtseq_n(word, len(word))


# commands: each returns (text, json-able payload) -----------------------------

def cmd_expand(args):
    f = parse(args.f)
    if f.nvars > args.n:
        raise PreconditionError(f"polynomial uses variables beyond x{args.n}")
    if args.basis == "schubert":
        exp = schubert_expand(f)
    elif args.basis == "forest":
        exp = forest_expand(f)
    else:
        exp = BasisExpansion("fundamental", gessel_coeffs(f, args.n))
    return str(exp), json.loads(exp.to_json())


def cmd_ds(args):
    f = parse(args.f)
    direct, factorized = (qds_direct, qds_factorized) if args.q else (ds_direct, ds_factorized)
    modes = ["direct", "factorized"] if args.mode == "both" else [args.mode]
    values = {}
    for mode in modes:
        fn = direct if mode == "direct" else factorized
        values[mode] = format_poly(fn(f, args.n))
    if args.mode == "both" and values["direct"] != values["factorized"]:
        raise VerificationError(f"direct {values['direct']} != factorized {values['factorized']}")
    return "\n".join(values[m] for m in modes), {"q": args.q, "values": values}


def cmd_lr(args):
    w = Permutation.parse(args.w)
    if args.word is not None:
        word = _word(args.word)
        c = lr_via_word(word, w)
        return str(c), {"word": format_word(word), "w": str(w), "value": c}
    if args.u is None or args.v is None:
        raise ParseError("lr needs -u and -v, or --word")
    u, v = Permutation.parse(args.u), Permutation.parse(args.v)
    c = lr_coeff(u, w, v)
    return str(c), {"u": str(u), "w": str(w), "v": str(v), "value": c}


def cmd_trim(args):
    F = parse_forest(args.forest)
    if isinstance(F, MarkedNestedForest):
        F = F.forget_marks()
    words = [format_word(w) for w in trim_set(F, args.n)]
    return "\n".join(words), {"forest": str(F), "n": args.n, "words": words}


def cmd_uv(args):
    word = _word(args.word)
    u, v = uv_of(word)
    n = len(word)
    us = "".join(map(str, u.window(n))) if n < 10 else ",".join(map(str, u.window(n)))
    vs = "".join(map(str, v.window(n))) if n < 10 else ",".join(map(str, v.window(n)))
    return f"u={us} v={vs}", {"word": format_word(word), "u": us, "v": vs}


def cmd_matrix(args):
    word = _word(args.word)
    M = star_matrix(word)
    return format_matrix(M), {"word": format_word(word), "rows": ["".join(r) for r in M]}


def cmd_locate(args):
    lam = _rationals(args.lam)
    z = _rationals(args.point)
    word = format_word(hhmp_locate(z, lam))
    return word, {"lambda": [str(v) for v in lam], "point": [str(v) for v in z], "word": word}


def cmd_gessel(args):
    exp = BasisExpansion("fundamental", gessel_coeffs(parse(args.f), args.n))
    return str(exp), json.loads(exp.to_json())


def cmd_verify(args):
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    cfg = VerifyConfig(max_n=args.max_n, seed=args.seed, max_vars=max(3, min(args.max_n + 1, 6)))
    results = [run_suite(name, cfg) for name in names]
    text = "\n".join(r.summary() for r in results)
    payload = [{"suite": r.name, "ok": r.ok, "checks": r.checks, "counterexamples": r.failures} for r in results]
    if not all(r.ok for r in results):
        raise VerificationError(text)
    return text, payload


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON instead of text")
    p = _Parser(prog="qschub", description="Quasisymmetric Schubert calculus toolkit.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("expand", parents=[common], help="expand a polynomial in a basis")
    s.add_argument("--basis", choices=["schubert", "forest", "fundamental"], required=True)
    s.add_argument("-f", required=True, help="polynomial, e.g. 'x1^2*x2 - 3*x3'")
    s.add_argument("-n", type=int, required=True)
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("ds", parents=[common], help="divided symmetrization")
    s.add_argument("-q", action="store_true", help="use the q-deformation")
    s.add_argument("-f", required=True)
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--mode", choices=["direct", "factorized", "both"], default="direct")
    s.set_defaults(func=cmd_ds)

    s = sub.add_parser("lr", parents=[common], help="Littlewood-Richardson style coefficients")
    s.add_argument("-u")
    s.add_argument("-w", required=True)
    s.add_argument("-v")
    s.add_argument("--word")
    s.set_defaults(func=cmd_lr)

    s = sub.add_parser("trim", parents=[common], help="words of a nested forest")
    s.add_argument("--forest", required=True, help="'c=(1,0,2)' or '{1,3}:^.. {4,5}:^..'")
    s.add_argument("-n", type=int, required=True)
    s.set_defaults(func=cmd_trim)

    for name, func, text in (("uv", cmd_uv, "Bruhat interval of a word"), ("matrix", cmd_matrix, "star matrix of a word")):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("--word", required=True, help="e.g. 'r1 t1 t2 t1 r2'")
        s.set_defaults(func=func)

    s = sub.add_parser("locate", parents=[common], help="face of the cube subdivision containing a point")
    s.add_argument("--lambda", dest="lam", required=True, help="strictly decreasing, e.g. '5,3,1'")
    s.add_argument("--point", required=True, help="e.g. '3,7/2,5/2'")
    s.set_defaults(func=cmd_locate)

    s = sub.add_parser("gessel", parents=[common], help="fundamental expansion of a quasisymmetric polynomial")
    s.add_argument("-f", required=True)
    s.add_argument("-n", type=int, required=True)
    s.set_defaults(func=cmd_gessel)

    s = sub.add_parser("verify", parents=[common], help="run a brute-force verification suite")
    s.add_argument("suite", choices=sorted(SUITES) + ["all"])
    s.add_argument("--max-n", type=int, default=4)
    s.add_argument("--seed", type=int, default=7)
    s.set_defaults(func=cmd_verify)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        text, payload = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_PARSE
    except VerificationError as exc:
        print(f"verification failed:\n{exc}", file=err)
        return EXIT_VERIFY
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=err)
        return EXIT_PRECONDITION
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True), file=out)
    else:
        print(text, file=out)
    return 0


def main() -> None:
    sys.exit(run())
