"""Command-line front end.

Exit codes: 0 ok, 1 usage, 2 domain/validation, 3 mismatch, 4 resource/precision.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import classpoly, ffpoly
from .discriminant import fundamental_discriminants, make_fundamental
from .errors import ClassLawError, DomainError
from .genus import predict
from .lawcheck import MISMATCH, ClassPolyCache, density_experiment, get_class_poly, sweep, verify_one
from .numtheory import kronecker
from .quadforms import class_group

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_MISMATCH, EXIT_RESOURCE = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Output:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout

    def emit(self, command: str, inputs: dict, result, human: List[str]):
        if self.as_json:
            rec = {"command": command, "inputs": inputs, "result": result}
            self.stream.write(json.dumps(rec, separators=(",", ":")) + "\n")
        else:
            for line in human:
                self.stream.write(line + "\n")


def _cache(args) -> ClassPolyCache:
    path = args.cache_dir or os.environ.get("CLASSLAW_CACHE_DIR") or "./hd_cache"
    return ClassPolyCache(path)


def cmd_symbol(args, out: _Output) -> int:
    value = kronecker(args.a, args.n)
    out.emit("symbol", {"a": args.a, "n": args.n}, value, [str(value)])
    return EXIT_OK


def cmd_classgroup(args, out: _Output) -> int:
    fd = make_fundamental(args.D)
    cg = class_group(fd)
    forms = [list(f) for f in cg]
    stars = [[s.q, s.qstar] for s in fd.stars]
    result = {"h": cg.h, "t": fd.t, "N": fd.N, "forms": forms, "stars": stars}
    human = [
        f"D {fd.D}",
        f"h {cg.h}",
        f"t {fd.t}",
        "forms " + " ".join(str(f) for f in cg),
        "stars " + " ".join(f"({s.q},{s.qstar})" for s in fd.stars),
    ]
    out.emit("classgroup", {"D": args.D}, result, human)
    return EXIT_OK


def cmd_hilbert(args, out: _Output) -> int:
    P = get_class_poly(args.D, _cache(args), max_bits=args.max_bits)
    result = {"coeffs": [str(c) for c in P.coeffs], "poly": str(P)}
    out.emit("hilbert", {"D": args.D}, result, [str(P)])
    return EXIT_OK


def cmd_predict(args, out: _Output) -> int:
    pred = predict(args.D, args.p)
    line = f"{pred.case_tag}: {pred.pattern}"
    if pred.f_used is not None:
        line += f" (f={pred.f_used})"
    out.emit("predict", {"D": args.D, "p": args.p}, pred.to_json(), [line])
    return EXIT_OK


def cmd_verify(args, out: _Output) -> int:
    cache = _cache(args)
    if args.sweep is not None:
        dmin, dmax, pmax = args.sweep
        fds = fundamental_discriminants(dmin, dmax)
        res = sweep(fds, pmax, cache, workers=args.workers)
        human = [
            f"total: {res.total}",
            f"matches: {res.matches}",
            f"mismatches: {res.mismatches}",
            f"skips: {res.skips} (ramified {res.skipped_ramified}, nonsquarefree {res.skipped_nonsquarefree})",
        ]
        human += [f"mismatch D={r.D} p={r.p}: predicted {r.prediction.pattern}, actual {r.actual}"
                  for r in res.mismatch_reports]
        out.emit("verify", {"sweep": [dmin, dmax, pmax]}, res.to_json(), human)
        return EXIT_MISMATCH if res.mismatches else EXIT_OK
    if args.D is None or args.p is None:
        raise _UsageError("verify needs D p, or --sweep DMIN DMAX PMAX")
    rep = verify_one(args.D, args.p, cache)
    if rep.prediction is not None:
        line = f"{rep.status}: predicted {rep.prediction.pattern}, actual {rep.actual}"
    else:
        line = rep.status
    out.emit("verify", {"D": args.D, "p": args.p}, rep.to_json(), [line])
    return EXIT_MISMATCH if rep.status == MISMATCH else EXIT_OK


def cmd_factor(args, out: _Output) -> int:
    fd = make_fundamental(args.D)
    if fd.D % args.p == 0:
        raise DomainError(f"p={args.p} is ramified in discriminant {fd.D}")
    f = ffpoly.reduce_mod(get_class_poly(fd, _cache(args), max_bits=args.max_bits), args.p)
    if not ffpoly.is_squarefree(f):
        raise DomainError(f"H_D mod {args.p} is not squarefree")
    factors = ffpoly.factor_squarefree(f, seed=args.seed)
    rts = ffpoly.roots(f, seed=args.seed)
    result = {"factors": [str(g) for g in factors], "roots": rts, "pattern": str(ffpoly.ddf(f))}
    human = [f"({g})" for g in factors] + ["roots " + " ".join(map(str, rts))]
    out.emit("factor", {"D": args.D, "p": args.p}, result, human)
    return EXIT_OK


def cmd_density(args, out: _Output) -> int:
    rep = density_experiment(args.D, args.xmax, _cache(args), workers=args.workers)
    human = [
        f"D {rep.D}",
        f"primes tested: {rep.primes_tested} (skipped {rep.skipped})",
        f"primes with root: {rep.primes_with_root}",
        f"theoretical: {rep.theoretical}",
        f"empirical: {float(rep.empirical):.6f}",
        f"deviation: {rep.abs_deviation:.6f}",
    ]
    if rep.disagreements:
        human.append(f"predictor/root disagreements: {rep.disagreements}")
    out.emit("density", {"D": args.D, "xmax": args.xmax}, rep.to_json(), human)
    return EXIT_MISMATCH if rep.disagreements else EXIT_OK


class _UsageError(Exception):
    pass


def _add_common(parser, suppress: bool) -> None:
    # Subcommand copies use SUPPRESS so they never clobber values given before the subcommand.
    def d(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--json", action="store_true", default=d(False), help="newline-delimited JSON output")
    parser.add_argument("--cache-dir", default=d(None), help="class polynomial cache (default ./hd_cache)")
    parser.add_argument("--workers", type=int, default=d(os.cpu_count() or 1))
    parser.add_argument("--seed", type=int, default=d(ffpoly.DEFAULT_SEED), help="seed for randomized factoring")
    parser.add_argument("--max-bits", type=int, default=d(classpoly.DEFAULT_MAX_BITS))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)

    parser = _Parser(prog="classlaw", description=__doc__.splitlines()[0])
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("symbol", parents=[common], help="Kronecker symbol (a/n)")
    p.add_argument("a", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_symbol)

    p = sub.add_parser("classgroup", parents=[common], help="reduced forms, h, t and q* factors")
    p.add_argument("D", type=int)
    p.set_defaults(func=cmd_classgroup)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert class polynomial H_D")
    p.add_argument("D", type=int)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("predict", parents=[common], help="predicted splitting pattern of H_D mod p")
    p.add_argument("D", type=int)
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("verify", parents=[common], help="compare prediction with factorization")
    p.add_argument("D", type=int, nargs="?")
    p.add_argument("p", type=int, nargs="?")
    p.add_argument("--sweep", type=int, nargs=3, metavar=("DMIN", "DMAX", "PMAX"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("factor", parents=[common], help="irreducible factors and roots of H_D mod p")
    p.add_argument("D", type=int)
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("density", parents=[common], help="empirical vs theoretical root density")
    p.add_argument("D", type=int)
    p.add_argument("xmax", type=int)
    p.set_defaults(func=cmd_density)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Output(args.json)
    try:
        return args.func(args, out)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"classlaw: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ClassLawError as exc:
        print(f"classlaw: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
