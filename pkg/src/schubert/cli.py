"""
Command-line front end: ``schubert {poly,bsl,complex,ideal,verify}``.

Output is JSON unless ``--plain`` is given.  Exit codes: 0 success,
1 verification failure, 2 usage or parse error, 3 semantic error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .complex import FlaggedMap, build_complex, euler_characteristic, homology_ranks, verify_dd_zero
from .functor import build_functor_image
from .ideal import expected_codimension, ideal_generators, locus_membership
from .linalg import PrimeField, Rationals, default_field
from .perm import Permutation
from .poly import double_schubert, single_schubert, substitute
from .superlabel import enumerate_bsl
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SEMANTIC = 0, 1, 2, 3


class UsageError(Exception):
    """Bad input text; maps to exit code 2."""


class SemanticError(Exception):
    """Well-formed input that makes no sense for the request; exit code 3."""


def _perm(text: str) -> Permutation:
    try:
        return Permutation.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def parse_assignment(spec: str, n: int) -> dict[str, Fraction]:
    """``"all_x=1,all_y=-1,x2=1/2"`` into a variable assignment."""
    values: dict[str, Fraction] = {}
    for part in filter(None, (p.strip() for p in spec.split(","))):
        if "=" not in part:
            raise UsageError(f"expected name=value, got {part!r}")
        name, value = (s.strip() for s in part.split("=", 1))
        v = _fraction(value)
        if name in ("all_x", "all_y"):
            for i in range(1, n + 1):
                values[f"{name[-1]}{i}"] = v
        elif len(name) > 1 and name[0] in "xy" and name[1:].isdigit():
            values[name] = v
        else:
            raise UsageError(f"unknown variable {name!r}")
    return values


def load_matrix(path: str) -> list[list[Fraction]]:
    """Read ``{"n": int, "entries": [["p/q", ...], ...]}``."""
    try:
        with open(path) as fh:
            data = json.load(fh)
        n = int(data["n"])
        rows = [[_fraction(str(a)) for a in row] for row in data["entries"]]
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read matrix file {path}: {exc}") from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise SemanticError(f"matrix file declares n={n} but entries are not {n} x {n}")
    return rows


def parse_field(text: str):
    if text == "q":
        return Rationals()
    if text == "p":
        return default_field()
    if text.startswith("p:"):
        try:
            return PrimeField(int(text[2:]))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError(f"field must be q, p or p:PRIME, got {text!r}")


def _emit(args, payload, plain: str):
    print(plain if args.plain else json.dumps(payload, sort_keys=False))


# --- subcommands --------------------------------------------------------------


def cmd_poly(args) -> int:
    w = _perm(args.w)
    p = single_schubert(w) if args.single else double_schubert(w)
    if args.eval:
        values = parse_assignment(args.eval, w.n)
        try:
            value = substitute(p, values)
        except KeyError as exc:
            raise SemanticError(exc.args[0]) from None
        _emit(args, {"w": str(w), "value": str(value)}, str(value))
    else:
        _emit(args, {"w": str(w), "single": args.single, "poly": str(p)}, str(p))
    return EXIT_OK


def cmd_bsl(args) -> int:
    w = _perm(args.w)
    if args.image:
        F = build_functor_image(w)
        _emit(args, F.to_json(), "\n".join(
            f"{T.serialize()}: {len(col)} terms" for T, col in zip(F.bsl_basis, F.matrix)))
        return EXIT_OK
    labelings = enumerate_bsl(w)
    if args.list:
        _emit(args, [T.to_json() for T in labelings], "\n".join(T.serialize() for T in labelings))
    else:
        _emit(args, {"w": str(w), "count": len(labelings)}, str(len(labelings)))
    return EXIT_OK


def cmd_complex(args) -> int:
    w = _perm(args.w)
    field = parse_field(args.field)
    if args.matrix:
        rows = load_matrix(args.matrix)
        if len(rows) < w.n:
            raise SemanticError(f"matrix is {len(rows)} x {len(rows)} but {w} needs {w.n}")
        f = FlaggedMap.from_matrix(rows)
    elif args.identity:
        f = FlaggedMap.identity(w.n)
    elif args.zero:
        f = FlaggedMap.zero(w.n)
    else:
        f = FlaggedMap.generic(w.n)
    C = build_complex(w, f)
    report = {
        "w": str(w),
        "map": "generic" if f.is_generic else "specialized",
        "field": str(field),
        "ranks": C.ranks,
        "ddzero": verify_dd_zero(C),
        "euler": euler_characteristic(C),
    }
    if args.homology:
        if C.is_generic:
            raise SemanticError("homology needs a concrete map: use --identity, --zero or --matrix")
        report["homology"] = homology_ranks(C, field=field)
    if args.dump:
        report["differentials"] = C.to_json()["differentials"]
    plain = f"ranks {C.ranks}  ddzero {report['ddzero']}"
    if "homology" in report:
        plain += f"  h {report['homology']}"
    _emit(args, report, plain)
    return EXIT_OK


def cmd_ideal(args) -> int:
    w = _perm(args.w)
    try:
        gens = ideal_generators(w)
    except ValueError as exc:
        raise SemanticError(str(exc)) from None
    report = {
        "w": str(w),
        "codimension": expected_codimension(w),
        "generators": [m.to_json() for m in gens],
    }
    plain = "\n".join(str(m) for m in gens)
    if args.point:
        rows = load_matrix(args.point)
        if len(rows) < w.n:
            raise SemanticError(f"point is {len(rows)} x {len(rows)} but {w} needs {w.n}")
        report["on_locus"] = locus_membership(w, rows)
        plain += f"\non locus: {report['on_locus']}"
    _emit(args, report, plain)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_suite(args.suite, seed=args.seed, jobs=args.jobs)
    lines = [f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}  {c['detail']}" for c in report["checks"]]
    lines.append(f"{report['counts']['pass']} passed, {report['counts']['fail']} failed")
    _emit(args, report, "\n".join(lines))
    return EXIT_OK if report["passed"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schubert", description=__doc__.strip().splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--plain", action="store_true", help="plain text instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", parents=[common], help="double (or single) Schubert polynomial")
    p.add_argument("w")
    p.add_argument("--single", action="store_true", help="set every y to zero")
    p.add_argument("--eval", metavar="SPEC", help='e.g. "all_x=1,all_y=-1" or "x1=2,y1=1/2"')
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("bsl", parents=[common], help="balanced super labelings")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--count", action="store_true", help="print the count (default)")
    g.add_argument("--list", action="store_true", help="list every labeling")
    g.add_argument("--image", action="store_true", help="dump the image matrix of the basis")
    p.add_argument("w")
    p.set_defaults(func=cmd_bsl)

    p = sub.add_parser("complex", parents=[common], help="Schubert complex of a flagged map")
    p.add_argument("w")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--matrix", metavar="FILE", help='JSON {"n": int, "entries": [["p/q", ...], ...]}')
    g.add_argument("--generic", action="store_true", help="symbolic map (default)")
    g.add_argument("--identity", action="store_true")
    g.add_argument("--zero", action="store_true")
    p.add_argument("--field", default="q", help="q, p (SCHUBERT_PRIME or 2^61-1) or p:PRIME")
    p.add_argument("--homology", action="store_true")
    p.add_argument("--dump", action="store_true", help="include the differentials")
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("ideal", parents=[common], help="essential minors and locus membership")
    p.add_argument("w")
    p.add_argument("--point", metavar="FILE", help="matrix file to test for membership")
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=sorted(SUITES), default="paper-examples")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"schubert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SemanticError as exc:
        print(f"schubert: error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
