"""Command-line surface.

Every command prints a JSON envelope (or a plain-text table with
--format table) with a schema version and decimal-string big numbers,
so outputs are byte-stable for golden-file testing.

Exit codes: 0 success, 2 usage error, 3 certification failure,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__, certify, hcp, jeval, qforms, solver, tables
from .errors import (
    CertificationError,
    DomainError,
    SingprodError,
    ZeroNotSupported,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CERTIFICATION = 3
EXIT_INTERNAL = 4

SCHEMA = "singprod.v1"


def _envelope(command: str, payload, warnings=None) -> dict:
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "payload": payload,
        "warnings": list(warnings or []),
    }


def _emit(args, envelope: dict) -> None:
    if args.format == "json":
        print(json.dumps(envelope, indent=2))
        return
    payload = envelope["payload"]
    _print_table(envelope["command"], payload)
    for w in envelope["warnings"]:
        print(f"# warning: {w}")


def _print_table(command: str, payload) -> None:
    if command == "forms":
        for f in payload["forms"]:
            print(f"({f[0]}, {f[1]}, {f[2]})")
    elif command == "classnum":
        print(payload["class_number"])
    elif command == "j":
        print(f"{payload['real']} + {payload['imag']}i  (± {payload['radius']})")
    elif command == "hcp":
        print(" ".join(payload["coeffs"]))
    elif command == "tables":
        for row in payload["rows"]:
            print("\t".join(str(v) for v in row.values()))
    elif command == "certify":
        print(payload["result"])
    elif command == "solve":
        if not payload["solutions"]:
            print("no solutions")
        for sol in payload["solutions"]:
            print(json.dumps(sol))
    else:
        print(json.dumps(payload, indent=2))


def _ball_payload(ball, digits: int = 40) -> dict:
    return {
        "real": certify.fmt(ball.mid.real, digits),
        "imag": certify.fmt(ball.mid.imag, digits),
        "radius": certify.fmt(ball.rad, 20),
    }


def cmd_forms(args) -> dict:
    forms = qforms.enumerate_forms(args.delta)
    return _envelope(
        "forms",
        {"delta": args.delta, "forms": [[f.a, f.b, f.c] for f in forms]},
    )


def cmd_classnum(args) -> dict:
    return _envelope(
        "classnum",
        {"delta": args.delta, "class_number": qforms.class_number(args.delta)},
    )


def cmd_j(args) -> dict:
    if "," in args.target:
        re_text, im_text = args.target.split(",", 1)
        point = jeval.FundamentalPoint.from_rationals(
            Fraction(re_text.strip()), Fraction(im_text.strip())
        )
        where = {"z": args.target}
    else:
        delta = int(args.target)
        tau = qforms.tau_points(delta)[0]
        point = jeval.FundamentalPoint.from_tau(tau)
        where = {"delta": delta, "form": list(tau.form)}
    ball = jeval.eval_j(point, args.precision)
    payload = {**where, "precision_bits": args.precision, **_ball_payload(ball)}
    return _envelope("j", payload)


def cmd_hcp(args) -> dict:
    warnings = []
    poly = None
    if args.cache:
        cache = hcp.PolyCache(args.cache)
        try:
            poly = cache.load(args.delta)
        except SingprodError:
            poly = None
    if poly is None:
        poly = hcp.hilbert_class_poly(args.delta)
        if args.cache:
            hcp.PolyCache(args.cache).store(poly)
            warnings.append(f"cached under {args.cache}")
    return _envelope(
        "hcp",
        {
            "delta": args.delta,
            "degree": poly.degree,
            "coeffs": [str(c) for c in poly.coeffs],
            "monic": True,
        },
        warnings,
    )


def cmd_tables(args) -> dict:
    n = args.number
    if n == 1:
        rows = [{"delta": d, "j": str(j)} for d, j in tables.CLASS_NUMBER_ONE]
    elif n == 2:
        rows = [
            {
                "delta": d,
                "coeffs": [str(a0), str(a1)],
                "ratio_display": disp,
            }
            for d, (a0, a1, disp) in sorted(
                tables.CLASS_NUMBER_TWO.items(), key=lambda kv: -kv[0]
            )
        ]
    elif n == 3:
        rows = [
            {"delta": d, "lhs": lhs, "rhs": rhs}
            for d, lhs, rhs, _form in tables.DISTINCT_FIELD_BOUNDS
        ]
    elif n == 4:
        rows = [
            {"field": label, "degree": degree, "discriminants": list(discs)}
            for label, degree, discs in tables.CM_FIELD_TABLE
        ]
    else:
        raise DomainError(f"no table {n}; choose 1-4")
    return _envelope("tables", {"table": n, "rows": rows})


def cmd_certify(args) -> dict:
    cert = certify.build_certificate()
    warnings = [
        w
        for w in cert["trusted_assumptions"]
    ]
    return _envelope("certify", cert, warnings)


def cmd_solve(args) -> dict:
    solutions = solver.solve(args.a, trust_certificate=args.trust_certificate)
    warnings = []
    if args.trust_certificate:
        warnings.append("certificate trusted on request, not re-verified")
    return _envelope(
        "solve",
        {
            "a": args.a,
            "count": len(solutions),
            "solutions": [solver.solution_payload(s) for s in solutions],
        },
        warnings,
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singprod",
        description="Certified singular-moduli arithmetic and the exact "
        "decision procedure for products in Q*.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "table"), default="json", help="output format"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "forms", parents=[common], help="reduced primitive forms of a discriminant"
    )
    p.add_argument("delta", type=int)
    p.set_defaults(func=cmd_forms)

    p = sub.add_parser(
        "classnum", parents=[common], help="class number of a discriminant"
    )
    p.add_argument("delta", type=int)
    p.set_defaults(func=cmd_classnum)

    p = sub.add_parser(
        "j",
        parents=[common],
        help="evaluate j at a discriminant's principal point or at 're,im'",
    )
    p.add_argument("target")
    p.add_argument("--precision", type=int, default=128, help="bits (default 128)")
    p.set_defaults(func=cmd_j)

    p = sub.add_parser(
        "hcp", parents=[common], help="Hilbert class polynomial (exact coefficients)"
    )
    p.add_argument("delta", type=int)
    p.add_argument("--cache", default=None, help="polynomial cache path")
    p.set_defaults(func=cmd_hcp)

    p = sub.add_parser(
        "tables", parents=[common], help="print reference table 1, 2, 3 or 4"
    )
    p.add_argument("number", type=int, choices=(1, 2, 3, 4))
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("certify", parents=[common], help="run the full case analysis")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser(
        "solve", parents=[common], help="all pairs of singular moduli with product A"
    )
    p.add_argument("a", help="exact rational: integer or 'p/q'")
    p.add_argument(
        "--trust-certificate",
        action="store_true",
        help="skip running the certification first",
    )
    p.set_defaults(func=cmd_solve)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        envelope = args.func(args)
    except (DomainError, ZeroNotSupported) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CertificationError as exc:
        print(f"certification failure: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATION
    except SingprodError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(args, envelope)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
