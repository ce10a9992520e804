"""``brauerkit`` command line: one subcommand per library area, JSON to stdout.

Exit codes: 0 on success (negative verdicts included), 1 on a domain error,
2 on a parse error. Numbers in reports are strings.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import bogomolov as bg
from . import lind_reichardt as lr
from .arith import Place, format_rational, to_rational
from .brauer import (HALF, QuaternionClass, conic_point, descent_split_trace,
                     hilbert_symbol, local_invariants)
from .cohomology import cohomology, permutation_module
from .errors import BrauerkitError
from .groups import group_from_json, module_from_json, trivial_module
from .quadform import (QuadraticForm, clifford_invariant, diagonalize, discriminant,
                       global_isotropy, local_isotropy, relevant_places)
from .selftest import run_all


class InputError(Exception):
    """Malformed command-line input."""


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, Place):
        return str(x)
    return str(x)


def _rational(text: str) -> Fraction:
    try:
        return to_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {text!r}") from exc


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(t) for t in text.split(",") if t.strip()]


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise InputError(f"not a list of integers: {text!r}") from exc


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from exc


def _place(text: str) -> Place:
    try:
        return Place.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# ---------------------------------------------------------------------------
# handlers: each returns (inputs, thunk) where thunk() -> (result, checks)


def _cmd_cohomology(args):
    try:
        G = group_from_json(_load_json(args.group))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad group JSON: {exc}") from exc
    if args.module:
        try:
            M = module_from_json(G, _load_json(args.module))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad module JSON: {exc}") from exc
    else:
        M = trivial_module(G, 1, args.modulus)
    inputs = {"group": G.to_json(), "module": M.to_json(), "degree": str(args.degree)}

    def run():
        return cohomology(G, M, args.degree).to_json(), 1
    return inputs, run


def _cmd_perm_module(args):
    G = group_from_json(_load_json(args.group))
    H = _int_list(args.subgroup)
    inputs = {"group": G.to_json(), "subgroup": [str(h) for h in H],
              "modulus": str(args.modulus)}
    if args.degree is not None:
        inputs["degree"] = str(args.degree)

    def run():
        M = permutation_module(G, H, args.modulus)
        out = {"module": M.to_json()}
        if args.degree is not None:
            out["cohomology"] = cohomology(G, M, args.degree).to_json()
        return out, 1
    return inputs, run


def _cmd_hilbert(args):
    a, b = _rational(args.a), _rational(args.b)
    places = [_place(args.place)] if args.place else None
    inputs = {"a": format_rational(a), "b": format_rational(b)}
    if places:
        inputs["place"] = str(places[0])

    def run():
        vs = places or QuaternionClass(a, b).relevant_places()
        symbols = {str(v): str(hilbert_symbol(a, b, v)) for v in vs}
        product = 1
        for s in symbols.values():
            product *= int(s)
        out = {"symbols": symbols}
        if not places:
            out["product"] = str(product)
        return out, int(not places and product == 1)
    return inputs, run


def _cmd_quat(args):
    a, b = _rational(args.a), _rational(args.b)
    inputs = {"a": format_rational(a), "b": format_rational(b)}

    def run():
        inv = local_invariants(a, b)
        if args.action == "invariants":
            return {"invariants": inv.to_json(), "sum": format_rational(inv.total())}, \
                int(inv.total() == 0)
        out = {"split": inv.is_zero(),
               "obstructions": [str(v) for v in inv.support if inv[v] == HALF]}
        checks = int(inv.total() == 0)
        if args.trace:
            c = QuaternionClass(a, b)
            trace = descent_split_trace(*c.normalized)
            out["trace"] = trace.to_json()
            checks += int(trace.split == out["split"])
            if trace.split:
                pt, _ = conic_point(a, b)
                u, v, w = pt
                out["witness"] = [str(t) for t in pt]
                checks += int(u * u == a * v * v + b * w * w)
        return out, checks
    return inputs, run


def _form_from_args(args) -> QuadraticForm:
    try:
        if args.gram:
            data = _load_json(args.gram)
            return QuadraticForm([[_rational(str(x)) for x in row] for row in data["gram"]])
        if not args.entries:
            raise InputError("give diagonal entries or --gram FILE")
        return QuadraticForm.diagonal_form(_rational_list(args.entries))
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad form JSON: {exc}") from exc
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _cmd_qf(args):
    f = _form_from_args(args)
    inputs = f.to_json()

    def run():
        if args.action == "diag":
            D, T = diagonalize(f)
            n = f.dim
            ok = all(sum(T[k][i] * f.gram[k][l] * T[l][j] for k in range(n) for l in range(n))
                     == (D[i] if i == j else 0) for i in range(n) for j in range(n))
            return {"diagonal": [format_rational(d) for d in D],
                    "basis": [[format_rational(T[r][c]) for r in range(n)] for c in range(n)]}, \
                int(ok)
        if args.action == "disc":
            return {"discriminant": str(discriminant(f))}, 1
        if args.action == "clifford":
            c = clifford_invariant(f)
            return {"class": {"a": format_rational(c.a), "b": format_rational(c.b)},
                    "invariants": local_invariants(c).to_json()}, 1
        cert = global_isotropy(f)
        local = {str(v): local_isotropy(f, v) for v in relevant_places(f)}
        return {**cert.to_json(), "local": local}, int(cert.witness is not None)
    return inputs, run


def _cmd_lind_reichardt(args):
    inputs = {"prime_bound": str(args.prime_bound), "height": str(args.height)}

    def run():
        report = lr.obstruction_conclusion(prime_bound=args.prime_bound, height=args.height)
        return _jsonable(report), sum(bool(v) for v in report["checks"].values())
    return inputs, run


def _cmd_bogomolov(args):
    z = _int_list(args.z)
    if len(z) != 6:
        raise InputError("--z needs six coordinates (e12,e13,e14,e23,e24,e34)")
    inputs = {"prime": str(args.prime), "z": [str(c % args.prime) for c in z]}

    def run():
        p = args.prime
        report = bg.verify_structure(p, seed=args.seed)
        zb = bg.Bivector(p, tuple(z))
        if zb.is_zero():
            raise ValueError("z must be nonzero")
        center = bg.quotient_center_order(zb)
        pairs = bg.commutator_product_witness(zb)
        product = bg.witness_product(pairs)
        witness_ok = product.w.is_zero() and product.m == zb
        out = {
            "structure": _jsonable(report),
            "z": {"decomposable": center["decomposable"],
                  "quotient_center_order": str(center["order"]),
                  "wedge_hits_line": bg.wedge_hits_line(zb)},
            "commutator_witness": {
                "pairs": [[list(map(str, u.coords)), list(map(str, v.coords))]
                          for u, v in pairs],
                "product_equals_z": witness_ok},
        }
        return out, sum(report["checks"].values()) + int(witness_ok)
    return inputs, run


def _cmd_selftest(args):
    only = _int_list(args.only) if args.only else None
    inputs = {"seed": str(args.seed), "only": [str(k) for k in only] if only else None}

    def run():
        results = run_all(seed=args.seed, only=only)
        for r in results:
            print(r.line(), file=sys.stderr)
        passed = sum(r.passed for r in results)
        return {"criteria": [r.to_json() for r in results],
                "all_passed": passed == len(results)}, passed
    return inputs, run


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--no-timing", action="store_true",
                        help="report elapsed_ms as 0 (byte-identical reruns)")

    parser = argparse.ArgumentParser(prog="brauerkit",
                                     description="Brauer groups, cohomology and quadratic forms")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cohomology", parents=[common], help="H^i(G, M)")
    p.add_argument("--group", required=True)
    p.add_argument("--module")
    p.add_argument("--modulus", type=int, default=0,
                   help="coefficients Z/m for the trivial module when --module is absent")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(handler=_cmd_cohomology)

    p = sub.add_parser("perm-module", parents=[common], help="the permutation module Z[G/H]")
    p.add_argument("--group", required=True)
    p.add_argument("--subgroup", required=True, help="comma-separated elements of H")
    p.add_argument("--modulus", type=int, default=0)
    p.add_argument("--degree", type=int)
    p.set_defaults(handler=_cmd_perm_module)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert symbols (a, b)_v")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--place", help="'inf' or a prime; default: all relevant places")
    p.set_defaults(handler=_cmd_hilbert)

    p = sub.add_parser("quat", parents=[common], help="quaternion classes (a, b)")
    p.add_argument("action", choices=["invariants", "split"])
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--trace", action="store_true", help="include the descent trace")
    p.set_defaults(handler=_cmd_quat)

    p = sub.add_parser("qf", parents=[common], help="quadratic forms over Q")
    p.add_argument("action", choices=["diag", "disc", "clifford", "isotropic"])
    p.add_argument("entries", nargs="?", help="comma-separated diagonal entries")
    p.add_argument("--gram", help='JSON file {"gram": [[...]]}')
    p.set_defaults(handler=_cmd_qf)

    p = sub.add_parser("lind-reichardt", parents=[common], help="the 2y^2 = x^4 - 17 curve")
    p.add_argument("action", choices=["verify"])
    p.add_argument("--prime-bound", type=int, default=100)
    p.add_argument("--height", type=int, default=10**4)
    p.set_defaults(handler=_cmd_lind_reichardt)

    p = sub.add_parser("bogomolov", parents=[common], help="the central extension by L^2 F_p^4")
    p.add_argument("action", choices=["verify"])
    p.add_argument("--prime", type=int, default=3)
    p.add_argument("--z", default="1,0,0,0,0,1", help="bivector coordinates e12..e34")
    p.set_defaults(handler=_cmd_bogomolov)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.set_defaults(handler=_cmd_selftest)
    return parser


def _command_name(args) -> str:
    action = getattr(args, "action", None)
    return f"{args.command} {action}" if action else args.command


def dispatch(argv: list[str] | None = None) -> tuple[int, dict]:
    """Run one command; returns (exit code, report)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        if code == 0:  # --help
            return 0, {}
        return code, {"error": {"variant": "ParseError", "message": "invalid arguments"}}
    name = _command_name(args)
    t0 = time.perf_counter()
    try:
        inputs, run = args.handler(args)
    except InputError as exc:
        return 2, {"command": name, "error": {"variant": "ParseError", "message": str(exc)}}
    except (BrauerkitError, ValueError) as exc:
        return 1, {"command": name, "error": {"variant": type(exc).__name__,
                                              "message": str(exc)}}
    try:
        result, checks = run()
    except (BrauerkitError, ValueError, ArithmeticError) as exc:
        return 1, {"command": name, "inputs": inputs,
                   "error": {"variant": type(exc).__name__, "message": str(exc)}}
    elapsed = 0 if args.no_timing else int((time.perf_counter() - t0) * 1000)
    return 0, {"command": name, "inputs": inputs, "result": result,
               "checks_passed": str(checks), "elapsed_ms": str(elapsed)}


def main(argv: list[str] | None = None) -> int:
    code, report = dispatch(argv)
    if not report:
        return code
    if code == 2 and "command" not in report:
        return 2  # argparse already printed usage to stderr
    print(json.dumps(report, ensure_ascii=False))
    if "error" in report:
        print(f"brauerkit: {report['error']['variant']}: {report['error']['message']}",
              file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
