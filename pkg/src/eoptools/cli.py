"""Command line interface.

Every command reads an operator (text or JSON) or a JSON object from its
argument or standard input and writes JSON to standard output. Exit codes:
0 success, 1 domain error, 2 parse error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import laplace as lp
from . import linalg as la
from .echeck import ECheckReport, check_e
from .errors import DomainError, ParseError
from .exactnum import (
    LogRadius,
    euler_generic_radius,
    euler_generic_radius_empirical,
    gevrey_profile,
    pochhammer_val_slope,
    rat_to_str,
)
from .localdata import (
    companion,
    exponents_at_infinity,
    exponents_at_zero,
    frobenius_solution,
    indicial_at_infinity,
    indicial_at_zero,
    reduce_at_infinity,
    reduce_at_zero,
    theta_companion,
)
from .nrpolygon import (
    is_regular_at_infinity,
    is_regular_at_zero,
    katz_invariants,
    nr_polygon,
    to_ascii,
    to_svg,
)
from .parser import parse
from .polys import poly_to_json
from .weyl import (
    WeylOp,
    adjoint,
    bar,
    fourier,
    from_theta,
    homothety,
    infinity_form,
    inverse_fourier,
    to_text,
    to_theta,
    twist_alpha,
)

__all__ = ["main", "check_e", "ECheckReport", "parse"]

_VALUE_OPTIONS = {
    "--tau", "--alpha", "--range", "--rho", "--prec", "--horizon", "--p", "--i", "--s",
    "--at", "--primes", "--twist", "--lambda-r", "--out", "--system",
}
_OPTION_RE = re.compile(r"^(--[a-zA-Z][a-zA-Z-]*(=.*)?|-h)$")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None


def _read_input(arg: str | None) -> str:
    if arg is None or arg == "-":
        return sys.stdin.read()
    return arg


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None


def _read_operator(arg: str | None) -> WeylOp:
    text = _read_input(arg).strip()
    if text.startswith("{"):
        try:
            return WeylOp.from_json(_load_json(text))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad operator JSON: {exc}") from None
    return parse(text)


def _read_matrix(text: str):
    data = _load_json(text)
    try:
        return la.as_matrix([[Fraction(str(c)) for c in row] for row in data])
    except (TypeError, ValueError, ZeroDivisionError):
        raise ParseError("matrix must be a JSON list of rows of rationals") from None


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


# op


def cmd_op(args) -> None:
    phi = _read_operator(args.operator)
    action = args.action
    if action in ("fourier", "inverse-fourier", "homothety") and args.tau is None:
        raise DomainError(f"op {action} needs --tau")
    if action == "normalize":
        _emit(to_text(phi))
    elif action == "adjoint":
        _emit(to_text(adjoint(phi)))
    elif action == "fourier":
        _emit(to_text(fourier(phi, _rational(args.tau))))
    elif action == "inverse-fourier":
        _emit(to_text(inverse_fourier(phi, _rational(args.tau))))
    elif action == "bar":
        _emit(to_text(bar(phi)))
    elif action == "homothety":
        _emit(to_text(homothety(phi, _rational(args.tau))))
    elif action in ("theta", "twist", "infinity"):
        t = to_theta(phi)
        if action == "twist":
            if args.alpha is None:
                raise DomainError("op twist needs --alpha")
            t = twist_alpha(t, _rational(args.alpha))
        elif action == "infinity":
            t = infinity_form(t)
        out = {"theta": t.to_json()}
        try:
            out["operator"] = to_text(from_theta(t))
        except DomainError:
            out["operator"] = None
        _emit(out)


# polygon


def cmd_polygon(args) -> None:
    phi = _read_operator(args.operator)
    P = nr_polygon(phi)
    if args.action == "show":
        sys.stdout.write(to_ascii(P) + "\n")
    elif args.action == "json":
        d = P.to_json()
        kz, ki = katz_invariants(P)
        d["katz_zero"], d["katz_infinity"] = rat_to_str(kz), rat_to_str(ki)
        d["regular_at_zero"] = is_regular_at_zero(P)
        d["regular_at_infinity"] = is_regular_at_infinity(P)
        d["degenerate"] = len(P.support) == 1
        _emit(d)
    elif args.action == "svg":
        svg = to_svg(P)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(svg)
            _emit({"written": args.out})
        else:
            sys.stdout.write(svg)
    elif args.action == "slopes":
        _emit({"finite_slopes": [rat_to_str(s) for s in P.finite_slopes]})
    elif args.action == "katz":
        kz, ki = katz_invariants(P)
        _emit({"katz_zero": rat_to_str(kz), "katz_infinity": rat_to_str(ki)})


# local


def cmd_local(args) -> None:
    phi = _read_operator(args.operator)
    at = args.at
    if args.action == "companion":
        A = theta_companion(to_theta(phi)) if args.system == "theta" else companion(phi)
        _emit(A.to_json())
        return
    if args.action == "frobenius":
        if args.rho is None:
            raise DomainError("local frobenius needs --rho")
        _emit(frobenius_solution(to_theta(phi), _rational(args.rho), args.prec).to_json())
        return
    t = to_theta(phi)
    if args.action == "indicial":
        p = indicial_at_zero(t) if at == "0" else indicial_at_infinity(t)
        _emit({"at": at, "indicial": poly_to_json(p)})
    elif args.action == "exponents":
        e = exponents_at_zero(t) if at == "0" else exponents_at_infinity(t)
        d = e.to_json()
        d["at"] = at
        _emit(d)
    elif args.action == "reduce":
        A = theta_companion(t) if args.system == "theta" else companion(phi)
        r = reduce_at_zero(A, args.prec) if at == "0" else reduce_at_infinity(A, args.prec)
        _emit(r.to_json())


# laplace


def _twist(args) -> lp.TwistMatrix:
    if args.twist is None:
        raise DomainError("--twist is required")
    return lp.check_twist(_read_matrix(args.twist))


def cmd_laplace(args) -> None:
    tau = _rational(args.tau)
    if args.action == "c":
        tw = _twist(args)
        cache = lp.CCache(tw, tau)
        _emit({"i": args.i, "C": la.matrix_to_json(cache.get(args.i))})
    elif args.action == "transform":
        data = _load_json(_read_input(args.block))
        try:
            f = lp.TwistedBlock.from_json(data)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise ParseError(f"bad block JSON: {exc}") from None
        _emit(lp.laplace_transform(f, tau).to_json())
    elif args.action == "check-cc":
        tw = _twist(args)
        lo, hi = _range(args.range)
        caches = (lp.CCache(tw, tau), lp.CCache(tw.negated(), tau))
        rows = [lp.cc_identity(tw, tau, i, caches) for i in range(lo, hi + 1)]
        _emit({"range": [lo, hi], "all_equal": all(r.equal for r in rows), "results": [r.to_json() for r in rows]})
    elif args.action == "slope":
        tw = _twist(args)
        if args.p is None:
            raise DomainError("laplace slope needs --p")
        plus, minus = lp.c_valuation_slope(tw, tau, args.p, args.horizon)
        _emit({"plus": plus.to_json(), "minus": minus.to_json()})


def _range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*:\s*(-?\d+)\s*", text or "")
    if not m:
        raise ParseError(f"range must look like A:B, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise DomainError("empty range")
    return lo, hi


# padic


def cmd_padic(args) -> None:
    if args.action == "slope":
        if args.alpha is None or args.p is None:
            raise DomainError("padic slope needs --alpha and --p")
        _emit(pochhammer_val_slope(_rational(args.alpha), args.p, args.horizon).to_json())
    elif args.action == "euler-radius":
        if args.alpha is None or args.p is None:
            raise DomainError("padic euler-radius needs --alpha and --p")
        alpha = _rational(args.alpha)
        r = LogRadius(args.p, _rational(args.lambda_r))
        R = euler_generic_radius(alpha, args.p, r)
        emp = euler_generic_radius_empirical(alpha, args.p, r, args.horizon)
        _emit({"radius": R.to_json(), "empirical_lambda": emp, "horizon": args.horizon})
    elif args.action == "gevrey":
        data = _load_json(_read_input(args.coeffs))
        try:
            coeffs = [Fraction(str(c)) for c in data]
        except (TypeError, ValueError, ZeroDivisionError):
            raise ParseError("coefficients must be a JSON list of rationals") from None
        _emit(gevrey_profile(coeffs, _rational(args.s)).to_json())


def cmd_check_e(args) -> None:
    phi = _read_operator(args.operator)
    try:
        primes = [int(p) for p in args.primes.split(",") if p.strip()]
    except ValueError:
        raise ParseError(f"bad prime list {args.primes!r}") from None
    _emit(check_e(phi, primes, args.prec, args.horizon).to_json())


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eoptools", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("op", help="operator transforms")
    p.add_argument(
        "action",
        choices=["normalize", "adjoint", "fourier", "inverse-fourier", "bar", "homothety", "twist", "theta", "infinity"],
    )
    p.add_argument("operator", nargs="?")
    p.add_argument("--tau")
    p.add_argument("--alpha")
    p.set_defaults(func=cmd_op)

    p = sub.add_parser("polygon", help="Newton-Ramis polygon")
    p.add_argument("action", choices=["show", "json", "svg", "slopes", "katz"])
    p.add_argument("operator", nargs="?")
    p.add_argument("--out")
    p.set_defaults(func=cmd_polygon)

    p = sub.add_parser("local", help="local data at 0 or infinity")
    p.add_argument("action", choices=["companion", "indicial", "exponents", "reduce", "frobenius"])
    p.add_argument("operator", nargs="?")
    p.add_argument("--at", choices=["0", "inf"], default="0")
    p.add_argument("--prec", type=int, default=20)
    p.add_argument("--rho")
    p.add_argument("--system", choices=["theta", "d"], default="theta",
                   help="companion in the basis (y, theta y, ...) or (y, y', ...)")
    p.set_defaults(func=cmd_local)

    p = sub.add_parser("laplace", help="generalized Laplace transform")
    p.add_argument("action", choices=["c", "transform", "check-cc", "slope"])
    p.add_argument("block", nargs="?", help="TwistedBlock JSON (transform)")
    p.add_argument("--twist", help="JSON matrix, e.g. '[[\"1/2\"]]'")
    p.add_argument("--tau", default="1")
    p.add_argument("--i", type=int, default=0)
    p.add_argument("--range", default="-8:8")
    p.add_argument("--p", type=int)
    p.add_argument("--horizon", type=int, default=2000)
    p.set_defaults(func=cmd_laplace)

    p = sub.add_parser("padic", help="p-adic valuation asymptotics")
    p.add_argument("action", choices=["slope", "euler-radius", "gevrey"])
    p.add_argument("coeffs", nargs="?", help="JSON list of coefficients (gevrey)")
    p.add_argument("--alpha")
    p.add_argument("--p", type=int)
    p.add_argument("--horizon", type=int, default=1000)
    p.add_argument("--lambda-r", dest="lambda_r", default="0")
    p.add_argument("--s", default="0")
    p.set_defaults(func=cmd_padic)

    p = sub.add_parser("check-e", help="necessary conditions for an E-operator")
    p.add_argument("operator", nargs="?")
    p.add_argument("--primes", default="2,3,5")
    p.add_argument("--prec", type=int, default=200)
    p.add_argument("--horizon", type=int, default=500)
    p.set_defaults(func=cmd_check_e)
    return ap


def _fix_argv(argv: list[str]) -> list[str]:
    """Normalize argv for argparse.

    Options are moved after the positionals and glued to their values, so
    operators and values may start with '-' (``--range -8:8``, ``"-1*d"``).
    A leading space keeps argparse from reading such a positional as a flag;
    the operator parser ignores it.
    """
    if not argv or argv[0].startswith("-"):
        return argv
    positionals: list[str] = [argv[0]]
    options: list[str] = []
    i = 1
    while i < len(argv):
        tok = argv[i]
        if _OPTION_RE.match(tok):
            if tok in _VALUE_OPTIONS and i + 1 < len(argv):
                options.append(f"{tok}={argv[i + 1]}")
                i += 2
                continue
            options.append(tok)
        elif tok.startswith("-") and tok != "-":
            positionals.append(" " + tok)
        else:
            positionals.append(tok)
        i += 1
    return positionals + options


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(_fix_argv(list(sys.argv[1:] if argv is None else argv)))
    try:
        args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
