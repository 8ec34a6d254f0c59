"""Command-line front end: ``dcurve <verb> <args> [--json] [--field qt|q] [--var u] [--file path]``.

Expressions that start with ``-`` must follow a ``--`` separator so they are
not mistaken for options.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .curves import (
    GeneralRationalParam,
    ImproperParametrization,
    InvariantError,
    LinearCurve,
    LinearRationalParam,
    ideal_membership_linear,
    implicitize_poly,
    implicitize_rational,
    inversion,
    is_unirational,
    ldcp,
    mobius_apply,
    order_relation_check,
    proper_check_poly,
    proper_check_rational,
    verify_on_curve,
)
from .diffpoly import DiffPoly, dp_perfect_power
from .ore import ele_trace, gcld, gcrd, lcrm, wronskian
from .parsing import (
    Context,
    ParseError,
    format_diffpoly,
    format_fraction,
    format_operator,
    format_param,
    format_scalar,
    parse_expression,
)
from .resultant import build_resultant_matrix, det_fraction_free
from .scalar import NEG_INF, ONE

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT = 0, 2, 3


class InputError(ValueError):
    """Bad arity or an argument outside a verb's domain."""


@dataclass
class Command:
    verb: str
    texts: List[str]
    ctx: Context = field(default_factory=Context)
    as_json: bool = False


@dataclass
class Outcome:
    text: str
    result: Any
    witness: Any = None


# -- rendering helpers ------------------------------------------------------------


def _fmt_order(k) -> Any:
    return None if k == NEG_INF else int(k)


def render_resultant(R: DiffPoly, param: str = "u") -> str:
    """Factored as ``c*(g)^k`` when R is a perfect power, expanded otherwise."""
    found = dp_perfect_power(R)
    if found is None:
        return format_diffpoly(R, param)
    c, g, k = found
    body = f"({format_diffpoly(g, param)})^{k}"
    if c == ONE:
        return body
    if c == -ONE:
        return "-" + body
    coeff = format_scalar(c)
    return f"({coeff})*{body}" if not c.is_atomic() else f"{coeff}*{body}"


def _param_obj(pair) -> LinearRationalParam:
    try:
        return LinearRationalParam(pair[0], pair[1])
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _general_param(pair) -> GeneralRationalParam:
    try:
        return GeneralRationalParam(pair[0], pair[1])
    except ValueError as exc:
        raise InputError(str(exc)) from None


# -- verbs ------------------------------------------------------------------------


def _two_ops(verb: str, fn) -> Callable:
    def run(args, ctx):
        L = fn(args[0], args[1])
        s = format_operator(L)
        return Outcome(s, s)

    run.__name__ = verb
    return run


def _ele(args, ctx):
    tr = ele_trace(args[0], args[1])
    n = tr.n
    names = ("R", "A_n", "B_n", "A_{n-1}", "B_{n-1}")
    ops = (tr.R[n - 1], tr.A[n], tr.B[n], tr.A[n - 1], tr.B[n - 1])
    res = {k: format_operator(v) for k, v in zip(names, ops)}
    text = "\n".join(f"{k} = {v}" for k, v in res.items())
    return Outcome(text, res, {"steps": n})


def _resultant(args, ctx):
    f1, f2 = args
    try:
        M = build_resultant_matrix(f1, f2, "u")
    except ValueError as exc:
        raise InputError(str(exc)) from None
    R = det_fraction_free(M)
    shown = render_resultant(R, ctx.param)
    expanded = format_diffpoly(R, ctx.param)
    return Outcome(shown, shown, {"expanded": expanded, "matrix_size": M.size})


def _parametrize(args, ctx):
    F: LinearCurve = args[0]
    ok, w = is_unirational(F)
    if not ok:
        g = format_operator(w)
        return Outcome(f"not unirational; gcld = {g}", None, {"gcld": g})
    p = ldcp(F)
    s = format_param(p.coords, ctx.param)
    return Outcome(s, s, {"gcld": format_operator(w)})


def _implicitize(args, ctx):
    p = _param_obj(args[0])
    if p.is_polynomial():
        curve = implicitize_poly(p)
        s = format_diffpoly(curve.to_diffpoly(), ctx.param)
        return Outcome(s, s, {"method": "remainder-sequence"})
    try:
        rec = implicitize_rational(p)
    except ImproperParametrization as exc:
        raise InputError(str(exc)) from None
    s = format_diffpoly(rec.f_l, ctx.param)
    return Outcome(s, s, {"method": "remainder-sequence", "resultant": format_diffpoly(rec.resultant, ctx.param)})


def _proper(args, ctx):
    p = _param_obj(args[0])
    if p.m1 == NEG_INF or p.m2 == NEG_INF:
        if not p.is_polynomial():
            raise InputError("a rational parametrization needs u in both coordinates")
        ok = proper_check_poly(p)
        s = "proper: gcrd = 1" if ok else "improper: nontrivial gcrd"
        return Outcome(s, {"proper": ok, "summary": s}, None)
    rep = proper_check_rational(p)
    s = rep.describe()
    res = {
        "proper": rep.proper,
        "summary": s,
        "ord_x": _fmt_order(rep.ord_x),
        "ord_y": _fmt_order(rep.ord_y),
        "expected": list(rep.expected),
    }
    return Outcome(s, res, {"resultant": format_diffpoly(rep.resultant, ctx.param)})


def _invert(args, ctx):
    p = _param_obj(args[0])
    try:
        num, den = inversion(p)
    except ImproperParametrization as exc:
        raise InputError(str(exc)) from None
    s = format_fraction(num, den, ctx.param)
    return Outcome(f"{ctx.param} = {s}", s, {"numerator": format_diffpoly(num), "denominator": format_diffpoly(den)})


def _verify(args, ctx):
    F, pair = args
    ok = verify_on_curve(F, _general_param(pair))
    return Outcome("true" if ok else "false", ok)


def _mobius(args, ctx):
    p = _general_param(args[0])
    q = mobius_apply(p, *args[1:])
    s = format_param(q.coords, ctx.param)
    return Outcome(s, s)


def _wronskian(args, ctx):
    s = format_scalar(wronskian(list(args)))
    return Outcome(s, s)


def _membership(args, ctx):
    A, B = args
    Dop = ideal_membership_linear(A, B)
    uni, w = is_unirational(A)
    wit = {"A_unirational": uni, "gcld_A": format_operator(w)}
    if Dop is None:
        return Outcome("not a member", None, wit)
    s = format_operator(Dop)
    return Outcome(f"D = {s}", s, wit)


def _order_check(args, ctx):
    F, pair = args[0], args[1]
    if len(args) == 4:
        p = _general_param(pair)
        orders = tuple(_as_order(a) for a in args[2:])
    else:
        # reduced orders are only computed for linear fractions
        p = _param_obj(pair)
        if p.m1 == NEG_INF or p.m2 == NEG_INF:
            raise InputError("declare the orders m1 m2 when a coordinate is u-free")
        orders = (int(p.m1), int(p.m2))
    if not verify_on_curve(F, p):
        raise InputError("the parametrization does not lie on the curve")
    ok = order_relation_check(F, p, orders)
    return Outcome("true" if ok else "false", ok, {"orders": list(orders)})


def _as_order(s) -> int:
    if not s.is_constant() or s.constant_value().denominator != 1 or s.constant_value() < 0:
        raise InputError(f"an order must be a nonnegative integer, got {s}")
    return int(s.constant_value())


# verb -> (argument kinds, variadic tail kind or None, optional trailing kinds, handler)
VERBS: Dict[str, Tuple[Tuple[str, ...], Optional[str], Tuple[str, ...], Callable]] = {
    "gcld": (("operator", "operator"), None, (), _two_ops("gcld", gcld)),
    "gcrd": (("operator", "operator"), None, (), _two_ops("gcrd", gcrd)),
    "lcrm": (("operator", "operator"), None, (), _two_ops("lcrm", lcrm)),
    "ele": (("operator", "operator"), None, (), _ele),
    "resultant": (("diffpoly", "diffpoly"), None, (), _resultant),
    "parametrize": (("curve",), None, (), _parametrize),
    "implicitize": (("param",), None, (), _implicitize),
    "proper": (("param",), None, (), _proper),
    "invert": (("param",), None, (), _invert),
    "verify": (("diffpoly", "param"), None, (), _verify),
    "mobius": (("param", "scalar", "scalar", "scalar", "scalar"), None, (), _mobius),
    "wronskian": (("scalar",), "scalar", (), _wronskian),
    "membership": (("curve", "curve"), None, (), _membership),
    "order-check": (("diffpoly", "param"), None, ("scalar", "scalar"), _order_check),
}


def _kinds_for(verb: str, n: int) -> List[str]:
    fixed, tail, optional, _ = VERBS[verb]
    if tail is not None:
        if n < len(fixed):
            raise InputError(f"{verb} expects at least {len(fixed)} argument(s), got {n}")
        return list(fixed) + [tail] * (n - len(fixed))
    allowed = {len(fixed), len(fixed) + len(optional)}
    if n not in allowed:
        want = " or ".join(str(k) for k in sorted(allowed))
        raise InputError(f"{verb} expects {want} argument(s), got {n}")
    return (list(fixed) + list(optional))[:n]


def run_command(cmd: Command) -> Tuple[int, str]:
    """Execute ``cmd``; returns ``(exit status, rendered output)``."""
    try:
        if cmd.verb not in VERBS:
            raise InputError(f"unknown verb {cmd.verb!r}")
        kinds = _kinds_for(cmd.verb, len(cmd.texts))
        args = [parse_expression(t, k, cmd.ctx) for t, k in zip(cmd.texts, kinds)]
        out = VERBS[cmd.verb][3](args, cmd.ctx)
    except ParseError as exc:
        return EXIT_INPUT, _error(cmd, "parse error", exc, {"pos": exc.pos, "token": exc.token})
    except InvariantError as exc:
        return EXIT_INVARIANT, _error(cmd, "invariant violation", exc)
    except (InputError, ValueError, ZeroDivisionError) as exc:
        return EXIT_INPUT, _error(cmd, "input error", exc)
    if cmd.as_json:
        return EXIT_OK, _dump({"verb": cmd.verb, "inputs": cmd.texts, "result": out.result, "witness": out.witness})
    return EXIT_OK, out.text


def _error(cmd: Command, kind: str, exc: Exception, extra: Optional[dict] = None) -> str:
    msg = str(exc)
    if cmd.as_json:
        err = {"kind": kind, "message": msg}
        if extra:
            err.update(extra)
        return _dump({"verb": cmd.verb, "inputs": cmd.texts, "result": None, "witness": None, "error": err})
    return f"error: {kind}: {msg}"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def read_expressions(path: str) -> List[str]:
    """One expression per line; blank lines and ``#`` comments are skipped."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                out.append(line)
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dcurve",
        description="Exact algorithms for linear plane differential curves over Q(t).",
        epilog="Put '--' before expressions that begin with '-'.",
    )
    ap.add_argument("verb", choices=sorted(VERBS), help="operation to run")
    ap.add_argument("exprs", nargs="*", help="input expressions")
    ap.add_argument("--json", action="store_true", help="emit a JSON record")
    ap.add_argument("--field", choices=("qt", "q"), default="qt", help="base field: Q(t) (default) or Q")
    ap.add_argument("--var", default="u", help="name of the parameter (default u)")
    ap.add_argument("--file", help="read further expressions from a file, one per line")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    ns = ap.parse_intermixed_args(argv)
    if ns.var in ("x", "y", "t", "D") or not ns.var.isidentifier():
        ap.error(f"--var {ns.var!r} clashes with a reserved name")
    texts = list(ns.exprs)
    if ns.file:
        try:
            texts += read_expressions(ns.file)
        except OSError as exc:
            print(f"error: input error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    cmd = Command(ns.verb, texts, Context(ns.field, ns.var), ns.json)
    status, text = run_command(cmd)
    print(text, file=sys.stdout if status == EXIT_OK or cmd.as_json else sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
