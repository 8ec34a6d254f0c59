"""Text syntax for scalars, operators, differential polynomials and parametrizations.

Grammar (whitespace-insensitive)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" INT)?
    atom   := INT | NAME "'"* ("^(" INT ")")? | "(" expr ")"

Primes and ``^(k)`` order suffixes bind to the variable before ``^`` does,
so ``x'^2`` is ``(x')^2`` and ``x^(4)`` is the fourth derivative of ``x``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple

from .diffpoly import DerivVar, DiffPoly, Monomial
from .ore import D as D_OP
from .ore import OreOp
from .scalar import ONE, T, ScalarRat, as_scalar


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0, token: str = ""):
        self.text, self.pos, self.token = text, pos, token
        where = f" at position {pos}" if text else ""
        tok = f" (token {token!r})" if token else ""
        super().__init__(f"{message}{where}{tok}")


class Token(NamedTuple):
    kind: str
    value: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),']))")


def tokenize(text: str) -> List[Token]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            bad = text[pos:].lstrip()
            start = n - len(bad)
            raise ParseError("unexpected character", text, start, bad[:1])
        kind = m.lastgroup
        toks.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(Token("end", "", len(text)))
    return toks


# AST nodes are plain tuples: ("num", Fraction) ("var", name, order, pos)
# ("add"|"sub"|"mul"|"div", a, b) ("neg", a) ("pow", a, k)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok: Optional[Token] = None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok.pos, tok.value or "<end>")

    def expect(self, value: str) -> Token:
        tok = self.peek()
        if tok.value != value or tok.kind == "end":
            self.error(f"expected {value!r}")
        return self.take()

    def expr(self):
        node = self.term()
        while self.peek().value in ("+", "-") and self.peek().kind == "op":
            op = self.take().value
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek().value in ("*", "/") and self.peek().kind == "op":
            op = self.take().value
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.value in ("-", "+"):
            self.take()
            inner = self.unary()
            return ("neg", inner) if tok.value == "-" else inner
        return self.power()

    def _int(self) -> int:
        tok = self.peek()
        if tok.kind == "op" and tok.value == "-":
            self.error("order suffix and exponents must be nonnegative integers")
        if tok.kind != "int":
            self.error("expected an integer")
        return int(self.take().value)

    def power(self):
        node = self.atom()
        if self.peek().value == "^" and self.peek().kind == "op":
            self.take()
            node = ("pow", node, self._int())
            if self.peek().value == "^":
                self.error("chained exponents are ambiguous; use parentheses")
        return node

    def atom(self):
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            return ("num", Fraction(int(tok.value)))
        if tok.kind == "name":
            self.take()
            order = 0
            while self.peek().value == "'" and self.peek().kind == "op":
                self.take()
                order += 1
            if (
                self.peek().value == "^"
                and self.toks[self.i + 1].value == "("
                and self.toks[self.i + 1].kind == "op"
            ):
                if order:
                    self.error("mixing primes with an order suffix")
                self.take()
                self.take()
                order = self._int()
                self.expect(")")
            return ("var", tok.value, order, tok.pos)
        if tok.kind == "op" and tok.value == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        self.error("unexpected token")

    def finish(self, node):
        if self.peek().kind != "end":
            self.error("unexpected trailing input")
        return node


def parse_ast(text: str):
    p = _Parser(text)
    return p.finish(p.expr())


class Context(NamedTuple):
    """Parsing options: base field (``"qt"`` or ``"q"``) and the parameter's name."""

    field: str = "qt"
    param: str = "u"


DEFAULT = Context()


def _err(ctx_text, msg, pos=0, token=""):
    raise ParseError(msg, ctx_text, pos, token)


class _Eval:
    def __init__(self, text: str, ctx: Context, kind: str):
        self.text, self.ctx, self.kind = text, ctx, kind

    def name_of(self, node):
        _, name, order, pos = node
        if name == "t":
            if self.ctx.field == "q":
                _err(self.text, "t is not available over the constant field Q", pos, name)
            if order:
                _err(self.text, "derivatives of t are not variables; write 1", pos, name)
            return "t"
        if self.kind == "operator":
            if name == "D" and not order:
                return "D"
        elif self.kind in ("diffpoly", "fraction"):
            internal = {"x": "x", "y": "y", self.ctx.param: "u"}.get(name)
            if internal:
                return internal
        _err(self.text, f"unknown symbol for {self.kind} input", pos, name)

    def scalar(self, node) -> ScalarRat:
        tag = node[0]
        if tag == "num":
            return as_scalar(node[1])
        if tag == "var":
            if self.name_of(node) != "t":
                _err(self.text, "expected a scalar", node[3], node[1])
            return T
        if tag == "neg":
            return -self.scalar(node[1])
        if tag == "pow":
            return self.scalar(node[1]) ** node[2]
        a, b = self.scalar(node[1]), self.scalar(node[2])
        if tag == "add":
            return a + b
        if tag == "sub":
            return a - b
        if tag == "mul":
            return a * b
        if not b:
            _err(self.text, "division by zero")
        return a / b

    def operator(self, node) -> OreOp:
        tag = node[0]
        if tag == "num":
            return OreOp.scalar(node[1])
        if tag == "var":
            return D_OP if self.name_of(node) == "D" else OreOp.scalar(T)
        if tag == "neg":
            return -self.operator(node[1])
        if tag == "pow":
            return self.operator(node[1]) ** node[2]
        if tag == "div":
            # ring semantics: L / s == L * s^(-1)
            return self.operator(node[1]) * OreOp.scalar(self._scalar_divisor(node[2]).inverse())
        a, b = self.operator(node[1]), self.operator(node[2])
        if tag == "add":
            return a + b
        if tag == "sub":
            return a - b
        return a * b

    def _scalar_divisor(self, node) -> ScalarRat:
        try:
            s = _Eval(self.text, self.ctx, "scalar").scalar(node)
        except ParseError as exc:
            raise ParseError("only division by base-field scalars is allowed here", self.text, exc.pos, exc.token) from None
        if not s:
            _err(self.text, "division by zero")
        return s

    def diffpoly(self, node) -> DiffPoly:
        tag = node[0]
        if tag == "num":
            return DiffPoly.const(node[1])
        if tag == "var":
            name = self.name_of(node)
            return DiffPoly.const(T) if name == "t" else DiffPoly.var(name, node[2])
        if tag == "neg":
            return -self.diffpoly(node[1])
        if tag == "pow":
            return self.diffpoly(node[1]) ** node[2]
        if tag == "div":
            return self.diffpoly(node[1]) / self._scalar_divisor(node[2])
        a, b = self.diffpoly(node[1]), self.diffpoly(node[2])
        if tag == "add":
            return a + b
        if tag == "sub":
            return a - b
        return a * b

    def fraction(self, node) -> Tuple[DiffPoly, DiffPoly]:
        tag = node[0]
        if tag in ("num", "var"):
            return self.diffpoly(node), DiffPoly.const(ONE)
        if tag == "neg":
            n, d = self.fraction(node[1])
            return -n, d
        if tag == "pow":
            n, d = self.fraction(node[1])
            return n ** node[2], d ** node[2]
        (a, b), (c, d) = self.fraction(node[1]), self.fraction(node[2])
        if tag == "add":
            return (a + c, b) if b == d else (a * d + c * b, b * d)
        if tag == "sub":
            return (a - c, b) if b == d else (a * d - c * b, b * d)
        if tag == "mul":
            return a * c, b * d
        if not c:
            _err(self.text, "division by zero")
        return a * d, b * c


def parse_scalar(text: str, ctx: Context = DEFAULT) -> ScalarRat:
    return _Eval(text, ctx, "scalar").scalar(parse_ast(text))


def parse_operator(text: str, ctx: Context = DEFAULT) -> OreOp:
    return _Eval(text, ctx, "operator").operator(parse_ast(text))


def parse_diffpoly(text: str, ctx: Context = DEFAULT) -> DiffPoly:
    return _Eval(text, ctx, "diffpoly").diffpoly(parse_ast(text))


def parse_fraction(text: str, ctx: Context = DEFAULT) -> Tuple[DiffPoly, DiffPoly]:
    return _Eval(text, ctx, "fraction").fraction(parse_ast(text))


def _split_pair(text: str) -> Tuple[str, str]:
    stripped = text.strip()
    if not (stripped.startswith("(") and stripped.endswith(")")):
        raise ParseError("a parametrization is written (first, second)", text, 0, stripped[:1])
    inner = stripped[1:-1]
    depth = 0
    cut = None
    for i, ch in enumerate(inner):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parentheses", text, i + 1, ch)
        elif ch == "," and depth == 0:
            if cut is not None:
                raise ParseError("a parametrization has exactly two coordinates", text, i + 1, ch)
            cut = i
    if cut is None or depth:
        raise ParseError("a parametrization is written (first, second)", text, len(text), "")
    return inner[:cut], inner[cut + 1:]


def parse_param(text: str, ctx: Context = DEFAULT):
    """``(n1/d1, n2/d2)`` -> ((n1, d1), (n2, d2))."""
    a, b = _split_pair(text)
    return parse_fraction(a, ctx), parse_fraction(b, ctx)


def parse_expression(text: str, kind: str, ctx: Context = DEFAULT):
    """Dispatch on ``kind`` in {scalar, operator, diffpoly, fraction, param, curve}."""
    if kind == "scalar":
        return parse_scalar(text, ctx)
    if kind == "operator":
        return parse_operator(text, ctx)
    if kind == "diffpoly":
        return parse_diffpoly(text, ctx)
    if kind == "fraction":
        return parse_fraction(text, ctx)
    if kind == "param":
        return parse_param(text, ctx)
    if kind == "curve":
        from .curves import LinearCurve

        f = parse_diffpoly(text, ctx)
        try:
            return LinearCurve.from_diffpoly(f)
        except ValueError as exc:
            raise ParseError(str(exc), text, 0, "") from None
    raise ValueError(f"unknown expression kind {kind!r}")


# -- printing -----------------------------------------------------------------


def format_derivvar(v: DerivVar, param: str = "u") -> str:
    name = param if v.name == "u" else v.name
    if v.order <= 3:
        return name + "'" * v.order
    return f"{name}^({v.order})"


def format_monomial(m: Monomial, param: str = "u") -> str:
    parts = []
    for v, e in reversed(m):
        s = format_derivvar(v, param)
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts)


def _signed(c: ScalarRat, mono: str) -> Tuple[bool, str]:
    neg = bool(c.num) and c.num[-1] < 0
    if neg:
        c = -c
    if mono and c == ONE:
        return neg, mono
    body = str(c)
    if not c.is_atomic():
        body = f"({body})"
    return neg, f"{body}*{mono}" if mono else body


def _join(items: List[Tuple[bool, str]]) -> str:
    if not items:
        return "0"
    neg, body = items[0]
    out = ("-" if neg else "") + body
    for neg, body in items[1:]:
        out += (" - " if neg else " + ") + body
    return out


def format_scalar(c: ScalarRat) -> str:
    return str(c)


def format_diffpoly(f: DiffPoly, param: str = "u") -> str:
    return _join([_signed(c, format_monomial(m, param)) for m, c in f.sorted_terms()])


def format_operator(L: OreOp) -> str:
    items = []
    for k in range(len(L.coeffs) - 1, -1, -1):
        c = L.coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else ("D" if k == 1 else f"D^{k}")
        items.append(_signed(c, mono))
    return _join(items)


def format_fraction(num: DiffPoly, den: DiffPoly, param: str = "u") -> str:
    n = format_diffpoly(num, param)
    if den == DiffPoly.const(ONE):
        return n
    d = format_diffpoly(den, param)
    if len(num.terms) > 1:
        n = f"({n})"
    if len(den.terms) > 1 or next(iter(den.terms.values())) != ONE:
        d = f"({d})"
    return f"{n}/{d}"


def format_param(p, param: str = "u") -> str:
    (n1, d1), (n2, d2) = p
    return f"({format_fraction(n1, d1, param)}, {format_fraction(n2, d2, param)})"
