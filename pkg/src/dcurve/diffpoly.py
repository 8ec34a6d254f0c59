"""Sparse differential polynomials in x, y, u and their derivatives over Q(t)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple

from .scalar import NEG_INF, ONE, ZERO, ScalarRat, as_scalar

#: Indeterminates in increasing elimination rank.
INDETERMINATES = ("x", "y", "u")
_RANK = {name: i for i, name in enumerate(INDETERMINATES)}


class DerivVar(NamedTuple):
    name: str
    order: int = 0

    def prime(self, k: int = 1) -> "DerivVar":
        return DerivVar(self.name, self.order + k)

    def __str__(self):
        from .parsing import format_derivvar

        return format_derivvar(self)


def _vkey(v: DerivVar) -> tuple:
    return (_RANK[v.name], v.order)


Monomial = Tuple[Tuple[DerivVar, int], ...]
_ONE_MONO: Monomial = ()


def _mono(pairs: Iterable[Tuple[DerivVar, int]]) -> Monomial:
    acc: Dict[DerivVar, int] = {}
    for v, e in pairs:
        if v.order < 0:
            raise ValueError(f"negative derivative order for {v.name}")
        if v.name not in _RANK:
            raise ValueError(f"unknown indeterminate {v.name!r}")
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted(((v, e) for v, e in acc.items() if e), key=lambda p: _vkey(p[0]), reverse=True))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    return _mono(a + b)


def mono_key(m: Monomial) -> tuple:
    """Graded lexicographic key; larger means higher in the printing order."""
    return (sum(e for _, e in m), tuple((_vkey(v), e) for v, e in m))


class DiffPoly:
    """Immutable sparse polynomial; ``terms`` maps monomials to nonzero scalars."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, ScalarRat]] = None):
        self.terms: Dict[Monomial, ScalarRat] = {}
        if terms:
            for m, c in terms.items():
                c = as_scalar(c)
                if c:
                    self.terms[m] = c
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, ScalarRat]) -> "DiffPoly":
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def var(cls, name: str, order: int = 0) -> "DiffPoly":
        return cls._raw({_mono([(DerivVar(name, order), 1)]): ONE})

    @classmethod
    def const(cls, c) -> "DiffPoly":
        c = as_scalar(c)
        return cls._raw({_ONE_MONO: c} if c else {})

    # -- inspection -----------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_scalar(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ONE_MONO in self.terms)

    def scalar_value(self) -> ScalarRat:
        if not self.is_scalar():
            raise ValueError("not an element of the base field")
        return self.terms.get(_ONE_MONO, ZERO)

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def names(self) -> set:
        return {v.name for v in self.variables()}

    def order_in(self, name: str):
        orders = [v.order for v in self.variables() if v.name == name]
        return max(orders) if orders else NEG_INF

    def order(self):
        orders = [v.order for v in self.variables()]
        return max(orders) if orders else NEG_INF

    def degree_in(self, v: DerivVar) -> int:
        return max((e for m in self.terms for w, e in m if w == v), default=0)

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=NEG_INF)

    def degree_in_names(self, names: Iterable[str]) -> int:
        names = set(names)
        return max((sum(e for v, e in m if v.name in names) for m in self.terms), default=0)

    def coeff(self, v: DerivVar, k: int) -> "DiffPoly":
        """Coefficient of ``v**k`` viewing self as a polynomial in ``v``."""
        out: Dict[Monomial, ScalarRat] = {}
        for m, c in self.terms.items():
            e = next((e for w, e in m if w == v), 0)
            if e == k:
                out[tuple(p for p in m if p[0] != v)] = c
        return DiffPoly._raw(out)

    def partial(self, v: DerivVar) -> "DiffPoly":
        out: Dict[Monomial, ScalarRat] = {}
        for m, c in self.terms.items():
            e = next((e for w, e in m if w == v), 0)
            if e:
                nm = tuple((w, f - 1) if w == v else (w, f) for w, f in m)
                nm = tuple(p for p in nm if p[1])
                out[nm] = out.get(nm, ZERO) + c * e
        return DiffPoly({m: c for m, c in out.items()})

    def sorted_terms(self) -> List[Tuple[Monomial, ScalarRat]]:
        return sorted(self.terms.items(), key=lambda mc: mono_key(mc[0]), reverse=True)

    def leading_term(self) -> Tuple[Monomial, ScalarRat]:
        m = max(self.terms, key=mono_key)
        return m, self.terms[m]

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if len(self.terms) < len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        out = dict(a.terms)
        for m, c in b.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return DiffPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return ZERO_POLY
        if other.is_scalar():
            c = other.scalar_value()
            return DiffPoly._raw({m: a * c for m, a in self.terms.items()})
        if self.is_scalar():
            return other * self
        out: Dict[Monomial, ScalarRat] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return DiffPoly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a differential polynomial")
        out, base = ONE_POLY, self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __truediv__(self, other):
        # only division by base-field scalars; use dp_exact_div otherwise
        c = as_scalar(other) if not isinstance(other, DiffPoly) else other.scalar_value()
        inv = c.inverse()
        return DiffPoly._raw({m: a * inv for m, a in self.terms.items()})

    def derive(self, k: int = 1) -> "DiffPoly":
        f = self
        for _ in range(k):
            f = _derive_once(f)
        return f

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        from .parsing import format_diffpoly

        return format_diffpoly(self)

    def __repr__(self):
        return f"DiffPoly({str(self)!r})"


def _coerce(v):
    if isinstance(v, DiffPoly):
        return v
    try:
        return DiffPoly.const(as_scalar(v))
    except TypeError:
        return NotImplemented


ZERO_POLY = DiffPoly._raw({})
ONE_POLY = DiffPoly._raw({_ONE_MONO: ONE})


def _derive_once(f: DiffPoly) -> DiffPoly:
    out: Dict[Monomial, ScalarRat] = {}

    def acc(m, c):
        s = out.get(m)
        out[m] = c if s is None else s + c

    for m, c in f.terms.items():
        dc = c.derive()
        if dc:
            acc(m, dc)
        for i, (v, e) in enumerate(m):
            rest = list(m[:i]) + ([(v, e - 1)] if e > 1 else []) + list(m[i + 1:])
            acc(_mono(rest + [(v.prime(), 1)]), c * e)
    return DiffPoly._raw({m: c for m, c in out.items() if c})


def dp_derive(f: DiffPoly) -> DiffPoly:
    return f.derive()


def dp_order_in(f: DiffPoly, v: str):
    return f.order_in(v)


def X(order: int = 0) -> DiffPoly:
    return DiffPoly.var("x", order)


def Y(order: int = 0) -> DiffPoly:
    return DiffPoly.var("y", order)


def U(order: int = 0) -> DiffPoly:
    return DiffPoly.var("u", order)


# -- rankings and reduction ---------------------------------------------------


@dataclass(frozen=True)
class Ranking:
    """``kind`` is ``"elimination"`` or ``"orderly"``; ``permutation`` lists names lowest first."""

    kind: str = "elimination"
    permutation: Tuple[str, ...] = INDETERMINATES

    def __post_init__(self):
        if self.kind not in ("elimination", "orderly"):
            raise ValueError(f"unknown ranking kind {self.kind!r}")
        if sorted(self.permutation) != sorted(set(self.permutation)):
            raise ValueError("ranking permutation repeats a name")

    def key(self, v: DerivVar) -> tuple:
        pos = self.permutation.index(v.name)
        if self.kind == "elimination":
            return (pos, v.order)
        return (v.order, pos)


ELIMINATION_XYU = Ranking("elimination", ("x", "y", "u"))
ELIMINATION_YXU = Ranking("elimination", ("y", "x", "u"))


def dp_leader_initial_separant(f: DiffPoly, r: Ranking = ELIMINATION_XYU) -> Tuple[DerivVar, DiffPoly, DiffPoly]:
    vs = f.variables()
    if not vs:
        raise ValueError("a base-field element has no leader")
    lead = max(vs, key=r.key)
    d = f.degree_in(lead)
    return lead, f.coeff(lead, d), f.partial(lead)


class PremResult(NamedTuple):
    """``S**separant_power * I**initial_power * f - remainder == sum(cofactors[k] * g^(k))``."""

    remainder: DiffPoly
    separant_power: int
    initial_power: int
    cofactors: Dict[int, DiffPoly]


def dp_prem_certificate(f: DiffPoly, g: DiffPoly, r: Ranking = ELIMINATION_XYU) -> PremResult:
    """Ritt-Kolchin remainder of ``f`` by the single polynomial ``g``."""
    if g.is_scalar():
        raise ValueError("cannot reduce by a base-field element")
    lead, init, sep = dp_leader_initial_separant(g, r)
    dg = g.degree_in(lead)
    cof: Dict[int, DiffPoly] = {}
    a = b = 0
    rem = f
    prolongs = {0: g}

    def scale_cof(c):
        for k in cof:
            cof[k] = cof[k] * c

    # partial reduction: remove proper derivatives of the leader, highest first
    while True:
        higher = [v for v in rem.variables() if v.name == lead.name and v.order > lead.order]
        if not higher:
            break
        w = max(higher, key=lambda v: v.order)
        s = w.order - lead.order
        if s not in prolongs:
            prolongs[s] = g.derive(s)
        gs = prolongs[s]
        while rem.degree_in(w) >= 1:
            e = rem.degree_in(w)
            c = rem.coeff(w, e) * DiffPoly.var(w.name, w.order) ** (e - 1)
            rem = sep * rem - c * gs
            scale_cof(sep)
            cof[s] = cof.get(s, ZERO_POLY) + c
            a += 1
    # algebraic pseudo-division in the leader
    lv = DiffPoly.var(lead.name, lead.order)
    while rem and rem.degree_in(lead) >= dg:
        e = rem.degree_in(lead)
        c = rem.coeff(lead, e) * lv ** (e - dg)
        rem = init * rem - c * g
        scale_cof(init)
        cof[0] = cof.get(0, ZERO_POLY) + c
        b += 1
    return PremResult(rem, a, b, {k: v for k, v in cof.items() if v})


def dp_prem(f: DiffPoly, g: DiffPoly, r: Ranking = ELIMINATION_XYU) -> DiffPoly:
    return dp_prem_certificate(f, g, r).remainder


def is_linear_in(f: DiffPoly, name: str) -> bool:
    """Degree at most one jointly in ``name`` and all its derivatives."""
    return f.degree_in_names([name]) <= 1


def remainder_sequence(f1: DiffPoly, f2: DiffPoly, r: Ranking = ELIMINATION_XYU, var: str = "u") -> List[DiffPoly]:
    """Chain f1, f2, f3 = prem(f1, f2), ... ending at the first element free of ``var``.

    The input of larger ``var``-order goes first; on a tie the given order is
    kept, so ``f2`` is the first reducer.  Each remainder is scaled to leading
    coefficient 1 in the printing order; a base-field multiple changes neither
    the differential ideal nor the orders, and it stops coefficient growth.
    """
    for f in (f1, f2):
        if not is_linear_in(f, var):
            raise ValueError(f"remainder sequence needs inputs linear in {var} and its derivatives")
        if f.order_in(var) == NEG_INF:
            raise ValueError(f"remainder sequence needs both inputs to involve {var}")
    if f1.order_in(var) < f2.order_in(var):
        f1, f2 = f2, f1
    chain = [f1, f2]
    while chain[-1].order_in(var) != NEG_INF:
        rem = dp_prem(chain[-2], chain[-1], r)
        chain.append(rem / rem.sorted_terms()[0][1] if rem else rem)
    return chain


# -- exact division and substitution -------------------------------------------


class InexactDivision(ArithmeticError):
    pass


def dp_exact_div(f: DiffPoly, g: DiffPoly) -> DiffPoly:
    """``f / g`` when ``g`` divides ``f``; raises :class:`InexactDivision` otherwise."""
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    if g.is_scalar():
        return f / g.scalar_value()
    gm, gc = g.leading_term()
    ginv = gc.inverse()
    gexp = dict(gm)
    quo: Dict[Monomial, ScalarRat] = {}
    rem = f
    while rem:
        rm, rc = rem.leading_term()
        rexp = dict(rm)
        qexp = []
        for v, e in gexp.items():
            have = rexp.get(v, 0)
            if have < e:
                raise InexactDivision("divisor does not divide the dividend")
            rexp[v] = have - e
        qm = _mono(rexp.items())
        qc = rc * ginv
        quo[qm] = qc
        rem = rem - g * DiffPoly._raw({qm: qc})
    return DiffPoly._raw(quo)


Fraction2 = Tuple[DiffPoly, DiffPoly]


def quotient_derivatives(num: DiffPoly, den: DiffPoly, k: int) -> List[DiffPoly]:
    """Numerators N_s with (num/den)^(s) = N_s / den^(s+1), for s = 0..k."""
    out = [num]
    dden = den.derive()
    for s in range(k):
        ns = out[-1]
        out.append(ns.derive() * den - ns * dden * (s + 1))
    return out


def substitute(F: DiffPoly, mapping: Mapping[str, Fraction2]) -> Fraction2:
    """Substitute ``name -> num/den`` for each mapped indeterminate.

    Returns ``(N, D)`` with ``F(...) == N/D`` as a formal fraction; ``D`` is a
    product of powers of the given denominators.  Unmapped indeterminates are
    left in place.
    """
    for name, (num, den) in mapping.items():
        if not den:
            raise ZeroDivisionError(f"zero denominator substituted for {name}")
    orders = {name: F.order_in(name) for name in mapping}
    ders = {
        name: quotient_derivatives(num, den, orders[name]) if orders[name] != NEG_INF else []
        for name, (num, den) in mapping.items()
    }
    weights = []
    for m in F.terms:
        w = {name: 0 for name in mapping}
        for v, e in m:
            if v.name in mapping:
                w[v.name] += e * (v.order + 1)
        weights.append(w)
    top = {name: max((w[name] for w in weights), default=0) for name in mapping}
    den_pows: Dict[Tuple[str, int], DiffPoly] = {}

    def den_pow(name, k):
        if (name, k) not in den_pows:
            den_pows[(name, k)] = mapping[name][1] ** k
        return den_pows[(name, k)]

    N = ZERO_POLY
    for (m, c), w in zip(F.terms.items(), weights):
        term = DiffPoly.const(c)
        rest = []
        for v, e in m:
            if v.name in mapping:
                term = term * ders[v.name][v.order] ** e
            else:
                rest.append((v, e))
        if rest:
            term = term * DiffPoly._raw({_mono(rest): ONE})
        for name in mapping:
            if top[name] - w[name]:
                term = term * den_pow(name, top[name] - w[name])
        N = N + term
    D = ONE_POLY
    for name in mapping:
        if top[name]:
            D = D * den_pow(name, top[name])
    return N, D


def substitute_rational(F: DiffPoly, px: Fraction2, py: Fraction2) -> Fraction2:
    return substitute(F, {"x": px, "y": py})


def is_affine_linear(p: DiffPoly, var: str = "u") -> bool:
    return p.names() <= {var} and p.total_degree() <= 1


def proportional(p: DiffPoly, q: DiffPoly) -> bool:
    """True when p and q are base-field multiples of each other (zero counts)."""
    if not p or not q:
        return True
    _, pc = p.leading_term()
    _, qc = q.leading_term()
    return p * qc == q * pc


def ord_reduced_linear_fraction(p: DiffPoly, q: DiffPoly, var: str = "u"):
    """Order of ``p/q`` for affine-linear ``p, q``; rejects non-reduced pairs."""
    if not q:
        raise ZeroDivisionError("zero denominator")
    for f in (p, q):
        if not is_affine_linear(f, var):
            raise ValueError(f"{f} is not affine-linear in {var}")
    if p.is_scalar() and q.is_scalar():
        return NEG_INF
    if proportional(p, q):
        raise ValueError(f"fraction ({p})/({q}) is not reduced")
    return max(p.order_in(var), q.order_in(var))


def _mono_div(a: Monomial, b: Monomial) -> Optional[Monomial]:
    exps = dict(a)
    for v, e in b:
        left = exps.get(v, 0) - e
        if left < 0:
            return None
        exps[v] = left
    return _mono(exps.items())


def dp_perfect_power(f: DiffPoly, max_terms: int = 256) -> Optional[Tuple[ScalarRat, DiffPoly, int]]:
    """Largest ``k >= 2`` with ``f == c * g**k``, as ``(c, g, k)``; ``None`` if there is none.

    ``g`` is normalized to leading coefficient 1, so ``c`` is the leading
    coefficient of ``f``.  Found by the term-by-term k-th root recurrence.
    """
    if not f or f.is_scalar():
        return None
    lm, lc = f.leading_term()
    h = f / lc
    for k in range(f.total_degree(), 1, -1):
        if any(e % k for _, e in lm):
            continue
        g = DiffPoly._raw({_mono((v, e // k) for v, e in lm): ONE})
        gm = next(iter(g.terms))
        denom_mono = _mono((v, e * (k - 1)) for v, e in gm)
        while len(g.terms) <= max_terms:
            r = h - g ** k
            if not r:
                return lc, g, k
            rm, rc = r.leading_term()
            qm = _mono_div(rm, denom_mono)
            if qm is None or mono_key(qm) >= mono_key(gm):
                break
            g = g + DiffPoly._raw({qm: rc / k})
    return None
