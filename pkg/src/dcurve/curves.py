"""Parametrization, properness, implicitization and inversion of differential curves."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

from .diffpoly import (
    ELIMINATION_XYU,
    ONE_POLY,
    ZERO_POLY,
    DerivVar,
    DiffPoly,
    Fraction2,
    is_affine_linear,
    ord_reduced_linear_fraction,
    remainder_sequence,
    substitute,
    substitute_rational,
)
from .ore import OreOp, ele, gcld, gcrd, ore_apply, ore_mul, rquo_rrem
from .resultant import diff_resultant
from .scalar import NEG_INF, ONE, ZERO, ScalarRat, as_scalar


class InvariantError(RuntimeError):
    """A mathematical guarantee failed to hold; indicates a bug or bad data."""


class ImproperParametrization(ValueError):
    pass


def same_up_to_scalar(f: DiffPoly, g: DiffPoly) -> bool:
    """``f == c*g`` for some nonzero base-field ``c``."""
    if not f or not g:
        return not f and not g
    _, fc = f.leading_term()
    _, gc = g.leading_term()
    return f * gc == g * fc


def monic(f: DiffPoly) -> DiffPoly:
    """Divide by the coefficient of the leading term in the printing order."""
    if not f:
        return f
    return f / f.sorted_terms()[0][1]


# -- linear curves ----------------------------------------------------------------


def operator_to_poly(L: OreOp, name: str) -> DiffPoly:
    return DiffPoly({((DerivVar(name, i), 1),): c for i, c in enumerate(L.coeffs) if c})


def poly_to_operator(f: DiffPoly, name: str) -> Tuple[OreOp, ScalarRat]:
    """Split an affine-linear polynomial in one indeterminate into ``L(name) + c``."""
    if not is_affine_linear(f, name):
        raise ValueError(f"{f} is not affine-linear in {name}")
    order = f.order_in(name)
    coeffs = [] if order == NEG_INF else [f.coeff(DerivVar(name, i), 1).scalar_value() for i in range(order + 1)]
    return OreOp(coeffs), f.terms.get((), ZERO)


@dataclass(frozen=True)
class LinearCurve:
    """The curve ``L1(x) + L2(y) + a = 0``."""

    L1: OreOp
    L2: OreOp
    a: ScalarRat = ZERO

    def __post_init__(self):
        object.__setattr__(self, "a", as_scalar(self.a))
        if not self.L1 and not self.L2:
            raise ValueError("a linear curve needs a nonzero operator part")

    @classmethod
    def from_diffpoly(cls, f: DiffPoly) -> "LinearCurve":
        if not f.names() <= {"x", "y"}:
            raise ValueError("a linear curve involves only x and y")
        if f.total_degree() > 1:
            raise ValueError(f"{f} is not linear")
        return cls(*_split_linear(f))

    def to_diffpoly(self) -> DiffPoly:
        return operator_to_poly(self.L1, "x") + operator_to_poly(self.L2, "y") + DiffPoly.const(self.a)

    def __str__(self):
        return str(self.to_diffpoly())


def as_curve_poly(F) -> DiffPoly:
    return F.to_diffpoly() if isinstance(F, LinearCurve) else F


# -- parametrizations -------------------------------------------------------------


def _frac(v) -> Fraction2:
    if isinstance(v, DiffPoly):
        return v, ONE_POLY
    n, d = v
    return (n if isinstance(n, DiffPoly) else DiffPoly.const(n)), (d if isinstance(d, DiffPoly) else DiffPoly.const(d))


@dataclass(frozen=True)
class GeneralRationalParam:
    """``(first[0]/first[1], second[0]/second[1])`` with fractions in ``u``; reducedness is the caller's."""

    first: Fraction2
    second: Fraction2

    def __post_init__(self):
        object.__setattr__(self, "first", _frac(self.first))
        object.__setattr__(self, "second", _frac(self.second))
        for num, den in self.coords:
            if not den:
                raise ZeroDivisionError("parametrization with a zero denominator")
            if not (num.names() | den.names()) <= {"u"}:
                raise ValueError("parametrization coordinates may only involve u")
        if all(n.is_scalar() and d.is_scalar() for n, d in self.coords):
            raise ValueError("both coordinates lie in the base field")

    @property
    def coords(self) -> Tuple[Fraction2, Fraction2]:
        return (self.first, self.second)

    def same_as(self, other: "GeneralRationalParam") -> bool:
        """Coordinate-wise cross-multiplication equality."""
        return all(n1 * d2 == n2 * d1 for (n1, d1), (n2, d2) in zip(self.coords, other.coords))

    def __str__(self):
        from .parsing import format_param

        return format_param(self.coords)


@dataclass(frozen=True)
class LinearRationalParam(GeneralRationalParam):
    """Both coordinates affine-linear over affine-linear in ``u``, reduced."""

    m1: object = field(init=False, default=None)
    m2: object = field(init=False, default=None)

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "m1", ord_reduced_linear_fraction(*self.first))
        object.__setattr__(self, "m2", ord_reduced_linear_fraction(*self.second))

    @classmethod
    def polynomial(cls, p1: DiffPoly, p2: DiffPoly) -> "LinearRationalParam":
        return cls((p1, ONE_POLY), (p2, ONE_POLY))

    @classmethod
    def from_general(cls, p: GeneralRationalParam) -> "LinearRationalParam":
        return p if isinstance(p, cls) else cls(p.first, p.second)

    def is_polynomial(self) -> bool:
        return all(d == ONE_POLY for _, d in self.coords)


# -- unirationality and parametrization -------------------------------------------


def is_unirational(F: LinearCurve) -> Tuple[bool, OreOp]:
    w = gcld(F.L1, F.L2)
    return w.degree == 0, w


def ldcp(F: LinearCurve) -> Optional[LinearRationalParam]:
    """Proper polynomial parametrization of ``F``, or ``None`` when ``F`` is not unirational."""
    R, An, Bn, Aprev, Bprev = ele(F.L1, F.L2)
    if not R:
        raise InvariantError("ELE returned a zero gcld for a nonzero input")
    if R.degree > 0:
        return None
    c = R.coeffs[0]
    shift = -F.a / c
    p1 = operator_to_poly(An, "u") + DiffPoly.const(ore_apply(Aprev, shift))
    p2 = operator_to_poly(Bn, "u") + DiffPoly.const(ore_apply(Bprev, shift))
    p = LinearRationalParam.polynomial(p1, p2)
    if __debug__:
        if not verify_on_curve(F, p):
            raise InvariantError(f"LDCP output {p} does not lie on {F}")
        if not proper_check_poly(p):
            raise InvariantError(f"LDCP output {p} is not proper")
    return p


def verify_on_curve(F, p: GeneralRationalParam) -> bool:
    """True iff the cleared numerator of F(p(u)) vanishes."""
    F = as_curve_poly(F)
    if not F.names() <= {"x", "y"}:
        raise ValueError("the curve polynomial may only involve x and y")
    fast = _linear_at_poly(F, p)
    if fast is not None:
        return not fast[0] and not fast[1]
    num, _ = substitute_rational(F, p.first, p.second)
    return not num


def _split_linear(f: DiffPoly) -> Tuple[OreOp, OreOp, ScalarRat]:
    free = f.terms.get((), ZERO)
    ops = []
    for name in ("x", "y"):
        order = f.order_in(name)
        if order == NEG_INF:
            ops.append(OreOp())
        else:
            ops.append(OreOp(f.coeff(DerivVar(name, i), 1).scalar_value() for i in range(order + 1)))
    return ops[0], ops[1], free


def _linear_at_poly(F: DiffPoly, p: GeneralRationalParam) -> Optional[Tuple[OreOp, ScalarRat]]:
    """``(M, s)`` with F(p) = M(u) + s, for linear F and affine-linear polynomial p.

    F(p) = (L1*A + L2*B)(u) + L1(c1) + L2(c2) + a.  None when the shape does not apply.
    """
    (p1, q1), (p2, q2) = p.first, p.second
    if q1 != ONE_POLY or q2 != ONE_POLY or F.total_degree() > 1 or not F.names() <= {"x", "y"}:
        return None
    if not (is_affine_linear(p1, "u") and is_affine_linear(p2, "u")):
        return None
    L1, L2, a = _split_linear(F)
    A, c1 = poly_to_operator(p1, "u")
    B, c2 = poly_to_operator(p2, "u")
    return ore_mul(L1, A) + ore_mul(L2, B), ore_apply(L1, c1) + ore_apply(L2, c2) + a


def proper_check_poly(p: LinearRationalParam) -> bool:
    """Polynomial case: proper iff the operator parts have a trivial gcrd."""
    p = LinearRationalParam.from_general(p)
    if not p.is_polynomial():
        raise ValueError("proper_check_poly needs unit denominators")
    L1, _ = poly_to_operator(p.first[0], "u")
    L2, _ = poly_to_operator(p.second[0], "u")
    return gcrd(L1, L2).degree <= 0


@dataclass(frozen=True)
class ProperReport:
    resultant: DiffPoly
    ord_x: object
    ord_y: object
    expected: Tuple[int, int]
    proper: bool

    def describe(self) -> str:
        if not self.resultant:
            return "improper: R = 0"
        if self.proper:
            return f"proper: ord_x(R)={self.ord_x}, ord_y(R)={self.ord_y}"
        if self.ord_x != self.expected[0]:
            return f"improper: ord_x(R)={_fmt_ord(self.ord_x)}, expected {self.expected[0]}"
        return f"improper: ord_y(R)={_fmt_ord(self.ord_y)}, expected {self.expected[1]}"


def _fmt_ord(k) -> str:
    return "-inf" if k == NEG_INF else str(k)


def _defining_pair(p: LinearRationalParam) -> Tuple[DiffPoly, DiffPoly]:
    (p1, q1), (p2, q2) = p.coords
    return DiffPoly.var("x") * q1 - p1, DiffPoly.var("y") * q2 - p2


def _require_orders(p: LinearRationalParam):
    if p.m1 == NEG_INF or p.m2 == NEG_INF:
        raise ValueError("both coordinates must involve u (orders >= 0)")


def proper_check_rational(p: LinearRationalParam) -> ProperReport:
    p = LinearRationalParam.from_general(p)
    _require_orders(p)
    f1, f2 = _defining_pair(p)
    R = diff_resultant(f1, f2)
    ox, oy = R.order_in("x"), R.order_in("y")
    proper = bool(R) and ox == p.m2 and oy == p.m1
    return ProperReport(R, ox, oy, (p.m2, p.m1), proper)


def proper_check_via_curve(F, p: LinearRationalParam) -> bool:
    """For a verified pair: proper iff the coordinate orders match ord_y F and ord_x F."""
    F = as_curve_poly(F)
    p = LinearRationalParam.from_general(p)
    if not verify_on_curve(F, p):
        raise ValueError("the parametrization does not lie on the curve")
    return p.m1 == F.order_in("y") and p.m2 == F.order_in("x")


# -- implicitization and inversion ------------------------------------------------


def implicitize_poly(p: LinearRationalParam) -> LinearCurve:
    p = LinearRationalParam.from_general(p)
    if not p.is_polynomial():
        raise ValueError("implicitize_poly needs unit denominators")
    (p1, _), (p2, _) = p.coords
    if p1.is_scalar():
        return LinearCurve.from_diffpoly(DiffPoly.var("x") - p1)
    if p2.is_scalar():
        return LinearCurve.from_diffpoly(DiffPoly.var("y") - p2)
    chain = remainder_sequence(DiffPoly.var("x") - p1, DiffPoly.var("y") - p2, ELIMINATION_XYU)
    fl = chain[-1]
    if not fl:
        raise InvariantError("remainder sequence ended in zero for a polynomial parametrization")
    curve = LinearCurve.from_diffpoly(monic(fl))
    if __debug__ and not verify_on_curve(curve, p):
        raise InvariantError("implicit equation does not vanish on its parametrization")
    return curve


@dataclass(frozen=True)
class ImplicitRecord:
    """``f_l`` is a verified implicit multiple; ``f_prev = g*u + h`` precedes it in the chain.

    The resultant is computed on first access when the properness gate did
    not need it.
    """

    f_l: DiffPoly
    f_prev: DiffPoly
    param: "LinearRationalParam" = field(repr=False, compare=False)
    _resultant: Optional[DiffPoly] = field(default=None, repr=False, compare=False)

    @property
    def resultant(self) -> DiffPoly:
        if self._resultant is None:
            object.__setattr__(self, "_resultant", diff_resultant(*_defining_pair(self.param)))
        return self._resultant


def _properness_gate(p: LinearRationalParam) -> Tuple[bool, str, Optional[DiffPoly]]:
    # polynomial inputs: gcrd test, equivalent to the resultant orders and much cheaper
    if p.is_polynomial():
        ok = proper_check_poly(p)
        return ok, "" if ok else "nontrivial gcrd of the operator parts", None
    report = proper_check_rational(p)
    return report.proper, report.describe(), report.resultant


def implicitize_rational(p: LinearRationalParam) -> ImplicitRecord:
    p = LinearRationalParam.from_general(p)
    _require_orders(p)
    ok, why, R = _properness_gate(p)
    if not ok:
        raise ImproperParametrization(f"{p} is not proper ({why})")
    chain = remainder_sequence(*_defining_pair(p), ELIMINATION_XYU)
    fl, fprev = chain[-1], chain[-2]
    if not fl:
        raise InvariantError("remainder sequence of a proper parametrization ended in zero")
    if fprev.order_in("u") != 0:
        raise InvariantError("penultimate remainder is not of u-order 0")
    if fl.order_in("x") != p.m2 or fl.order_in("y") != p.m1:
        raise InvariantError("implicit multiple has unexpected orders")
    if not verify_on_curve(fl, p):
        raise InvariantError("implicit multiple does not vanish on the parametrization")
    return ImplicitRecord(fl, fprev, p, R)


def inversion(p: LinearRationalParam) -> Tuple[DiffPoly, DiffPoly]:
    """``(numer, denom)`` in x, y with ``u == numer/denom`` along ``p``."""
    p = LinearRationalParam.from_general(p)
    _require_orders(p)
    if p.m1 < 1 or p.m2 < 1:
        raise ValueError("inversion needs both coordinate orders >= 1")
    rec = implicitize_rational(p)
    g = rec.f_prev.coeff(DerivVar("u", 0), 1)
    h = rec.f_prev.coeff(DerivVar("u", 0), 0)
    _, lc = g.leading_term()
    numer, denom = -h / lc, g / lc
    if not _reproduces_u(numer, denom, p):
        raise InvariantError("inversion does not reproduce u")
    for f in (numer, denom):
        if f.order_in("x") >= p.m2 or f.order_in("y") >= p.m1:
            raise InvariantError("inversion violates its order bounds")
    return numer, denom


def _reproduces_u(numer: DiffPoly, denom: DiffPoly, p: LinearRationalParam) -> bool:
    """Cleared numerator of numer(p) - u*denom(p) is zero."""
    fast = _linear_at_poly(numer, p) if denom.is_scalar() else None
    if fast is not None:
        M, s = fast
        return M == OreOp.scalar(denom.scalar_value()) and not s
    num, _ = substitute(numer - DiffPoly.var("u") * denom, {"x": p.first, "y": p.second})
    return not num


# -- Moebius transforms and order relations ---------------------------------------


def _subst_weight(f: DiffPoly, name: str) -> int:
    return max((sum(e * (v.order + 1) for v, e in m if v.name == name) for m in f.terms), default=0)


def mobius_apply(p: GeneralRationalParam, a, b, c, d) -> GeneralRationalParam:
    """``p((a*u + b)/(c*u + d))`` with cleared, cancelled denominators."""
    a, b, c, d = map(as_scalar, (a, b, c, d))
    if not (a * d - b * c):
        raise ValueError("degenerate Moebius transform: ad - bc = 0")
    u = DiffPoly.var("u")
    w_num = u * a + DiffPoly.const(b)
    w_den = u * c + DiffPoly.const(d)
    coords = []
    for num, den in p.coords:
        en, ed = _subst_weight(num, "u"), _subst_weight(den, "u")
        nn, _ = substitute(num, {"u": (w_num, w_den)})
        nd, _ = substitute(den, {"u": (w_num, w_den)})
        if en >= ed:
            coords.append((nn, nd * w_den ** (en - ed)))
        else:
            coords.append((nn * w_den ** (ed - en), nd))
    return GeneralRationalParam(coords[0], coords[1])


def order_relation_check(F, p: GeneralRationalParam, declared_orders: Tuple[int, int]) -> bool:
    """ord_x F + m1 == ord_y F + m2 with ord_x F <= m2 and ord_y F <= m1."""
    F = as_curve_poly(F)
    m1, m2 = declared_orders
    ox, oy = F.order_in("x"), F.order_in("y")
    return ox + m1 == oy + m2 and ox <= m2 and oy <= m1


# -- linear ideal membership ------------------------------------------------------


def ideal_membership_linear(A: LinearCurve, B: LinearCurve) -> Optional[OreOp]:
    """``D`` with ``A == D(B)`` as linear differential polynomials, else ``None``."""
    if B.L1:
        Dop, rem = rquo_rrem(A.L1, B.L1)
    else:
        Dop, rem = rquo_rrem(A.L2, B.L2)
    if rem or not Dop:
        return None
    if ore_mul(Dop, B.L1) != A.L1 or ore_mul(Dop, B.L2) != A.L2:
        return None
    if ore_apply(Dop, B.a) != A.a:
        return None
    if Dop.degree > 0 and is_unirational(A)[0]:
        raise InvariantError("A is a proper derivative combination of B yet unirational")
    return Dop
