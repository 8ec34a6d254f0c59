"""Exact rational functions in ``t`` over the rationals, with ``d/dt``.

Polynomials in ``t`` are stored as tuples of :class:`fractions.Fraction`
coefficients, lowest degree first, with no trailing zeros.  The empty tuple
is the zero polynomial.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Tuple, Union

UPoly = Tuple[Fraction, ...]

#: Degree/order of an absent object (zero operator, missing indeterminate).
NEG_INF = float("-inf")

_ZERO: UPoly = ()
_ONE: UPoly = (Fraction(1),)


def _trim(coeffs) -> UPoly:
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def up_add(a: UPoly, b: UPoly) -> UPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def up_neg(a: UPoly) -> UPoly:
    return tuple(-c for c in a)


def up_sub(a: UPoly, b: UPoly) -> UPoly:
    return up_add(a, up_neg(b))


def up_scale(a: UPoly, c: Fraction) -> UPoly:
    if not c:
        return _ZERO
    return tuple(x * c for x in a)


def up_mul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return _ZERO
    if len(a) == 1:
        return up_scale(b, a[0])
    if len(b) == 1:
        return up_scale(a, b[0])
    # integer convolution after clearing denominators; one normalization per coefficient
    ia, da = _clear_denominators(a)
    ib, db = _clear_denominators(b)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(ia):
        if not x:
            continue
        for j, y in enumerate(ib):
            out[i + j] += x * y
    den = da * db
    return _trim(Fraction(c, den) for c in out)


def _clear_denominators(a: UPoly) -> tuple:
    den = 1
    for c in a:
        d = c.denominator
        if d != 1:
            den = den * d // math.gcd(den, d)
    return [c.numerator * (den // c.denominator) for c in a], den


def up_divmod(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return _ZERO, a
    if len(b) == 1:
        return up_scale(a, 1 / b[0]), _ZERO
    # pseudo-division over Z: lb^n * ia = q * ib + r exactly, so every step divides
    ia, da = _clear_denominators(a)
    ib, dbn = _clear_denominators(b)
    db, lb = len(ib) - 1, ib[-1]
    n = len(ia) - db
    scale = lb**n
    rem = [c * scale for c in ia]
    quo = [0] * n
    for k in range(n - 1, -1, -1):
        c = rem[k + db] // lb
        quo[k] = c
        if c:
            for j, y in enumerate(ib):
                rem[k + j] -= c * y
    qden, rden = scale * da, scale * da
    return _trim(Fraction(c * dbn, qden) for c in quo), _trim(Fraction(c, rden) for c in rem[:db])


def up_monic(a: UPoly) -> UPoly:
    if not a or a[-1] == 1:
        return a
    return up_scale(a, 1 / a[-1])


def _primitive_int(a: UPoly) -> list:
    """Integer primitive part (positive leading coefficient) of a nonzero polynomial."""
    den = 1
    for c in a:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [c.numerator * (den // c.denominator) for c in a]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _int_prem(a: list, b: list) -> list:
    # lc(b)^k * a reduced by b, all in Z[t]
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and any(a):
        k = len(a) - 1 - db
        la = a[-1]
        a = [c * lb for c in a]
        for j, y in enumerate(b):
            a[k + j] -= la * y
        while a and not a[-1]:
            a.pop()
    return a


_PRIME = 2_147_483_647


def _coprime_mod_p(x: list, y: list) -> bool:
    """True when the gcd mod p is constant, which forces gcd = 1 over Q.

    Sound only when p divides neither leading coefficient (then the modular
    gcd degree bounds the true one from above).
    """
    p = _PRIME
    if x[-1] % p == 0 or y[-1] % p == 0:
        return False
    a = [c % p for c in x]
    b = [c % p for c in y]
    while b:
        while b and not b[-1]:
            b.pop()
        if not b:
            break
        if len(b) == 1:
            return True
        inv = pow(b[-1], p - 2, p)
        db = len(b) - 1
        while len(a) - 1 >= db:
            c = a[-1] * inv % p
            k = len(a) - 1 - db
            if c:
                for j, v in enumerate(b):
                    a[k + j] = (a[k + j] - c * v) % p
            a.pop()
            while a and not a[-1]:
                a.pop()
        a, b = b, a
    return False


def up_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd; ``gcd(0, 0) = 0``.

    Coprimality is first tested modulo a large prime; otherwise a primitive
    pseudo-remainder sequence over the integers avoids the coefficient swell
    of Euclid over Q.
    """
    if not a:
        return up_monic(b)
    if not b:
        return up_monic(a)
    if len(a) == 1 or len(b) == 1:
        return _ONE
    x, y = _primitive_int(a), _primitive_int(b)
    if _coprime_mod_p(x, y):
        return _ONE
    if len(x) < len(y):
        x, y = y, x
    while True:
        r = _int_prem(x, y)
        if not r:
            break
        if len(r) == 1:
            return _ONE
        x, y = y, _primitive_int(tuple(Fraction(c) for c in r))
    lc = y[-1]
    return tuple(Fraction(c, lc) for c in y)


def up_derive(a: UPoly) -> UPoly:
    return _trim(i * c for i, c in enumerate(a) if i)


def up_format(a: UPoly, var: str = "t") -> str:
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += sign + body
    return out


class ScalarRat:
    """An element ``num/den`` of Q(t), kept reduced with a monic denominator."""

    # _sqf caches (s, w): s the squarefree part of den, w = den'/(den/s)
    __slots__ = ("num", "den", "_hash", "_sqf")

    def __init__(self, num=0, den=None):
        if isinstance(num, ScalarRat):
            if den is not None:
                raise TypeError("ScalarRat(ScalarRat, den) is not supported")
            self.num, self.den, self._hash, self._sqf = num.num, num.den, num._hash, num._sqf
            return
        n = _as_upoly(num)
        d = _ONE if den is None else _as_upoly(den)
        if not d:
            raise ZeroDivisionError("zero denominator")
        if not n:
            self.num, self.den = _ZERO, _ONE
        elif len(d) == 1:
            self.num, self.den = up_scale(n, 1 / d[0]), _ONE
        else:
            g = up_gcd(n, d)
            if len(g) > 1:
                n = up_divmod(n, g)[0]
                d = up_divmod(d, g)[0]
            lc = d[-1]
            if lc != 1:
                n, d = up_scale(n, 1 / lc), up_scale(d, 1 / lc)
            self.num, self.den = n, d
        self._hash = self._sqf = None

    @classmethod
    def _raw(cls, num: UPoly, den: UPoly) -> "ScalarRat":
        # caller guarantees canonical form
        obj = object.__new__(cls)
        obj.num, obj.den, obj._hash, obj._sqf = num, den, None, None
        return obj

    @classmethod
    def _raw_monic(cls, num: UPoly, den: UPoly) -> "ScalarRat":
        # caller guarantees gcd(num, den) = 1; only the scaling is fixed here
        if not num:
            return ZERO
        lc = den[-1]
        if lc != 1:
            num, den = up_scale(num, 1 / lc), up_scale(den, 1 / lc)
        return cls._raw(num, den)

    @classmethod
    def t(cls) -> "ScalarRat":
        return cls._raw((Fraction(0), Fraction(1)), _ONE)

    # -- predicates ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_constant(self) -> bool:
        """True when the derivative vanishes, i.e. the value lies in Q."""
        return len(self.num) <= 1 and len(self.den) == 1

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num[0] if self.num else Fraction(0)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            if len(self.den) == 1:
                return ScalarRat._raw(up_add(self.num, other.num), _ONE)
            return ScalarRat(up_add(self.num, other.num), self.den)
        # Henrici: only the common denominator factor can cancel
        g = up_gcd(self.den, other.den)
        if len(g) == 1:
            n = up_add(up_mul(self.num, other.den), up_mul(other.num, self.den))
            return ScalarRat._raw_monic(n, up_mul(self.den, other.den))
        d1 = up_divmod(self.den, g)[0]
        d2 = up_divmod(other.den, g)[0]
        n = up_add(up_mul(self.num, d2), up_mul(other.num, d1))
        if not n:
            return ZERO
        g2 = up_gcd(n, g)
        if len(g2) > 1:
            n = up_divmod(n, g2)[0]
            g = up_divmod(g, g2)[0]
        return ScalarRat._raw_monic(n, up_mul(up_mul(d1, d2), g))

    __radd__ = __add__

    def __neg__(self):
        return ScalarRat._raw(up_neg(self.num), self.den)

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
        if not self.num or not other.num:
            return ZERO
        if len(self.den) == 1 and len(other.den) == 1:
            return ScalarRat._raw(up_mul(self.num, other.num), _ONE)
        # cross-cancel before multiplying keeps the gcd work small
        g1 = up_gcd(self.num, other.den)
        g2 = up_gcd(other.num, self.den)
        n1 = up_divmod(self.num, g1)[0] if len(g1) > 1 else self.num
        d2 = up_divmod(other.den, g1)[0] if len(g1) > 1 else other.den
        n2 = up_divmod(other.num, g2)[0] if len(g2) > 1 else other.num
        d1 = up_divmod(self.den, g2)[0] if len(g2) > 1 else self.den
        n, d = up_mul(n1, n2), up_mul(d1, d2)
        lc = d[-1]
        if lc != 1:
            n, d = up_scale(n, 1 / lc), up_scale(d, 1 / lc)
        return ScalarRat._raw(n, d)

    __rmul__ = __mul__

    def inverse(self) -> "ScalarRat":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(t)")
        lc = self.num[-1]
        return ScalarRat._raw(up_scale(self.den, 1 / lc), up_scale(self.num, 1 / lc))

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def derive(self) -> "ScalarRat":
        """Quotient rule: (p/q)' = (p'q - pq')/q^2."""
        if len(self.den) == 1:
            return ScalarRat._raw(up_derive(self.num), _ONE)
        # with s = q/gcd(q, q') and w = q'/gcd(q, q') the numerator p's - pw is
        # coprime to q, so (p's - pw)/(q s) is already reduced; q s has the same
        # squarefree part and its w is w + s'
        if self._sqf is None:
            dq = up_derive(self.den)
            g = up_gcd(self.den, dq)
            self._sqf = (self.den, dq) if len(g) == 1 else (up_divmod(self.den, g)[0], up_divmod(dq, g)[0])
        s, w = self._sqf
        out = ScalarRat._raw_monic(up_sub(up_mul(up_derive(self.num), s), up_mul(self.num, w)), up_mul(self.den, s))
        if out.num:
            out._sqf = (s, up_add(w, up_derive(s)))
        return out

    # -- comparison / hashing -----------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            if len(self.den) == 1 and len(self.num) <= 1:
                self._hash = hash(self.num[0] if self.num else 0)
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    # -- printing -----------------------------------------------------------

    def is_atomic(self) -> bool:
        """Printable without surrounding parentheses inside a product."""
        if len(self.den) > 1:
            return False
        return sum(1 for c in self.num if c) <= 1

    def __str__(self):
        n = up_format(self.num)
        if len(self.den) == 1:
            return n
        if sum(1 for c in self.num if c) > 1:
            n = f"({n})"
        d = up_format(self.den)
        if sum(1 for c in self.den if c) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"ScalarRat({str(self)!r})"


def _as_upoly(v) -> UPoly:
    if isinstance(v, tuple):
        return _trim(Fraction(c) for c in v)
    if isinstance(v, (int, Fraction)):
        return _trim((Fraction(v),))
    if isinstance(v, list):
        return _trim(Fraction(c) for c in v)
    raise TypeError(f"cannot build a polynomial in t from {v!r}")


def _coerce(v) -> Union[ScalarRat, type(NotImplemented)]:
    if isinstance(v, ScalarRat):
        return v
    if isinstance(v, (int, Fraction)):
        return ScalarRat._raw(_trim((Fraction(v),)), _ONE)
    return NotImplemented


def as_scalar(v) -> ScalarRat:
    s = _coerce(v)
    if s is NotImplemented:
        raise TypeError(f"not a scalar: {v!r}")
    return s


ZERO = ScalarRat._raw(_ZERO, _ONE)
ONE = ScalarRat._raw(_ONE, _ONE)
T = ScalarRat.t()


def rf_arith(lhs: ScalarRat, rhs: ScalarRat, op: str) -> ScalarRat:
    """Dispatch ``add``/``sub``/``mul``/``div``; division by zero raises ZeroDivisionError."""
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        return lhs / rhs
    raise ValueError(f"unknown operation {op!r}")


def rf_derive(x: ScalarRat) -> ScalarRat:
    return as_scalar(x).derive()


def rf_is_constant(x: ScalarRat) -> bool:
    return as_scalar(x).is_constant()
