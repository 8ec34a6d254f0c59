"""Linear differential operators over Q(t): the skew ring with D*a = a*D + a'."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, List, Sequence

from .scalar import NEG_INF, ONE, ZERO, ScalarRat, as_scalar


def _trim(coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


class OreOp:
    """``sum(coeffs[i] * D**i)`` with coefficients in Q(t).

    Multiplication is the operator product, so ``D * t == t*D + 1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim(as_scalar(c) for c in coeffs)

    @classmethod
    def scalar(cls, c) -> "OreOp":
        return cls((c,))

    @classmethod
    def monomial(cls, c, k: int) -> "OreOp":
        return cls([ZERO] * k + [as_scalar(c)])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> ScalarRat:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, i: int) -> ScalarRat:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def is_scalar(self) -> bool:
        """Degree <= 0, i.e. the operator lies in the base field."""
        return len(self.coeffs) <= 1

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return OreOp(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return OreOp(-c for c in self.coeffs)

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
        return ore_mul(self, other)

    def __rmul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return ore_mul(other, self)

    def __pow__(self, k: int):
        out = OreOp((ONE,))
        for _ in range(k):
            out = out * self
        return out

    def scale_left(self, c) -> "OreOp":
        """``c * self``; coefficient-wise."""
        c = as_scalar(c)
        return OreOp(c * a for a in self.coeffs)

    def __call__(self, r) -> ScalarRat:
        return ore_apply(self, r)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        from .parsing import format_operator

        return format_operator(self)

    def __repr__(self):
        return f"OreOp({str(self)!r})"


def _coerce(v):
    if isinstance(v, OreOp):
        return v
    if isinstance(v, ScalarRat) or isinstance(v, int):
        return OreOp((v,))
    try:
        return OreOp((as_scalar(v),))
    except TypeError:
        return NotImplemented


D = OreOp((ZERO, ONE))
ZERO_OP = OreOp()
ONE_OP = OreOp((ONE,))


def ore_mul(lhs: OreOp, rhs: OreOp) -> OreOp:
    """Operator product via D^i * b = sum_k C(i,k) b^(k) D^(i-k)."""
    if not lhs or not rhs:
        return ZERO_OP
    n = len(lhs.coeffs) - 1
    out = [ZERO] * (n + len(rhs.coeffs))
    for j, b in enumerate(rhs.coeffs):
        if not b:
            continue
        ders = [b]
        for _ in range(n):
            ders.append(ders[-1].derive())
        for i, a in enumerate(lhs.coeffs):
            if not a:
                continue
            for k in range(i + 1):
                bk = ders[k]
                if bk:
                    out[i - k + j] = out[i - k + j] + a * bk * comb(i, k)
    return OreOp(out)


def ore_apply(L: OreOp, r) -> ScalarRat:
    r = as_scalar(r)
    total = ZERO
    cur = r
    for i, a in enumerate(L.coeffs):
        if i:
            cur = cur.derive()
        if a and cur:
            total = total + a * cur
    return total


def lquo_lrem(L1: OreOp, L2: OreOp) -> tuple[OreOp, OreOp]:
    """Left division: ``L1 == L2*Q + R`` with ``deg R < deg L2``."""
    if not L2:
        raise ZeroDivisionError("left division by the zero operator")
    m = L2.degree
    inv = L2.lc.inverse()
    quo = [ZERO] * max(L1.degree - m + 1, 0)
    rem = L1
    while rem and rem.degree >= m:
        k = rem.degree - m
        # leading coefficient of L2 * (q D^k) is lc(L2) * q
        q = rem.lc * inv
        quo[k] = q
        rem = rem - ore_mul(L2, OreOp.monomial(q, k))
    return OreOp(quo), rem


def rquo_rrem(L1: OreOp, L2: OreOp) -> tuple[OreOp, OreOp]:
    """Right division: ``L1 == Q*L2 + R`` with ``deg R < deg L2``."""
    if not L2:
        raise ZeroDivisionError("right division by the zero operator")
    m = L2.degree
    inv = L2.lc.inverse()
    quo = [ZERO] * max(L1.degree - m + 1, 0)
    rem = L1
    while rem and rem.degree >= m:
        k = rem.degree - m
        q = rem.lc * inv
        quo[k] = q
        rem = rem - ore_mul(OreOp.monomial(q, k), L2)
    return OreOp(quo), rem


def lrem(L1: OreOp, L2: OreOp) -> OreOp:
    return lquo_lrem(L1, L2)[1]


def rrem(L1: OreOp, L2: OreOp) -> OreOp:
    return rquo_rrem(L1, L2)[1]


@dataclass
class EleTrace:
    """Every R_i, A_i, B_i (from i = 0) and Q_i (from i = 1) of a left Euclid run."""

    R: List[OreOp] = field(default_factory=list)
    A: List[OreOp] = field(default_factory=list)
    B: List[OreOp] = field(default_factory=list)
    Q: List[OreOp] = field(default_factory=lambda: [None])

    @property
    def n(self) -> int:
        return len(self.R) - 1


def ele_trace(L1: OreOp, L2: OreOp) -> EleTrace:
    if not L1 and not L2:
        raise ValueError("ELE needs at least one nonzero operator")
    tr = EleTrace(R=[L1, L2], A=[ONE_OP, ZERO_OP], B=[ZERO_OP, ONE_OP])
    i = 1
    while tr.R[i]:
        i += 1
        q, r = lquo_lrem(tr.R[i - 2], tr.R[i - 1])
        tr.Q.append(q)
        tr.R.append(r)
        tr.A.append(tr.A[i - 2] - ore_mul(tr.A[i - 1], q))
        tr.B.append(tr.B[i - 2] - ore_mul(tr.B[i - 1], q))
    return tr


def ele(L1: OreOp, L2: OreOp) -> tuple[OreOp, OreOp, OreOp, OreOp, OreOp]:
    """Extended left Euclid; returns ``(R_{n-1}, A_n, B_n, A_{n-1}, B_{n-1})`` unnormalized."""
    tr = ele_trace(L1, L2)
    n = tr.n
    return tr.R[n - 1], tr.A[n], tr.B[n], tr.A[n - 1], tr.B[n - 1]


def gcld(L1: OreOp, L2: OreOp) -> OreOp:
    g = ele(L1, L2)[0]
    # right unit action keeps the left-divisor class
    return ore_mul(g, OreOp.scalar(g.lc.inverse()))


def gcrd(L1: OreOp, L2: OreOp) -> OreOp:
    if not L1 and not L2:
        raise ValueError("gcrd of two zero operators")
    a, b = L1, L2
    while b:
        a, b = b, rrem(a, b)
    return a.scale_left(a.lc.inverse())


def lcrm(L1: OreOp, L2: OreOp) -> OreOp:
    if not L1 or not L2:
        raise ValueError("lcrm needs two nonzero operators")
    _, An, _, _, _ = ele(L1, L2)
    m = ore_mul(L1, An)
    return ore_mul(m, OreOp.scalar(m.lc.inverse()))


def scalar_det(rows: Sequence[Sequence[ScalarRat]]) -> ScalarRat:
    """Determinant over Q(t) by Gaussian elimination."""
    m = [list(map(as_scalar, r)) for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    det = ONE
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return ZERO
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        p = m[k][k]
        det = det * p
        inv = p.inverse()
        for i in range(k + 1, n):
            if not m[i][k]:
                continue
            f = m[i][k] * inv
            m[i] = [m[i][j] - f * m[k][j] if j >= k else m[i][j] for j in range(n)]
    return det


def wronskian(elems: Sequence) -> ScalarRat:
    elems = [as_scalar(e) for e in elems]
    if not elems:
        raise ValueError("wronskian of an empty sequence")
    n = len(elems)
    rows = []
    for e in elems:
        row = [e]
        for _ in range(n - 1):
            row.append(row[-1].derive())
        rows.append(row)
    return scalar_det(rows)
