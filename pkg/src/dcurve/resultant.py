"""Differential resultant of two differential polynomials linear in u."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .diffpoly import ONE_POLY, ZERO_POLY, DerivVar, DiffPoly, dp_exact_div, is_linear_in
from .scalar import NEG_INF, ONE


@dataclass(frozen=True)
class ResultantMatrix:
    """Coefficient matrix of the prolongations of f1 and f2.

    ``row_labels[k] = (i, j)`` means row k holds ``f_i`` differentiated j
    times; ``col_labels`` are u-derivative orders in decreasing order, with
    ``None`` for the u-free column.
    """

    entries: Tuple[Tuple[DiffPoly, ...], ...]
    row_labels: Tuple[Tuple[int, int], ...]
    col_labels: Tuple[Optional[int], ...]

    @property
    def size(self) -> int:
        return len(self.entries)


def linear_coefficients(f: DiffPoly, top: int, var: str = "u") -> List[DiffPoly]:
    """Coefficients of var^(top), ..., var', var and the var-free part."""
    row = [f.coeff(DerivVar(var, j), 1) for j in range(top, -1, -1)]
    free = DiffPoly._raw({m: c for m, c in f.terms.items() if all(v.name != var for v, _ in m)})
    row.append(free)
    return row


def build_resultant_matrix(f1: DiffPoly, f2: DiffPoly, var: str = "u") -> ResultantMatrix:
    for f in (f1, f2):
        if not is_linear_in(f, var):
            raise ValueError(f"{f} is not linear in {var} and its derivatives")
    m1, m2 = f1.order_in(var), f2.order_in(var)
    if m1 == NEG_INF or m2 == NEG_INF:
        raise ValueError(f"both polynomials must involve {var}")
    top = m1 + m2
    rows, labels = [], []
    for idx, f, k in ((1, f1, m2), (2, f2, m1)):
        prolongs = [f]
        for _ in range(k):
            prolongs.append(prolongs[-1].derive())
        for j in range(k, -1, -1):
            rows.append(tuple(linear_coefficients(prolongs[j], top, var)))
            labels.append((idx, j))
    cols = tuple(list(range(top, -1, -1)) + [None])
    return ResultantMatrix(tuple(rows), tuple(labels), cols)


def det_fraction_free(m) -> DiffPoly:
    """Bareiss elimination with exact division; first nonzero pivot below, swaps flip the sign."""
    rows = [list(r) for r in (m.entries if isinstance(m, ResultantMatrix) else m)]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE_POLY
    sign = 1
    prev = ONE_POLY
    for k in range(n - 1):
        if not rows[k][k]:
            piv = next((i for i in range(k + 1, n) if rows[i][k]), None)
            if piv is None:
                return ZERO_POLY
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        p = rows[k][k]
        for i in range(k + 1, n):
            a = rows[i][k]
            for j in range(k + 1, n):
                val = p * rows[i][j] if rows[i][j] else ZERO_POLY
                if a and rows[k][j]:
                    val = val - a * rows[k][j]
                rows[i][j] = dp_exact_div(val, prev) if val else ZERO_POLY
            rows[i][k] = ZERO_POLY
        prev = p
    det = rows[n - 1][n - 1]
    return det if sign > 0 else -det


def det_cofactor(m: Sequence[Sequence[DiffPoly]]) -> DiffPoly:
    """Laplace expansion along the first row; the reference for small matrices."""
    rows = [list(r) for r in (m.entries if isinstance(m, ResultantMatrix) else m)]
    n = len(rows)
    if n == 0:
        return ONE_POLY
    if n == 1:
        return rows[0][0]
    total = ZERO_POLY
    for j, a in enumerate(rows[0]):
        if not a:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def det_scalar_block(m) -> DiffPoly:
    """Determinant when every entry outside the last column is a base-field element.

    Gaussian elimination over the field on the scalar block, carrying the last
    column along; far cheaper than Bareiss on polynomial entries.
    """
    rows = [list(r) for r in (m.entries if isinstance(m, ResultantMatrix) else m)]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE_POLY
    rows = [[e.scalar_value() for e in r[:-1]] + [r[-1]] for r in rows]
    scale = ONE
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if rows[i][k]), None)
        if piv is None:
            return ZERO_POLY
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            scale = -scale
        inv = rows[k][k].inverse()
        scale = scale * rows[k][k]
        for i in range(k + 1, n):
            if not rows[i][k]:
                continue
            f = rows[i][k] * inv
            for j in range(k + 1, n - 1):
                if rows[k][j]:
                    rows[i][j] = rows[i][j] - f * rows[k][j]
            rows[i][n - 1] = rows[i][n - 1] - rows[k][n - 1] * f
    return rows[n - 1][n - 1] * scale


def _scalar_block(m: ResultantMatrix) -> bool:
    return all(e.is_scalar() for r in m.entries for e in r[:-1])


def diff_resultant(f1: DiffPoly, f2: DiffPoly, var: str = "u") -> DiffPoly:
    m = build_resultant_matrix(f1, f2, var)
    return det_scalar_block(m) if _scalar_block(m) else det_fraction_free(m)
