"""Exact algorithms for linear plane differential curves over Q(t).

Unirationality tests and proper parametrizations via the extended left
Euclidean algorithm in the operator ring Q(t)[D], properness via differential
resultants, implicitization via Ritt-Kolchin remainder sequences, inversion,
and Moebius reparametrization.
"""

from .curves import (
    GeneralRationalParam,
    ImplicitRecord,
    ImproperParametrization,
    InvariantError,
    LinearCurve,
    LinearRationalParam,
    ProperReport,
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
from .diffpoly import (
    ELIMINATION_XYU,
    ELIMINATION_YXU,
    DerivVar,
    DiffPoly,
    Ranking,
    dp_prem,
    dp_prem_certificate,
    remainder_sequence,
    substitute,
    substitute_rational,
)
from .ore import D, OreOp, ele, ele_trace, gcld, gcrd, lcrm, lquo_lrem, ore_apply, ore_mul, rquo_rrem, wronskian
from .parsing import ParseError, parse_expression
from .resultant import build_resultant_matrix, det_cofactor, det_fraction_free, diff_resultant
from .scalar import NEG_INF, T, ScalarRat

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
