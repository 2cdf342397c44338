"""Deterministic rational points on y^2 = g(x) over odd finite fields,
with exact symbolic certification of the underlying curve parametrizations."""

from .curves import (
    AffinePoint,
    BasePointOnCurve,
    CurveError,
    CurveParams,
    DenominatorVanishes,
    DomainExcluded,
    ParamTriple,
    UnsupportedParity,
    certify_three_point,
    certify_two_point,
    encode,
    even_n_point,
    g_eval,
    parse_curve_spec,
    three_point_map,
    two_point_map,
)
from .ff import Field, FieldElement, FieldSpec, field_new, parse_field_spec
from .poly import MPoly, RatFun, poly_exact_sqrt, rf_eq

__all__ = [
    "AffinePoint",
    "BasePointOnCurve",
    "CurveError",
    "CurveParams",
    "DenominatorVanishes",
    "DomainExcluded",
    "Field",
    "FieldElement",
    "FieldSpec",
    "MPoly",
    "ParamTriple",
    "RatFun",
    "UnsupportedParity",
    "certify_three_point",
    "certify_two_point",
    "encode",
    "even_n_point",
    "field_new",
    "g_eval",
    "parse_curve_spec",
    "parse_field_spec",
    "poly_exact_sqrt",
    "rf_eq",
    "three_point_map",
    "two_point_map",
]

__version__ = "0.1.0"
