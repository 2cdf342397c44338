"""Rational-curve parametrizations on u^2 = prod g(x_i) and the point encoder.

Two trinomial families are supported, tagged "g1" and "g2":

    g1: g(x) = x^n + a*x + b        g2: g(x) = x^n + a*x^2 + b*x     (a*b != 0)

The constructions, all certified exactly by the symbolic layer:

* auxiliary_curve: a rational curve on the mixed surface
  g(x)*z^m = y^n + c*y + d (family 1 shape; family 2 uses y^n + c*y^2 + d*y).
* two_point_map: (X1(t), X2(t), U(t)) with U^2 = g(X1)*g(X2), any n >= 3.
* three_point_map: (u, X2(t,u), X3(t,u), U(t,u)) with U^2 = g(u)*g(X2)*g(X3),
  odd n >= 3.
* even_n_point: the explicit point (-b/a, (b/a)^(n/2)) on y^2 = g(x), even n.
* encode: deterministic point construction on y^2 = g(x) over F_q from a
  domain pair (t, u) via the three-point map and the first quadratic-square
  component.
* reciprocal_pair_curve / reciprocal_triple_curve / quartic_triple_curve:
  parametrizations for self-reciprocal g and for g = x^4 + 1.

All formula code is ring generic: the same expressions run on field elements,
exact rationals and symbolic rational functions, so the certified identities
and the deployed arithmetic cannot drift apart. Division in the three-point
map uses the cancelled denominator g(u)*t^2*(1 + s + ... + s^(e-2)), s =
t^2*g(u); it agrees with the textbook quotient wherever the latter is defined
and extends it at s = 1, which is what makes the domain-size lower bound in
the survey unconditional.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .ff import Field, FieldElement
from .poly import MPoly, RatFun, poly_exact_sqrt, rf_eq

FAMILIES = ("g1", "g2")


class CurveError(ValueError):
    pass


class UnsupportedParity(CurveError):
    pass


class DenominatorVanishes(CurveError):
    pass


class BasePointOnCurve(CurveError):
    """g(u) = 0: (u, 0) already lies on the curve, no map needed."""


class DomainExcluded(CurveError):
    """The pair (t, u) is outside the encoder domain."""


class NotReciprocal(CurveError):
    pass


class NotAPerfectSquare(CurveError):
    pass


class NotOnCurve(CurveError):
    pass


@dataclass(frozen=True)
class CurveParams:
    """y^2 = g(x) data; a and b live in whatever ring the caller works in."""

    family: str
    n: int
    a: object
    b: object

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise CurveError(f"unknown family {self.family!r}")
        if not isinstance(self.n, int) or self.n < 2:
            raise CurveError("n must be an int >= 2")
        if _is_zero(self.a) or _is_zero(self.b):
            raise CurveError("need a*b != 0")

    def __str__(self):
        return f"{self.family}:n={self.n},a={self.a},b={self.b}"


@dataclass(frozen=True)
class AffinePoint:
    x: object = None
    y: object = None
    infinity: bool = False

    @classmethod
    def at_infinity(cls):
        return cls(infinity=True)


@dataclass(frozen=True)
class ParamTriple:
    """Components (x_1..x_k) and u with u^2 = prod g(x_i), k in {2, 3}."""

    xs: tuple
    u: object

    @property
    def arity(self) -> int:
        return len(self.xs)


def _is_zero(x) -> bool:
    if isinstance(x, (RatFun, MPoly)):
        return x.is_zero()
    return not x


def _geom_sum(s, k: int):
    """1 + s + ... + s^(k-1); k >= 1."""
    if k < 1:
        raise ValueError("geometric sum needs k >= 1")
    acc = s**0
    pw = acc
    for _ in range(k - 1):
        pw = pw * s
        acc = acc + pw
    return acc


def g_shape(family: str, n: int, a, b, x):
    """The family polynomial evaluated in any ring."""
    if family == "g1":
        return x**n + a * x + b
    return x**n + a * x * x + b * x


def g_eval(params: CurveParams, x):
    return g_shape(params.family, params.n, params.a, params.b, x)


def make_point(params: CurveParams, x, y) -> AffinePoint:
    if y * y != g_eval(params, x):
        raise NotOnCurve(f"({x}, {y}) not on {params}")
    return AffinePoint(x, y)


def point_json(pt: AffinePoint) -> dict:
    if pt.infinity:
        return {"infinity": True}
    return {"x": str(pt.x), "y": str(pt.y)}


def verify_triple(params: CurveParams, triple: ParamTriple) -> bool:
    """u^2 = prod g(x_i), exact in the triple's ring (rf_eq for symbolic)."""
    prod = None
    for x in triple.xs:
        gx = g_eval(params, x)
        prod = gx if prod is None else prod * gx
    return triple.u * triple.u == prod


def _exponent(family: str, n: int) -> int:
    # shared "effective exponent": the t-power scaling of each family
    return n if family == "g1" else n - 1


def _symbolic_params(family: str, n: int) -> CurveParams:
    return CurveParams(family, n, RatFun.var("a"), RatFun.var("b"))


# ---------------------------------------------------------------------------
# auxiliary surface curves


def auxiliary_curve(family: str, m: int, n: int) -> dict:
    """Rational curve (x(t), y(t), z(t)) on g(x)*z^m = y^n + c*y + d (family 1)
    or g(x)*z^m = y^n + c*y^2 + d*y (family 2), coefficients symbolic."""
    if family not in FAMILIES:
        raise CurveError(f"unknown family {family!r}")
    if m < 1 or n < 1:
        raise CurveError("need m >= 1, n >= 1")
    a, b, c, d, t = (RatFun.var(v) for v in "abcdt")
    k = n if family == "g1" else n - 1
    x = -(b * t ** (m * k) - d) / (a * t ** (m * k) - c * t**m)
    y = t**m * x
    z = t**n
    return {"x": x, "y": y, "z": z}


def certify_auxiliary(family: str, m: int, n: int) -> bool:
    cur = auxiliary_curve(family, m, n)
    a, b, c, d = (RatFun.var(v) for v in "abcd")
    x, y, z = cur["x"], cur["y"], cur["z"]
    lhs = g_shape(family, n, a, b, x) * z**m
    rhs = y**n + c * y + d if family == "g1" else y**n + c * y * y + d * y
    return rf_eq(lhs, rhs)


# ---------------------------------------------------------------------------
# two-point map


def two_point_map(params: CurveParams, t) -> ParamTriple:
    """(X1, X2, U) with U^2 = g(X1)*g(X2); t from a field or Q."""
    n = params.n
    if n < 3:
        raise CurveError("two-point map needs n >= 3")
    e = _exponent(params.family, n)
    if _is_zero(t):
        raise DenominatorVanishes("t = 0")
    den = t ** (2 * e) - t * t
    if _is_zero(den):
        raise DenominatorVanishes(f"t^(2*{e - 1}) = 1")
    x1 = -(params.b * (t ** (2 * e) - 1)) / (params.a * den)
    x2 = t * t * x1
    u = t**n * g_eval(params, x1)
    triple = ParamTriple((x1, x2), u)
    assert verify_triple(params, triple)
    return triple


def two_point_symbolic(family: str, n: int, u_formula: str = "corrected") -> ParamTriple:
    """Symbolic (X1(t), X2(t), U(t)) over Q(a, b).

    u_formula="family1_literal" reproduces a published variant that builds U
    from the family-1 polynomial even for family 2; it fails certification
    (deliberately kept reproducible, see certify_two_point).
    """
    if n < 3:
        raise CurveError("two-point map needs n >= 3")
    a, b, t = RatFun.var("a"), RatFun.var("b"), RatFun.var("t")
    e = _exponent(family, n)
    x1 = -(b * (t ** (2 * e) - 1)) / (a * (t ** (2 * e) - t * t))
    x2 = t * t * x1
    g_family = "g1" if u_formula == "family1_literal" else family
    u = t**n * g_shape(g_family, n, a, b, x1)
    return ParamTriple((x1, x2), u)


def certify_two_point(family: str, n: int, u_formula: str = "corrected") -> bool:
    """Exact rf_eq of U^2 = g(X1)*g(X2) at the displayed formulas."""
    triple = two_point_symbolic(family, n, u_formula)
    return verify_triple(_symbolic_params(family, n), triple)


# ---------------------------------------------------------------------------
# three-point map


def _x2_fraction(family: str, n: int, a, b, t, gamma, form: str):
    """Numerator, denominator core and s = t^2*gamma of X2, any ring.

    form "cancelled": X2 = -b*(1+s+...+s^(e-1)) / (a*t^2*gamma*(1+...+s^(e-2)))
    form "raw":       X2 = -b*(s^e - 1)        / (a*t^2*gamma*(s^(e-1) - 1))

    The two agree wherever the raw denominator is nonzero; only the cancelled
    form is used for evaluation, the raw one exists for certification.
    """
    e = _exponent(family, n)
    s = t * t * gamma
    if form == "raw":
        num = s**e - 1
        den_core = s ** (e - 1) - 1
    else:
        num = _geom_sum(s, e)
        den_core = _geom_sum(s, e - 1)
    return num, den_core, s


def _require_odd(n: int):
    if n < 3 or n % 2 == 0:
        raise UnsupportedParity(f"three-point map needs odd n >= 3, got {n}")


def three_point_map(params: CurveParams, t, u) -> ParamTriple:
    """(X1, X2, X3, U) = (u, ...) with U^2 = g(u)*g(X2)*g(X3); field or Q."""
    _require_odd(params.n)
    gamma = g_eval(params, u)
    if _is_zero(gamma):
        raise BasePointOnCurve(f"g({u}) = 0")
    if _is_zero(t):
        raise DenominatorVanishes("t = 0")
    num, den_core, s = _x2_fraction(params.family, params.n, params.a, params.b, t, gamma, "cancelled")
    if _is_zero(den_core):
        raise DenominatorVanishes("geometric factor 1 + s + ... vanishes")
    x2 = -(params.b * num) / (params.a * t * t * gamma * den_core)
    x3 = s * x2
    uu = t**params.n * gamma ** ((params.n + 1) // 2) * g_eval(params, x2)
    triple = ParamTriple((u, x2, x3), uu)
    assert verify_triple(params, triple)
    return triple


def three_point_inner(family: str, n: int, form: str = "cancelled") -> dict:
    """Symbolic three-point data over Q(a, b, c, t), where the symbol c stands
    for the inner value g(u). Tiny polynomials for every n, so the defining
    identity U^2 = c * g(X2) * g(X3) is certifiable by plain cross
    multiplication; the (t, u) forms are the exact substitution c -> g(u)."""
    _require_odd(n)
    a, b, c, t = (RatFun.var(v) for v in "abct")
    num, den_core, s = _x2_fraction(family, n, a, b, t, c, form)
    x2 = -(b * num) / (a * t * t * c * den_core)
    x3 = s * x2
    u = t**n * c ** ((n + 1) // 2) * g_shape(family, n, a, b, x2)
    return {"x2": x2, "x3": x3, "u": u, "g_x1": c}


def three_point_display(family: str, n: int, form: str = "raw") -> ParamTriple:
    """The displayed (t, u) rational functions over Q(a, b).

    Expansion of g(u)-powers makes these large for big n (the n = 9 raw form
    runs to ~10^6 monomials); certification therefore happens on
    three_point_inner, and this materialized form is for small-n checks and
    inspection.
    """
    _require_odd(n)
    a, b, t, u = (RatFun.var(v) for v in "abtu")
    gamma = g_shape(family, n, a, b, u)
    num, den_core, s = _x2_fraction(family, n, a, b, t, gamma, form)
    x2 = -(b * num) / (a * t * t * gamma * den_core)
    x3 = s * x2
    uu = t**n * gamma ** ((n + 1) // 2) * g_shape(family, n, a, b, x2)
    return ParamTriple((u, x2, x3), uu)


def certify_three_point(family: str, n: int, deep: bool = False) -> bool:
    """Exact certification of U^2 = g(X1)*g(X2)*g(X3).

    Checks, all by cross multiplication over Q:
      1. the identity over Q(a, b, c, t) with c standing for g(u), in both the
         displayed (raw) and the deployed (cancelled) forms,
      2. raw and cancelled X2 agree as rational functions,
      3. with deep=True additionally the fully expanded (t, u) identity
         (affordable for n = 3) and the raw/cancelled display agreement.
    """
    a, b, c, t = (RatFun.var(v) for v in "abct")
    cores = {}
    for form in ("raw", "cancelled"):
        core = three_point_inner(family, n, form)
        rhs = (
            core["g_x1"]
            * g_shape(family, n, a, b, core["x2"])
            * g_shape(family, n, a, b, core["x3"])
        )
        if not rf_eq(core["u"] * core["u"], rhs):
            return False
        cores[form] = core
    if not rf_eq(cores["raw"]["x2"], cores["cancelled"]["x2"]):
        return False
    if deep:
        params = _symbolic_params(family, n)
        disp = three_point_display(family, n, "cancelled")
        if not verify_triple(params, disp):
            return False
        raw = three_point_display(family, n, "raw")
        if not rf_eq(raw.xs[1], disp.xs[1]):
            return False
    return True


# ---------------------------------------------------------------------------
# even n


def even_n_point(params: CurveParams) -> AffinePoint:
    """The point (-b/a, (b/a)^(n/2)) on y^2 = g(x) for even n."""
    if params.n % 2:
        raise UnsupportedParity(f"even_n_point needs even n, got {params.n}")
    ratio = params.b / params.a
    x = -ratio
    y = ratio ** (params.n // 2)
    return make_point(params, x, y)


def certify_even_n_value(family: str, n: int) -> bool:
    """g(-b/a) = (b/a)^n as an exact rational-function identity."""
    if n % 2:
        raise UnsupportedParity(f"needs even n, got {n}")
    a, b = RatFun.var("a"), RatFun.var("b")
    return rf_eq(g_shape(family, n, a, b, -(b / a)), (b / a) ** n)


# ---------------------------------------------------------------------------
# encoder


def encode(params: CurveParams, t, u) -> AffinePoint:
    """Deterministic point on y^2 = g(x) over F_q from a domain pair (t, u).

    Branches, in order: g(u) = 0 gives (u, 0) directly; a vanishing map
    denominator raises DomainExcluded; U = 0 returns (X_i, 0) for the first
    component with g(X_i) = 0; otherwise the first X_i whose g-value is a
    nonzero square is completed with its canonical root. The three-point
    identity makes the character product +1, so such a component exists.
    """
    _require_odd(params.n)
    ctx = _field_of(params, t, u)
    gu = g_eval(params, u)
    if not gu:
        return AffinePoint(u, ctx.zero())
    try:
        triple = three_point_map(params, t, u)
    except DenominatorVanishes as exc:
        raise DomainExcluded(str(exc)) from exc
    if not triple.u:
        for x in triple.xs:
            gx = g_eval(params, x)
            if not gx:
                return AffinePoint(x, ctx.zero())
        raise AssertionError("U = 0 forces some g(X_i) = 0")
    for x in triple.xs:
        gx = g_eval(params, x)
        if ctx.legendre(gx) == 1:
            return make_point(params, x, ctx.sqrt(gx))
    raise AssertionError("character product cannot be -1 on the domain")


def _field_of(params: CurveParams, *vals) -> Field:
    for v in (params.a, params.b) + vals:
        if isinstance(v, FieldElement):
            return v.ctx
    raise TypeError("encode needs field elements")


# ---------------------------------------------------------------------------
# self-reciprocal curves and the quartic x^4 + 1


def _poly_var(g: MPoly) -> str:
    if len(g.vars) != 1:
        raise CurveError("need a univariate polynomial")
    return g.vars[0]


def is_reciprocal(g: MPoly, n: int) -> bool:
    """x^n * g(1/x) = g(x), decided on coefficients."""
    var = _poly_var(g)
    if g.degree(var) != n:
        return False
    coeffs = {k: c for k, c in g.terms.items()}
    return all(coeffs.get(k) == coeffs.get(n - k) for k in range(n + 1))


def _apply(g: MPoly, x) -> RatFun:
    return g.substitute({_poly_var(g): x if isinstance(x, RatFun) else RatFun(x)})


def reciprocal_pair_curve(g: MPoly, n: int) -> ParamTriple:
    """(t^2, 1/t^2, t^n*g(1/t^2)) with u^2 = g(x1)*g(x2) for reciprocal g."""
    if not is_reciprocal(g, n):
        raise NotReciprocal(str(g))
    t = RatFun.var("t")
    x1 = t * t
    x2 = 1 / (t * t)
    u = t**n * _apply(g, x2)
    return ParamTriple((x1, x2), u)


def certify_reciprocal_pair(g: MPoly, n: int) -> bool:
    triple = reciprocal_pair_curve(g, n)
    return rf_eq(triple.u * triple.u, _apply(g, triple.xs[0]) * _apply(g, triple.xs[1]))


def reciprocal_triple_curve(g: MPoly, n: int) -> ParamTriple:
    """(t, g(t), 1/g(t), g(t)^((n+1)/2)*g(1/g(t))) for reciprocal g, odd n."""
    if n % 2 == 0 or n < 1:
        raise UnsupportedParity("odd degree needed")
    if not is_reciprocal(g, n):
        raise NotReciprocal(str(g))
    t = RatFun.var("t")
    gt = _apply(g, t)
    x3 = 1 / gt
    u = gt ** ((n + 1) // 2) * _apply(g, x3)
    return ParamTriple((t, gt, x3), u)


def certify_reciprocal_triple(g: MPoly, n: int) -> bool:
    triple = reciprocal_triple_curve(g, n)
    prod = _apply(g, triple.xs[0]) * _apply(g, triple.xs[1]) * _apply(g, triple.xs[2])
    return rf_eq(triple.u * triple.u, prod)


def quartic_triple_curve() -> ParamTriple:
    """Three-component curve on u^2 = prod (x_i^4 + 1).

    The product of the three quartic values is a ratio of two exact squares;
    u is recovered with poly_exact_sqrt (NotAPerfectSquare if either half
    fails, which certification treats as a hard error).
    """
    tp = MPoly.var("t")
    den = 3 * tp**2 + 3 * tp + 1
    nums = (2 * tp + 1, 3 * tp**2 + 2 * tp, 3 * tp**2 + 4 * tp + 1)
    num_prod = MPoly.const(1)
    for np_ in nums:
        num_prod = num_prod * (np_**4 + den**4)
    root_num = poly_exact_sqrt(num_prod)
    root_den = poly_exact_sqrt(den**12)
    if root_num is None or root_den is None:
        raise NotAPerfectSquare("quartic product is not a square ratio")
    xs = tuple(RatFun(np_, den) for np_ in nums)
    return ParamTriple(xs, RatFun(root_num, root_den))


def certify_quartic() -> bool:
    triple = quartic_triple_curve()
    prod = None
    for x in triple.xs:
        v = x**4 + 1
        prod = v if prod is None else prod * v
    return rf_eq(triple.u * triple.u, prod)


# ---------------------------------------------------------------------------
# curve spec strings


_CURVE_RE = re.compile(r",(?=[nab]=)")


def parse_curve_spec(text: str, ctx: Field) -> CurveParams:
    """Grammar: family:n=..,a=..,b=.. (element values may be coefficient lists)."""
    head, _, tail = text.strip().partition(":")
    if head not in FAMILIES:
        raise CurveError(f"unknown family {head!r}")
    fields = {}
    for part in _CURVE_RE.split(tail):
        key, eq, val = part.partition("=")
        if eq != "=" or key not in ("n", "a", "b"):
            raise CurveError(f"bad curve spec component {part!r}")
        fields[key] = val
    if set(fields) != {"n", "a", "b"}:
        raise CurveError("curve spec needs n=, a= and b=")
    try:
        return CurveParams(head, int(fields["n"]), ctx.parse_elem(fields["a"]), ctx.parse_elem(fields["b"]))
    except (ValueError, TypeError) as exc:
        if isinstance(exc, CurveError):
            raise
        raise CurveError(f"bad curve spec {text!r}: {exc}") from exc
