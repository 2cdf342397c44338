"""Exhaustive desk-scale experiments on y^2 = g(x) over F_q.

Four instruments:

* enumerate_curve: every affine point, by x-scan with legendre/sqrt.
* enumerate_T / domain_summary: the encoder domain T = {(t, u) : g(u) != 0,
  t != 0, denominator core != 0} in canonical row-major order, with the
  lower-bound check size_T >= (q - n)(q - 2(n - 1) + 1).
* coverage: run the encoder over all of T, compare its image with the affine
  point set, report exact counts. No surjectivity claim is made; the report
  is data.
* degree_stats: degrees of the coprime numerator/denominator of the product
  X1*X2*X3 for the n = 3 first-family map at concrete (a, b, u).

Everything is deterministic; reports serialize with all counts as decimal
strings so consumers never face 64-bit overflow. Coverage is measured against
affine points only (the encoder never outputs the point at infinity).

sweep_soundness is the same domain walk in raw modular-integer arithmetic for
prime fields; it exists because the acceptance sweep touches ~10^7 pairs and
the generic field layer would be needlessly slow. Drift between the two code
paths is closed by exhaustive small-field comparison tests.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .curves import (
    AffinePoint,
    CurveParams,
    _geom_sum,
    encode,
    g_eval,
    point_json,
    three_point_map,
)
from .ff import Field
from .poly import MPoly, RatFun

DEFAULT_CAP = 10_000
MISSED_CAP = 100


class FieldTooLarge(ValueError):
    pass


def _check_cap(q: int, cap):
    limit = DEFAULT_CAP if cap is None else cap
    if cap is not None and cap > DEFAULT_CAP:
        warnings.warn(
            f"enumeration cap raised to {cap}; runtimes grow with q^2",
            stacklevel=3,
        )
    if q > limit:
        raise FieldTooLarge(f"q = {q} exceeds the enumeration cap {limit}")


def _ctx_of(params: CurveParams) -> Field:
    return params.a.ctx


def domain_bound(q: int, n: int) -> int:
    """(q - n)(q - 2(n - 1) + 1), the proven lower bound for size_T."""
    return (q - n) * (q - 2 * (n - 1) + 1)


def bound_applicable(p: int, n: int) -> bool:
    # the inequality is only claimed for p > 2(n - 1) - 1
    return p > 2 * (n - 1) - 1


def enumerate_curve(params: CurveParams, cap=None) -> list:
    """All affine (x, y) with y^2 = g(x), x ascending, canonical y first."""
    ctx = _ctx_of(params)
    _check_cap(ctx.q, cap)
    pts = []
    for x in ctx.elements():
        gx = g_eval(params, x)
        ch = ctx.legendre(gx)
        if ch == 0:
            pts.append(AffinePoint(x, ctx.zero()))
        elif ch == 1:
            r = ctx.sqrt(gx)
            pts.append(AffinePoint(x, r))
            pts.append(AffinePoint(x, -r))
    return pts


def _iter_domain(params: CurveParams, cap):
    """Yields (t, u, raw_rejects) over T in row-major order, t outer.

    raw_rejects marks pairs where t^2 g(u) = 1: the geometric-sum denominator
    is fine there, but the uncancelled quotient form would reject the pair.
    """
    ctx = _ctx_of(params)
    _check_cap(ctx.q, cap)
    e = params.n if params.family == "g1" else params.n - 1
    good_u = []
    for u in ctx.elements():
        gu = g_eval(params, u)
        if gu:
            good_u.append((u, gu))
    one = ctx.one()
    for t in ctx.elements():
        if not t:
            continue
        tt = t * t
        for u, gu in good_u:
            s = tt * gu
            if _geom_sum(s, e - 1):
                yield t, u, s == one


def enumerate_T(params: CurveParams, cap=None):
    """Admissible (t, u) in deterministic row-major order (t outer)."""
    for t, u, _ in _iter_domain(params, cap):
        yield t, u


def domain_summary(params: CurveParams, cap=None) -> dict:
    ctx = _ctx_of(params)
    size = 0
    raw_excluded = 0
    for _, _, at_one in _iter_domain(params, cap):
        size += 1
        raw_excluded += at_one
    bnd = domain_bound(ctx.q, params.n)
    return {
        "size_T": size,
        "raw_excluded": raw_excluded,
        "bound": bnd,
        "bound_applicable": bound_applicable(ctx.p, params.n),
        "bound_holds": size >= bnd,
    }


@dataclass(frozen=True)
class CoverageReport:
    q: int
    field: str
    params: str
    size_T: int
    raw_excluded: int
    bound: int
    bound_applicable: bool
    bound_holds: bool
    curve_size: int
    image_size: int
    missed: tuple
    missed_truncated: bool

    @property
    def coverage_ratio(self) -> Fraction:
        if self.image_size == 0:
            return Fraction(0)
        return Fraction(self.image_size, self.curve_size)

    def to_json(self) -> dict:
        ratio = self.coverage_ratio
        return {
            "q": str(self.q),
            "field": self.field,
            "params": self.params,
            "size_T": str(self.size_T),
            "raw_excluded": str(self.raw_excluded),
            "bound": str(self.bound),
            "bound_applicable": self.bound_applicable,
            "bound_holds": self.bound_holds,
            "curve_size": str(self.curve_size),
            "image_size": str(self.image_size),
            "coverage_ratio": "0" if ratio == 0 else f"{ratio.numerator}/{ratio.denominator}",
            "missed": [point_json(pt) for pt in self.missed],
            "missed_truncated": self.missed_truncated,
            "curve_size_convention": "affine points only; the encoder never outputs the point at infinity",
        }


def _field_text(ctx: Field) -> str:
    if ctx.m == 1:
        return str(ctx.p)
    return f"{ctx.p}^{ctx.m}:" + ",".join(str(c) for c in ctx.modulus)


def coverage(params: CurveParams, cap=None) -> CoverageReport:
    """Encode every admissible pair, compare the image with the affine points.

    Cost is one encode per domain pair, so it grows as q^2; intended for the
    exhaustive desk scale, not for cryptographic sizes.
    """
    ctx = _ctx_of(params)
    pts = enumerate_curve(params, cap)
    image = set()
    size = 0
    raw_excluded = 0
    for t, u, at_one in _iter_domain(params, cap):
        size += 1
        raw_excluded += at_one
        image.add(encode(params, t, u))
    missed = [pt for pt in pts if pt not in image]
    bnd = domain_bound(ctx.q, params.n)
    return CoverageReport(
        q=ctx.q,
        field=_field_text(ctx),
        params=str(params),
        size_T=size,
        raw_excluded=raw_excluded,
        bound=bnd,
        bound_applicable=bound_applicable(ctx.p, params.n),
        bound_holds=size >= bnd,
        curve_size=len(pts),
        image_size=len(image),
        missed=tuple(missed[:MISSED_CAP]),
        missed_truncated=len(missed) > MISSED_CAP,
    )


# ---------------------------------------------------------------------------
# Degree statistics for the n = 3 first-family coordinate product


@dataclass(frozen=True)
class DegreeStats:
    a: Fraction
    b: Fraction
    u: Fraction
    deg_num: int
    deg_den: int

    def to_json(self) -> dict:
        return {
            "a": str(self.a),
            "b": str(self.b),
            "u": str(self.u),
            "deg_num": str(self.deg_num),
            "deg_den": str(self.deg_den),
        }


def _uni_coeffs(f: MPoly) -> list:
    """Dense Fraction coefficient list of a polynomial in t alone."""
    if f.is_zero():
        return []
    if f.vars not in ((), ("t",)):
        raise ValueError(f"not univariate in t: vars {f.vars}")
    out = [Fraction(0)] * (f.degree() + 1)
    for k, c in f.terms.items():
        e = f.exponents(k)[0] if f.vars else 0
        out[e] = Fraction(c)
    return out


def _uni_trim(cs):
    while cs and not cs[-1]:
        cs.pop()
    return cs


def _uni_mod(f, g):
    # remainder of dense Fraction lists; g nonzero
    f = f[:]
    dg = len(g) - 1
    lg = g[-1]
    while len(f) - 1 >= dg and f:
        k = len(f) - 1 - dg
        q = f[-1] / lg
        for i, gc in enumerate(g):
            f[k + i] -= q * gc
        f.pop()
        _uni_trim(f)
    return f


def _uni_gcd_degree(f, g) -> int:
    """Degree of gcd of two dense coefficient lists, at least one nonzero."""
    f, g = _uni_trim(f[:]), _uni_trim(g[:])
    while g:
        f, g = g, _uni_mod(f, g)
    return len(f) - 1


def degree_stats(a, b, u) -> DegreeStats:
    """Degrees of the coprime N/D with X1*X2*X3 = N/D, first family, n = 3.

    u must avoid the roots of g. The product is formed from the deployed
    (cancelled) map over rational t and reduced to lowest terms by univariate
    gcd; that single-variable gcd is this module's private exception to the
    no-gcd rule of the symbolic layer.
    """
    a, b, u = Fraction(a), Fraction(b), Fraction(u)
    params = CurveParams("g1", 3, a, b)
    if not g_eval(params, u):
        raise ValueError(f"g({u}) = 0; pick u off the roots of g")
    t = RatFun.var("t")
    triple = three_point_map(params, t, u)
    prod = triple.xs[0] * triple.xs[1] * triple.xs[2]
    num, den = _uni_coeffs(prod.num), _uni_coeffs(prod.den)
    if not num:
        return DegreeStats(a, b, u, -1, 0)
    shared = _uni_gcd_degree(num, den)
    return DegreeStats(a, b, u, len(num) - 1 - shared, len(den) - 1 - shared)


# ---------------------------------------------------------------------------
# raw modular-integer sweep for prime fields


def _int_g(family: str, n: int, a: int, b: int, x: int, p: int) -> int:
    if family == "g1":
        return (pow(x, n, p) + a * x + b) % p
    return (pow(x, n, p) + a * x * x + b * x) % p


def _int_nonresidue(p: int) -> int:
    h = (p - 1) // 2
    for z in range(2, p):
        if pow(z, h, p) == p - 1:
            return z
    raise ArithmeticError(f"no non-residue mod {p}")


def _int_sqrt(x: int, p: int, nonres=None) -> int:
    """Canonical square root mod an odd prime; x must be a residue."""
    if x == 0:
        return 0
    if p % 4 == 3:
        r = pow(x, (p + 1) // 4, p)
        return min(r, p - r)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = _int_nonresidue(p) if nonres is None else nonres
    m, c, tt, r = s, pow(z, q, p), pow(x, q, p), pow(x, (q + 1) // 2, p)
    while tt != 1:
        i, sq = 0, tt
        while sq != 1:
            sq = sq * sq % p
            i += 1
        bfac = pow(c, 1 << (m - i - 1), p)
        m, c = i, bfac * bfac % p
        tt, r = tt * c % p, r * bfac % p
    return min(r, p - r)


def sweep_soundness(p: int, n: int, a: int, b: int, family: str = "g1",
                    collect_image: bool = False) -> dict:
    """Walk all of T over F_p in plain modular ints, checking every promise.

    For each admissible (t, u): the squared-identity U^2 = g(u) g(X2) g(X3),
    the character product never being -1, and membership y^2 = g(x) of the
    encoded point. Returns counts; all three failure counters must be zero.
    collect_image additionally returns the sorted encoded (x, y) set, which
    drift tests compare against the generic field-layer encoder.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("odd n >= 3")
    a %= p
    b %= p
    if a == 0 or b == 0:
        raise ValueError("need a*b != 0 mod p")
    e = n if family == "g1" else n - 1
    h = (p - 1) // 2
    half_up = (n + 1) // 2
    nonres = None if p % 4 == 3 else _int_nonresidue(p)

    us = []
    for u in range(p):
        gu = _int_g(family, n, a, b, u, p)
        if gu:
            # (gamma, chi(gamma), gamma^((n+1)/2)) reused across all t
            us.append((u, gu, pow(gu, h, p), pow(gu, half_up, p)))

    size_T = 0
    raw_excluded = 0
    char_violations = 0
    identity_failures = 0
    membership_failures = 0
    image = set() if collect_image else None

    for t in range(1, p):
        tt = t * t % p
        tn = pow(t, n, p)
        for u, gu, chi_u, gu_pow in us:
            s = tt * gu % p
            if s == 1:
                den_core = (e - 1) % p
                if den_core == 0:
                    continue
                num = e % p
                raw_excluded += 1
            else:
                inv_s1 = pow(s - 1, p - 2, p)
                se1 = pow(s, e - 1, p)
                den_core = (se1 - 1) * inv_s1 % p
                if den_core == 0:
                    continue
                num = (se1 * s - 1) * inv_s1 % p
            size_T += 1
            x2 = -b * num * pow(a * tt * gu % p * den_core % p, p - 2, p) % p
            x3 = s * x2 % p
            gx2 = _int_g(family, n, a, b, x2, p)
            gx3 = _int_g(family, n, a, b, x3, p)
            bigu = tn * gu_pow % p * gx2 % p
            if bigu * bigu % p != gu * gx2 % p * gx3 % p:
                identity_failures += 1
                continue
            if bigu == 0:
                # some component must sit on y = 0
                if gx2 == 0:
                    x, y = x2, 0
                elif gx3 == 0:
                    x, y = x3, 0
                else:
                    char_violations += 1
                    continue
            else:
                chi2, chi3 = pow(gx2, h, p), pow(gx3, h, p)
                if chi_u * chi2 % p * chi3 % p == p - 1:
                    char_violations += 1
                    continue
                if chi_u == 1:
                    x, y = u, _int_sqrt(gu, p, nonres)
                elif chi2 == 1:
                    x, y = x2, _int_sqrt(gx2, p, nonres)
                else:
                    x, y = x3, _int_sqrt(gx3, p, nonres)
            if y * y % p != _int_g(family, n, a, b, x, p):
                membership_failures += 1
            if image is not None:
                image.add((x, y))

    bnd = domain_bound(p, n)
    out = {
        "p": p,
        "n": n,
        "a": a,
        "b": b,
        "family": family,
        "size_T": size_T,
        "raw_excluded": raw_excluded,
        "bound": bnd,
        "bound_applicable": bound_applicable(p, n),
        "bound_holds": size_T >= bnd,
        "char_violations": char_violations,
        "identity_failures": identity_failures,
        "membership_failures": membership_failures,
    }
    if image is not None:
        out["image"] = sorted(image)
    return out
