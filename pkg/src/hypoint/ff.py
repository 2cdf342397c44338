"""Arithmetic in F_q, q = p^m with p an odd prime.

Everything downstream (curve maps, the point encoder, the surveys) runs on the
two classes here. Determinism is a contract, not an accident:

* primality of p is decided by a fixed-witness Miller-Rabin test that is
  *proven* exhaustive below 3*10^18; larger characteristics require an
  explicit trust flag,
* the quadratic non-residue used by Tonelli-Shanks is the first non-residue
  in canonical element order (ascending ints for m=1, lexicographic
  coefficient tuples, constant term first, for m>1),
* square roots are canonical: of the two roots r and -r the one with the
  smaller representative (resp. lexicographically smaller tuple) is returned.

Extension fields take an explicit monic modulus, constant term first, whose
irreducibility is verified (gcd(x^(p^k) - x, modulus) = 1 for k <= m/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class PrimalityUnverified(FieldError):
    """p exceeds the deterministic Miller-Rabin range and no trust flag was given."""


class EvenCharacteristic(FieldError):
    pass


class NotIrreducible(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


DETERMINISTIC_PRIMALITY_BOUND = 3 * 10**18
# proven complete below 3.3e18 (first nine primes), which covers the bound
_DET_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23)
_EXT_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _miller_rabin(n: int, bases) -> bool:
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == sp:
            return True
        if n % sp == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int, trusted: bool = False) -> bool:
    """Deterministic below DETERMINISTIC_PRIMALITY_BOUND; above it only with trusted=True."""
    if n >= DETERMINISTIC_PRIMALITY_BOUND and not trusted:
        raise PrimalityUnverified(
            f"{n} exceeds the deterministic primality range; pass trust_prime=True"
        )
    return _miller_rabin(n, _DET_WITNESSES if n < DETERMINISTIC_PRIMALITY_BOUND else _EXT_WITNESSES)


# ---------------------------------------------------------------------------
# small F_p[x] helpers (lists of ints, constant term first) used only for the
# modulus irreducibility check


def _ptrim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmulmod(f, g, mod, p):
    out = [0] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                out[i + j] = (out[i + j] + fi * gj) % p
    m = len(mod) - 1
    for i in range(len(out) - 1, m - 1, -1):
        c = out[i]
        if c:
            for j in range(m):
                out[i - m + j] = (out[i - m + j] - c * mod[j]) % p
            out[i] = 0
    return _ptrim(out[:m])


def _ppowmod(f, e, mod, p):
    result = [1]
    base = f
    while e:
        if e & 1:
            result = _pmulmod(result, base, mod, p)
        e >>= 1
        if e:
            base = _pmulmod(base, base, mod, p)
    return result


def _pgcd(f, g, p):
    f, g = list(f), list(g)
    while _ptrim(g):
        inv_lc = pow(g[-1], -1, p)
        while len(f) >= len(g) and _ptrim(f):
            c = f[-1] * inv_lc % p
            shift = len(f) - len(g)
            for j in range(len(g)):
                f[shift + j] = (f[shift + j] - c * g[j]) % p
            _ptrim(f)
        f, g = g, f
    return _ptrim(f)


def _check_irreducible(mod, p, m):
    # no irreducible factor of degree <= m/2 plus correct shape => irreducible
    x = [0, 1]
    xq = x
    for _ in range(m // 2):
        xq = _ppowmod(xq, p, mod, p)
        diff = [(a - b) % p for a, b in
                ((xq[i] if i < len(xq) else 0, x[i] if i < len(x) else 0) for i in range(m))]
        g = _pgcd(list(mod), diff, p)
        if len(g) != 1:
            raise NotIrreducible(f"modulus {mod} is reducible over F_{p}")


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """Defining data of F_(p^m); modulus is required exactly when m > 1."""

    p: int
    m: int = 1
    modulus: tuple[int, ...] | None = None
    trust_prime: bool = False


def parse_field_spec(text: str, trust_prime: bool = False) -> FieldSpec:
    """Grammar: "p" for prime fields, "p^m:c0,c1,...,cm" for extensions."""
    text = text.strip()
    if ":" in text:
        head, _, tail = text.partition(":")
        if "^" not in head:
            raise ValueError(f"bad field spec {text!r}: modulus given without p^m")
        ps, _, ms = head.partition("^")
        coeffs = tuple(int(c) for c in tail.split(","))
        return FieldSpec(int(ps), int(ms), coeffs, trust_prime)
    if "^" in text:
        raise ValueError(f"bad field spec {text!r}: extension fields need an explicit modulus")
    return FieldSpec(int(text), 1, None, trust_prime)


class FieldElement:
    """One element; ``val`` is an int for m=1, a length-m coefficient tuple otherwise."""

    __slots__ = ("ctx", "val")

    def __init__(self, ctx, val):
        self.ctx = ctx
        self.val = val

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.ctx.signature != self.ctx.signature:
                raise TypeError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.ctx.elem(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        ctx = self.ctx
        if ctx.m == 1:
            return FieldElement(ctx, (self.val + other.val) % ctx.p)
        p = ctx.p
        return FieldElement(ctx, tuple((x + y) % p for x, y in zip(self.val, other.val)))

    __radd__ = __add__

    def __neg__(self):
        ctx = self.ctx
        if ctx.m == 1:
            return FieldElement(ctx, -self.val % ctx.p)
        p = ctx.p
        return FieldElement(ctx, tuple(-x % p for x in self.val))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        ctx = self.ctx
        if ctx.m == 1:
            return FieldElement(ctx, self.val * other.val % ctx.p)
        return FieldElement(ctx, ctx._ext_mul(self.val, other.val))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * self.ctx.inv(other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.ctx.inv(self)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative int")
        ctx = self.ctx
        if ctx.m == 1:
            return FieldElement(ctx, pow(self.val, e, ctx.p))
        result = ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __bool__(self):
        return bool(self.val) if self.ctx.m == 1 else any(self.val)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.elem(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.ctx.signature == other.ctx.signature and self.val == other.val

    def __hash__(self):
        return hash((self.ctx.signature, self.val))

    def __str__(self):
        if self.ctx.m == 1:
            return str(self.val)
        return ",".join(str(c) for c in self.val)

    def __repr__(self):
        return f"FieldElement({self} in {self.ctx})"


class Field:
    """Context object for F_(p^m); constructed through field_new."""

    def __init__(self, spec: FieldSpec):
        p, m = spec.p, spec.m
        if not isinstance(p, int) or not isinstance(m, int) or m < 1:
            raise ValueError("p and m must be ints, m >= 1")
        if p % 2 == 0:
            raise EvenCharacteristic(f"characteristic {p} is even; odd fields only")
        if not is_prime(p, trusted=spec.trust_prime):
            raise NotPrime(f"{p} is not prime")
        if p < 3:
            raise NotPrime(f"p = {p} out of range")
        if m == 1:
            if spec.modulus is not None:
                raise ValueError("prime fields take no modulus")
            modulus = None
        else:
            if spec.modulus is None:
                raise ValueError("extension fields need a modulus (constant term first)")
            mod = [c % p for c in spec.modulus]
            if len(mod) != m + 1 or mod[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {m}")
            _check_irreducible(mod, p, m)
            modulus = tuple(mod)
        self.spec = spec
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = modulus
        self.signature = (p, m, modulus)
        self._nonresidue = None

    def __repr__(self):
        return f"F_{self.p}" if self.m == 1 else f"F_{self.p}^{self.m}"

    # -- element construction ------------------------------------------------

    def elem(self, v) -> FieldElement:
        if isinstance(v, FieldElement):
            if v.ctx.signature != self.signature:
                raise TypeError("element from a different field")
            return v
        if isinstance(v, int):
            if self.m == 1:
                return FieldElement(self, v % self.p)
            return FieldElement(self, (v % self.p,) + (0,) * (self.m - 1))
        if isinstance(v, (tuple, list)):
            if self.m == 1:
                raise TypeError("coefficient tuples are for extension fields")
            if len(v) > self.m:
                raise ValueError(f"too many coefficients for m={self.m}")
            coeffs = tuple(int(c) % self.p for c in v) + (0,) * (self.m - len(v))
            return FieldElement(self, coeffs)
        raise TypeError(f"cannot build a field element from {type(v).__name__}")

    def parse_elem(self, text: str) -> FieldElement:
        parts = [int(c) for c in text.split(",")]
        if self.m == 1:
            if len(parts) != 1:
                raise ValueError("prime field elements are single residues")
            return self.elem(parts[0])
        if len(parts) > self.m:
            raise ValueError(f"at most {self.m} coefficients for m={self.m}")
        # shorter lists are low-degree elements, padded with zeros
        return self.elem(parts)

    def zero(self) -> FieldElement:
        return self.elem(0)

    def one(self) -> FieldElement:
        return self.elem(1)

    def elements(self):
        """All elements in canonical ascending order."""
        if self.m == 1:
            for v in range(self.p):
                yield FieldElement(self, v)
        else:
            for coeffs in product(range(self.p), repeat=self.m):
                yield FieldElement(self, coeffs)

    def _ext_mul(self, x, y):
        p, m, mod = self.p, self.m, self.modulus
        conv = [0] * (2 * m - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    conv[i + j] = (conv[i + j] + xi * yj) % p
        for i in range(2 * m - 2, m - 1, -1):
            c = conv[i]
            if c:
                for j in range(m):
                    conv[i - m + j] = (conv[i - m + j] - c * mod[j]) % p
        return tuple(conv[:m])

    # -- core operations -------------------------------------------------------

    def inv(self, x) -> FieldElement:
        x = self.elem(x)
        if not x:
            raise DivisionByZero(f"inverse of zero in {self}")
        if self.m == 1:
            return FieldElement(self, pow(x.val, -1, self.p))
        return x ** (self.q - 2)

    def legendre(self, x) -> int:
        """Quadratic character: 0 on zero, +1 on nonzero squares, -1 otherwise."""
        x = self.elem(x)
        if not x:
            return 0
        if self.m == 1:
            return 1 if pow(x.val, (self.p - 1) // 2, self.p) == 1 else -1
        return 1 if x ** ((self.q - 1) // 2) == self.one() else -1

    def nonresidue(self) -> FieldElement:
        """First quadratic non-residue in canonical element order (cached)."""
        if self._nonresidue is None:
            for e in self.elements():
                if self.legendre(e) == -1:
                    self._nonresidue = e
                    break
        return self._nonresidue

    def sqrt(self, x):
        """Canonical square root or None; Tonelli-Shanks on the general path.

        Of the two roots the one with the smaller canonical representative
        (int value, or lexicographic coefficient tuple) is returned.
        """
        x = self.elem(x)
        if not x:
            return self.zero()
        if self.legendre(x) == -1:
            return None
        if self.q % 4 == 3:
            r = x ** ((self.q + 1) // 4)
        else:
            q1, s = self.q - 1, 0
            while q1 % 2 == 0:
                q1 //= 2
                s += 1
            z = self.nonresidue()
            c = z**q1
            t = x**q1
            r = x ** ((q1 + 1) // 2)
            mexp = s
            one = self.one()
            while t != one:
                i, t2 = 0, t
                while t2 != one:
                    t2 = t2 * t2
                    i += 1
                b = c ** (1 << (mexp - i - 1))
                mexp = i
                c = b * b
                t = t * c
                r = r * b
        rn = -r
        return r if r.val <= rn.val else rn


def field_new(spec) -> Field:
    """Build a field from a FieldSpec, a spec string, or a bare prime."""
    if isinstance(spec, Field):
        return spec
    if isinstance(spec, str):
        spec = parse_field_spec(spec)
    if isinstance(spec, int):
        spec = FieldSpec(spec)
    return Field(spec)
