"""Exact scalar arithmetic: Q, F_p, Q(sqrt(d)), and rational function fields.

Every value is exact (arbitrary precision integers underneath); there is
no floating point anywhere in the package.  Field objects bundle the
element constructors with the decision procedures the rest of the
package needs: squareness tests, canonical square roots, square-class
normal forms, and serialisation.

Integer factorisation is bounded trial division (default bound 10**6,
override with the QF_FACTOR_BOUND environment variable); anything worse
raises FactorBoundExceeded rather than stalling.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from functools import lru_cache

from .errors import FactorBoundExceeded, UnsupportedBase
from .polys import Poly

DEFAULT_FACTOR_BOUND = 10**6


def factor_bound() -> int:
    env = os.environ.get("QF_FACTOR_BOUND")
    return int(env) if env else DEFAULT_FACTOR_BOUND


def factor_integer(n: int, bound: int | None = None) -> dict[int, int]:
    """Prime factorisation of |n| by trial division, as {prime: exponent}."""
    if n == 0:
        raise ValueError("cannot factor 0")
    bound = bound or factor_bound()
    n = abs(n)
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    q = 5
    while q * q <= n and q <= bound:
        for p in (q, q + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        q += 6
    if n > 1:
        if n <= bound * bound:
            out[n] = out.get(n, 0) + 1
        else:
            raise FactorBoundExceeded(n, bound)
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    q = 3
    while q * q <= n:
        if n % q == 0:
            return False
        q += 2
    return True


def squarefree_part(n: int, bound: int | None = None) -> int:
    """The signed squarefree integer representing n modulo nonzero squares."""
    if n == 0:
        raise ValueError("0 has no square class")
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in factor_integer(n, bound).items():
        if e % 2:
            out *= p
    return out


def isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def rational_sqrt(x: Fraction) -> Fraction | None:
    """The nonnegative exact square root of x in Q, or None."""
    if x < 0:
        return None
    rn = isqrt_exact(x.numerator)
    rd = isqrt_exact(x.denominator)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) in {-1, 0, +1} for an odd prime p."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def sqrt_mod_p(a: int, p: int) -> int | None:
    """Canonical square root of a mod an odd prime p (Tonelli-Shanks).

    Returns the root in [0, p/2], or None for a nonresidue.
    """
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 1, (t * t) % p
        while t2 != 1:
            t2 = (t2 * t2) % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r = (r * b) % p
        c = (b * b) % p
        t = (t * c) % p
        m = i
    return min(r, p - r)


# ---------------------------------------------------------------------------
# Places of Q


class Place:
    """A place of Q: a finite prime (2 allowed) or the real place."""

    __slots__ = ("p",)

    def __init__(self, p: int | None):
        if p is not None and not is_prime(p):
            raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "p", p)

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(p)

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.p is None

    def sort_key(self):
        return (1, 0) if self.p is None else (0, self.p)

    def __eq__(self, other):
        return isinstance(other, Place) and self.p == other.p

    def __hash__(self):
        return hash(("place", self.p))

    def __repr__(self):
        return f"Place({self.p})"

    def __str__(self):
        return "inf" if self.p is None else str(self.p)

    @classmethod
    def parse(cls, s: str) -> "Place":
        s = s.strip()
        if s in ("inf", "oo", "infinity"):
            return cls.infinity()
        return cls.finite(int(s))


INFINITY = Place.infinity()


def _valuation_frac(x: Fraction, p: int) -> tuple[int, Fraction]:
    """x = p^e * u with u a p-adic unit; returns (e, u)."""
    e = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        e += 1
    while den % p == 0:
        den //= p
        e -= 1
    return e, Fraction(num, den)


def _unit_mod(u: Fraction, m: int) -> int:
    return (u.numerator * pow(u.denominator, -1, m)) % m


def hilbert_symbol(a, b, v: Place) -> int:
    """Hilbert symbol (a, b)_v for nonzero rationals.

    +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over the
    completion at v.  At the real place this is a sign check; at an odd
    prime p with a = p^alpha u, b = p^beta w it is
    (-1)^(alpha beta (p-1)/2) (u|p)^beta (w|p)^alpha; at 2 the exponent
    is eps(u) eps(w) + alpha omega(w) + beta omega(u) with
    eps(u) = (u-1)/2 and omega(u) = (u^2-1)/8 taken mod 2.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if v.is_infinite:
        return -1 if a < 0 and b < 0 else 1
    p = v.p
    if p == 2:
        alpha, u = _valuation_frac(a, 2)
        beta, w = _valuation_frac(b, 2)
        u8, w8 = _unit_mod(u, 8), _unit_mod(w, 8)
        eps_u, eps_w = ((u8 - 1) // 2) % 2, ((w8 - 1) // 2) % 2
        om_u, om_w = ((u8 * u8 - 1) // 8) % 2, ((w8 * w8 - 1) // 8) % 2
        exp = eps_u * eps_w + alpha * om_w + beta * om_u
        return -1 if exp % 2 else 1
    alpha, u = _valuation_frac(a, p)
    beta, w = _valuation_frac(b, p)
    sign = 1
    if (alpha * beta) % 2 and p % 4 == 3:
        sign = -sign
    if beta % 2:
        sign *= legendre(u.numerator, p) * legendre(u.denominator, p)
    if alpha % 2:
        sign *= legendre(w.numerator, p) * legendre(w.denominator, p)
    return sign


def support_places(*values) -> list[Place]:
    """2, infinity, and every odd prime dividing one of the rationals."""
    primes: set[int] = set()
    for x in values:
        x = Fraction(x)
        for n in (x.numerator, x.denominator):
            primes.update(factor_integer(n).keys())
    primes.add(2)
    places = [Place.finite(p) for p in sorted(primes)]
    places.append(INFINITY)
    return places


def product_formula_check(a, b) -> bool:
    """Product of (a,b)_v over all v dividing 2ab and infinity; must be +1."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("nonzero arguments required")
    prod = 1
    for v in support_places(a, b):
        prod *= hilbert_symbol(a, b, v)
    return prod == 1


# ---------------------------------------------------------------------------
# Field tower


class RationalField:
    """Q with Fraction elements."""

    char = 0
    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def is_square(self, x) -> bool:
        return rational_sqrt(Fraction(x)) is not None

    def sqrt(self, x):
        return rational_sqrt(Fraction(x))

    def random_nonzero(self, rng, lo=-9, hi=9):
        while True:
            n = rng.randint(lo, hi)
            if n:
                return Fraction(n)

    def elt_to_str(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def elt_from_str(self, s: str):
        return Fraction(s)

    def to_json(self):
        return {"field": "Q"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("field-Q")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class FpElement:
    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError("mixed moduli")
            return other
        if isinstance(other, int):
            return FpElement(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return o if o is NotImplemented else FpElement(self.v + o.v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return o if o is NotImplemented else FpElement(self.v - o.v, self.p)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._lift(other)
        return o if o is NotImplemented else FpElement(self.v * o.v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.v == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return FpElement(self.v * pow(o.v, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __neg__(self):
        return FpElement(-self.v, self.p)

    def __pow__(self, e: int):
        if e < 0:
            return FpElement(pow(pow(self.v, -1, self.p), -e, self.p), self.p)
        return FpElement(pow(self.v, e, self.p), self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"{self.v} mod {self.p}"


class PrimeField:
    """F_p for an odd prime p (2 stays invertible everywhere)."""

    def __init__(self, p: int):
        if p == 2 or not is_prime(p):
            raise ValueError(f"modulus must be an odd prime, got {p}")
        self.p = p
        self.char = p
        self.name = f"F{p}"

    def zero(self):
        return FpElement(0, self.p)

    def one(self):
        return FpElement(1, self.p)

    def from_int(self, n):
        return FpElement(n, self.p)

    def is_square(self, x: FpElement) -> bool:
        return x.v == 0 or legendre(x.v, self.p) == 1

    def sqrt(self, x: FpElement):
        r = sqrt_mod_p(x.v, self.p)
        return None if r is None else FpElement(r, self.p)

    def nonresidue(self) -> FpElement:
        n = 2
        while legendre(n, self.p) != -1:
            n += 1
        return FpElement(n, self.p)

    def random_nonzero(self, rng, lo=None, hi=None):
        return FpElement(rng.randint(1, self.p - 1), self.p)

    def elt_to_str(self, x: FpElement) -> str:
        return f"{x.v} mod {self.p}"

    def elt_from_str(self, s: str):
        v, _, p = s.partition(" mod ")
        if int(p) != self.p:
            raise ValueError(f"modulus mismatch: {s} in F_{self.p}")
        return FpElement(int(v), self.p)

    def to_json(self):
        return {"field": "Fp", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and self.p == other.p

    def __hash__(self):
        return hash(("field-Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


class QuadElement:
    """a + b*sqrt(d) with rational a, b and squarefree d."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    def _lift(self, other):
        if isinstance(other, QuadElement):
            if other.d != self.d:
                raise ValueError("mixed radicands")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElement(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return o if o is NotImplemented else QuadElement(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return o if o is NotImplemented else QuadElement(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadElement(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def conjugate(self):
        return QuadElement(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        c = self * o.conjugate()
        return QuadElement(c.a / n, c.b / n, self.d)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __neg__(self):
        return QuadElement(-self.a, -self.b, self.d)

    def __pow__(self, e: int):
        if e < 0:
            base = QuadElement(1, 0, self.d) / self
            e = -e
        else:
            base = self
        acc = QuadElement(1, 0, self.d)
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadElement(other, 0, self.d)
        if isinstance(other, QuadElement):
            return self.d == other.d and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"{self.a}+{self.b}*sqrt({self.d})"


class QuadraticNumberField:
    """Q(sqrt(d)) for squarefree d not 0 or 1."""

    def __init__(self, d: int):
        if d in (0, 1) or squarefree_part(d) != d:
            raise ValueError(f"d must be squarefree and not 0 or 1, got {d}")
        self.d = d
        self.char = 0
        self.name = f"Q(sqrt({d}))"

    def zero(self):
        return QuadElement(0, 0, self.d)

    def one(self):
        return QuadElement(1, 0, self.d)

    def from_int(self, n):
        return QuadElement(n, 0, self.d)

    def gen(self):
        return QuadElement(0, 1, self.d)

    def sqrt(self, x: QuadElement):
        """Exact square root, or None; root with positive leading part."""
        if not x:
            return self.zero()
        if x.b == 0:
            r = rational_sqrt(x.a)
            if r is not None:
                return self._canon(QuadElement(r, 0, self.d))
            r = rational_sqrt(x.a / self.d)
            if r is not None:
                return self._canon(QuadElement(0, r, self.d))
            return None
        s = rational_sqrt(x.norm())
        if s is None:
            return None
        for t in (x.a + s, x.a - s):
            half = t / 2
            x1 = rational_sqrt(half)
            if x1 is not None and x1 != 0:
                y1 = x.b / (2 * x1)
                cand = QuadElement(x1, y1, self.d)
                if cand * cand == x:
                    return self._canon(cand)
        return None

    @staticmethod
    def _canon(x: QuadElement) -> QuadElement:
        if x.a < 0 or (x.a == 0 and x.b < 0):
            return -x
        return x

    def is_square(self, x: QuadElement) -> bool:
        return self.sqrt(x) is not None

    def random_nonzero(self, rng, lo=-9, hi=9):
        while True:
            x = QuadElement(rng.randint(lo, hi), rng.randint(-2, 2), self.d)
            if x:
                return x

    def elt_to_str(self, x: QuadElement) -> str:
        return f"{QQ.elt_to_str(x.a)}+{QQ.elt_to_str(x.b)}*sqrt({self.d})"

    def elt_from_str(self, s: str):
        body, _, rad = s.partition("*sqrt(")
        if not rad:
            return QuadElement(Fraction(s), 0, self.d)
        d = int(rad.rstrip(")"))
        if d != self.d:
            raise ValueError("radicand mismatch")
        a, _, b = body.rpartition("+")
        return QuadElement(Fraction(a), Fraction(b), self.d)

    def to_json(self):
        return {"field": "Qsqrt", "d": self.d}

    def __eq__(self, other):
        return isinstance(other, QuadraticNumberField) and self.d == other.d

    def __hash__(self):
        return hash(("field-quad", self.d))

    def __repr__(self):
        return self.name


class RatFunc:
    """num/den with polynomial num, den over Q or F_p, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not num.is_zero():
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
        else:
            den = Poly.const(den.field.one(), den.field)
        lead = den.leading()
        if lead != den.field.one():
            num = num.scale(den.field.one() / lead)
            den = den.monic()
        self.num = num
        self.den = den

    @property
    def base(self):
        return self.den.field

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other, Poly.const(other.field.one(), other.field))
        if isinstance(other, int):
            f = self.base
            return RatFunc(Poly.const(f.from_int(other), f), Poly.const(f.one(), f))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return o if o is NotImplemented else self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._lift(other)
        return o if o is NotImplemented else RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __pow__(self, e: int):
        if e < 0:
            return (self._lift(1) / self) ** (-e)
        acc = self._lift(1)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Poly)):
            other = self._lift(other)
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"({self.num!r})/({self.den!r})"


class RationalFunctionField:
    """F(t) over F = Q or F_p, elements RatFunc."""

    def __init__(self, base):
        if not isinstance(base, (RationalField, PrimeField)):
            raise UnsupportedBase("function fields are over Q or F_p only")
        self.base = base
        self.char = base.char
        self.name = f"{base.name}(t)"

    def zero(self):
        return RatFunc(Poly((), self.base), Poly.const(self.base.one(), self.base))

    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        return RatFunc(
            Poly.const(self.base.from_int(n), self.base),
            Poly.const(self.base.one(), self.base),
        )

    def t(self):
        return RatFunc(Poly.x(self.base), Poly.const(self.base.one(), self.base))

    def from_poly(self, p: Poly):
        return RatFunc(p, Poly.const(self.base.one(), self.base))

    def poly_from_ints(self, ints):
        return Poly.from_int_coeffs(ints, self.base)

    def is_square(self, x: RatFunc) -> bool:
        if not x:
            return True
        return square_class(x, self).is_trivial

    def sqrt(self, x: RatFunc):
        gn = poly_sqrt(x.num)
        gd = poly_sqrt(x.den)
        if gn is None or gd is None:
            return None
        return RatFunc(gn, gd)

    def random_nonzero(self, rng, lo=-5, hi=5, max_degree=2):
        while True:
            deg = rng.randint(0, max_degree)
            coeffs = [self.base.from_int(rng.randint(lo, hi)) for _ in range(deg + 1)]
            p = Poly(coeffs, self.base)
            if not p.is_zero():
                return self.from_poly(p)

    def elt_to_str(self, x: RatFunc) -> str:
        return f"{_poly_to_str(x.num, self.base)} / {_poly_to_str(x.den, self.base)}"

    def elt_from_str(self, s: str):
        num_s, _, den_s = s.partition(" / ")
        return RatFunc(_poly_from_str(num_s, self.base), _poly_from_str(den_s, self.base))

    def to_json(self):
        d = {"field": "Qt"} if self.base.char == 0 else {"field": "Fpt", "p": self.base.p}
        return d

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and self.base == other.base

    def __hash__(self):
        return hash(("field-ratfunc", self.base))

    def __repr__(self):
        return self.name


def _poly_to_str(p: Poly, base) -> str:
    if p.is_zero():
        return "0"
    terms = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c:
            terms.append(f"{base.elt_to_str(c)}*t^{i}")
    return " + ".join(terms)


def _poly_from_str(s: str, base) -> Poly:
    s = s.strip()
    if s == "0":
        return Poly((), base)
    coeffs = {}
    for term in s.split(" + "):
        c, _, d = term.partition("*t^")
        coeffs[int(d)] = base.elt_from_str(c)
    out = [base.zero()] * (max(coeffs) + 1)
    for d, c in coeffs.items():
        out[d] = c
    return Poly(out, base)


def poly_sqrt(f: Poly) -> Poly | None:
    """Exact polynomial square root with canonical leading coefficient."""
    if f.is_zero():
        return f
    field = f.field
    if f.degree % 2:
        return None
    if isinstance(field, RationalField):
        lead_rt = rational_sqrt(f.leading())
    elif isinstance(field, PrimeField):
        lead_rt = field.sqrt(f.leading())
    else:
        raise UnsupportedBase("polynomial sqrt over Q or F_p coefficients only")
    if lead_rt is None or not lead_rt:
        return None
    m = f.degree // 2
    zero = field.zero()
    g = [zero] * (m + 1)
    g[m] = lead_rt
    two_gm = field.from_int(2) * lead_rt
    for idx in range(m - 1, -1, -1):
        k = idx + m
        acc = f.coeffs[k] if k <= f.degree else zero
        for i in range(idx + 1, m):
            j = k - i
            if idx < j < m:
                acc = acc - g[i] * g[j]
        g[idx] = acc / two_gm
    cand = Poly(g, field)
    return cand if cand * cand == f else None


# ---------------------------------------------------------------------------
# Polynomial factorisation (sympy does the heavy lifting)


def factor_poly(p: Poly):
    """Factor p into (constant, [(monic irreducible Poly, exponent), ...])."""
    import sympy

    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    base = p.field
    x = sympy.Symbol("x")
    if isinstance(base, RationalField):
        sp = sympy.Poly([sympy.Rational(c) for c in reversed(p.coeffs)], x, domain="QQ")
        const, factors = sp.factor_list()
        const = Fraction(const.p, const.q)
        out = []
        for f, e in factors:
            coeffs = [Fraction(c.p, c.q) for c in reversed(f.all_coeffs())]
            fp = Poly(coeffs, base)
            lead = fp.leading()
            if lead != base.one():
                const *= lead**e
                fp = fp.monic()
            out.append((fp, e))
        return const, out
    if isinstance(base, PrimeField):
        q = base.p
        sp = sympy.Poly([c.v for c in reversed(p.coeffs)], x, modulus=q)
        const, factors = sp.factor_list()
        const_e = FpElement(int(const) % q, q)
        out = []
        for f, e in factors:
            coeffs = [FpElement(int(c) % q, q) for c in reversed(f.all_coeffs())]
            fp = Poly(coeffs, base)
            lead = fp.leading()
            if lead != base.one():
                const_e = const_e * _fp_pow(lead, e)
                fp = fp.monic()
            out.append((fp, e))
        return const_e, out
    raise UnsupportedBase("factorisation over Q or F_p coefficients only")


def _fp_pow(x: FpElement, e: int) -> FpElement:
    return FpElement(pow(x.v, e, x.p), x.p)


def poly_is_irreducible(p: Poly) -> bool:
    if p.degree < 1:
        return False
    _, factors = factor_poly(p)
    return len(factors) == 1 and factors[0][1] == 1


# ---------------------------------------------------------------------------
# Square classes


class SquareClass:
    """Canonical representative of a nonzero scalar modulo squares.

    Over Q the payload is a signed squarefree integer; over F_p it is 1
    or the least positive nonresidue; over F(t) it is a pair (content
    class payload, monic squarefree Poly).
    """

    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        self.field = field
        self.rep = rep

    @property
    def is_trivial(self) -> bool:
        if isinstance(self.field, (RationalField, PrimeField)):
            return self.rep == 1
        c, g = self.rep
        return c == 1 and g.degree == 0

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if self.field != other.field:
            raise ValueError("square classes over different fields")
        f = self.field
        if isinstance(f, RationalField):
            return SquareClass(f, squarefree_part(self.rep * other.rep))
        if isinstance(f, PrimeField):
            rep = 1 if self.rep == other.rep else f.nonresidue().v
            return SquareClass(f, rep)
        (c1, g1), (c2, g2) = self.rep, other.rep
        base = f.base
        if isinstance(base, RationalField):
            c = squarefree_part(c1 * c2)
        else:
            c = 1 if c1 == c2 else base.nonresidue().v
        h = g1.gcd(g2)
        g = ((g1 * g2) // (h * h)).monic() if h.degree > 0 else (g1 * g2).monic()
        return SquareClass(f, (c, g))

    def __eq__(self, other):
        return (
            isinstance(other, SquareClass)
            and self.field == other.field
            and self.rep == other.rep
        )

    def __hash__(self):
        return hash((self.field, self.rep if not isinstance(self.rep, tuple) else self.rep))

    def value(self):
        """A scalar in the field representing this class."""
        f = self.field
        if isinstance(f, RationalField):
            return Fraction(self.rep)
        if isinstance(f, PrimeField):
            return FpElement(self.rep, f.p)
        c, g = self.rep
        return f.from_int(c) * f.from_poly(g)

    def __repr__(self):
        if isinstance(self.field, (RationalField, PrimeField)):
            return f"SquareClass({self.rep})"
        c, g = self.rep
        return f"SquareClass({c} * {g!r})"


def square_class(a, field=None) -> SquareClass:
    """Canonical square class of a nonzero scalar.

    The field is inferred from the element type when not given.
    Quadratic number fields have no canonical representative here; use
    the field's is_square for square-class comparisons instead.
    """
    if field is None:
        field = _infer_field(a)
    if isinstance(field, RationalField):
        a = Fraction(a)
        if a == 0:
            raise ValueError("0 has no square class")
        return SquareClass(field, squarefree_part(a.numerator * a.denominator))
    if isinstance(field, PrimeField):
        if not a:
            raise ValueError("0 has no square class")
        rep = 1 if legendre(a.v, field.p) == 1 else field.nonresidue().v
        return SquareClass(field, rep)
    if isinstance(field, RationalFunctionField):
        if not a:
            raise ValueError("0 has no square class")
        prod = a.num * a.den
        const, factors = factor_poly(prod)
        base = field.base
        g = Poly.const(base.one(), base)
        for f, e in factors:
            if e % 2:
                g = g * f
        if isinstance(base, RationalField):
            c = squarefree_part(const.numerator * const.denominator)
        else:
            c = 1 if base.is_square(const) else base.nonresidue().v
        return SquareClass(field, (c, g))
    if isinstance(field, QuadraticNumberField):
        raise UnsupportedBase(
            "no canonical square-class form over quadratic fields; compare with is_square"
        )
    raise UnsupportedBase(f"square classes over {field!r} unsupported")


def _infer_field(a):
    if isinstance(a, (int, Fraction)):
        return QQ
    if isinstance(a, FpElement):
        return GF(a.p)
    if isinstance(a, QuadElement):
        return QuadraticNumberField(a.d)
    if isinstance(a, RatFunc):
        return RationalFunctionField(a.base)
    raise TypeError(f"not a scalar: {a!r}")


def field_from_json(d) -> object:
    kind = d["field"]
    if kind == "Q":
        return QQ
    if kind == "Fp":
        return GF(d["p"])
    if kind == "Qsqrt":
        return QuadraticNumberField(d["d"])
    if kind == "Qt":
        return RationalFunctionField(QQ)
    if kind == "Fpt":
        return RationalFunctionField(GF(d["p"]))
    raise ValueError(f"unknown field tag {kind!r}")
