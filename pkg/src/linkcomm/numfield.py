"""Exact arithmetic in K = Q(i, sqrt2) and its real subfield Q(sqrt2).

Elements are stored as integer numerators over one positive common
denominator, which keeps the inner loops (matrix products over long words)
in plain integer arithmetic.  Coordinates are exposed as ``Fraction``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

Rational = Union[int, Fraction]

SQRT2 = math.sqrt(2.0)

# one place for float tolerances on embedded values
ABS_TOL = 1e-9


def _as_fraction(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


def _common(fracs: Iterable[Fraction]) -> tuple[list[int], int]:
    fracs = list(fracs)
    den = 1
    for f in fracs:
        den = den * f.denominator // math.gcd(den, f.denominator)
    return [f.numerator * (den // f.denominator) for f in fracs], den


def _reduce(nums: tuple[int, ...], den: int) -> tuple[tuple[int, ...], int]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        nums = tuple(-n for n in nums)
        den = -den
    g = den
    for n in nums:
        if g == 1:
            break
        g = math.gcd(g, n)
    if g != 1:
        nums = tuple(n // g for n in nums)
        den //= g
    return nums, den


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


class RealQuadElement:
    """a + b*sqrt2 with rational a, b."""

    __slots__ = ("_n", "_d")

    def __init__(self, a: Rational = 0, b: Rational = 0):
        nums, den = _common((_as_fraction(a), _as_fraction(b)))
        self._n, self._d = _reduce(tuple(nums), den)

    @classmethod
    def _raw(cls, n0: int, n1: int, den: int) -> "RealQuadElement":
        obj = cls.__new__(cls)
        obj._n, obj._d = _reduce((n0, n1), den)
        return obj

    @classmethod
    def coerce(cls, x) -> "RealQuadElement":
        if isinstance(x, RealQuadElement):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        if isinstance(x, NumberFieldElement):
            if not x.is_real():
                raise ValueError(f"{x} is not in Q(sqrt2)")
            return cls(x.a, x.b)
        raise TypeError(f"cannot coerce {type(x).__name__} to RealQuadElement")

    @property
    def a(self) -> Fraction:
        return Fraction(self._n[0], self._d)

    @property
    def b(self) -> Fraction:
        return Fraction(self._n[1], self._d)

    def coords(self) -> tuple[Fraction, Fraction]:
        return self.a, self.b

    def __add__(self, other):
        try:
            o = RealQuadElement.coerce(other)
        except TypeError:
            return NotImplemented
        d1, d2 = self._d, o._d
        return RealQuadElement._raw(self._n[0] * d2 + o._n[0] * d1,
                                    self._n[1] * d2 + o._n[1] * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return RealQuadElement._raw(-self._n[0], -self._n[1], self._d)

    def __sub__(self, other):
        try:
            return self + (-RealQuadElement.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return RealQuadElement.coerce(other) - self

    def __mul__(self, other):
        try:
            o = RealQuadElement.coerce(other)
        except TypeError:
            return NotImplemented
        a1, b1 = self._n
        a2, b2 = o._n
        return RealQuadElement._raw(a1 * a2 + 2 * b1 * b2, a1 * b2 + b1 * a2, self._d * o._d)

    __rmul__ = __mul__

    def conjugate(self) -> "RealQuadElement":
        """The Galois flip sqrt2 -> -sqrt2."""
        return RealQuadElement._raw(self._n[0], -self._n[1], self._d)

    def norm(self) -> Fraction:
        a, b = self.a, self.b
        return a * a - 2 * b * b

    def inverse(self) -> "RealQuadElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(sqrt2)")
        a, b = self._n
        m = a * a - 2 * b * b
        # (a + b r)^-1 = (a - b r) d / m
        return RealQuadElement._raw(a * self._d, -b * self._d, m)

    def __truediv__(self, other):
        try:
            o = RealQuadElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return RealQuadElement.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RealQuadElement(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return self._n == (0, 0)

    def sign(self) -> int:
        """Exact sign under the real embedding sqrt2 > 0."""
        a, b = self._n
        if a >= 0 and b >= 0:
            return 0 if (a == 0 and b == 0) else 1
        if a <= 0 and b <= 0:
            return -1
        # mixed signs: compare a^2 with 2 b^2
        if a > 0:
            return 1 if a * a > 2 * b * b else -1
        return 1 if 2 * b * b > a * a else -1

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        if isinstance(other, NumberFieldElement):
            return other == self
        try:
            o = RealQuadElement.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self._n == o._n and self._d == o._d

    def __hash__(self):
        return hash((self._n[0], self._n[1], 0, 0, self._d))

    def __float__(self):
        return float(self.a) + float(self.b) * SQRT2

    def to_field(self) -> "NumberFieldElement":
        return NumberFieldElement._raw(self._n[0], self._n[1], 0, 0, self._d)

    def to_json(self) -> list[str]:
        return [_frac_str(self.a), _frac_str(self.b)]

    def __repr__(self):
        return f"RealQuadElement({_frac_str(self.a)}, {_frac_str(self.b)})"

    def __str__(self):
        return _pretty(self.a, self.b, Fraction(0), Fraction(0))


class NumberFieldElement:
    """a + b*sqrt2 + c*i + d*i*sqrt2 with rational coordinates.

    >>> x = NumberFieldElement(Fraction(1, 2), 0, Fraction(1, 2), 0)
    >>> x * x.conjugate()
    NumberFieldElement(1/2, 0, 0, 0)
    """

    __slots__ = ("_n", "_d")

    def __init__(self, a: Rational = 0, b: Rational = 0, c: Rational = 0, d: Rational = 0):
        nums, den = _common(_as_fraction(v) for v in (a, b, c, d))
        self._n, self._d = _reduce(tuple(nums), den)

    @classmethod
    def _raw(cls, n0: int, n1: int, n2: int, n3: int, den: int) -> "NumberFieldElement":
        obj = cls.__new__(cls)
        obj._n, obj._d = _reduce((n0, n1, n2, n3), den)
        return obj

    @classmethod
    def coerce(cls, x) -> "NumberFieldElement":
        if isinstance(x, NumberFieldElement):
            return x
        if isinstance(x, RealQuadElement):
            return x.to_field()
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to NumberFieldElement")

    @classmethod
    def from_parts(cls, re, im) -> "NumberFieldElement":
        re, im = RealQuadElement.coerce(re), RealQuadElement.coerce(im)
        return cls(re.a, re.b, im.a, im.b)

    @property
    def a(self) -> Fraction:
        return Fraction(self._n[0], self._d)

    @property
    def b(self) -> Fraction:
        return Fraction(self._n[1], self._d)

    @property
    def c(self) -> Fraction:
        return Fraction(self._n[2], self._d)

    @property
    def d(self) -> Fraction:
        return Fraction(self._n[3], self._d)

    @property
    def denominator(self) -> int:
        return self._d

    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.a, self.b, self.c, self.d

    def real_part(self) -> RealQuadElement:
        return RealQuadElement._raw(self._n[0], self._n[1], self._d)

    def imag_part(self) -> RealQuadElement:
        return RealQuadElement._raw(self._n[2], self._n[3], self._d)

    def is_zero(self) -> bool:
        return not any(self._n)

    def is_real(self) -> bool:
        return self._n[2] == 0 and self._n[3] == 0

    def is_rational(self) -> bool:
        return self._n[1] == 0 and self._n[2] == 0 and self._n[3] == 0

    def __add__(self, other):
        try:
            o = NumberFieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        d1, d2 = self._d, o._d
        if d1 == d2:
            p, q = self._n, o._n
            return NumberFieldElement._raw(p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3], d1)
        p, q = self._n, o._n
        return NumberFieldElement._raw(p[0] * d2 + q[0] * d1, p[1] * d2 + q[1] * d1,
                                       p[2] * d2 + q[2] * d1, p[3] * d2 + q[3] * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        n = self._n
        return NumberFieldElement._raw(-n[0], -n[1], -n[2], -n[3], self._d)

    def __sub__(self, other):
        try:
            return self + (-NumberFieldElement.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return NumberFieldElement.coerce(other) - self

    def __mul__(self, other):
        try:
            o = NumberFieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        a1, b1, c1, d1 = self._n
        a2, b2, c2, d2 = o._n
        # (X1 + Y1 i)(X2 + Y2 i) with X, Y in Q(sqrt2)
        return NumberFieldElement._raw(
            a1 * a2 + 2 * b1 * b2 - c1 * c2 - 2 * d1 * d2,
            a1 * b2 + b1 * a2 - c1 * d2 - d1 * c2,
            a1 * c2 + 2 * b1 * d2 + c1 * a2 + 2 * d1 * b2,
            a1 * d2 + b1 * c2 + c1 * b2 + d1 * a2,
            self._d * o._d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "NumberFieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(i, sqrt2)")
        a, b, c, d = self._n
        # N = X^2 + Y^2 = p + q sqrt2
        p = a * a + 2 * b * b + c * c + 2 * d * d
        q = 2 * a * b + 2 * c * d
        m = p * p - 2 * q * q
        # (X - Y i)(p - q sqrt2) * den / m
        return NumberFieldElement._raw(
            (a * p - 2 * b * q) * self._d,
            (b * p - a * q) * self._d,
            (-c * p + 2 * d * q) * self._d,
            (-d * p + c * q) * self._d,
            m,
        )

    def __truediv__(self, other):
        try:
            o = NumberFieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return NumberFieldElement.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "NumberFieldElement":
        """Complex conjugation i -> -i."""
        n = self._n
        return NumberFieldElement._raw(n[0], n[1], -n[2], -n[3], self._d)

    def sigma2(self) -> "NumberFieldElement":
        """The automorphism sqrt2 -> -sqrt2 fixing i."""
        n = self._n
        return NumberFieldElement._raw(n[0], -n[1], n[2], -n[3], self._d)

    def abs_squared(self) -> RealQuadElement:
        return (self * self.conjugate()).real_part()

    def __eq__(self, other):
        try:
            o = NumberFieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self._n == o._n and self._d == o._d

    def __hash__(self):
        return hash((*self._n, self._d))

    def __complex__(self):
        return embed(self, "sigma1")

    def sort_key(self) -> tuple[Fraction, ...]:
        return self.coords()

    def to_json(self) -> list[str]:
        return [_frac_str(v) for v in self.coords()]

    def __repr__(self):
        return "NumberFieldElement({})".format(", ".join(_frac_str(v) for v in self.coords()))

    def __str__(self):
        return _pretty(*self.coords())


def _pretty(a: Fraction, b: Fraction, c: Fraction, d: Fraction) -> str:
    parts = []
    for coeff, unit in ((a, ""), (b, "√2"), (c, "i"), (d, "i√2")):
        if coeff == 0:
            continue
        mag = abs(coeff)
        if unit and mag == 1:
            body = unit
        elif unit:
            body = f"{_frac_str(mag)}{unit}"
        else:
            body = _frac_str(mag)
        parts.append(("-" if coeff < 0 else "+", body))
    if not parts:
        return "0"
    head_sign, head = parts[0]
    text = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


ZERO = NumberFieldElement(0)
ONE = NumberFieldElement(1)
I = NumberFieldElement(0, 0, 1, 0)
R2 = NumberFieldElement(0, 1, 0, 0)
IR2 = NumberFieldElement(0, 0, 0, 1)


def K(a: Rational = 0, b: Rational = 0, c: Rational = 0, d: Rational = 0) -> NumberFieldElement:
    """Shorthand constructor: K(a, b, c, d) = a + b√2 + c i + d i√2."""
    return NumberFieldElement(a, b, c, d)


def complex_conjugate(x: NumberFieldElement) -> NumberFieldElement:
    return x.conjugate()


def galois_sigma2(x: NumberFieldElement) -> NumberFieldElement:
    return x.sigma2()


def embed(x, which: str = "sigma1") -> complex:
    """Complex value of x under sigma1 (identity) or sigma2 (flip sqrt2 first)."""
    x = NumberFieldElement.coerce(x)
    if which == "sigma2":
        x = x.sigma2()
    elif which != "sigma1":
        raise ValueError(f"unknown embedding {which!r}")
    a, b, c, d = x.coords()
    return complex(float(a) + float(b) * SQRT2, float(c) + float(d) * SQRT2)


def charpoly(x: NumberFieldElement) -> tuple[Fraction, ...]:
    """Characteristic polynomial of multiplication by x on K, monic, as
    coefficients (1, e1, e2, e3, e4) of X^4 + e1 X^3 + ... + e4.

    Computed as the product over the Galois group: first pair x with its
    complex conjugate (coefficients in Q(sqrt2)), then with the sqrt2 flip.
    """
    x = NumberFieldElement.coerce(x)
    s = (x + x.conjugate()).real_part()       # X^2 - s X + p
    p = x.abs_squared()
    s2, p2 = s.conjugate(), p.conjugate()
    coeffs = (
        RealQuadElement(1),
        -(s + s2),
        p + p2 + s * s2,
        -(s * p2 + s2 * p),
        p * p2,
    )
    out = []
    for cf in coeffs:
        assert cf.b == 0
        out.append(cf.a)
    return tuple(out)


def is_algebraic_integer(x) -> bool:
    x = NumberFieldElement.coerce(x)
    if x.denominator == 1:
        # Z[i, sqrt2] sits inside the ring of integers
        return True
    return all(cf.denominator == 1 for cf in charpoly(x))


def sqrt_rational(q: Rational) -> Fraction | None:
    q = _as_fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_q2(x) -> RealQuadElement | None:
    """A square root of x inside Q(sqrt2), or None."""
    x = RealQuadElement.coerce(x)
    p, q = x.a, x.b
    if q == 0:
        r = sqrt_rational(p)
        if r is not None:
            return RealQuadElement(r)
        r = sqrt_rational(p / 2)
        return None if r is None else RealQuadElement(0, r)
    m = sqrt_rational(p * p - 2 * q * q)
    if m is None:
        return None
    for mm in (m, -m):
        s = sqrt_rational((p + mm) / 2)
        if s is None or s == 0:
            continue
        cand = RealQuadElement(s, q / (2 * s))
        if cand * cand == x:
            return cand
    return None


def sqrt_k(x) -> NumberFieldElement | None:
    """A square root of x inside K, or None."""
    x = NumberFieldElement.coerce(x)
    if x.is_zero():
        return ZERO
    re, im = x.real_part(), x.imag_part()
    n0 = sqrt_q2(re * re + im * im)
    if n0 is None:
        return None
    for n in (n0, -n0):
        u2 = (re + n) / 2
        if u2.is_zero():
            v = sqrt_q2(-re)
            if v is None:
                continue
            cand = NumberFieldElement.from_parts(0, v)
        else:
            u = sqrt_q2(u2)
            if u is None:
                continue
            cand = NumberFieldElement.from_parts(u, im / (2 * u))
        if cand * cand == x:
            return cand
    return None


def subfield_of(elements: Iterable) -> str:
    """Smallest subfield of K containing the given elements.

    The subfields are Q, Q(i), Q(sqrt2), Q(i sqrt2) and K itself.
    """
    has_b = has_c = has_d = False
    for x in elements:
        x = NumberFieldElement.coerce(x)
        _, b, c, d = x._n
        has_b |= b != 0
        has_c |= c != 0
        has_d |= d != 0
    flags = (has_b, has_c, has_d)
    if flags == (False, False, False):
        return "Q"
    if flags == (False, True, False):
        return "Q(i)"
    if flags == (True, False, False):
        return "Q(sqrt2)"
    if flags == (False, False, True):
        return "Q(i*sqrt2)"
    return "Q(i,sqrt2)"


def from_json(coords) -> NumberFieldElement:
    return NumberFieldElement(*(Fraction(c) for c in coords))
