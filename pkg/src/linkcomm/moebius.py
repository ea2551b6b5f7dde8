"""Projective 2x2 matrices over K, extended by orientation-reversing maps.

An orientation-reversing element (M, reversing) acts on the boundary by
z -> M(conj z).  Everything else follows from that one convention:

    (A, e) o (B, f) = (A * B^e, e xor f)      where B^e = conj(B) if e

so r o q o r = conj(q) for r = (Id, reversing).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .numfield import ONE, NumberFieldElement, embed, sqrt_k


class _Infinity:
    __slots__ = ()

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "∞"

    def __reduce__(self):
        return "INF"

    def sort_key(self):
        return (float("inf"),)

    def to_json(self):
        return "inf"


INF = _Infinity()

BoundaryPoint = Union[NumberFieldElement, _Infinity]


def as_point(z) -> BoundaryPoint:
    return z if z is INF else NumberFieldElement.coerce(z)


def point_key(z: BoundaryPoint):
    return (1,) if z is INF else (0, *z.coords())


class ExtendedMoebius:
    """2x2 matrix over K with an orientation flag; equality is projective."""

    __slots__ = ("entries", "reversing")

    def __init__(self, a, b, c, d, reversing: bool = False):
        self.entries = tuple(NumberFieldElement.coerce(x) for x in (a, b, c, d))
        self.reversing = bool(reversing)
        if self.det().is_zero():
            raise ValueError("singular matrix")

    @classmethod
    def _make(cls, entries, reversing):
        obj = cls.__new__(cls)
        obj.entries = entries
        obj.reversing = reversing
        return obj

    @classmethod
    def identity(cls) -> "ExtendedMoebius":
        return cls(1, 0, 0, 1)

    @property
    def orientation(self) -> str:
        return "reversing" if self.reversing else "preserving"

    def det(self) -> NumberFieldElement:
        a, b, c, d = self.entries
        return a * d - b * c

    def trace(self) -> NumberFieldElement:
        return self.entries[0] + self.entries[3]

    def entry_conjugate(self) -> "ExtendedMoebius":
        """Entrywise complex conjugate, same orientation (the bar of the text)."""
        return ExtendedMoebius._make(tuple(x.conjugate() for x in self.entries), self.reversing)

    def __matmul__(self, other: "ExtendedMoebius") -> "ExtendedMoebius":
        a, b, c, d = self.entries
        e, f, g, h = other.conjugated_entries() if self.reversing else other.entries
        return ExtendedMoebius._make(
            (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h),
            self.reversing != other.reversing,
        )

    def conjugated_entries(self):
        return tuple(x.conjugate() for x in self.entries)

    def inverse(self) -> "ExtendedMoebius":
        a, b, c, d = self.entries
        adj = (d, -b, -c, a)
        if self.reversing:
            adj = tuple(x.conjugate() for x in adj)
        return ExtendedMoebius._make(adj, self.reversing)

    def __pow__(self, k: int) -> "ExtendedMoebius":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = ExtendedMoebius.identity()
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def scaled(self, lam) -> "ExtendedMoebius":
        lam = NumberFieldElement.coerce(lam)
        return ExtendedMoebius._make(tuple(lam * x for x in self.entries), self.reversing)

    def normalized(self) -> "ExtendedMoebius":
        """Determinant-1 representative when det is a square in K, else self."""
        root = sqrt_k(self.det())
        if root is None or root == ONE:
            return self
        return self.scaled(root.inverse())

    def apply(self, z: BoundaryPoint) -> BoundaryPoint:
        a, b, c, d = self.entries
        if z is INF:
            return INF if c.is_zero() else a / c
        z = NumberFieldElement.coerce(z)
        if self.reversing:
            z = z.conjugate()
        num, den = a * z + b, c * z + d
        if den.is_zero():
            return INF
        return num / den

    def __call__(self, z):
        return self.apply(z)

    def is_identity(self) -> bool:
        return self == ExtendedMoebius.identity()

    def __eq__(self, other):
        if not isinstance(other, ExtendedMoebius):
            return NotImplemented
        return projectively_equal(self, other)

    def __hash__(self):
        # canonical representative: first nonzero entry scaled to 1
        lead = next(x for x in self.entries if not x.is_zero())
        inv = lead.inverse()
        return hash((tuple(x * inv for x in self.entries), self.reversing))

    def to_json(self) -> dict:
        a, b, c, d = self.entries
        return {
            "matrix": [[a.to_json(), b.to_json()], [c.to_json(), d.to_json()]],
            "orientation": self.orientation,
        }

    def to_complex(self, which: str = "sigma1"):
        return [embed(x, which) for x in self.entries]

    def __repr__(self):
        a, b, c, d = self.entries
        tag = ", reversing" if self.reversing else ""
        return f"ExtendedMoebius([{a}, {b}; {c}, {d}]{tag})"


def moebius(a, b, c, d) -> ExtendedMoebius:
    return ExtendedMoebius(a, b, c, d)


def compose(x: ExtendedMoebius, y: ExtendedMoebius) -> ExtendedMoebius:
    """x o y: apply y first."""
    return x @ y


def projectively_equal(x: ExtendedMoebius, y: ExtendedMoebius) -> bool:
    if x.reversing != y.reversing:
        return False
    p, q = x.entries, y.entries
    # p parallel to q as vectors in K^4
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] * q[j] != p[j] * q[i]:
                return False
    # rule out a zero pattern mismatch
    return all(p[i].is_zero() == q[i].is_zero() for i in range(4))


def conjugate(x: ExtendedMoebius, by: ExtendedMoebius) -> ExtendedMoebius:
    """x^by = by o x o by^-1."""
    return by @ x @ by.inverse()


class TraceError(ValueError):
    pass


def trace_pm(x: ExtendedMoebius) -> frozenset:
    """{tau, -tau} for a determinant-1 representative of x."""
    if x.reversing:
        raise TraceError("trace of an orientation-reversing element")
    det = x.det()
    root = sqrt_k(det)
    if root is None:
        raise TraceError(f"determinant {det} is not a square in K")
    tau = x.trace() / root
    return frozenset((tau, -tau))


def trace_squared(x: ExtendedMoebius) -> NumberFieldElement:
    """tr^2 / det, a projective invariant needing no square root."""
    tr = x.trace()
    return tr * tr / x.det()


@dataclass(frozen=True)
class Classification:
    kind: str
    order: int | str | None = None

    def __str__(self):
        if self.kind == "elliptic":
            return f"elliptic(order {self.order})"
        return self.kind


ELLIPTIC_SEARCH_BOUND = 12


def classify(x: ExtendedMoebius) -> Classification:
    if x.reversing:
        raise TraceError("classify needs an orientation-preserving element")
    if x.is_identity():
        return Classification("identity")
    t2 = trace_squared(x)
    if t2 == NumberFieldElement(4):
        return Classification("parabolic")
    power = x
    for k in range(2, ELLIPTIC_SEARCH_BOUND + 1):
        power = power @ x
        if power.is_identity():
            return Classification("elliptic", k)
    val = embed(t2, "sigma1")
    if abs(val.imag) < 1e-12 and -1e-12 <= val.real < 4:
        return Classification("elliptic", "infinite")
    return Classification("loxodromic")


_TOKEN = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^\{?(-?\d+)\}?)?$")


@dataclass(frozen=True)
class GroupWord:
    """A word as (generator name, nonzero exponent) pairs."""

    letters: tuple[tuple[str, int], ...] = ()

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        letters = []
        for pos, tok in enumerate(text.split()):
            m = _TOKEN.match(tok)
            if not m:
                raise ValueError(f"bad token {tok!r} at position {pos}")
            exp = int(m.group(2)) if m.group(2) is not None else 1
            if exp == 0:
                raise ValueError(f"zero exponent in token {tok!r} at position {pos}")
            letters.append((m.group(1), exp))
        return cls(tuple(letters))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self):
        return sum(abs(e) for _, e in self.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(g if e == 1 else f"{g}^{e}" for g, e in self.letters)


def evaluate_word(w: GroupWord | str, table: Mapping[str, ExtendedMoebius]) -> ExtendedMoebius:
    if isinstance(w, str):
        w = GroupWord.parse(w)
    out = ExtendedMoebius.identity()
    for name, exp in w.letters:
        if name not in table:
            raise KeyError(f"unknown generator {name!r}")
        out = out @ (table[name] ** exp)
    return out


def product(elements: Sequence[ExtendedMoebius]) -> ExtendedMoebius:
    out = ExtendedMoebius.identity()
    for g in elements:
        out = out @ g
    return out
