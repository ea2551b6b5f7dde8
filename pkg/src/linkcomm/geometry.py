"""Upper half-space primitives: hyperplanes, reflections, angles, horospheres,
and the light-cone lift to the hyperboloid model.

A hyperplane is stored through its boundary circle as an oriented Hermitian
form

    q(z) = A|z|^2 + conj(B) z + B conj(z) + C,      A, C real,

so vertical planes are the forms with A = 0 and q(inf) is read as A.  The
orientation marks a side: the half-space over {q >= 0}.  Moebius maps act
on forms by congruence, which keeps every image exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .moebius import INF, BoundaryPoint, ExtendedMoebius, as_point
from .numfield import I, NumberFieldElement, RealQuadElement, sqrt_q2


class Intersection(enum.Enum):
    DISJOINT = "disjoint"
    # disjoint in H^3 but asymptotic at one ideal point
    TANGENT = "tangent"


class Hyperplane:
    __slots__ = ("A", "B", "C")

    def __init__(self, A, B, C):
        self.A = RealQuadElement.coerce(A)
        self.B = NumberFieldElement.coerce(B)
        self.C = RealQuadElement.coerce(C)
        if self.discriminant().sign() <= 0:
            raise ValueError("form does not describe a circle or line")

    @classmethod
    def vertical(cls, z1, z2) -> "Hyperplane":
        """Plane over the line z1 -> z2, nonnegative side to its right."""
        z1, z2 = NumberFieldElement.coerce(z1), NumberFieldElement.coerce(z2)
        u = z2 - z1
        if u.is_zero():
            raise ValueError("vertical plane needs two distinct anchors")
        C = (I * (u * z1.conjugate() - u.conjugate() * z1)).real_part()
        return cls(0, -I * u, C)

    @classmethod
    def hemisphere(cls, center, radius_squared) -> "Hyperplane":
        """Hemisphere over |z - center|^2 = radius_squared, nonnegative outside."""
        m = NumberFieldElement.coerce(center)
        rho = RealQuadElement.coerce(radius_squared)
        if rho.sign() <= 0:
            raise ValueError("radius_squared must be positive")
        return cls(1, -m, m.abs_squared() - rho)

    @classmethod
    def from_functional(cls, ell: Sequence) -> "Hyperplane":
        """Plane whose lifted boundary is {v : ell . v = 0} (Euclidean dot)."""
        al, be, ga, de = (RealQuadElement.coerce(x) for x in ell)
        return cls(ga + de, NumberFieldElement.from_parts(al, be), de - ga)

    @classmethod
    def through(cls, z1, z2, z3) -> "Hyperplane":
        rows = [boundary_to_lightcone(z).coords for z in (z1, z2, z3)]
        return cls.from_functional(cross4(rows))

    def functional(self) -> tuple[RealQuadElement, ...]:
        half = Fraction(1, 2)
        return (self.B.real_part(), self.B.imag_part(),
                (self.A - self.C) * half, (self.A + self.C) * half)

    def discriminant(self) -> RealQuadElement:
        return self.B.abs_squared() - self.A * self.C

    @property
    def is_vertical(self) -> bool:
        return self.A.is_zero()

    @property
    def center(self) -> NumberFieldElement:
        if self.is_vertical:
            raise ValueError("vertical plane has no center")
        return -self.B / self.A.to_field()

    @property
    def radius_squared(self) -> RealQuadElement:
        if self.is_vertical:
            raise ValueError("vertical plane has no radius")
        return self.discriminant() / (self.A * self.A)

    def anchors(self) -> tuple[NumberFieldElement, NumberFieldElement]:
        """Two boundary points of a vertical plane."""
        if not self.is_vertical:
            raise ValueError("hemisphere has no anchors")
        z0 = -(self.C.to_field() * self.B) / (2 * self.B.abs_squared().to_field())
        return z0, z0 + I * self.B

    def value(self, z: BoundaryPoint) -> RealQuadElement:
        """q(z); at infinity this is A."""
        if z is INF:
            return self.A
        z = NumberFieldElement.coerce(z)
        cross = (self.B.conjugate() * z).real_part()
        return self.A * z.abs_squared() + cross * 2 + self.C

    def side(self, z: BoundaryPoint) -> int:
        return self.value(z).sign()

    def contains(self, z: BoundaryPoint) -> bool:
        return self.value(z).is_zero()

    def flipped(self) -> "Hyperplane":
        return Hyperplane(-self.A, -self.B, -self.C)

    def _scale_to(self, other: "Hyperplane"):
        """The real lambda with other = lambda * self, or None."""
        mine = (self.A.to_field(), self.B, self.C.to_field())
        theirs = (other.A.to_field(), other.B, other.C.to_field())
        k = next(j for j in range(3) if not mine[j].is_zero())
        lam = theirs[k] / mine[k]
        if not lam.is_real():
            return None
        if any(lam * x != y for x, y in zip(mine, theirs)):
            return None
        return lam.real_part()

    def __eq__(self, other):
        """Same plane, either orientation."""
        if not isinstance(other, Hyperplane):
            return NotImplemented
        lam = self._scale_to(other)
        return lam is not None and not lam.is_zero()

    def same_oriented(self, other: "Hyperplane") -> bool:
        lam = self._scale_to(other)
        return lam is not None and lam.sign() > 0

    def __hash__(self):
        if not self.A.is_zero():
            a = self.A.to_field()
            return hash((self.B / a, self.C.to_field() / a))
        # invariants of real rescaling
        return hash((self.B / self.B.conjugate(), (self.C * self.C) / self.B.abs_squared()))

    def to_json(self) -> dict:
        if self.is_vertical:
            z1, z2 = self.anchors()
            return {"type": "vertical", "anchors": [z1.to_json(), z2.to_json()]}
        return {"type": "hemisphere", "center": self.center.to_json(),
                "radius_squared": self.radius_squared.to_json()}

    def __repr__(self):
        if self.is_vertical:
            z1, z2 = self.anchors()
            return f"Hyperplane.vertical({z1}, {z2})"
        return f"Hyperplane.hemisphere({self.center}, {self.radius_squared})"


def cross4(rows: Sequence[Sequence[RealQuadElement]]) -> tuple[RealQuadElement, ...]:
    """Generalized cross product of three vectors in R^4."""

    def det3(m):
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))

    out = []
    for k in range(4):
        minor = [[row[j] for j in range(4) if j != k] for row in rows]
        d = det3(minor)
        out.append(d if k % 2 == 0 else -d)
    return tuple(out)


def _mat_mul(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _conj_transpose(x):
    a, b, c, d = x
    return (a.conjugate(), c.conjugate(), b.conjugate(), d.conjugate())


def apply_to_hyperplane(g: ExtendedMoebius, H: Hyperplane) -> Hyperplane:
    """Image g(H), keeping orientation: q_image(g z) has the sign of q(z)."""
    a, b, c, d = g.entries
    n = (d, -b, -c, a)  # det(g) * g^-1
    B = H.B.conjugate() if g.reversing else H.B
    herm = (H.A.to_field(), B, B.conjugate(), H.C.to_field())
    out = _mat_mul(_mat_mul(_conj_transpose(n), herm), n)
    return Hyperplane(out[0].real_part(), out[1], out[3].real_part())


def reflection(H: Hyperplane) -> ExtendedMoebius:
    """Reflection in H as an orientation-reversing element."""
    A, C = H.A.to_field(), H.C.to_field()
    return ExtendedMoebius(-H.B, -C, A, H.B.conjugate(), reversing=True)


def dihedral_cos(H1: Hyperplane, H2: Hyperplane):
    """Cosine of the angle between H1 and H2, measured inside the region
    where both forms are nonnegative; a marker if they do not cross."""
    num = (H1.A * H2.C + H2.A * H1.C
           - (H1.B * H2.B.conjugate()).real_part() * 2)
    cos2 = (num * num) / (H1.discriminant() * H2.discriminant() * 4)
    diff = cos2 - 1
    if diff.sign() > 0:
        return Intersection.DISJOINT
    if diff.is_zero():
        return Intersection.TANGENT
    root = sqrt_q2(cos2)
    if root is None:
        raise ValueError(f"cosine squared {cos2} has no square root in Q(sqrt2)")
    return root if num.sign() >= 0 else -root


# named cosines of integer submultiples of pi that occur here
NAMED_ANGLES = {
    RealQuadElement(0): "pi/2",
    RealQuadElement(Fraction(1, 2)): "pi/3",
    RealQuadElement(0, Fraction(1, 2)): "pi/4",
}


def angle_name(cos) -> str | None:
    if isinstance(cos, Intersection):
        return cos.value
    return NAMED_ANGLES.get(cos)


@dataclass(frozen=True)
class HoroData:
    """Horosphere: height if centered at infinity, Euclidean diameter otherwise."""

    center: BoundaryPoint
    scale: RealQuadElement

    def __post_init__(self):
        if RealQuadElement.coerce(self.scale).sign() <= 0:
            raise ValueError("horosphere scale must be positive")


class LorentzVector(tuple):
    """Four Q(sqrt2) coordinates."""

    def __new__(cls, coords: Iterable):
        vals = tuple(RealQuadElement.coerce(x) for x in coords)
        if len(vals) != 4:
            raise ValueError("Lorentz vectors have four coordinates")
        return super().__new__(cls, vals)

    @property
    def coords(self) -> tuple[RealQuadElement, ...]:
        return tuple(self)

    def scaled(self, lam) -> "LorentzVector":
        lam = RealQuadElement.coerce(lam)
        return LorentzVector(lam * x for x in self)

    def to_float(self) -> list[float]:
        return [float(x) for x in self]

    def to_json(self):
        return [x.to_json() for x in self]


def lorentz_inner(v: Sequence, w: Sequence) -> RealQuadElement:
    v = [RealQuadElement.coerce(x) for x in v]
    w = [RealQuadElement.coerce(x) for x in w]
    return v[0] * w[0] + v[1] * w[1] + v[2] * w[2] - v[3] * w[3]


def euclid_dot(v: Sequence, w: Sequence) -> RealQuadElement:
    out = RealQuadElement(0)
    for x, y in zip(v, w):
        out = out + RealQuadElement.coerce(x) * RealQuadElement.coerce(y)
    return out


def boundary_to_lightcone(z: BoundaryPoint) -> LorentzVector:
    if z is INF:
        return LorentzVector((0, 0, 1, 1))
    z = NumberFieldElement.coerce(z)
    x, y = z.real_part(), z.imag_part()
    r2 = z.abs_squared()
    return LorentzVector((x * 2, y * 2, r2 - 1, r2 + 1))


def lightcone_to_boundary(v: Sequence) -> BoundaryPoint:
    v = LorentzVector(v)
    if not lorentz_inner(v, v).is_zero() or v[3].sign() <= 0:
        raise ValueError("not a future-pointing null vector")
    gap = v[3] - v[2]
    if gap.is_zero():
        return INF
    return NumberFieldElement.from_parts(v[0] / gap, v[1] / gap)


def moebius_to_standard(z1, z2, z3) -> ExtendedMoebius:
    """The Moebius map sending (z1, z2, z3) to (0, 1, inf)."""
    z1, z2, z3 = as_point(z1), as_point(z2), as_point(z3)
    if z1 is INF:
        return ExtendedMoebius(0, z2 - z3, 1, -z3)
    if z2 is INF:
        return ExtendedMoebius(1, -z1, 1, -z3)
    if z3 is INF:
        return ExtendedMoebius(1, -z1, 0, z2 - z1)
    return ExtendedMoebius(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))


def moebius_from_points(src: Sequence, dst: Sequence) -> ExtendedMoebius:
    """Orientation-preserving map taking the triple src to the triple dst."""
    return moebius_to_standard(*dst).inverse() @ moebius_to_standard(*src)
