"""Pre-Bloch sums, the Bloch-Wigner dilogarithm and the Borel regulator.

Formal sums are never reduced modulo the five-term relation; equalities are
checked through the regulator, which factors through it.
"""

from __future__ import annotations

import cmath
import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .generators import Report
from .geometry import moebius_to_standard
from .kleinian import MutationWord
from .moebius import INF
from .numfield import K, NumberFieldElement, embed

# ---------------------------------------------------------------- formal sums


@dataclass(frozen=True)
class PreBlochElement:
    terms: Mapping[NumberFieldElement, int] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict[NumberFieldElement, int] = {}
        for z, c in dict(self.terms).items():
            z = NumberFieldElement.coerce(z)
            if z.is_zero() or z == K(1):
                raise ValueError("pre-Bloch symbols exclude 0 and 1")
            clean[z] = clean.get(z, 0) + int(c)
        object.__setattr__(self, "terms",
                           {z: c for z, c in sorted(clean.items(), key=lambda kv: kv[0].sort_key())
                            if c != 0})

    @classmethod
    def symbol(cls, z, coeff: int = 1) -> "PreBlochElement":
        return cls({NumberFieldElement.coerce(z): coeff})

    @classmethod
    def zero(cls) -> "PreBlochElement":
        return cls({})

    def __add__(self, other: "PreBlochElement") -> "PreBlochElement":
        out = dict(self.terms)
        for z, c in other.terms.items():
            out[z] = out.get(z, 0) + c
        return PreBlochElement(out)

    def __neg__(self):
        return PreBlochElement({z: -c for z, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return PreBlochElement({z: k * c for z, c in self.terms.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        return isinstance(other, PreBlochElement) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def mirror(self) -> "PreBlochElement":
        """[z] -> -[conj z], the invariant of the mirror image."""
        return PreBlochElement({z.conjugate(): -c for z, c in self.terms.items()})

    def map(self, fn) -> "PreBlochElement":
        out: dict = {}
        for z, c in self.terms.items():
            w = fn(z)
            out[w] = out.get(w, 0) + c
        return PreBlochElement(out)

    def to_json(self):
        return [{"z": z.to_json(), "z_str": str(z), "coeff": c} for z, c in self.terms.items()]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for z, c in self.terms.items():
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}"
            parts.append(f"{sign} {mag}[{z}]")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


# ---------------------------------------------------------------- cross ratios

def orbit3(z: NumberFieldElement) -> tuple[NumberFieldElement, ...]:
    """The even-permutation orbit {z, 1 - 1/z, 1/(1 - z)}."""
    one = K(1)
    return z, one - one / z, one / (one - z)


def canonical(z: NumberFieldElement) -> NumberFieldElement:
    return min(orbit3(z), key=lambda w: w.sort_key())


def cross_ratio_parameter(z0, z1, z2, z3) -> NumberFieldElement:
    """Image of z3 under the map taking (z0, z1, z2) to (0, 1, inf), canonicalized."""
    pts = [z0, z1, z2, z3]
    for a, b in itertools.combinations(range(4), 2):
        p, q = pts[a], pts[b]
        if p is q or (p is not INF and q is not INF and p == q):
            raise ValueError("cross ratio needs four distinct points")
    z = moebius_to_standard(z0, z1, z2)(z3)
    return canonical(z)


def tetrahedron_parameter(z0, z1, z2, z3) -> NumberFieldElement:
    """Shape of the ideal tetrahedron, ordered so that Im >= 0 under sigma1."""
    z = moebius_to_standard(z0, z1, z2)(z3)
    if embed(z).imag < 0:
        z = moebius_to_standard(z1, z0, z2)(z3)
    return canonical(z)


# ---------------------------------------------------------------- triangulations

@dataclass(frozen=True)
class Triangulation:
    apex: int
    tetrahedra: tuple[tuple[int, int, int, int], ...]
    diagonals: Mapping[int, frozenset[int]]
    element: PreBlochElement


def _face_triangles(cycle, diagonal: frozenset[int] | None):
    if len(cycle) == 3:
        return [tuple(cycle)]
    if len(cycle) != 4:
        raise ValueError("only triangles and squares are supported")
    a = cycle.index(min(diagonal))
    c = (a + 2) % 4
    if cycle[c] not in diagonal:
        raise ValueError("diagonal does not join opposite corners")
    return [(cycle[a], cycle[(a + 1) % 4], cycle[c]), (cycle[c], cycle[(c + 1) % 4], cycle[a])]


def cone_triangulation(P, apex: int, diagonals: Mapping[int, frozenset[int]]) -> Triangulation:
    V = P.vertices
    tets, terms = [], {}
    for j, f in enumerate(P.faces):
        if apex in f.vertex_set:
            continue
        for tri in _face_triangles(list(f.cycle), diagonals.get(j)):
            z = tetrahedron_parameter(V[tri[0]], V[tri[1]], V[apex], V[tri[2]])
            tets.append((apex,) + tri)
            terms[z] = terms.get(z, 0) + 1
    return Triangulation(apex, tuple(tets), dict(diagonals), PreBlochElement(terms))


def _squares(P) -> list[int]:
    return [j for j, f in enumerate(P.faces) if len(f.cycle) == 4]


def _diagonal_choices(P, j, apex):
    cyc = P.faces[j].cycle
    options = [frozenset((cyc[0], cyc[2])), frozenset((cyc[1], cyc[3]))]
    if apex in P.faces[j].vertex_set:
        return [d for d in options if apex in d]
    return options


def _diagonals_compatible(P, FP, diagonals) -> bool:
    V = P.vertices
    for e in FP.entries:
        if e.source not in diagonals:
            continue
        image = frozenset(P.index(e.isometry(V[v])) for v in diagonals[e.source])
        if image != diagonals[e.target]:
            return False
    return True


def compatible_diagonals(P, FP, apex: int) -> list[dict[int, frozenset[int]]]:
    """Every square-diagonal choice (coning from apex) respected by the pairing."""
    squares = _squares(P)
    out = []
    for pick in itertools.product(*(_diagonal_choices(P, j, apex) for j in squares)):
        diagonals = dict(zip(squares, pick))
        if _diagonals_compatible(P, FP, diagonals):
            out.append(diagonals)
    return out


@functools.lru_cache(maxsize=None)
def triangulation_P1() -> Triangulation:
    from .polyhedra import octahedron

    P = octahedron()
    return cone_triangulation(P, P.index(INF), {})


@functools.lru_cache(maxsize=None)
def triangulation_P2() -> Triangulation:
    from .polyhedra import cuboctahedron, cuboctahedron_pairing

    P = cuboctahedron()
    apex = P.index(INF)
    choices = compatible_diagonals(P, cuboctahedron_pairing(), apex)
    if not choices:
        raise ValueError("no square diagonals compatible with the face pairing")
    return cone_triangulation(P, apex, choices[0])


def triangulate_P1() -> PreBlochElement:
    return triangulation_P1().element


def triangulate_P2() -> PreBlochElement:
    return triangulation_P2().element


def beta1() -> PreBlochElement:
    return triangulate_P1()


def beta1_bar() -> PreBlochElement:
    return -beta1().mirror()


def beta2() -> PreBlochElement:
    """Invariant of the T block: P2 together with its mirror copy."""
    b = triangulate_P2()
    return b + b.mirror()


def bloch_invariant_Mn(n: int) -> PreBlochElement:
    if n < 1:
        raise ValueError("n must be at least 1")
    return beta1() - beta1_bar() + n * beta2()


# ---------------------------------------------------------------- D2


@functools.lru_cache(maxsize=None)
def _bernoulli(count: int) -> tuple[float, ...]:
    B = [Fraction(1)]
    for m in range(1, count):
        B.append(-sum(math.comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return tuple(float(b) for b in B)


_TERMS = 40


def _li2_reduced(z: complex) -> complex:
    """Li2 for |z| <= 1, Re z <= 1/2 via the series in u = -log(1 - z)."""
    u = -cmath.log(1 - z)
    B = _bernoulli(_TERMS)
    total, power, fact = 0j, u, 1.0
    for n in range(_TERMS):
        fact *= n + 1
        if n == 0 or n == 1 or n % 2 == 0:
            total += B[n] * power / fact
        power *= u
    return total


def d2(z) -> float:
    """Bloch-Wigner dilogarithm D2(z) = Im Li2(z) + log|z| arg(1 - z)."""
    z = complex(z)
    if z == 0 or z == 1:
        raise ValueError("D2 is singular at 0 and 1")
    if z.imag == 0:
        return 0.0
    sign = 1.0
    if abs(z) > 1:
        z, sign = 1 / z, -sign
    if z.real > 0.5:
        z, sign = 1 - z, -sign
    value = _li2_reduced(z).imag + math.log(abs(z)) * cmath.phase(1 - z)
    return sign * value


# ---------------------------------------------------------------- regulator

@dataclass(frozen=True)
class RegulatorVector:
    r1: float
    r2: float

    def __post_init__(self):
        if not (math.isfinite(self.r1) and math.isfinite(self.r2)):
            raise ValueError("regulator components must be finite")

    def det(self, other: "RegulatorVector") -> float:
        return self.r1 * other.r2 - self.r2 * other.r1

    def to_json(self):
        return {"r1": self.r1, "r2": self.r2}


def borel_regulator(beta: PreBlochElement) -> RegulatorVector:
    r1 = sum(c * d2(embed(z, "sigma1")) for z, c in beta.terms.items())
    r2 = sum(c * d2(embed(z, "sigma2")) for z, c in beta.terms.items())
    return RegulatorVector(float(r1), float(r2))


def volume(beta: PreBlochElement) -> float:
    return borel_regulator(beta).r1


def five_term(x, y) -> PreBlochElement:
    x, y = NumberFieldElement.coerce(x), NumberFieldElement.coerce(y)
    one = K(1)
    return (PreBlochElement.symbol(x) - PreBlochElement.symbol(y)
            + PreBlochElement.symbol(y / x)
            - PreBlochElement.symbol((one - one / x) / (one - one / y))
            + PreBlochElement.symbol((one - x) / (one - y)))


def five_term_d2(x: complex, y: complex) -> float:
    """D2 applied to the five-term combination at complex x, y."""
    return (d2(x) - d2(y) + d2(y / x)
            - d2((1 - 1 / x) / (1 - 1 / y)) + d2((1 - x) / (1 - y)))


def permute_relation(z) -> PreBlochElement:
    """[z] + [z/(z-1)], zero in the pre-Bloch group."""
    z = NumberFieldElement.coerce(z)
    return PreBlochElement.symbol(z) + PreBlochElement.symbol(z / (z - K(1)))


# ---------------------------------------------------------------- certificates

@dataclass(frozen=True)
class Certificate:
    m: int
    n: int
    Bm: RegulatorVector
    Bn: RegulatorVector
    determinant: float
    tolerance: float

    @property
    def distinct(self) -> bool:
        return abs(self.determinant) > self.tolerance

    def to_json(self):
        return {"m": self.m, "n": self.n, "B_m": self.Bm.to_json(), "B_n": self.Bn.to_json(),
                "determinant": self.determinant, "distinct": self.distinct}


def incommensurability_certificate(m: int, n: int, tolerance: float = 1e-6) -> Certificate:
    """Regulators of M_m and M_n are not positively proportional."""
    if m == n:
        raise ValueError("m and n must differ")
    Bm = borel_regulator(bloch_invariant_Mn(m))
    Bn = borel_regulator(bloch_invariant_Mn(n))
    return Certificate(m, n, Bm, Bn, Bm.det(Bn), tolerance)


def flat_correction(I) -> PreBlochElement:
    """Six flat tetrahedra of shape 2 for each (12)(34) mutation."""
    I = MutationWord.coerce(I)
    return 6 * I.entries.count(2) * PreBlochElement.symbol(2)


def formally_trivial(beta: PreBlochElement, relations: Iterable[PreBlochElement]) -> bool:
    """beta is an integer multiple of one of the given relation elements."""
    if beta.is_zero():
        return True
    for rel in relations:
        z, c = next(iter(rel.terms.items()))
        k = Fraction(beta.terms.get(z, 0), c)
        if k.denominator == 1 and beta == int(k) * rel:
            return True
    return False


def mutation_invariance_check(I) -> Report:
    I = MutationWord.coerce(I)
    corr = flat_correction(I)
    rep = Report(f"Bloch invariant of M_I, I = {I}")
    count = I.entries.count(2)
    rep.add("flat tetrahedra come in sixes", sum(corr.terms.values()) % 6 == 0,
            f"{6 * count} flat tetrahedra, correction {corr}")
    rep.add("flat shape 2 is real", all(z.is_real() for z in corr.terms))
    reg = borel_regulator(corr)
    rep.add("regulator of correction is (0, 0)", reg.r1 == 0.0 and reg.r2 == 0.0,
            f"({reg.r1}, {reg.r2})")
    rel = permute_relation(2)
    rep.add("[2] + [2/(2-1)] = 2[2]", rel == 2 * PreBlochElement.symbol(2), str(rel))
    rep.add("correction cancels formally", formally_trivial(corr, [rel]))
    n = max(I.n, 1)
    base = borel_regulator(bloch_invariant_Mn(n))
    mutated = borel_regulator(bloch_invariant_Mn(n) + corr)
    rep.add("regulator of M_I equals that of M_n",
            abs(base.r1 - mutated.r1) < 1e-12 and abs(base.r2 - mutated.r2) < 1e-12)
    return rep
