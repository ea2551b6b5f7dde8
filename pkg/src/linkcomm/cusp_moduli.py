"""Cusp moduli of M_n and its (12)(34)-mutants.

A cusp torus here is cut by the block surfaces into annuli whose cores are
parallel, so its modulus is i times the sum of the annulus moduli.  Values
are kept exactly as i(q1 + q2*sqrt2) with rational q1, q2.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .kleinian import MutationWord
from .numfield import RealQuadElement


class Undecided(ValueError):
    """Raised when an equivalence question falls outside the decision procedure."""


@dataclass(frozen=True)
class CuspParameter:
    q1: Fraction
    q2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q1", Fraction(self.q1))
        object.__setattr__(self, "q2", Fraction(self.q2))
        if self.q1 == 0 and self.q2 == 0:
            raise ValueError("a cusp parameter cannot be zero")

    @classmethod
    def from_imag(cls, y: RealQuadElement) -> "CuspParameter":
        y = RealQuadElement.coerce(y)
        return cls(y.a, y.b)

    @property
    def imag(self) -> RealQuadElement:
        return RealQuadElement(self.q1, self.q2)

    def scaled(self, r) -> "CuspParameter":
        r = Fraction(r)
        return CuspParameter(self.q1 * r, self.q2 * r)

    def ratio(self) -> Fraction:
        if self.q1 == 0:
            raise Undecided(f"{self} has no rational part")
        return self.q2 / self.q1

    def __complex__(self):
        return complex(0, float(self.imag))

    def to_json(self):
        return {"q1": str(self.q1), "q2": str(self.q2)}

    def __str__(self):
        return f"i({self.imag})"


# ---------------------------------------------------------------- annulus sums

@dataclass(frozen=True)
class ChainLink:
    label: str
    block: int
    modulus: RealQuadElement


@dataclass(frozen=True)
class AnnulusChain:
    links: tuple[ChainLink, ...]

    def labels(self) -> list[str]:
        return [f"{c.label}^{c.block}" if c.label.startswith("DB") else c.label
                for c in self.links]

    def to_json(self):
        return [{"label": c.label, "block": c.block, "modulus": c.modulus.to_json()}
                for c in self.links]


def annulus_sum(chain: AnnulusChain | Iterable[ChainLink]) -> RealQuadElement:
    links = chain.links if isinstance(chain, AnnulusChain) else tuple(chain)
    if not links:
        raise ValueError("empty annulus chain")
    total = RealQuadElement(0)
    for c in links:
        total = total + c.modulus
    return total


def modulus_from_pair(alpha_len: float, beta_len: float, angle_cos: float) -> complex:
    """Modulus of the torus with meridian beta and longitude alpha at angle theta."""
    if beta_len <= 0:
        raise ValueError("beta_len must be positive")
    r = alpha_len / beta_len
    c = max(-1.0, min(1.0, angle_cos))
    return complex(r * c, r * math.sqrt(1 - c * c))


# ---------------------------------------------------------------- closed forms

R2 = RealQuadElement(0, 1)


def mn_moduli(n: int) -> tuple[CuspParameter, CuspParameter]:
    if n < 1:
        raise ValueError("n must be at least 1")
    T1 = CuspParameter(2, 4 * n)
    return T1, T1.scaled(Fraction(1, 5))


def _word(I) -> MutationWord:
    I = MutationWord.coerce(I).require((0, 2))
    if I.n < 1:
        raise ValueError("mutation word needs at least two entries")
    return I


def parities(I) -> list[int]:
    """c_j = sum_{k <= j} t_k / 2 mod 2."""
    out, acc = [], 0
    for t in MutationWord.coerce(I).entries:
        acc = (acc + t // 2) % 2
        out.append(acc)
    return out


def mutant_moduli(I) -> tuple[CuspParameter, CuspParameter]:
    I = _word(I)
    c = parities(I)
    n = I.n
    fifth = Fraction(1, 5)

    def total(head, flip):
        y = RealQuadElement(head)
        for j in range(1, n + 1):
            y = y + R2 * 4 * fifth ** (c[j - 1] ^ flip)
        return y + fifth ** (c[n] ^ flip)

    return CuspParameter.from_imag(total(1, 0)), CuspParameter.from_imag(total(fifth, 1))


# ---------------------------------------------------------------- assembly

_SWAP = {1: 2, 2: 1, 3: 4, 4: 3}


def _block_moduli() -> dict[str, RealQuadElement]:
    from .polyhedra import cuboctahedron_annuli, octahedron_annuli

    A = octahedron_annuli()
    B = cuboctahedron_annuli()
    out = {name: a.modulus for name, a in A.items()}
    out.update({"bar" + name: a.modulus for name, a in A.items()})
    out.update({"D" + name: b.doubled().modulus for name, b in B.items()})
    return out


def walk_chain(I, start: int, moduli: dict[str, RealQuadElement] | None = None) -> AnnulusChain:
    """Follow the cusp that meets the S-block in A_start through every block."""
    I = _word(I)
    if start not in (1, 2):
        raise ValueError("start must be 1 or 2")
    if moduli is None:
        moduli = _block_moduli()
    t = I.entries
    links = [ChainLink(f"A{start}", 0, moduli[f"A{start}"])]
    strands = [start, start + 2]
    if t[0] == 2:
        strands = [_SWAP[k] for k in strands]
    for j in range(1, I.n + 1):
        if j > 1 and t[j - 1] == 2:
            strands = [_SWAP[k] for k in strands]
        for k in strands:
            links.append(ChainLink(f"DB{k}", j, moduli[f"DB{k}"]))
    ends = {(k - 1) % 2 + 1 for k in strands}
    if len(ends) != 1:
        raise ValueError(f"chain from A{start} does not close: strands {strands}")
    k = ends.pop()
    if t[I.n] == 2:
        k = 3 - k
    links.append(ChainLink(f"Abar{k}", I.n + 1, moduli[f"barA{k}"]))
    return AnnulusChain(tuple(links))


def assemble_mutant_moduli(I, moduli=None) -> tuple[CuspParameter, CuspParameter]:
    if moduli is None:
        moduli = _block_moduli()
    return tuple(CuspParameter.from_imag(annulus_sum(walk_chain(I, k, moduli)))
                 for k in (1, 2))


# ---------------------------------------------------------------- PGL2(Q)

def pgl2q_equivalent(z: CuspParameter, w: CuspParameter) -> bool:
    """iy ~ iy' iff y/y' or y*y' is rational, i.e. the ratios q2/q1 agree up to sign."""
    if z.q1 == 0 or w.q1 == 0:
        raise Undecided("rational part is zero")
    return abs(z.ratio()) == abs(w.ratio())


def brute_force_pgl2q(z: CuspParameter, w: CuspParameter,
                      bound: int) -> Optional[tuple[int, int, int, int]]:
    """Search integer (a b; c d) with |entries| <= bound and (az+b)/(cz+d) = w.

    With z = iy, w = iy' the condition splits into a*y = d*y' and
    b = -c*y*y', so (c, d) determines (a, b) and the scan is exhaustive.
    """
    y, yp = z.imag, w.imag
    ratio = yp / y
    prod = y * yp
    rng = sorted(range(-bound, bound + 1), key=lambda x: (abs(x), x < 0))
    for c, d in itertools.product(rng, rng):
        a = ratio * d
        b = -prod * c
        if a.b != 0 or b.b != 0 or a.a.denominator != 1 or b.a.denominator != 1:
            continue
        a, b = int(a.a), int(b.a)
        if abs(a) <= bound and abs(b) <= bound and a * d - b * c != 0:
            return a, b, c, d
    return None


# ---------------------------------------------------------------- families

def single_two(n: int, k: int) -> MutationWord:
    return MutationWord(tuple(2 if i == k else 0 for i in range(n + 1)))


def adjacent_pair(n: int, k: int) -> MutationWord:
    return MutationWord(tuple(2 if i in (k, k + 1) else 0 for i in range(n + 1)))


def different_mods_display(n: int, k: int) -> tuple[CuspParameter, CuspParameter]:
    return (CuspParameter(Fraction(6, 5), Fraction(4, 5) * (n + 4 * k)),
            CuspParameter(Fraction(6, 5), Fraction(4, 5) * (5 * n - 4 * k)))


def same_moduli_display(n: int) -> tuple[CuspParameter, CuspParameter]:
    return (CuspParameter(2, 4 * (n - Fraction(4, 5))),
            CuspParameter(Fraction(2, 5), Fraction(4, 5) * (n + 4)))


def _class_key(pair: tuple[CuspParameter, CuspParameter]) -> tuple[Fraction, Fraction]:
    return tuple(sorted(abs(p.ratio()) for p in pair))


@dataclass(frozen=True)
class Classification:
    n: int
    rows: tuple[dict, ...]
    classes: tuple[tuple[str, ...], ...]
    labels: tuple[str, ...]

    def class_of(self, I) -> int:
        key = str(MutationWord.coerce(I))
        return next(r["class_id"] for r in self.rows if r["word"] == key)

    def single_two_classes(self) -> list[int]:
        return [self.class_of(single_two(self.n, k)) for k in range(self.n + 1)]

    def adjacent_pair_classes(self) -> list[int]:
        return [self.class_of(adjacent_pair(self.n, k)) for k in range(self.n)]

    def to_json(self):
        single = self.single_two_classes()
        return {
            "n": self.n,
            "words": list(self.rows),
            "classes": [{"class_id": i, "members": list(m), "label": lab}
                        for i, (m, lab) in enumerate(zip(self.classes, self.labels))],
            "single_two_family": {"class_ids": single,
                                  "distinct_classes": len(set(single)),
                                  "guaranteed": math.ceil(self.n / 2)},
            "shared_moduli_family": {"class_ids": self.adjacent_pair_classes()},
        }


def classify_family(n: int) -> Classification:
    if not 1 <= n <= 12:
        raise ValueError("n must be between 1 and 12")
    keyed: dict[tuple, list[str]] = {}
    params = {}
    for entries in itertools.product((0, 2), repeat=n + 1):
        I = MutationWord(entries)
        T = mutant_moduli(I)
        params[str(I)] = T
        keyed.setdefault(_class_key(T), []).append(str(I))
    classes = tuple(tuple(m) for m in keyed.values())
    ids = {w: i for i, m in enumerate(classes) for w in m}
    labels = tuple("distinguished by cusp parameters" if len(m) == 1
                   else "moduli-equal, commensurability unknown" for m in classes)
    rows = tuple({"word": w, "T1": T[0].to_json(), "T2": T[1].to_json(), "class_id": ids[w]}
                 for w, T in params.items())
    return Classification(n, rows, classes, labels)
