"""Kleinian groups built from the named isometries.

Groups are finite generator tables with provenance strings.  Membership
claims are never decided, only witnessed by explicit words; in particular
containment in the reflection group G_n is shown by writing generators as
words in the face reflections of its fundamental polyhedron P_n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable, Mapping, Sequence

import numpy as np

from .generators import (
    C_SHIFT,
    H_HALF_I,
    IH,
    IH_HALF,
    R,
    Report,
    a_elem,
    builtin_generators,
    h_below,
)
from .geometry import Hyperplane, Intersection, dihedral_cos, reflection
from .moebius import (
    ExtendedMoebius,
    GroupWord,
    conjugate,
    evaluate_word,
    trace_pm,
)
from .numfield import K, NumberFieldElement, RealQuadElement, is_algebraic_integer, subfield_of

# ---------------------------------------------------------------- mutation words


@dataclass(frozen=True)
class MutationWord:
    entries: tuple[int, ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("mutation word must be nonempty")
        bad = [e for e in self.entries if e not in (0, 1, 2)]
        if bad:
            raise ValueError(f"entries must lie in {{0,1,2}}, got {bad[0]}")

    @classmethod
    def parse(cls, text: str, alphabet: str = "012") -> "MutationWord":
        out = []
        for pos, tok in enumerate(text.split(",")):
            tok = tok.strip()
            if len(tok) != 1 or tok not in alphabet:
                raise ValueError(f"bad mutation entry {tok!r} at position {pos}")
            out.append(int(tok))
        return cls(tuple(out))

    @classmethod
    def coerce(cls, x) -> "MutationWord":
        if isinstance(x, MutationWord):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        return cls(tuple(int(e) for e in x))

    @property
    def n(self) -> int:
        return len(self.entries) - 1

    def require(self, alphabet: Iterable[int]) -> "MutationWord":
        allowed = set(alphabet)
        for pos, e in enumerate(self.entries):
            if e not in allowed:
                raise ValueError(f"entry {e} at position {pos} not in {sorted(allowed)}")
        return self

    def reversed(self) -> "MutationWord":
        return MutationWord(self.entries[::-1])

    def __str__(self):
        return ",".join(map(str, self.entries))

    def __len__(self):
        return len(self.entries)


# ---------------------------------------------------------------- group specs


@dataclass(frozen=True)
class Generator:
    label: str
    element: ExtendedMoebius
    provenance: str


@dataclass
class GroupSpec:
    name: str
    generators: list[Generator] = field(default_factory=list)

    def add(self, label: str, element: ExtendedMoebius, provenance: str) -> None:
        self.generators.append(Generator(label, element.normalized(), provenance))

    @property
    def elements(self) -> list[ExtendedMoebius]:
        return [g.element for g in self.generators]

    def table(self) -> dict[str, ExtendedMoebius]:
        return {g.label: g.element for g in self.generators}

    def __len__(self):
        return len(self.generators)

    def to_json(self):
        return {"name": self.name,
                "generators": [{"label": g.label, "provenance": g.provenance,
                                **g.element.to_json()} for g in self.generators]}


def c_pow(k: int) -> ExtendedMoebius:
    return C_SHIFT ** k


def shifted(x: ExtendedMoebius, k: int) -> ExtendedMoebius:
    """c^-k x c^k."""
    return conjugate(x, c_pow(-k))


def mutator(j: int, i: int) -> ExtendedMoebius:
    """m_j^(i) = c^-2i m_j c^2i, with m_0 the identity."""
    if j == 0:
        return ExtendedMoebius.identity()
    return shifted(builtin_generators()[f"m{j}"], 2 * i)


def _blocks(n: int):
    """(label, element, provenance, block index) for the generators of Gamma_n.

    Block 0 is Gamma_S, block i in 1..n is Gamma_T^(i), block n+1 the
    mirrored copy of Gamma_S.
    """
    T = builtin_generators()
    for name in ("s", "t"):
        yield name, T[name], name, 0
    for i in range(1, n + 1):
        k = 2 * (i - 1)
        for name in ("f", "g", "h"):
            yield f"{name}_{i}", shifted(T[name], k), f"c^-{k} {name} c^{k}", i
        for name in ("f", "g", "h"):
            yield (f"{name}bar_{i}", shifted(T[name].entry_conjugate(), k + 2),
                   f"c^-{k + 2} conj({name}) c^{k + 2}", i)
    for name in ("s", "t"):
        yield (f"{name}bar", shifted(T[name].entry_conjugate(), 2 * n),
               f"c^-{2 * n} conj({name}) c^{2 * n}", n + 1)


def gamma_n(n: int) -> GroupSpec:
    if n < 1:
        raise ValueError("n must be positive")
    spec = GroupSpec(f"Gamma_{n}")
    for label, x, prov, _ in _blocks(n):
        spec.add(label, x, prov)
    return spec


def q_conjugators(I: MutationWord) -> list[ExtendedMoebius]:
    """q_1 .. q_{n+1}, accumulated left to right."""
    out = []
    q = ExtendedMoebius.identity()
    for i, a in enumerate(I.entries):
        q = q @ mutator(a, i)
        out.append(q)
    return out


def gamma_I(I) -> GroupSpec:
    I = MutationWord.coerce(I)
    n = I.n
    if n < 1:
        raise ValueError("mutation words need length at least 2")
    qs = q_conjugators(I)
    spec = GroupSpec(f"Gamma_({I})")
    for label, x, prov, block in _blocks(n):
        if block == 0:
            spec.add(label, x, prov)
            continue
        q = qs[block - 1]
        tag = "".join(str(a) for a in I.entries[:block])
        spec.add(label, conjugate(x, q), f"q[{tag}] ({prov}) q[{tag}]^-1")
    return spec


# ---------------------------------------------------------------- integrality scan

_DTYPE_LIMIT = 2 ** 62


def _pack(x: NumberFieldElement, den: int) -> list[int]:
    return [int(c * den) for c in x.coords()]


def _kmul(x, y):
    x0, x1, x2, x3 = x[..., 0], x[..., 1], x[..., 2], x[..., 3]
    y0, y1, y2, y3 = y[..., 0], y[..., 1], y[..., 2], y[..., 3]
    return np.stack([
        x0 * y0 + 2 * x1 * y1 - x2 * y2 - 2 * x3 * y3,
        x0 * y1 + x1 * y0 - x2 * y3 - x3 * y2,
        x0 * y2 + x2 * y0 + 2 * x1 * y3 + 2 * x3 * y1,
        x0 * y3 + x3 * y0 + x1 * y2 + x2 * y1,
    ], axis=-1)


def _matmul(P, Q):
    rows = []
    for i in range(2):
        rows.append(np.stack([_kmul(P[:, i, 0], Q[:, 0, j]) + _kmul(P[:, i, 1], Q[:, 1, j])
                              for j in range(2)], axis=1))
    return np.stack(rows, axis=1)


def _trace_of_product(P, Q):
    out = 0
    for i in range(2):
        for k in range(2):
            out = out + _kmul(P[:, i, k], Q[:, k, i])
    return out


def _safe(*arrays) -> bool:
    bound = 1
    for a in arrays:
        if a.dtype == object:
            return False
        bound *= int(np.abs(a).max(initial=1)) + 1
    return 64 * bound < _DTYPE_LIMIT


def _promote(*arrays):
    return tuple(a.astype(object) for a in arrays)


def _integral_mask(tr, den):
    """Z[zeta_8] membership of tr/den for coordinates (1, sqrt2, i, i sqrt2)."""
    a, b, c, d = tr[:, 0], tr[:, 1], tr[:, 2], tr[:, 3]
    return ((a % den == 0) & (c % den == 0) & ((2 * b) % den == 0)
            & ((2 * d) % den == 0) & ((b - d) % den == 0))


@dataclass(frozen=True)
class TraceWitness:
    word: str
    trace: NumberFieldElement
    denominator: int

    def to_json(self):
        return {"word": self.word, "trace": self.trace.to_json(),
                "trace_str": str(self.trace), "denominator": self.denominator}


@dataclass(frozen=True)
class ScanResult:
    all_integral: bool
    max_word_length: int
    words_checked: int
    witness: TraceWitness | None = None

    def to_json(self):
        return {"all_integral": self.all_integral, "max_word_length": self.max_word_length,
                "words_checked": self.words_checked,
                "witness": None if self.witness is None else self.witness.to_json()}


def _letters(G: GroupSpec):
    labels, mats = [], []
    for g in G.generators:
        for lab, x in ((g.label, g.element), (f"{g.label}^-1", g.element.inverse())):
            labels.append(lab)
            mats.append(x)
    return labels, mats


def integrality_scan(G: GroupSpec | Sequence[ExtendedMoebius], max_word_length: int = 4) -> ScanResult:
    """Search cyclically reduced words for a trace that is not an algebraic integer.

    Traces are conjugation invariant, so only words whose first letter is
    minimal among their letters are visited.  Arithmetic is vectorized over
    integer coordinates; any witness is recomputed exactly before reporting.
    """
    if max_word_length < 1:
        raise ValueError("max_word_length must be at least 1")
    if not isinstance(G, GroupSpec):
        spec = GroupSpec("elements")
        for j, x in enumerate(G):
            spec.add(f"x{j}", x, "given")
        G = spec
    labels, mats = _letters(G)
    nl = len(labels)
    inv = np.arange(nl) ^ 1
    dens = np.array([reduce(lcm, (e.denominator for e in x.entries), 1) for x in mats], dtype=np.int64)
    nums = np.array([[[_pack(e, int(d)) for e in row] for row in ((x.entries[0], x.entries[1]),
                                                                  (x.entries[2], x.entries[3]))]
                     for x, d in zip(mats, dens)], dtype=np.int64)

    checked = 0
    # level 1
    words = np.arange(nl)[:, None]
    P, D = nums.copy(), dens.copy()
    tr = P[:, 0, 0] + P[:, 1, 1]
    ok = _integral_mask(tr, D)
    checked += nl
    hit = _first_failure(ok, np.ones(nl, bool))
    length = 1
    while hit is None and length < max_word_length:
        length += 1
        rep = np.repeat(np.arange(len(words)), nl)
        new = np.tile(np.arange(nl), len(words))
        valid = (new != inv[words[rep, -1]]) & (new >= words[rep, 0])
        rep, new = rep[valid], new[valid]
        closed = new != inv[words[rep, 0]]
        Pl, Ql = P[rep], nums[new]
        if not _safe(Pl, Ql):
            Pl, Ql = _promote(Pl, Ql)
        Dn = D[rep] * dens[new]
        if length == max_word_length:
            tr = _trace_of_product(Pl[closed], Ql[closed])
            ok = _integral_mask(tr, Dn[closed])
            checked += int(closed.sum())
            idx = _first_failure(ok, np.ones(len(ok), bool))
            words = np.concatenate([words[rep], new[:, None]], axis=1)[closed]
            hit = idx
            break
        P = _matmul(Pl, Ql)
        D = Dn
        words = np.concatenate([words[rep], new[:, None]], axis=1)
        tr = P[:, 0, 0] + P[:, 1, 1]
        ok = _integral_mask(tr, D)
        checked += int(closed.sum())
        hit = _first_failure(ok, closed)
    if hit is None:
        return ScanResult(True, max_word_length, checked)
    word = " ".join(labels[k] for k in words[hit])
    x = evaluate_word(word, G.table())
    tau = min(trace_pm(x), key=lambda z: z.coords())
    if is_algebraic_integer(tau):
        raise AssertionError(f"vectorized scan disagrees with exact arithmetic on {word}")
    return ScanResult(False, max_word_length, checked, TraceWitness(word, tau, tau.denominator))


def _first_failure(ok, eligible):
    bad = np.flatnonzero(eligible & ~ok)
    return int(bad[0]) if len(bad) else None


def trace_field(elements: Iterable[ExtendedMoebius]) -> str:
    """Subfield of K generated by the traces of the given elements."""
    traces = []
    for x in elements:
        traces.extend(trace_pm(x))
    return subfield_of(traces)


def entries_integral(G: GroupSpec) -> bool:
    return all(is_algebraic_integer(e) for x in G.elements for e in x.entries)


def nonintegral_examples() -> dict[str, dict]:
    """Reference products recomputed and compared entry by entry.

    The last reference product has its (1,2) and (2,2) entries wrong:
    the factors give -24 - 36 i sqrt2 and -67, so the trace is -406/5
    rather than -71/5 + 55.  Both values fail to be algebraic integers.
    """
    T = builtin_generators()
    t, g, h, m2 = T["t"], T["g"], T["h"], T["m2"]
    fifth = Fraction(1, 5)
    # m2 is stored as sqrt5 times the determinant-one matrix
    computed_1 = (t @ m2 @ g @ m2.inverse()).scaled(fifth)
    printed_1 = (K(-2, 12, 31, 4) * fifth, K(-2, 1, 21, 2),
                 K(-1, 7, 16, 2) * fifth, K(-1, 1, 11, 1))
    left = h.entry_conjugate()
    printed_left = (K(0, 0, 0, -2), K(-3, 0, 0, 1), K(-3, 0, 0, -1), K(0, 0, 0, 3))
    right = (m2 @ h @ m2.inverse()).scaled(fifth)
    printed_right = (K(0, 0, 0, -3), K(15, 0, 0, -5), K(3, 0, 0, 1) * fifth, K(0, 0, 0, 2))
    printed_2 = (K(Fraction(-71, 5)), K(-20, 0, 0, -30), K(-2, 0, 0, 3) * Fraction(18, 5), K(55))
    out = {}
    for name, comp, printed in (("t m2 g m2^-1", computed_1, printed_1),
                                ("conj(h)", left, printed_left),
                                ("m2 h m2^-1", right, printed_right),
                                ("conj(h) m2 h m2^-1", left @ right, printed_2)):
        tr = comp.trace()
        printed_tr = printed[0] + printed[3]
        out[name] = {"entry_matches": [x == y for x, y in zip(comp.entries, printed)],
                     "computed": comp, "trace": tr, "integral": is_algebraic_integer(tr),
                     "printed_trace": printed_tr,
                     "printed_trace_integral": is_algebraic_integer(printed_tr)}
    return out


# ---------------------------------------------------------------- PSL2(Z)

def _as_int_matrix(x: ExtendedMoebius) -> tuple[int, int, int, int]:
    vals = []
    for e in x.entries:
        if not e.is_rational() or e.a.denominator != 1:
            raise ValueError(f"entry {e} is not a rational integer")
        vals.append(int(e.a))
    a, b, c, d = vals
    if a * d - b * c != 1:
        raise ValueError("determinant is not 1")
    return a, b, c, d


def _push(letters: list[list], name: str, exp: int) -> None:
    if exp == 0:
        return
    if letters and letters[-1][0] == name:
        letters[-1][1] += exp
    else:
        letters.append([name, exp])
    if name == "S":
        letters[-1][1] %= 2          # S^2 = -1
    if letters[-1][1] == 0:
        letters.pop()


def psl2z_word(x: ExtendedMoebius) -> GroupWord:
    """Word in S = (0 -1; 1 0) and T = (1 1; 0 1) equal to x up to sign."""
    a, b, c, d = _as_int_matrix(x)
    letters: list[list] = []
    while c != 0:
        q = a // c
        # y = T^q (T^-q y), then T^-q y = S (S^-1 T^-q y)
        _push(letters, "T", q)
        a, b = a - q * c, b - q * d
        _push(letters, "S", 1)
        a, b, c, d = c, d, -a, -b
    _push(letters, "T", b * a)          # a = d = +-1 here
    return GroupWord(tuple((n, e) for n, e in letters))


PSL2Z_TABLE = {"S": ExtendedMoebius(0, -1, 1, 0), "T": ExtendedMoebius(1, 1, 0, 1)}


# ---------------------------------------------------------------- G_n

def p_n_faces(n: int, radius_squared=1) -> dict[str, Hyperplane]:
    """Face planes of P_n, each oriented to be nonnegative on P_n."""
    faces = {"top": H_HALF_I, "left": IH, "right": IH_HALF, "bottom": h_below(n)}
    for k in range(n + 1):
        faces[f"ball{k}"] = Hyperplane.hemisphere(K(0, 0, 0, -k), radius_squared)
    return faces


ALLOWED_COS = {RealQuadElement(0), RealQuadElement(Fraction(1, 2)), RealQuadElement(0, Fraction(1, 2))}


def face_angle_report(faces: Mapping[str, Hyperplane]) -> Report:
    rep = Report("P_n dihedral angles")
    for (na, A), (nb, B) in itertools.combinations(faces.items(), 2):
        try:
            cos = dihedral_cos(A, B)
        except ValueError as exc:
            rep.add(f"{na} vs {nb}", False, str(exc))
            continue
        if isinstance(cos, Intersection):
            rep.add(f"{na} vs {nb}", True, cos.value)
        else:
            rep.add(f"{na} vs {nb}", cos in ALLOWED_COS, f"cos = {cos}")
    return rep


def reflection_table(n: int) -> dict[str, ExtendedMoebius]:
    return {name: reflection(H) for name, H in p_n_faces(n).items()}


def gn_basic_words(n: int) -> dict[str, GroupWord]:
    """f0, b0, a_0..a_2n and rotations R_0..R_2n as words in face reflections.

    Reflection in the bottom face is u = c^-n r c^n; conjugating by it sends
    a_i to a_{2n-i} and R_k to R_{2n-k}.
    """
    P = GroupWord.parse
    words = {"f0": P("right left"), "b0": P("ball0 top")}
    for i in range(2 * n + 1):
        if i <= n:
            words[f"a{i}"] = P(f"ball{i} right")
            words[f"R{i}"] = P(f"left ball{i}")
        else:
            j = 2 * n - i
            words[f"a{i}"] = P(f"bottom ball{j} right bottom")
            words[f"R{i}"] = P(f"bottom left ball{j} bottom")
    words["u"] = P("bottom")
    return words


def expand(word: str | GroupWord, basics: Mapping[str, GroupWord]) -> GroupWord:
    if isinstance(word, str):
        word = GroupWord.parse(word)
    out = GroupWord()
    for name, e in word.letters:
        piece = basics[name] if e > 0 else basics[name].inverse()
        for _ in range(abs(e)):
            out = out * piece
    return out


def _shift_a(text: str, fn) -> str:
    out = []
    for tok in text.split():
        base, _, exp = tok.partition("^")
        if base.startswith("a") and base[1:].isdigit():
            base = f"a{fn(int(base[1:]))}"
        out.append(base + ("^" + exp if exp else ""))
    return " ".join(out)


# f, g, h, s, t over f0, b0, a0, a1
BASE_WORDS = {
    "s": "a0 f0 a0^-1",
    "f": "a0 f0 a0^-1",
    "t": "a0^-1 b0^-1 f0^-1 b0 a0 a0",
    "g": "a0^-1 a1 f0^-1 a1^-1 a0",
    "h": "a1 a0 f0^-1 a1",
}


def generator_basic_word(label: str, n: int) -> str:
    """Word in f0, b0, a_i, u for a generator label of gamma_n."""
    if label in ("s", "t"):
        return BASE_WORDS[label]
    if label in ("sbar", "tbar"):
        return f"u {BASE_WORDS[label[0]]} u"
    name, _, i = label.partition("_")
    i = int(i)
    if name.endswith("bar"):
        return _shift_a(BASE_WORDS[name[0]], lambda j: 2 * i - j)
    return _shift_a(BASE_WORDS[name], lambda j: j + 2 * (i - 1))


def mutator_basic_word(j: int) -> str:
    """m1^(j) over a_2j and R_2j: T = a0^-1 S^-1 shifted by c^-2j."""
    w = psl2z_word(builtin_generators()["m1"])
    out = []
    for name, e in w.letters:
        piece = f"R{2 * j}" if name == "S" else f"a{2 * j}^-1 R{2 * j}^-1"
        if e < 0:
            piece = str(GroupWord.parse(piece).inverse())
        out.extend([piece] * abs(e))
    return " ".join(out)


def gn_containment(I, basics=None, table=None) -> Report:
    """Every generator of Gamma_I, I over {0,1}, as an explicit word in G_n."""
    I = MutationWord.coerce(I).require((0, 1))
    n = I.n
    basics = basics or gn_basic_words(n)
    table = table or reflection_table(n)
    rep = Report(f"Gamma_({I}) < G_{n}")
    qwords = []
    acc = []
    for i, a in enumerate(I.entries):
        if a == 1:
            acc.append(mutator_basic_word(i))
        qwords.append(" ".join(acc))
    for g in gamma_I(I).generators:
        base = generator_basic_word(g.label, n)
        block = _block_of(g.label, n)
        q = qwords[block - 1] if block > 0 else ""
        text = " ".join(p for p in (q, base, str(GroupWord.parse(q).inverse()) if q else "") if p)
        word = expand(text, basics)
        ok = evaluate_word(word, table) == g.element
        rep.add(f"{g.label} as {len(word)}-letter reflection word", ok)
    return rep


def _block_of(label: str, n: int) -> int:
    if label in ("s", "t"):
        return 0
    if label in ("sbar", "tbar"):
        return n + 1
    return int(label.partition("_")[2])


def commensurator_suite(n: int, radius_squared=1) -> Report:
    if n < 1:
        raise ValueError("n must be positive")
    T = builtin_generators(max_a=2 * n + 2)
    rep = Report(f"commensurator G_{n}")
    faces = p_n_faces(n, radius_squared)
    rep.extend(face_angle_report(faces))
    basics = gn_basic_words(n)
    table = reflection_table(n)

    u = shifted(R, n)
    rep.add("reflection in the bottom face = c^-n r c^n", table["bottom"] == u)
    for i in range(2 * n + 1):
        ai = a_elem(i)
        rep.add(f"a{i} from reflections", evaluate_word(basics[f"a{i}"], table) == ai)
        rep.add(f"c^-{2 * i} conj(a{i}) c^{2 * i} = a{i}", shifted(ai.entry_conjugate(), 2 * i) == ai)
        rep.add(f"R{i} = c^-{i} S c^{i}",
                evaluate_word(basics[f"R{i}"], table) == shifted(T["S"], i))
    f0, b0, a0, a1 = T["f0"], T["b0"], T["a0"], T["a1"]
    rep.add("f0 from reflections", evaluate_word(basics["f0"], table) == f0)
    rep.add("b0 from reflections", evaluate_word(basics["b0"], table) == b0)
    rep.add("s = f = a0 f0 a0^-1", T["s"] == T["f"] == conjugate(f0, a0))
    rep.add("t = (b0 a0)^-1 f0^-1 (b0 a0) a0",
            T["t"] == (b0 @ a0).inverse() @ f0.inverse() @ (b0 @ a0) @ a0)
    rep.add("g = (a0^-1 a1) f0^-1 (a0^-1 a1)^-1", T["g"] == conjugate(f0.inverse(), a0.inverse() @ a1))
    rep.add("h = a1 a0 f0^-1 a1", T["h"] == a1 @ a0 @ f0.inverse() @ a1)
    samples = {"s": T["s"], "t": T["t"], "h": T["h"], "f0 a1": f0 @ a1}
    for label, x in samples.items():
        rep.add(f"back conjugation x={label}", u @ x @ u == shifted(x.entry_conjugate(), 2 * n))
    m1 = T["m1"]
    w = psl2z_word(m1)
    rep.add(f"m1 = {w} in S, T", evaluate_word(w, PSL2Z_TABLE) == m1)
    for j in range(n + 1):
        word = expand(mutator_basic_word(j), basics)
        rep.add(f"m1^({j}) = c^-{2 * j} m1 c^{2 * j} via a{2 * j}, R{2 * j}",
                evaluate_word(word, table) == shifted(m1, 2 * j))
    rep.extend(gn_containment([0] * (n + 1), basics, table))
    rep.extend(gn_containment([1] * (n + 1), basics, table))
    return rep


# ---------------------------------------------------------------- isometry classes

def _normal_form(I: MutationWord) -> tuple[int, ...]:
    inner = I.entries[1:-1]
    return min(inner, inner[::-1])


def isometry_classify(I, J) -> str:
    """isometric iff interiors agree up to reversal (endpoints are free)."""
    I = MutationWord.coerce(I).require((0, 1))
    J = MutationWord.coerce(J).require((0, 1))
    if len(I) != len(J):
        raise ValueError("mutation words differ in length")
    return "isometric" if _normal_form(I) == _normal_form(J) else "not_isometric"


def isometry_orbit(I) -> set[tuple[int, ...]]:
    """Orbit under reversal and flipping the first entry, by search."""
    I = MutationWord.coerce(I)
    seen = {I.entries}
    frontier = [I.entries]
    while frontier:
        w = frontier.pop()
        for nxt in (w[::-1], (1 - w[0],) + w[1:]):
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def isometry_classes(n: int) -> list[list[tuple[int, ...]]]:
    classes: dict[tuple[int, ...], list] = {}
    for w in itertools.product((0, 1), repeat=n + 1):
        classes.setdefault(_normal_form(MutationWord(w)), []).append(w)
    return sorted(classes.values())
