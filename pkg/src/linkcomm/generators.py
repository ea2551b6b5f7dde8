"""Named isometries and the exact identity suite relating them.

Matrices are transcribed entry for entry; b0 and the a_i are built as
products of two reflections so that they are derived rather than copied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Mapping

from .geometry import Hyperplane, apply_to_hyperplane, reflection
from .moebius import ExtendedMoebius, conjugate, evaluate_word
from .numfield import I, IR2, K

half = Fraction(1, 2)


def M(a, b, c, d) -> ExtendedMoebius:
    return ExtendedMoebius(a, b, c, d)


# vertical planes, oriented toward the fundamental domains used later
H_REAL = Hyperplane.vertical(0, 1)                          # the plane H over R
H_HALF_I = Hyperplane.vertical(K(0, 0, half), K(1, 0, half))  # H + i/2, keeps Im <= 1/2
IH = Hyperplane.vertical(0, I)                              # iH, keeps Re >= 0
IH_HALF = Hyperplane.vertical(K(half, 0, 1), K(half))         # iH + 1/2, keeps Re <= 1/2


def h_below(n: int) -> Hyperplane:
    """H - n*i*sqrt2, keeping Im >= -n*sqrt2."""
    return Hyperplane.vertical(K(1, 0, 0, -n), K(0, 0, 0, -n))


def ball(k: int) -> Hyperplane:
    """Boundary of the unit half-ball B_k centred at -k*i*sqrt2, kept outside."""
    return Hyperplane.hemisphere(K(0, 0, 0, -k), 1)


C_SHIFT = M(1, IR2, 0, 1)
R = ExtendedMoebius(1, 0, 0, 1, reversing=True)


def a_elem(i: int) -> ExtendedMoebius:
    """a_i: reflect in iH + 1/2, then in the boundary of B_i."""
    return reflection(ball(i)) @ reflection(IH_HALF)


def b0_elem() -> ExtendedMoebius:
    return reflection(ball(0)) @ reflection(H_HALF_I)


def f0_elem() -> ExtendedMoebius:
    return reflection(IH_HALF) @ reflection(IH)


def rotation_elem(j: int) -> ExtendedMoebius:
    """Order-2 rotation: reflect in the boundary of B_j, then in iH."""
    return reflection(IH) @ reflection(ball(j))


def _printed() -> dict[str, ExtendedMoebius]:
    return {
        "s": M(1, 0, -1, 1),
        "t": M(2 * I, 2 - I, I, 1 - I),
        "f": M(1, 0, -1, 1),
        "g": M(-1 + IR2, 1 - 2 * IR2, -2, 3 - IR2),
        "h": M(2 * IR2, -3 - IR2, -3 + IR2, -3 * IR2),
        "p1": M(1, 0, 1, 1),
        "p2": M(-1, 5, 0, -1),
        "p3": M(-14, 25, -9, 16),
        "p4": M(29, -45, 20, -31),
        "k": M(I, I - K(0, 1), 0, -I),
        "c": C_SHIFT,
        "r": R,
        "m1": M(-3, 5, -2, 3),
        # projective stand-in for (0 sqrt5; -1/sqrt5 0)
        "m2": M(0, 5, -1, 0),
        "a0": M(0, 1, -1, 1),
        "f0": M(1, 1, 0, 1),
        "S": M(0, -1, 1, 0),
        "T": M(1, 1, 0, 1),
    }


def builtin_generators(max_a: int = 4) -> Mapping[str, ExtendedMoebius]:
    """Read-only table of named isometries; a_1 .. a_{max_a} are derived."""
    table = _printed()
    table["b0"] = b0_elem()
    for i in range(1, max_a + 1):
        table[f"a{i}"] = a_elem(i)
    return MappingProxyType(table)


def table_to_json(table: Mapping[str, ExtendedMoebius]) -> dict:
    return {name: g.to_json() for name, g in sorted(table.items())}


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def extend(self, other: "Report") -> None:
        for c in other.checks:
            self.checks.append(Check(f"{other.title}: {c.name}", c.passed, c.detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self):
        return {"title": self.title, "passed": self.passed,
                "checks": [c.to_json() for c in self.checks]}


def tangle_images(table: Mapping[str, ExtendedMoebius]) -> dict[str, ExtendedMoebius]:
    """Images of the Wirtinger-style words for the two tangle groups."""
    f, g, s, t = table["f"], table["g"], table["s"], table["t"]
    out = {}
    # T0 tangle
    a, tt, e = f, f @ g @ f.inverse(), table["p2"]
    ta = tt @ a
    y = conjugate(a, ta.inverse())
    ate = a @ tt @ e
    x = conjugate(tt, ate.inverse())
    v = y.inverse() @ x @ y
    out["T0.v"] = v
    out["T0.u"] = a.inverse() @ e @ v
    # S tangle
    a, b = s, t
    w = b @ a @ b.inverse()
    out["S.e"] = a @ w @ b.inverse()
    out["S.v"] = evaluate_word("t s t s t^-1 s^-1 t^-1", table)
    return out


def identity_suite(table: Mapping[str, ExtendedMoebius] | None = None,
                   back_conjugation_range: range = range(1, 4)) -> Report:
    """Every matrix identity relating the named isometries, checked exactly."""
    if table is None:
        table = builtin_generators()
    T = table

    def w(text: str) -> ExtendedMoebius:
        return evaluate_word(text, T)

    def cj(x, by):
        return conjugate(x, by)

    rep = Report("identity suite")
    s, t, f, g, h = T["s"], T["t"], T["f"], T["g"], T["h"]
    p1, p2, p3, p4 = T["p1"], T["p2"], T["p3"], T["p4"]
    k, c, r, m1, m2 = T["k"], T["c"], T["r"], T["m1"], T["m2"]
    a0, a1, b0, f0 = T["a0"], T["a1"], T["b0"], T["f0"]
    one = ExtendedMoebius.identity()

    checks: list[tuple[str, Callable[[], bool]]] = [
        ("p1 = s^-1", lambda: p1 == s.inverse()),
        ("p1 = f^-1", lambda: p1 == f.inverse()),
        ("p2 = s t s t^-2", lambda: p2 == w("s t s t^-2")),
        ("p2 = f g^-1 f^-1 h^-1 g", lambda: p2 == w("f g^-1 f^-1 h^-1 g")),
        ("p3 = (s^-1)^(tst)", lambda: p3 == cj(s.inverse(), w("t s t"))),
        ("p3 = (g^-1)^(g^-1 f^-1 h)", lambda: p3 == cj(g.inverse(), w("g^-1 f^-1 h"))),
        ("p4 = p1 p2 p3^-1", lambda: p4 == p1 @ p2 @ p3.inverse()),
        ("p4 = (s t s t^-2)^(t s t^-1)", lambda: p4 == cj(w("s t s t^-2"), w("t s t^-1"))),
        ("k^2 = 1", lambda: k @ k == one),
        ("f^k = g^(f g^-1)", lambda: cj(f, k) == cj(g, f @ g.inverse())),
        ("g^k = f^(f g^-1)", lambda: cj(g, k) == cj(f, f @ g.inverse())),
        ("h^k = (h^-1)^(f g^-1)", lambda: cj(h, k) == cj(h.inverse(), f @ g.inverse())),
        ("p1^m1 = p3^-1", lambda: cj(p1, m1) == p3.inverse()),
        ("p2^m1 = p4^-1", lambda: cj(p2, m1) == p4.inverse()),
        ("p1^m2 = p2", lambda: cj(p1, m2) == p2),
        ("p3^m2 = p4^(p1^-1)", lambda: cj(p3, m2) == cj(p4, p1.inverse())),
        ("p2^k = p2^-1", lambda: cj(p2, k) == p2.inverse()),
        ("s = f", lambda: s == f),
        ("f = a0 f0 a0^-1", lambda: f == a0 @ f0 @ a0.inverse()),
        ("t = (b0 a0)^-1 f0^-1 (b0 a0) a0",
         lambda: t == (b0 @ a0).inverse() @ f0.inverse() @ (b0 @ a0) @ a0),
        ("g = (a0^-1 a1) f0^-1 (a0^-1 a1)^-1",
         lambda: g == cj(f0.inverse(), a0.inverse() @ a1)),
        ("h = a1 a0 f0^-1 a1", lambda: h == a1 @ a0 @ f0.inverse() @ a1),
        ("c^-1 r c = c^-2 r", lambda: c.inverse() @ r @ c == (c ** -2) @ r),
        ("t^r = conj(t)", lambda: r @ t @ r == t.entry_conjugate()),
        ("r r = 1", lambda: r @ r == one),
        ("b0^3 = 1", lambda: b0 ** 3 == one),
        ("a0^3 = 1", lambda: a0 ** 3 == one),
        ("a0 = refl(dB0) refl(iH + 1/2)", lambda: a0 == a_elem(0)),
        ("a1 = c^-1 a0 c", lambda: a1 == cj(a0, c.inverse())),
        ("conj(c) = c^-1", lambda: c.entry_conjugate() == c.inverse()),
        ("f0 = refl(iH + 1/2) refl(iH)", lambda: f0 == f0_elem()),
        ("S = refl(iH) refl(dB0)", lambda: T["S"] == rotation_elem(0)),
        ("c(H) = R + i sqrt2",
         lambda: apply_to_hyperplane(c, H_REAL) == Hyperplane.vertical(IR2, 1 + IR2)),
        ("k(H) = R - i sqrt2",
         lambda: apply_to_hyperplane(k, H_REAL) == Hyperplane.vertical(-IR2, 1 - IR2)),
    ]
    for name in ("p1", "p2", "p3", "p4"):
        checks.append((f"{name} preserves H",
                       lambda x=T[name]: apply_to_hyperplane(x, H_REAL) == H_REAL))

    imgs = tangle_images(T)
    checks += [
        ("T0 tangle: v -> p3^-1", lambda: imgs["T0.v"] == p3.inverse()),
        ("T0 tangle: u -> p4", lambda: imgs["T0.u"] == p4),
        ("S tangle: e -> p2", lambda: imgs["S.e"] == p2),
        ("S tangle: t s t s t^-1 s^-1 t^-1 -> (16 -25; 9 -14)",
         lambda: imgs["S.v"] == M(16, -25, 9, -14) and imgs["S.v"] == p3.inverse()),
    ]

    # back-conjugation and the bar relation for the a_i
    samples = {"s": s, "t": t, "g": g, "h": h, "st^-1h": s @ t.inverse() @ h}
    for n in back_conjugation_range:
        u = (c ** -n) @ r @ (c ** n)
        for label, x in samples.items():
            checks.append((f"back conjugation n={n} x={label}",
                           lambda u=u, x=x, n=n: u @ x @ u == cj(x.entry_conjugate(), c ** (-2 * n))))
    for i in range(0, 5):
        ai = a_elem(i)
        checks.append((f"c^-{2 * i} conj(a{i}) c^{2 * i} = a{i}",
                       lambda ai=ai, i=i: cj(ai.entry_conjugate(), c ** (-2 * i)) == ai))
        checks.append((f"a{i} = c^-{i} a0 c^{i}", lambda ai=ai, i=i: ai == cj(a0, c ** (-i))))

    for name, fn in checks:
        try:
            ok = bool(fn())
            rep.add(name, ok)
        except Exception as exc:  # a broken table should report, not crash
            rep.add(name, False, f"{type(exc).__name__}: {exc}")
    return rep


def broken_table() -> Mapping[str, ExtendedMoebius]:
    """Builtin table with p3 perturbed, for negative controls."""
    table = dict(builtin_generators())
    table["p3"] = M(-14, 25, -9, 17)
    return MappingProxyType(table)

