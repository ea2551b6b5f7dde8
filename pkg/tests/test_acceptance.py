"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line, even under
pytest's output capture.  Run ``python tests/test_acceptance.py`` for the
bare summary.
"""

import itertools
import math
import random
import time
from fractions import Fraction

import pytest

from linkcomm.bloch import (
    beta1, bloch_invariant_Mn, borel_regulator, d2, five_term_d2, flat_correction,
    mutation_invariance_check,
)
from linkcomm.cusp_moduli import (
    adjacent_pair, assemble_mutant_moduli, brute_force_pgl2q, classify_family,
    different_mods_display, mn_moduli, mutant_moduli, pgl2q_equivalent, same_moduli_display,
    single_two, CuspParameter,
)
from linkcomm.generators import identity_suite
from linkcomm.kleinian import (
    gamma_I, gamma_n, integrality_scan, isometry_classes, isometry_classify, isometry_orbit,
    nonintegral_examples,
)
from linkcomm.numfield import K, RealQuadElement
from linkcomm.polyhedra import (
    broken_octahedron_pairing, cuboctahedron, cuboctahedron_annuli, cuboctahedron_pairing,
    octahedron, octahedron_annuli, octahedron_pairing, verify_internal_face_pairing,
)
from linkcomm.tiling import NORMAL, convexity_witnesses, coplanarity_check, load_MN

R2 = RealQuadElement(0, 1)


@pytest.fixture
def report(capsys):
    def emit(number, checks, note=""):
        failed = [name for name, ok in checks.items() if not ok]
        line = f"criterion {number}: {'FAIL' if failed else 'PASS'}"
        if failed:
            line += " (" + "; ".join(failed) + ")"
        elif note:
            line += f" ({note})"
        with capsys.disabled():
            print("\n" + line)
        assert not failed, line
    return emit


def test_criterion_1_identity_suite(report):
    t = time.perf_counter()
    rep = identity_suite()
    elapsed = time.perf_counter() - t
    report(1, {"all identities hold": rep.passed,
               "at least 25 identities": len(rep.checks) >= 25,
               "runtime < 1 s": elapsed < 1.0},
           f"{len(rep.checks)} identities in {elapsed:.3f} s")


def test_criterion_2_face_pairings(report):
    t = time.perf_counter()
    p1 = verify_internal_face_pairing(octahedron(), octahedron_pairing()).passed
    p2 = verify_internal_face_pairing(cuboctahedron(), cuboctahedron_pairing()).passed
    neg = verify_internal_face_pairing(octahedron(), broken_octahedron_pairing()).passed
    elapsed = time.perf_counter() - t
    report(2, {"P1 with s, t": p1, "P2 with f, g, h": p2,
               "negative control rejected": not neg, "runtime < 1 s": elapsed < 1.0},
           f"{elapsed:.3f} s")


def test_criterion_3_cusp_annuli(report):
    A, B = octahedron_annuli(), cuboctahedron_annuli()
    fifth = Fraction(1, 5)
    report(3, {
        "m(A1) = 1": A["A1"].modulus == RealQuadElement(1),
        "m(A2) = 1/5": A["A2"].modulus == RealQuadElement(fifth),
        "m(B1) = m(B3) = sqrt2": B["B1"].modulus == R2 == B["B3"].modulus,
        "m(B2) = m(B4) = sqrt2/5": B["B2"].modulus == R2 * fifth == B["B4"].modulus,
        "rectangle counts 1, 5, 1, 5":
            [B[k].rectangles for k in ("B1", "B2", "B3", "B4")] == [1, 5, 1, 5]
            and (A["A1"].rectangles, A["A2"].rectangles) == (1, 5),
    })


def test_criterion_4_cusp_parameters(report):
    t = time.perf_counter()
    mismatches = sum(assemble_mutant_moduli(w) != mutant_moduli(w)
                     for n in range(1, 7) for w in itertools.product((0, 2), repeat=n + 1))
    elapsed = time.perf_counter() - t
    report(4, {
        "T1(M_n) = i(2 + 4n sqrt2), n = 1..10":
            all(mn_moduli(n)[0] == CuspParameter(2, 4 * n) for n in range(1, 11)),
        "assembly = closed form for n <= 6": mismatches == 0,
        "exhaustive check < 10 s": elapsed < 10.0,
        "single-2 values":
            all(mutant_moduli(single_two(n, k)) == different_mods_display(n, k)
                and mutant_moduli(single_two(n, k))[0]
                == CuspParameter(Fraction(6, 5), Fraction(4, 5) * (n + 4 * k))
                for n in range(1, 9) for k in range(n + 1)),
        "adjacent-pair values":
            all(mutant_moduli(adjacent_pair(n, k)) == same_moduli_display(n)
                for n in range(1, 9) for k in range(n)),
    }, f"exhaustive assembly in {elapsed:.2f} s")


def test_criterion_5_pgl2q(report):
    params = sorted({T for n in (1, 2, 3) for w in itertools.product((0, 2), repeat=n + 1)
                     for T in mutant_moduli(w)}, key=lambda p: (p.q1, p.q2))
    rng = random.Random(5)
    # pairs whose witness, if any, has entries at most 12
    pairs = [(p, p.scaled(r)) for p in params[:8] for r in (1, 2, Fraction(1, 5))]
    pairs += [tuple(rng.sample(params, 2)) for _ in range(60)]
    agree = 0
    for z, w in pairs:
        slow = brute_force_pgl2q(z, w, 12) is not None
        fast = pgl2q_equivalent(z, w)
        # the fast test may see a witness larger than the search bound
        agree += fast == slow or (fast and not slow and brute_force_pgl2q(z, w, 60) is not None)
    C = classify_family(4)
    single = C.single_two_classes()
    report(5, {
        "fast and brute-force agree on >= 50 pairs": agree == len(pairs) >= 50,
        "single-2 family has >= ceil(n/2) classes": len(set(single)) >= math.ceil(4 / 2),
        "adjacent-pair family in one class": len(set(C.adjacent_pair_classes())) == 1,
    }, f"{len(pairs)} pairs; n = 4 single-2 family has {len(set(single))} classes")


def test_criterion_6_integrality(report):
    scan = integrality_scan(gamma_n(2), 4)
    witnesses = [integrality_scan(gamma_I(w), 4).witness for w in ((2, 0, 0), (0, 2, 0), (0, 0, 2))]
    ex = nonintegral_examples()
    prod = ex["conj(h) m2 h m2^-1"]
    report(6, {
        "gamma_2 traces integral to length 4": scan.all_integral,
        "mutant witnesses have denominator divisible by 5":
            all(w is not None and w.denominator % 5 == 0 for w in witnesses),
        "t m2 g m2^-1 matches entry for entry": all(ex["t m2 g m2^-1"]["entry_matches"]),
        "factors of the product match": all(ex["conj(h)"]["entry_matches"])
                                         and all(ex["m2 h m2^-1"]["entry_matches"]),
        "printed trace 204/5 flagged nonintegral":
            prod["printed_trace"] == K(Fraction(204, 5)) and not prod["printed_trace_integral"],
        "recomputed trace nonintegral": not prod["integral"],
    }, "printed product entries (1,2), (2,2) disagree with its factors; trace is -406/5")


@pytest.mark.xfail(strict=True, reason="the displayed product does not equal the product "
                   "of its displayed factors")
def test_criterion_6_printed_product_literal():
    assert all(nonintegral_examples()["conj(h) m2 h m2^-1"]["entry_matches"])


def test_criterion_7_dilogarithm_and_regulator(report):
    B1 = borel_regulator(beta1())
    v1 = 3.663862377
    regs = [borel_regulator(bloch_invariant_Mn(n)) for n in range(1, 9)]
    rng = random.Random(7)
    worst = 0.0
    for _ in range(200):
        x = complex(rng.uniform(-3, 3), rng.uniform(0.05, 3))
        y = complex(rng.uniform(-3, 3), rng.uniform(-3, -0.05))
        worst = max(worst, abs(five_term_d2(x, y)))
    report(7, {
        "D2((1+i)/2) = Catalan": abs(d2((1 + 1j) / 2) - 0.915965594177219) < 1e-9,
        "B(beta1) = (v1, v1)": abs(B1.r1 - v1) < 1e-8 and abs(B1.r2 - v1) < 1e-8,
        "n = 1..8 pairwise non-proportional":
            all(abs(a.det(b)) >= 1e-6 for a, b in itertools.combinations(regs, 2)),
        "five-term relation within 1e-9": worst < 1e-9,
    }, f"worst five-term residual {worst:.1e}")


def test_criterion_8_mutation_invariance(report):
    checks = {}
    for word in ((0, 2, 0, 0), (2, 0, 2, 0), (2, 2, 0, 2)):
        reg = borel_regulator(flat_correction(word))
        checks[f"{word} correction is (0, 0)"] = reg.r1 == 0.0 and reg.r2 == 0.0
        checks[f"{word} report passes"] = mutation_invariance_check(word).passed
    report(8, checks)


def test_criterion_9_canonicity(report):
    M, N = load_MN()
    values = [w.value for w in convexity_witnesses()]
    report(9, {
        "n.m_i = 1 on 12 columns": len(M) == 12 and coplanarity_check(NORMAL, M),
        "sqrt2 n.n_i = 1 on 6 columns": len(N) == 6 and coplanarity_check(NORMAL.scaled(R2), N),
        "witnesses 5, 3, 3, 2 + sqrt2":
            values == [RealQuadElement(5), RealQuadElement(3), RealQuadElement(3), 2 + R2],
    })


def test_criterion_10_isometry_classification(report):
    words = list(itertools.product((0, 1), repeat=5))
    agree = all((isometry_classify(I, J) == "isometric") == (J in isometry_orbit(I))
                for I in words for J in words)
    sizes = [len({w[1:-1] for w in cls}) for cls in isometry_classes(4)]
    report(10, {"matches orbit oracle on {0,1}^5": agree,
                "classes have at most 2 interiors": max(sizes) <= 2})


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
