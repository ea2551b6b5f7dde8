from fractions import Fraction

import pytest
import sympy

from linkcomm.numfield import (
    K, NumberFieldElement, RealQuadElement, charpoly, complex_conjugate, embed,
    galois_sigma2, is_algebraic_integer, sqrt_q2,
)

half = Fraction(1, 2)
ZETA = K(0, half, 0, half)   # (sqrt2 + i sqrt2) / 2


def test_basic_products():
    assert K(half, 0, half) * K(half, 0, -half) == K(half)
    x = K(3, 0, 0, 1)
    assert x * x.inverse() == K(1)
    assert ZETA ** 4 == K(-1)
    assert ZETA ** 8 == K(1)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        K(0).inverse()


def test_conjugations():
    assert complex_conjugate(K(0, 0, 0, 1)) == K(0, 0, 0, -1)
    assert complex_conjugate(K(3)) == K(3)
    x = K(1, 1, 1)
    assert complex_conjugate(complex_conjugate(x)) == x
    assert galois_sigma2(K(0, 1)) == K(0, -1)
    assert galois_sigma2(K(0, 0, 1)) == K(0, 0, 1)
    y = K(half, 1, half)
    assert galois_sigma2(galois_sigma2(y)) == y


def test_embeddings():
    assert embed(K(0, 1)) == pytest.approx(2 ** 0.5, abs=1e-15)
    assert embed(K(0, 1), "sigma2") == pytest.approx(-(2 ** 0.5), abs=1e-15)
    assert embed(K(half, 0, half), "sigma2") == 0.5 + 0.5j
    with pytest.raises(ValueError):
        embed(K(1), "sigma3")


def test_integrality_examples():
    assert is_algebraic_integer(K(0, 0, 2))
    assert not is_algebraic_integer(K(Fraction(204, 5)))
    assert is_algebraic_integer(ZETA)
    assert charpoly(ZETA) == (1, 0, 0, 0, 1)
    # Z[zeta8] is larger than Z[i, sqrt2]
    assert is_algebraic_integer(K(0, half, 0, half))
    assert not is_algebraic_integer(K(half))


def test_charpoly_against_sympy():
    X = sympy.symbols("X")
    basis = (1, sympy.sqrt(2), sympy.I, sympy.I * sympy.sqrt(2))
    for coords in [(1, 2, 3, 4), (half, 0, 0, half), (Fraction(1, 3), -1, 2, 0), (5, 0, 0, 0)]:
        x = K(*coords)
        val = sum(sympy.Rational(c.numerator, c.denominator) * b for c, b in zip(x.coords(), basis))
        mp = sympy.Poly(sympy.minimal_polynomial(val, X), X).monic()
        expected = mp ** (4 // mp.degree())
        got = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in charpoly(x)], X)
        assert got.all_coeffs() == expected.all_coeffs()


def test_real_quad():
    r = RealQuadElement(0, 1)
    assert r * r == RealQuadElement(2)
    assert sqrt_q2(RealQuadElement(3, 2)) == RealQuadElement(1, 1)
    assert sqrt_q2(RealQuadElement(2)) == r
    assert sqrt_q2(RealQuadElement(3)) is None
    assert RealQuadElement(1, -1) < 0 < RealQuadElement(-1, 1)


def test_coords_reduced():
    x = NumberFieldElement(Fraction(2, 4), 0, 0, 0)
    assert x.coords()[0] == Fraction(1, 2)
    assert x == K(half)
    assert hash(x) == hash(K(half))
