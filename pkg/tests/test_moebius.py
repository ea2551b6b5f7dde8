import pytest

from linkcomm.generators import (
    R, a_elem, b0_elem, broken_table, builtin_generators, identity_suite, table_to_json,
)
from linkcomm.moebius import (
    ExtendedMoebius, GroupWord, TraceError, classify, compose, conjugate, evaluate_word,
    projectively_equal, trace_pm,
)
from linkcomm.numfield import K

T = builtin_generators()
ONE = ExtendedMoebius.identity()


def test_reflection_composition():
    assert compose(R, R) == ONE
    t = T["t"]
    assert R @ t @ R == t.entry_conjugate()
    c = T["c"]
    assert c.inverse() @ R @ c == (c ** -2) @ R


def test_reversing_action_conjugates_input():
    z = K(1, 0, 2)
    assert R(z) == z.conjugate()
    g = T["s"] @ R
    assert g(z) == T["s"](z.conjugate())


def test_word_evaluation():
    p2 = ExtendedMoebius(-1, 5, 0, -1)
    assert evaluate_word("s t s t^-2", T) == p2
    assert evaluate_word("f g^-1 f^-1 h^-1 g", T) == p2
    assert evaluate_word("", T) == ONE
    with pytest.raises(KeyError):
        evaluate_word("s q", T)
    with pytest.raises(ValueError):
        GroupWord.parse("s^0")


def test_word_homomorphism():
    w1, w2 = GroupWord.parse("s t^-1 h"), GroupWord.parse("g^2 f")
    assert evaluate_word(w1 * w2, T) == evaluate_word(w1, T) @ evaluate_word(w2, T)
    assert evaluate_word(w1.inverse(), T) == evaluate_word(w1, T).inverse()


def test_projective_equality():
    k = T["k"]
    assert projectively_equal(k @ k, ONE)
    assert projectively_equal(b0_elem() ** 3, ONE)
    assert not projectively_equal(T["s"], T["t"])
    assert T["s"].scaled(K(0, 0, 3)) == T["s"]
    assert not projectively_equal(T["s"], T["s"] @ R)


def test_traces():
    assert trace_pm(T["t"]) == {K(1, 0, 1), K(-1, 0, -1)}
    assert trace_pm(T["h"]) == {K(0, 0, 0, 1), K(0, 0, 0, -1)}
    assert trace_pm(ONE) == {K(2), K(-2)}
    with pytest.raises(TraceError):
        trace_pm(R)


def test_trace_conjugation_invariant():
    x = T["g"]
    for by in (T["m2"], T["c"], T["t"] @ T["h"]):
        assert trace_pm(conjugate(x, by)) == trace_pm(x)


def test_conjugation_examples():
    p1, p2, p3 = T["p1"], T["p2"], T["p3"]
    assert conjugate(p1, T["m1"]) == p3.inverse()
    assert conjugate(p1, T["m2"]) == p2
    f, g, k = T["f"], T["g"], T["k"]
    assert conjugate(f, k) == conjugate(g, f @ g.inverse())


def test_classify():
    assert str(classify(T["p3"])) == "parabolic"
    c = classify(T["a0"])
    assert (c.kind, c.order) == ("elliptic", 3)
    assert classify(ONE).kind == "identity"
    assert classify(T["m1"] @ T["c"]).kind == "loxodromic"


def test_builtin_table():
    assert T["p3"] == ExtendedMoebius(-14, 25, -9, 16)
    assert T["p3"].entries == (K(-14), K(25), K(-9), K(16))
    assert T["m1"].entries == (K(-3), K(5), K(-2), K(3))
    assert T["a1"] == conjugate(T["a0"], T["c"].inverse())
    assert a_elem(2) == conjugate(T["a0"], T["c"] ** -2)
    assert "p4" in table_to_json(T)
    with pytest.raises(TypeError):
        T["s"] = ONE


def test_identity_suite_passes():
    rep = identity_suite()
    assert rep.passed, [c.name for c in rep.failures()]
    assert len(rep.checks) >= 25


def test_identity_suite_negative_control():
    rep = identity_suite(broken_table())
    assert not rep.passed
    assert any("p3" in c.name for c in rep.failures())
