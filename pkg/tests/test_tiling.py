import pytest

from linkcomm.generators import builtin_generators
from linkcomm.geometry import LorentzVector, euclid_dot
from linkcomm.numfield import K, RealQuadElement
from linkcomm.tiling import (
    NORMAL, HoroVectorSet, canonicity_report, convexity_witnesses, coplanarity_check,
    coplanarity_values, isometry_invariance_spotcheck, lift_intertwines, load_MN,
    octahedron_shape_check,
)

R2 = RealQuadElement(0, 1)
ONE = RealQuadElement(1)


def test_columns():
    M, N = load_MN()
    assert len(M) == 12 and len(N) == 6
    assert M.columns[0].to_float() == [2.0, 0.0, 0.0, 2.0]


def test_non_null_column_rejected():
    with pytest.raises(ValueError):
        HoroVectorSet("bad", (LorentzVector((1, 0, 0, 2)),))


def test_coplanarity_of_M():
    M, _ = load_MN()
    assert coplanarity_values(NORMAL, M) == [ONE] * 12
    assert coplanarity_check(NORMAL, M)


def test_coplanarity_of_N_needs_scaling():
    _, N = load_MN()
    # the unscaled normal gives sqrt2/2 on every column
    assert coplanarity_values(NORMAL, N) == [R2 / 2] * 6
    assert not coplanarity_check(NORMAL, N)
    assert coplanarity_check(NORMAL.scaled(R2), N)


def test_witness_values():
    values = [w.value for w in convexity_witnesses()]
    assert values == [RealQuadElement(5), RealQuadElement(3), RealQuadElement(3), 2 + R2]
    assert all(w.convex for w in convexity_witnesses())


def test_octahedron_witness_scaling():
    w = convexity_witnesses()[2]
    assert euclid_dot(NORMAL.scaled(R2), w.w) == RealQuadElement(3)


def test_octahedron_shapes():
    ok, detail = octahedron_shape_check()
    assert ok, detail


@pytest.mark.parametrize("name", ["c", "a0", "s", "f", "r"])
def test_isometry_spotchecks(name):
    T = builtin_generators()
    M, _ = load_MN()
    for v in M.columns[:4]:
        assert isometry_invariance_spotcheck(T[name], v, NORMAL)


def test_identity_spotcheck():
    from linkcomm.moebius import ExtendedMoebius

    ident = ExtendedMoebius.identity()
    M, _ = load_MN()
    assert isometry_invariance_spotcheck(ident, M.columns[3], NORMAL)


@pytest.mark.parametrize("name", ["c", "a0", "s", "t", "f", "g", "h"])
def test_lift_intertwines(name):
    T = builtin_generators()
    for z in (K(0), K(1, 0, 1), K(0, 1, 0, 1), K(-2, 0, 3)):
        if T[name](z) is not None:
            assert lift_intertwines(T[name], z)


def test_canonicity_report_passes():
    rep = canonicity_report()
    assert rep.passed, [c.name for c in rep.failures()]
