from fractions import Fraction

import pytest

from linkcomm.generators import builtin_generators
from linkcomm.geometry import HoroData
from linkcomm.moebius import INF
from linkcomm.numfield import K, RealQuadElement
from linkcomm.polyhedra import (
    B3_ANCHOR, EXTERNAL, INTERNAL, FacePairing, assemble_cusp_annuli, broken_octahedron_pairing,
    checkered, cuboctahedron, cuboctahedron_annuli, cuboctahedron_pairing, face_pairing,
    horoball_cross_section, horosphere_compatibility, hull_faces, octahedron, octahedron_annuli,
    octahedron_pairing, symmetric_scale, symmetries, verify_internal_face_pairing,
)

half = Fraction(1, 2)
R2 = RealQuadElement(0, 1)
T = builtin_generators()


def test_octahedron_faces():
    P = octahedron()
    assert len(P.vertices) == 6
    assert len(P.faces) == 8 and all(len(f.cycle) == 3 for f in P.faces)
    j = P.face_with([K(0), K(1), INF])
    assert P.checkering[j] == EXTERNAL
    assert len(P.internal_faces()) == 4


def test_cuboctahedron_faces():
    P = cuboctahedron()
    sizes = sorted(len(f.cycle) for f in P.faces)
    assert sizes == [3] * 8 + [4] * 6
    P.face_with([K(0), K(1), INF])
    # triangles external, squares internal
    for f, color in zip(P.faces, P.checkering):
        assert color == (EXTERNAL if len(f.cycle) == 3 else INTERNAL)


def test_cuboctahedron_vertex_list():
    expected = {INF, K(0), K(1), K(0, 0, 0, -1), K(0, 0, 0, -half), K(1, 0, 0, -1),
                K(1, 0, 0, -half), K(half, 0, 0, -half)}
    P = cuboctahedron()
    assert expected <= set(P.vertices)
    assert P.has_vertex(B3_ANCHOR)


def test_tetrahedron_and_degenerate():
    P = hull_faces([K(0), K(1), INF, K(0, 0, 1)])
    assert len(P.faces) == 4
    with pytest.raises(ValueError):
        hull_faces([K(0), K(1), K(2), INF])


def test_faces_supporting_and_strict():
    for P in (octahedron(), cuboctahedron()):
        for f in P.faces:
            for v, z in enumerate(P.vertices):
                val = f.plane.value(z)
                if v in f.vertex_set:
                    assert val.is_zero()
                else:
                    assert val.sign() > 0


def test_hull_isometry_invariant():
    P = octahedron()
    for g in (T["t"], T["c"], T["a0"]):
        Q = hull_faces([g(z) for z in P.vertices])
        assert sorted(len(f.cycle) for f in Q.faces) == sorted(len(f.cycle) for f in P.faces)
        # faces correspond under g
        image = {frozenset(Q.index(g(P.vertices[v])) for v in f.cycle) for f in P.faces}
        assert image == {f.vertex_set for f in Q.faces}


def test_checkering_unique():
    P = cuboctahedron()
    tri = next(j for j, f in enumerate(P.faces) if len(f.cycle) == 3)
    Q = checkered(hull_faces(P.vertices), P.face_points(tri))
    assert Q.checkering == P.checkering


def test_pairings_pass():
    for P, FP, n in ((octahedron(), octahedron_pairing(), 4), (cuboctahedron(), cuboctahedron_pairing(), 6)):
        rep = verify_internal_face_pairing(P, FP)
        assert rep.passed, [c.name for c in rep.failures()]
        assert len(FP.entries) == n


def test_pairing_details():
    P = octahedron()
    FP = octahedron_pairing()
    s_entries = [e for e in FP.entries if e.name == "s"]
    assert len(s_entries) == 1
    e = s_entries[0]
    shared = P.faces[e.source].vertex_set & P.faces[e.target].vertex_set
    assert len(shared) == 1
    v = next(iter(shared))
    assert T["s"](P.vertices[v]) == P.vertices[v]
    names = sorted(e.name for e in cuboctahedron_pairing().entries)
    assert names == ["f", "f^-1", "g", "g^-1", "h", "h^-1"]


def test_broken_pairing_fails():
    rep = verify_internal_face_pairing(octahedron(), broken_octahedron_pairing())
    assert not rep.passed
    empty = verify_internal_face_pairing(octahedron(), FacePairing(()))
    assert not empty.passed


def test_symmetry_groups():
    assert len(symmetries(octahedron())) == 24
    assert len(symmetries(cuboctahedron())) == 24


def test_cross_sections():
    P1, P2 = octahedron(), cuboctahedron()
    sec = horoball_cross_section(P1, P1.index(INF), HoroData(INF, RealQuadElement(2)))
    assert len(sec.sides) == 4 and {s.length for s in sec.sides} == {RealQuadElement(half)}
    sec = horoball_cross_section(P2, P2.index(INF), HoroData(INF, RealQuadElement(2)))
    assert len(sec.sides) == 4
    assert sec.length_of(INTERNAL) == R2 / 2
    assert sec.length_of(EXTERNAL) == RealQuadElement(half)
    for v in range(6):
        sec = horoball_cross_section(P1, v, symmetric_scale(P1, v))
        assert {s.length for s in sec.sides} == {RealQuadElement(half)}


def test_annuli_moduli():
    A = octahedron_annuli()
    assert A["A1"].modulus == RealQuadElement(1) and A["A1"].rectangles == 1
    assert A["A2"].modulus == RealQuadElement(Fraction(1, 5)) and A["A2"].rectangles == 5
    B = cuboctahedron_annuli()
    assert B["B1"].modulus == R2 and B["B3"].modulus == R2
    assert B["B2"].modulus == R2 / 5 and B["B4"].modulus == R2 / 5
    assert [B[k].rectangles for k in ("B1", "B2", "B3", "B4")] == [1, 5, 1, 5]
    assert B["B1"].doubled().modulus == R2 * 2
    assert B["B2"].doubled().modulus == R2 * Fraction(2, 5)


def test_annulus_a2_class():
    A = octahedron_annuli()
    P = octahedron()
    assert {v for v, _ in A["A2"].cycle} == set(range(6)) - {P.index(K(0))}


def test_modulus_scale_invariant():
    P = octahedron()
    base = assemble_cusp_annuli(P, octahedron_pairing())

    def scaled(v):
        h = symmetric_scale(P, v)
        return HoroData(h.center, h.scale * 3 if h.center is INF else h.scale / 3)

    other = assemble_cusp_annuli(P, octahedron_pairing(), scaled)
    assert sorted(a.modulus for a in base) == sorted(a.modulus for a in other)


def test_horosphere_compatibility():
    for P, FP in ((octahedron(), octahedron_pairing()), (cuboctahedron(), cuboctahedron_pairing())):
        assert horosphere_compatibility(P, FP).passed


def test_face_pairing_search_rejects_non_pairing():
    with pytest.raises(ValueError, match="pairs no internal face"):
        face_pairing(octahedron(), {"c": T["c"]})
