"""Canonicity checks for the octahedron/cuboctahedron tiling in the
hyperboloid model.

Horospherical vectors live on the future light cone L+.  A tile with
vertex vectors v_1..v_k is coplanar if some n has n.v_i = 1 for all i, and
its angle with a neighbouring tile is convex if n.w > 1 for a vertex w of
the neighbour.  The dot product here is the Euclidean one on R^4.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .generators import Report, builtin_generators
from .geometry import (
    LorentzVector,
    boundary_to_lightcone,
    euclid_dot,
    lightcone_to_boundary,
    lorentz_inner,
    moebius_to_standard,
)
from .moebius import INF, ExtendedMoebius
from .numfield import RealQuadElement

R2 = RealQuadElement(0, 1)


@dataclass(frozen=True)
class HoroVectorSet:
    label: str
    columns: tuple[LorentzVector, ...]

    def __post_init__(self):
        for j, v in enumerate(self.columns):
            if not lorentz_inner(v, v).is_zero() or v[3].sign() <= 0:
                raise ValueError(f"{self.label} column {j + 1} is not in L+")

    def __len__(self):
        return len(self.columns)

    def boundary_points(self):
        return [lightcone_to_boundary(v) for v in self.columns]

    def to_json(self):
        return {"label": self.label, "columns": [v.to_json() for v in self.columns]}


def _columns(rows):
    return tuple(LorentzVector(col) for col in zip(*rows))


@functools.lru_cache(maxsize=None)
def load_MN() -> tuple[HoroVectorSet, HoroVectorSet]:
    r = R2
    M = HoroVectorSet("M", _columns([
        [2, 1, 0, 1, 0, -1, -2, -1, 1, -1, -1, 1],
        [0, 1, 2, 1, -2, -1, 0, -1, -1, 1, 1, -1],
        [0, r, 0, -r, 0, r, 0, -r, -r, -r, r, r],
        [2] * 12,
    ]))
    z = 0
    N = HoroVectorSet("N", _columns([
        [r, z, z, -r, z, z],
        [z, r, z, z, -r, z],
        [z, z, r, z, z, -r],
        [r] * 6,
    ]))
    return M, N


NORMAL = LorentzVector((0, 0, 0, RealQuadElement(1, 0) / 2))


def coplanarity_values(normal, vs: HoroVectorSet) -> list[RealQuadElement]:
    return [euclid_dot(normal, v) for v in vs.columns]


def coplanarity_check(normal, vs: HoroVectorSet) -> bool:
    """n.v == 1 exactly for every column."""
    return all(x == RealQuadElement(1) for x in coplanarity_values(normal, vs))


@dataclass(frozen=True)
class Witness:
    description: str
    normal: LorentzVector
    w: LorentzVector
    value: RealQuadElement

    @property
    def convex(self) -> bool:
        return self.value > RealQuadElement(1)

    def to_json(self):
        return {"pair": self.description, "w": self.w.to_json(),
                "value": self.value.to_json(), "value_float": float(self.value),
                "convex": self.convex}


def convexity_witnesses() -> list[Witness]:
    r = R2
    scaled = NORMAL.scaled(r)
    cases = [
        ("cuboctahedron across triangle (m1,m9,m4)", NORMAL, (7, 1, -5 * r, 10)),
        ("cuboctahedron across square (m1,m2,m3,m4)", NORMAL, (3, 5, -r, 6)),
        ("octahedron across face (n1,n2,n3), scaled normal", scaled,
         tuple(r * x for x in (1, 2, 2, 3))),
        # far vertex of the octahedron glued to P_M along (m1,m9,m4); the
        # last coordinate 4 + 2 sqrt2 is forced by nullity
        ("octahedron h(P_N) across triangle (m1,m9,m4)", NORMAL,
         (2 + 2 * r, 0, -2 - 2 * r, 4 + 2 * r)),
    ]
    out = []
    for desc, normal, w in cases:
        w = LorentzVector(w)
        if not lorentz_inner(w, w).is_zero():
            raise ValueError(f"witness for {desc} is not null")
        out.append(Witness(desc, normal, w, euclid_dot(normal, w)))
    return out


# ---------------------------------------------------------------- numeric Lorentz action

def _hermitian(v) -> np.ndarray:
    v1, v2, v3, v4 = (float(x) for x in v)
    return 0.5 * np.array([[v4 + v3, v1 + 1j * v2], [v1 - 1j * v2, v4 - v3]])


def _unhermitian(X: np.ndarray) -> np.ndarray:
    return np.array([2 * X[0, 1].real, 2 * X[0, 1].imag,
                     (X[0, 0] - X[1, 1]).real, (X[0, 0] + X[1, 1]).real])


def lorentz_matrix(g: ExtendedMoebius, which: str = "sigma1") -> np.ndarray:
    """4x4 real matrix of g acting on R^4 through X -> G X G^*."""
    G = np.array(g.to_complex(which), dtype=complex).reshape(2, 2)
    G = G / np.sqrt(np.linalg.det(G))
    cols = []
    for e in np.eye(4):
        X = _hermitian(e)
        if g.reversing:
            X = X.conj()
        cols.append(_unhermitian(G @ X @ G.conj().T))
    return np.column_stack(cols)


def isometry_invariance_spotcheck(A: ExtendedMoebius, v, n, tol: float = 1e-9) -> bool:
    """(n A^-1) . (A v) == n . v, plus A preserving the Lorentz form."""
    L = lorentz_matrix(A)
    J = np.diag([1.0, 1.0, 1.0, -1.0])
    if not np.allclose(L.T @ J @ L, J, atol=tol):
        return False
    v = np.array([float(x) for x in v])
    n = np.array([float(x) for x in n])
    return abs((n @ np.linalg.inv(L)) @ (L @ v) - n @ v) < tol


def lift_intertwines(A: ExtendedMoebius, z, tol: float = 1e-9) -> bool:
    """The Lorentz matrix sends the lift of z onto the ray of the lift of A(z)."""
    L = lorentz_matrix(A)
    image = L @ np.array(boundary_to_lightcone(z).to_float())
    target = np.array(boundary_to_lightcone(A(z)).to_float())
    lam = image[3] / target[3]
    return lam > 0 and np.allclose(image, lam * target, atol=tol * max(1.0, abs(lam)))


# ---------------------------------------------------------------- octahedron shapes

def edge_shapes(P) -> list:
    """Shape of each edge: send its ends to 0, inf and one apex to 1."""
    faces_of_edge = {}
    for j, f in enumerate(P.faces):
        for e in f.edges():
            faces_of_edge.setdefault(e, []).append(j)
    shapes = []
    for e, (fa, fb) in sorted(faces_of_edge.items(), key=lambda kv: sorted(kv[0])):
        u, w = sorted(e)
        x = next(k for k in P.faces[fa].cycle if k not in e)
        y = next(k for k in P.faces[fb].cycle if k not in e)
        V = P.vertices
        shapes.append(moebius_to_standard(V[u], V[x], V[w])(V[y]))
    return shapes


def _unordered_shape(z):
    if z is INF:
        return INF
    return frozenset((z, z.conjugate()))


def octahedron_shape_check() -> tuple[bool, str]:
    from .polyhedra import hull_faces, octahedron

    _, N = load_MN()
    PN = hull_faces(N.boundary_points())
    mine = {_unordered_shape(s) for s in edge_shapes(PN)}
    model = {_unordered_shape(s) for s in edge_shapes(octahedron())}
    ok = len(PN.faces) == 8 and len(edge_shapes(PN)) == 12 and len(mine) == 1 and mine == model
    return ok, f"{len(PN.faces)} faces, shapes " + "; ".join(
        "{" + ", ".join(sorted(str(z) for z in m)) + "}" for m in mine)


# ---------------------------------------------------------------- report

def canonicity_report() -> Report:
    M, N = load_MN()
    rep = Report("canonicity")
    rep.add("M columns null and future-pointing", True, f"{len(M)} columns")
    rep.add("N columns null and future-pointing", True, f"{len(N)} columns")
    vals = coplanarity_values(NORMAL, M)
    rep.add("n.m_i = 1 for all 12 columns", coplanarity_check(NORMAL, M),
            ", ".join(str(x) for x in vals))
    scaled = NORMAL.scaled(R2)
    rep.add("sqrt2 n.n_i = 1 for all 6 columns", coplanarity_check(scaled, N),
            ", ".join(str(x) for x in coplanarity_values(scaled, N)))
    for wit in convexity_witnesses():
        rep.add(f"convex: {wit.description}", wit.convex, f"n.w = {wit.value}")
    ok, detail = octahedron_shape_check()
    rep.add("N spans a regular ideal octahedron", ok, detail)
    T = builtin_generators()
    m1 = M.columns[0]
    for name in ("c", "a0", "s", "f", "r"):
        rep.add(f"Lorentz form of {name} preserves n.v",
                isometry_invariance_spotcheck(T[name], m1, NORMAL))
    return rep

