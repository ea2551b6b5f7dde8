"""Ideal polyhedra: hull reconstruction, checkering, face pairings, and the
horosphere rectangles that assemble into cusp annuli."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .generators import Report, builtin_generators
from .geometry import (
    Hyperplane,
    HoroData,
    boundary_to_lightcone,
    cross4,
    euclid_dot,
    lightcone_to_boundary,
    moebius_from_points,
)
from .moebius import INF, BoundaryPoint, ExtendedMoebius, as_point, point_key
from .numfield import K, RealQuadElement, sqrt_q2

INTERNAL = "internal"
EXTERNAL = "external"


@dataclass(frozen=True)
class Face:
    plane: Hyperplane          # oriented: nonnegative on the polyhedron
    cycle: tuple[int, ...]     # vertex indices in boundary order

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.cycle)

    def edges(self) -> list[frozenset[int]]:
        n = len(self.cycle)
        return [frozenset((self.cycle[i], self.cycle[(i + 1) % n])) for i in range(n)]


@dataclass(frozen=True)
class IdealPolyhedron:
    vertices: tuple[BoundaryPoint, ...]
    faces: tuple[Face, ...]
    checkering: tuple[str, ...] | None = None

    def index(self, z) -> int:
        z = as_point(z)
        for j, v in enumerate(self.vertices):
            if v is z or (v is not INF and z is not INF and v == z):
                return j
        raise KeyError(f"{z} is not a vertex")

    def has_vertex(self, z) -> bool:
        try:
            self.index(z)
            return True
        except KeyError:
            return False

    def face_with(self, verts) -> int:
        target = frozenset(self.index(z) for z in verts)
        for j, f in enumerate(self.faces):
            if f.vertex_set == target:
                return j
        raise KeyError("no face with those vertices")

    def faces_at(self, v: int) -> list[int]:
        return [j for j, f in enumerate(self.faces) if v in f.vertex_set]

    def internal_faces(self) -> list[int]:
        if self.checkering is None:
            raise ValueError("polyhedron is not checkered")
        return [j for j, c in enumerate(self.checkering) if c == INTERNAL]

    def face_points(self, j: int) -> list[BoundaryPoint]:
        return [self.vertices[v] for v in self.faces[j].cycle]

    def adjacency(self) -> dict[int, set[int]]:
        owner: dict[frozenset[int], list[int]] = {}
        for j, f in enumerate(self.faces):
            for e in f.edges():
                owner.setdefault(e, []).append(j)
        adj: dict[int, set[int]] = {j: set() for j in range(len(self.faces))}
        for pair in owner.values():
            if len(pair) == 2:
                a, b = pair
                adj[a].add(b)
                adj[b].add(a)
        return adj

    def to_json(self) -> dict:
        return {
            "vertices": [_point_json(v) for v in self.vertices],
            "faces": [{"cycle": list(f.cycle), "plane": f.plane.to_json(),
                       "color": None if self.checkering is None else self.checkering[j]}
                      for j, f in enumerate(self.faces)],
        }


def _point_json(z):
    return "inf" if z is INF else z.to_json()


def _order_cycle(members: frozenset[int], edges: set[frozenset[int]]) -> tuple[int, ...]:
    nbrs: dict[int, list[int]] = {m: [] for m in members}
    for e in edges:
        a, b = tuple(e)
        nbrs[a].append(b)
        nbrs[b].append(a)
    start = min(members)
    cycle = [start]
    prev, cur = None, start
    while True:
        nxt = [x for x in sorted(nbrs[cur]) if x != prev]
        if not nxt:
            raise ValueError("face boundary is not a cycle")
        prev, cur = cur, nxt[0]
        if cur == start:
            break
        cycle.append(cur)
    if len(cycle) != len(members):
        raise ValueError("face boundary is not a single cycle")
    return tuple(cycle)


def hull_faces(vertices: Sequence) -> IdealPolyhedron:
    """Faces of the ideal polyhedron spanned by the given boundary points.

    A triple of lifted vertices spans a linear hyperplane; its vertex subset
    is a face exactly when every other lifted vertex lies strictly on one side.
    """
    pts = tuple(as_point(z) for z in vertices)
    if len(pts) < 4:
        raise ValueError("need at least four vertices")
    lifts = [boundary_to_lightcone(z).coords for z in pts]
    found: dict[frozenset[int], Hyperplane] = {}
    for trip in itertools.combinations(range(len(pts)), 3):
        if any(trip[0] in s and trip[1] in s and trip[2] in s for s in found):
            continue
        ell = cross4([lifts[j] for j in trip])
        signs = [euclid_dot(ell, lv).sign() for lv in lifts]
        on = frozenset(j for j, s in enumerate(signs) if s == 0)
        off = {s for s in signs if s != 0}
        if not off:
            raise ValueError("degenerate input: all vertices on one circle")
        if len(off) == 2:
            continue
        if off == {-1}:
            ell = tuple(-x for x in ell)
        found[on] = Hyperplane.from_functional(ell)

    owner: dict[frozenset[int], int] = {}
    for members in found:
        for pair in itertools.combinations(sorted(members), 2):
            key = frozenset(pair)
            owner[key] = owner.get(key, 0) + 1
    edges = {e for e, cnt in owner.items() if cnt == 2}
    faces = []
    for members in sorted(found, key=lambda s: sorted(s)):
        face_edges = {e for e in edges if e <= members}
        faces.append(Face(found[members], _order_cycle(members, face_edges)))
    return IdealPolyhedron(pts, tuple(faces))


def checkered(P: IdealPolyhedron, external_seed: Sequence) -> IdealPolyhedron:
    """2-color the face adjacency graph with the seed face external."""
    seed = P.face_with(external_seed)
    adj = P.adjacency()
    color = {seed: EXTERNAL}
    queue = [seed]
    while queue:
        j = queue.pop()
        for k in sorted(adj[j]):
            want = INTERNAL if color[j] == EXTERNAL else EXTERNAL
            if k not in color:
                color[k] = want
                queue.append(k)
            elif color[k] != want:
                raise ValueError("face adjacency graph is not bipartite")
    if len(color) != len(P.faces):
        raise ValueError("face adjacency graph is disconnected")
    return IdealPolyhedron(P.vertices, P.faces, tuple(color[j] for j in range(len(P.faces))))


OCTAHEDRON_VERTICES = (INF, K(0), K(1), K(0, 0, 1), K(1, 0, 1), K(Fraction(1, 2), 0, Fraction(1, 2)))


@functools.lru_cache(maxsize=None)
def octahedron() -> IdealPolyhedron:
    """The regular ideal octahedron P1, face {0, 1, inf} external."""
    return checkered(hull_faces(OCTAHEDRON_VERTICES), (K(0), K(1), INF))


def cuboctahedron_vertices() -> tuple[BoundaryPoint, ...]:
    """Cuboctahedron vertices from the columns of M, moved so that the
    triangle spanned by columns 1, 4, 9 becomes {inf, 0, 1}."""
    from .tiling import load_MN

    M, _ = load_MN()
    pts = [lightcone_to_boundary(v) for v in M.columns]
    g = moebius_from_points([pts[0], pts[3], pts[8]], [INF, K(0), K(1)])
    return tuple(sorted((g(p) for p in pts), key=point_key))


@functools.lru_cache(maxsize=None)
def cuboctahedron() -> IdealPolyhedron:
    """The right-angled ideal cuboctahedron P2, triangles external."""
    return checkered(hull_faces(cuboctahedron_vertices()), (K(0), K(1), INF))


# ---------------------------------------------------------------- pairings

@dataclass(frozen=True)
class PairingEntry:
    name: str
    isometry: ExtendedMoebius
    source: int
    target: int


@dataclass(frozen=True)
class FacePairing:
    entries: tuple[PairingEntry, ...]

    def by_source(self) -> dict[int, PairingEntry]:
        return {e.source: e for e in self.entries}

    def to_json(self):
        return [{"name": e.name, "source": e.source, "target": e.target,
                 "isometry": e.isometry.to_json()} for e in self.entries]


def _image_face(P: IdealPolyhedron, g: ExtendedMoebius, j: int) -> int | None:
    image = set()
    for z in P.face_points(j):
        w = g(z)
        if not P.has_vertex(w):
            return None
        image.add(P.index(w))
    for k, f in enumerate(P.faces):
        if f.vertex_set == image:
            return k
    return None


def _lands_opposite(P: IdealPolyhedron, g: ExtendedMoebius, target: int) -> bool:
    plane = P.faces[target].plane
    return all(plane.value(g(z)).sign() <= 0 for z in P.vertices)


def face_pairing(P: IdealPolyhedron, gens: Mapping[str, ExtendedMoebius]) -> FacePairing:
    """Match each generator and its inverse to the internal face it pairs."""
    entries = []
    internal = P.internal_faces()
    for name, g in gens.items():
        for label, x in ((name, g), (f"{name}^-1", g.inverse())):
            for j in internal:
                k = _image_face(P, x, j)
                if k is not None and _lands_opposite(P, x, k):
                    entries.append(PairingEntry(label, x, j, k))
                    break
            else:
                raise ValueError(f"{label} pairs no internal face of the polyhedron")
    return FacePairing(tuple(entries))


def verify_internal_face_pairing(P: IdealPolyhedron, FP: FacePairing) -> Report:
    rep = Report("face pairing")
    internal = set(P.internal_faces())
    for e in FP.entries:
        img = _image_face(P, e.isometry, e.source)
        rep.add(f"{e.name}: face {e.source} -> face {e.target}", img == e.target,
                f"image face {img}")
        rep.add(f"{e.name}: image of P opposite face {e.target}",
                _lands_opposite(P, e.isometry, e.target))
        rep.add(f"{e.name}: source and target internal",
                e.source in internal and e.target in internal)
        inv = [f for f in FP.entries
               if f.source == e.target and f.target == e.source and f.isometry == e.isometry.inverse()]
        rep.add(f"{e.name}: inverse present", bool(inv))
    sources = sorted(e.source for e in FP.entries)
    rep.add("each internal face is a source exactly once", sources == sorted(internal),
            f"sources {sources}, internal {sorted(internal)}")
    return rep


# ---------------------------------------------------------------- symmetry and horospheres

@functools.lru_cache(maxsize=None)
def symmetries(P: IdealPolyhedron) -> tuple[ExtendedMoebius, ...]:
    """Orientation-preserving isometries permuting the vertices."""
    base = P.vertices[:3]
    vset = set(P.vertices)
    out = []
    for trip in itertools.permutations(P.vertices, 3):
        g = moebius_from_points(base, trip)
        if all(g(z) in vset for z in P.vertices):
            out.append(g)
    return tuple(out)


def _abs_det(g: ExtendedMoebius) -> RealQuadElement:
    d = g.det()
    root = sqrt_q2(d.abs_squared())
    if root is None:
        raise ValueError(f"|det| of {g} is not in Q(sqrt2)")
    return root


def horosphere_image(g: ExtendedMoebius, horo: HoroData) -> HoroData:
    """g(horo), exact when the relevant moduli lie in Q(sqrt2)."""
    if horo.center is INF:
        to_inf = ExtendedMoebius.identity()
        height = RealQuadElement.coerce(horo.scale)
    else:
        # psi(z) = 1/(z - v) sends the horosphere to height 1/diameter
        to_inf = ExtendedMoebius(0, 1, 1, -horo.center)
        height = RealQuadElement.coerce(horo.scale).inverse()
    G = g @ to_inf.inverse()
    a, b, c, d = G.entries
    if c.is_zero():
        # z -> (a z + b)/d scales heights by |a/d|
        ratio = sqrt_q2((a / d).abs_squared())
        if ratio is None:
            raise ValueError("scaling factor is not in Q(sqrt2)")
        return HoroData(INF, height * ratio)
    diameter = _abs_det(G) / (c.abs_squared() * height)
    return HoroData(G(INF), diameter)


DEFAULT_HEIGHT = RealQuadElement(2)


def symmetric_scale(P: IdealPolyhedron, v: int, height=DEFAULT_HEIGHT) -> HoroData:
    """The height-2 horosphere at infinity carried to v by a symmetry of P."""
    z = P.vertices[v]
    base = HoroData(INF, RealQuadElement.coerce(height))
    if z is INF:
        return base
    for g in symmetries(P):
        if g(INF) == z:
            return horosphere_image(g, base)
    raise ValueError("no symmetry of P carries infinity to this vertex")


@dataclass(frozen=True)
class Side:
    face: int
    label: str
    length: RealQuadElement


@dataclass(frozen=True)
class CrossSection:
    vertex: int
    sides: tuple[Side, ...]

    def lengths(self, label: str) -> set[RealQuadElement]:
        return {s.length for s in self.sides if s.label == label}

    def length_of(self, label: str) -> RealQuadElement:
        vals = self.lengths(label)
        if len(vals) != 1:
            raise ValueError(f"{label} sides have lengths {vals}")
        return next(iter(vals))


def link_cycle(P: IdealPolyhedron, v: int) -> list[tuple[int, int, int]]:
    """Faces around v in order, as (face, neighbor in, neighbor out)."""
    around = {}
    for j in P.faces_at(v):
        cyc = P.faces[j].cycle
        k = cyc.index(v)
        around[j] = (cyc[k - 1], cyc[(k + 1) % len(cyc)])
    start = min(around)
    u_in, u_out = around[start]
    out = [(start, u_in, u_out)]
    cur = start
    while True:
        nxt = [j for j, pair in around.items() if j != cur and u_out in pair]
        if len(nxt) != 1:
            raise ValueError("vertex link is not a polygon")
        cur = nxt[0]
        if cur == start:
            break
        a, b = around[cur]
        u_in, u_out = (a, b) if a == u_out else (b, a)
        out.append((cur, u_in, u_out))
    if len(out) != len(around):
        raise ValueError("vertex link is not a single polygon")
    return out


def horoball_cross_section(P: IdealPolyhedron, v: int, scale: HoroData | None = None) -> CrossSection:
    """Euclidean polygon cut from P by a horosphere at vertex v."""
    z = P.vertices[v]
    if scale is None:
        scale = symmetric_scale(P, v)
    if z is INF:
        psi = ExtendedMoebius.identity()
        height = RealQuadElement.coerce(scale.scale)
    else:
        psi = ExtendedMoebius(0, 1, 1, -z)
        height = RealQuadElement.coerce(scale.scale).inverse()
    sides = []
    for face, u_in, u_out in link_cycle(P, v):
        p, q = psi(P.vertices[u_in]), psi(P.vertices[u_out])
        length = sqrt_q2((p - q).abs_squared() / (height * height))
        if length is None:
            raise ValueError("side length is not in Q(sqrt2)")
        label = P.checkering[face] if P.checkering else "face"
        sides.append(Side(face, label, length))
    return CrossSection(v, tuple(sides))


@dataclass(frozen=True)
class CuspAnnulus:
    core_length: RealQuadElement
    width: RealQuadElement
    cycle: tuple[tuple[int, int], ...]    # (vertex, polyhedron copy)
    label: str = ""

    @property
    def modulus(self) -> RealQuadElement:
        return self.width / self.core_length

    @property
    def rectangles(self) -> int:
        return len(self.cycle)

    def doubled(self) -> "CuspAnnulus":
        """Double across one boundary circle: width doubles, core unchanged."""
        cyc = self.cycle + tuple((v, 1) for v, _ in self.cycle)
        return CuspAnnulus(self.core_length, self.width * 2, cyc, "D" + self.label)

    def to_json(self):
        return {"label": self.label, "rectangles": self.rectangles,
                "core_length": self.core_length.to_json(), "width": self.width.to_json(),
                "modulus": self.modulus.to_json()}


def assemble_cusp_annuli(P: IdealPolyhedron, FP: FacePairing,
                         scale_of=None) -> list[CuspAnnulus]:
    """Glue the vertex rectangles along internal sides into annuli."""
    if scale_of is None:
        def scale_of(v):
            return symmetric_scale(P, v)
    pairing = FP.by_source()
    sections = {v: horoball_cross_section(P, v, scale_of(v)) for v in range(len(P.vertices))}
    seen: set[int] = set()
    annuli = []
    for v0 in range(len(P.vertices)):
        if v0 in seen:
            continue
        internal_at = [s.face for s in sections[v0].sides if s.label == INTERNAL]
        if len(internal_at) != 2:
            raise ValueError(f"vertex {v0} does not see exactly two internal faces")
        start = (v0, internal_at[0])
        state = start
        cycle = []
        core = RealQuadElement(0)
        widths = set()
        while True:
            v, entered = state
            if v in seen and state != start:
                raise ValueError("cusp cycle does not close")
            seen.add(v)
            sec = sections[v]
            cycle.append((v, 0))
            core = core + sec.length_of(EXTERNAL)
            widths.add(sec.length_of(INTERNAL))
            exits = [s.face for s in sec.sides if s.label == INTERNAL and s.face != entered]
            if len(exits) != 1:
                raise ValueError(f"vertex {v}: ambiguous exit face")
            entry = pairing.get(exits[0])
            if entry is None:
                raise ValueError(f"face {exits[0]} is unpaired")
            w = P.index(entry.isometry(P.vertices[v]))
            state = (w, entry.target)
            if state == start:
                break
            if len(cycle) > len(P.vertices):
                raise ValueError("cusp cycle does not close")
        if len(widths) != 1:
            raise ValueError(f"rectangles in one cycle have widths {widths}")
        annuli.append(CuspAnnulus(core, widths.pop(), tuple(cycle)))
    return annuli


def label_annuli(P: IdealPolyhedron, annuli: list[CuspAnnulus],
                 anchors: Mapping[str, BoundaryPoint]) -> dict[str, CuspAnnulus]:
    """Name annuli by an anchor vertex each; at most one may be None (the rest)."""
    out: dict[str, CuspAnnulus] = {}
    left = list(annuli)
    rest_name = None
    for name, z in anchors.items():
        if z is None:
            rest_name = name
            continue
        v = P.index(z)
        hit = [a for a in left if any(u == v for u, _ in a.cycle)]
        if len(hit) != 1:
            raise ValueError(f"anchor for {name} matches {len(hit)} annuli")
        out[name] = CuspAnnulus(hit[0].core_length, hit[0].width, hit[0].cycle, name)
        left.remove(hit[0])
    if rest_name is not None:
        if len(left) != 1:
            raise ValueError("remaining annuli are not a single one")
        a = left[0]
        out[rest_name] = CuspAnnulus(a.core_length, a.width, a.cycle, rest_name)
    return out


def octahedron_pairing() -> FacePairing:
    T = builtin_generators()
    return face_pairing(octahedron(), {"s": T["s"], "t": T["t"]})


def cuboctahedron_pairing() -> FacePairing:
    T = builtin_generators()
    return face_pairing(cuboctahedron(), {"f": T["f"], "g": T["g"], "h": T["h"]})


def octahedron_annuli() -> dict[str, CuspAnnulus]:
    P = octahedron()
    return label_annuli(P, assemble_cusp_annuli(P, octahedron_pairing()),
                        {"A1": K(0), "A2": INF})


B3_ANCHOR = K(1, 0, 0, Fraction(-1, 2))


def cuboctahedron_annuli() -> dict[str, CuspAnnulus]:
    P = cuboctahedron()
    return label_annuli(P, assemble_cusp_annuli(P, cuboctahedron_pairing()),
                        {"B1": K(0), "B2": INF, "B3": B3_ANCHOR, "B4": None})


def broken_octahedron_pairing() -> FacePairing:
    """s used for both pairs: a negative control."""
    P = octahedron()
    good = face_pairing(P, {"s": builtin_generators()["s"]})
    return FacePairing(good.entries + good.entries)


def horosphere_compatibility(P: IdealPolyhedron, FP: FacePairing) -> Report:
    """Each pairing carries the symmetric horosphere at v to the one at its image."""
    rep = Report("horosphere compatibility")
    for e in FP.entries:
        for v in P.faces[e.source].cycle:
            image = horosphere_image(e.isometry, symmetric_scale(P, v))
            w = P.index(image.center)
            rep.add(f"{e.name}: vertex {v} -> {w}",
                    image.scale == symmetric_scale(P, w).scale)
    return rep
