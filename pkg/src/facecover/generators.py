"""Constructors for the graph families used by the tests, scripts, and CLI.

Every constructor returns an integer-labeled RotationEmbedding ready for
serialization.  Families built from structured internal names (vane
coordinates, lattice points) are relabeled through the sorted order of
those names, so repeated runs produce identical files.

projective_diamond_grid additionally returns an optional K4Hint: for even
r >= 16 it locates a K4-subdivision whose three faces carve the projective
plane into disk regions, and emits those face cycles together with a
protective cycle around the one-ring neighborhood of each region.
"""

from __future__ import annotations

import math
import random
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .embedding import Dart, RotationEmbedding
from .errors import PreconditionError
from .formats import K4Hint
from .regions import extract_region

__all__ = [
    "windmill",
    "strong_product",
    "bagel",
    "diamond_grid",
    "projective_diamond_grid",
    "torus_grid",
    "quad_torus",
    "klein_grid",
    "wheel",
    "icosahedron",
    "random_triangulation",
    "stacked_chain",
]


def _int_relabel(emb: RotationEmbedding) -> Tuple[RotationEmbedding, Dict[Any, int]]:
    mapping = {v: k for k, v in enumerate(sorted(emb.rotations))}
    return emb.relabel_vertices(mapping), mapping


# -- windmill ---------------------------------------------------------------


def windmill(t: int) -> RotationEmbedding:
    """Plane rooted graph with pq pairwise face-independent roots.

    A hub z sits inside a cycle u_1 v_1 u_2 v_2 ... u_p v_p (p = t/2) and is
    joined to all of it.  Outside the cycle, vane i consists of three paths
    a, b, c of 2q vertices each (q = floor(t/5)), with a_{i,1} = u_i,
    b_{i,1} = v_i, c_{i,1} = u_{i+1}, ladder rungs a_j b_j and b_j c_j for
    j >= 2, and a tip edge a_{2q} c_{2q}.  The roots are the b_{i,j} with j
    odd; consecutive roots on a vane are separated by a rung, so no face
    contains two of them.
    """
    if not isinstance(t, int) or t < 6 or t % 2:
        raise PreconditionError("windmill parameter must be an even integer >= 6")
    p, q = t // 2, t // 5
    m = 2 * q
    hub = ("z", 0)

    def u(i: int) -> Tuple[str, int]:
        return ("u", (i - 1) % p + 1)

    def v(i: int) -> Tuple[str, int]:
        return ("v", (i - 1) % p + 1)

    def a(i: int, j: int):
        return u(i) if j == 1 else ("a", i, j)

    def b(i: int, j: int):
        return v(i) if j == 1 else ("b", i, j)

    def c(i: int, j: int):
        return u(i + 1) if j == 1 else ("c", i, j)

    nbrs: Dict[Any, List[Any]] = {hub: []}
    for i in range(1, p + 1):
        nbrs[hub] += [u(i), v(i)]
    for i in range(1, p + 1):
        nbrs[u(i)] = [hub, v(i - 1), c(i - 1 if i > 1 else p, 2), a(i, 2), v(i)]
        nbrs[v(i)] = [hub, u(i), b(i, 2), u(i + 1)]
        for j in range(2, m):
            nbrs[a(i, j)] = [a(i, j + 1), b(i, j), a(i, j - 1)]
            nbrs[b(i, j)] = [b(i, j + 1), c(i, j), b(i, j - 1), a(i, j)]
            nbrs[c(i, j)] = [c(i, j + 1), c(i, j - 1), b(i, j)]
        nbrs[a(i, m)] = [c(i, m), b(i, m), a(i, m - 1)]
        nbrs[b(i, m)] = [c(i, m), b(i, m - 1), a(i, m)]
        nbrs[c(i, m)] = [a(i, m), c(i, m - 1), b(i, m)]
    roots = [b(i, j) for i in range(1, p + 1) for j in range(1, m, 2)]
    emb = RotationEmbedding.from_neighbors(nbrs, roots=roots)
    return _int_relabel(emb)[0]


# -- strong products and the bagel -------------------------------------------


def strong_product(g: nx.Graph, h: nx.Graph) -> nx.Graph:
    """Abstract strong product; vertices are pairs, edges allow both
    coordinates to move along an edge or stay put (not both staying)."""
    return nx.strong_product(g, h)


def bagel(n: int) -> RotationEmbedding:
    """K2 x C_{n/2} (strong) with a canonical torus rotation; all vertices
    rooted.  Two concentric n/2-cycles v and w, plus rungs v_i w_i and both
    diagonals v_i w_{i+1}, w_i v_{i+1}."""
    if not isinstance(n, int) or n < 6 or n % 2:
        raise PreconditionError("bagel parameter must be an even integer >= 6")
    p = n // 2

    def va(i: int) -> Tuple[str, int]:
        return ("v", i % p)

    def wa(i: int) -> Tuple[str, int]:
        return ("w", i % p)

    nbrs: Dict[Any, List[Any]] = {}
    for i in range(p):
        nbrs[va(i)] = [va(i + 1), wa(i + 1), wa(i), va(i - 1), wa(i - 1)]
        nbrs[wa(i)] = [wa(i + 1), va(i + 1), wa(i - 1), va(i - 1), va(i)]
    emb = RotationEmbedding.from_neighbors(nbrs, roots=sorted(nbrs))
    return _int_relabel(emb)[0]


# -- diamond grids ------------------------------------------------------------


def _diamond_points(r: int) -> List[Tuple[int, int]]:
    pts = []
    for i in range(-r, r + 1):
        if (i + r) % 2 == 1:
            span = r - abs(i)
            for j in range(-span, span + 1):
                if j % 2 != 0:
                    pts.append((i, j))
    return pts


def diamond_grid(r: int) -> RotationEmbedding:
    """Plane grid on the lattice points with |i| + |j| <= r, i + r and j odd,
    with edges between points at axis distance 2."""
    if not isinstance(r, int) or r < 3:
        raise PreconditionError("diamond grid needs r >= 3")
    pts = set(_diamond_points(r))
    nbrs = {}
    for point in sorted(pts):
        i, j = point
        cand = [(i + 2, j), (i, j + 2), (i - 2, j), (i, j - 2)]
        nbrs[point] = [q for q in cand if q in pts]
    return _int_relabel(RotationEmbedding.from_neighbors(nbrs))[0]


def _pdg_rep(point: Tuple[int, int], r: int) -> Tuple[int, int]:
    i, j = point
    if abs(i) + abs(j) == r and j < 0:
        return (-i, -j)
    return point


_STEP_ANGLE = {(2, 0): 0.0, (0, 2): 90.0, (-2, 0): 180.0, (0, -2): 270.0}


def projective_diamond_grid(
    r: int,
) -> Tuple[RotationEmbedding, Optional[K4Hint]]:
    """Diamond grid with antipodal rim points identified, embedded in the
    projective plane.

    Each rim class keeps the rim copy with j > 0 as its representative.  A
    merged rotation lists the representative's darts by angle measured
    counterclockwise from the outward ray, then the antipode's darts by the
    same measure clockwise; an edge gets signature -1 when exactly one of
    its ends attaches at a discarded (negated) copy.  Rim corner pairs give
    parallel edges, so the embedding is assembled dart by dart.
    """
    if not isinstance(r, int) or r < 3:
        raise PreconditionError("projective diamond grid needs r >= 3")
    pts = set(_diamond_points(r))
    dedges: List[Tuple[Tuple[int, int], Tuple[int, int]]] = []
    for point in sorted(pts):
        i, j = point
        for q in ((i + 2, j), (i, j + 2)):
            if q in pts:
                dedges.append((point, q))

    edges: Dict[int, Tuple[Any, Any, int]] = {}
    attach: Dict[Tuple[int, int], List[Tuple[Dart, float]]] = {p: [] for p in pts}
    for eid, (p, q) in enumerate(dedges):
        sig = 1
        for end in (p, q):
            if _pdg_rep(end, r) != end:
                sig = -sig
        edges[eid] = (_pdg_rep(p, r), _pdg_rep(q, r), sig)
        attach[p].append(((eid, 0), _STEP_ANGLE[(q[0] - p[0], q[1] - p[1])]))
        attach[q].append(((eid, 1), _STEP_ANGLE[(p[0] - q[0], p[1] - q[1])]))

    def outward(point: Tuple[int, int]) -> float:
        return math.degrees(math.atan2(point[1], point[0])) % 360.0

    rotations: Dict[Any, Tuple[Dart, ...]] = {}
    for point in sorted(pts):
        if _pdg_rep(point, r) != point:
            continue
        if abs(point[0]) + abs(point[1]) < r:
            rotations[point] = tuple(
                d for d, _ in sorted(attach[point], key=lambda item: item[1])
            )
            continue
        anti = (-point[0], -point[1])
        own = sorted(attach[point], key=lambda item: (item[1] - outward(point)) % 360.0)
        mirror = sorted(
            attach[anti], key=lambda item: -((item[1] - outward(anti)) % 360.0)
        )
        rotations[point] = tuple(d for d, _ in own + mirror)

    emb = RotationEmbedding(rotations, edges)
    relabeled, mapping = _int_relabel(emb)
    hint = None
    if r >= 16 and r % 2 == 0:
        hint = _pdg_hint(emb, r, dedges, mapping)
    return relabeled, hint


def _keep_edges(emb: RotationEmbedding, keep: Set[int]) -> RotationEmbedding:
    rot = {}
    for v, ds in emb.rotations.items():
        kept = tuple(d for d in ds if d[0] in keep)
        if kept:
            rot[v] = kept
    return RotationEmbedding(rot, {e: emb.edges[e] for e in keep})


def _pdg_hint(
    emb: RotationEmbedding,
    r: int,
    dedges: List[Tuple[Tuple[int, int], Tuple[int, int]]],
    mapping: Dict[Any, int],
) -> K4Hint:
    """Hint cycles for the cross of rows j = +-5 and columns i = +-5.

    The union of those rows and columns maps onto a K4-subdivision (the two
    rows close up through the rim identification); its three faces bound
    disk regions of the host.  The inner hint cycles are those face walks,
    the outer ones the boundaries of the regions grown by one ring of
    faces.
    """

    def in_cross(i: int, j: int) -> bool:
        return (abs(j) == 5 and abs(i) <= r - 5) or (abs(i) == 5 and abs(j) <= 5)

    sprime = set()
    for eid, (p, q) in enumerate(dedges):
        if in_cross(*p) and in_cross(*q):
            sprime.add(eid)
    sub = _keep_edges(emb, sprime)
    if sub.euler_genus != 1 or sub.n_faces != 3:
        raise AssertionError("cross subgraph is not a 3-face projective K4")

    inner_cycles: List[Tuple[int, ...]] = []
    sub_face_edges: List[FrozenSet[int]] = []
    for f in sub.faces:
        vs = sub.face_vertices(f)
        if len(set(vs)) != len(vs):
            raise AssertionError("cross face walk is not a simple cycle")
        k = vs.index(min(vs))
        inner_cycles.append(tuple(mapping[x] for x in vs[k:] + vs[:k]))
        sub_face_edges.append(frozenset(sub.face_edge_ids(f)))

    # Group host faces by flooding across non-cross edges.
    fos = emb.face_of_side
    parent = list(range(emb.n_faces))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in emb.edges:
        if e not in sprime:
            ra, rb = find(fos[(e, 1)]), find(fos[(e, -1)])
            parent[ra] = rb
    groups: Dict[int, Set[int]] = {}
    for f in range(emb.n_faces):
        groups.setdefault(find(f), set()).add(f)
    if len(groups) != 3:
        raise AssertionError("cross does not cut the surface into 3 regions")

    outer_cycles: List[Optional[Tuple[int, ...]]] = [None, None, None]
    for gset in groups.values():
        bound = frozenset(
            e for e in sprime if fos[(e, 1)] in gset or fos[(e, -1)] in gset
        )
        idx = sub_face_edges.index(bound)
        touched = set()
        for f in gset:
            touched.update(emb.face_vertices(emb.faces[f]))
        grown = [
            f.index
            for f in emb.faces
            if touched & set(emb.face_vertices(f))
        ]
        piece = extract_region(emb, grown)
        if len(piece.cap_faces) != 1:
            raise AssertionError("grown region boundary is not one cycle")
        walk = piece.embedding.faces[piece.cap_faces[0]].walk
        vs = tuple(emb.edges[d[0]][d[1]] for d in walk)
        k = vs.index(min(vs))
        outer_cycles[idx] = tuple(mapping[x] for x in vs[k:] + vs[:k])
    return K4Hint(inner=tuple(inner_cycles), outer=tuple(outer_cycles))


# -- tori and Klein bottles ---------------------------------------------------


def torus_grid(m: int) -> RotationEmbedding:
    """Triangulated m x m torus: square grid with wraparound plus one
    diagonal per square, 6-regular."""
    if not isinstance(m, int) or m < 3:
        raise PreconditionError("torus grid needs m >= 3")

    def at(i: int, j: int) -> Tuple[int, int]:
        return (i % m, j % m)

    nbrs = {}
    for i in range(m):
        for j in range(m):
            nbrs[(i, j)] = [
                at(i + 1, j),
                at(i + 1, j + 1),
                at(i, j + 1),
                at(i - 1, j),
                at(i - 1, j - 1),
                at(i, j - 1),
            ]
    return _int_relabel(RotationEmbedding.from_neighbors(nbrs))[0]


def quad_torus(m: int) -> RotationEmbedding:
    """Quadrangulated m x m torus (no diagonals)."""
    if not isinstance(m, int) or m < 3:
        raise PreconditionError("torus grid needs m >= 3")

    def at(i: int, j: int) -> Tuple[int, int]:
        return (i % m, j % m)

    nbrs = {}
    for i in range(m):
        for j in range(m):
            nbrs[(i, j)] = [at(i + 1, j), at(i, j + 1), at(i - 1, j), at(i, j - 1)]
    return _int_relabel(RotationEmbedding.from_neighbors(nbrs))[0]


def klein_grid(m: int, h: Optional[int] = None) -> RotationEmbedding:
    """Quadrangulated Klein bottle: an m x h grid whose rows wrap normally
    and whose top row glues to the bottom with a reflection."""
    h = m if h is None else h
    if not isinstance(m, int) or not isinstance(h, int) or m < 3 or h < 3:
        raise PreconditionError("klein grid needs m >= 3 and h >= 3")
    nbrs = {}
    sigs = {}
    for i in range(m):
        for j in range(h):
            north = (i, j + 1) if j < h - 1 else ((m - i) % m, 0)
            south = (i, j - 1) if j > 0 else ((m - i) % m, h - 1)
            nbrs[(i, j)] = [((i + 1) % m, j), north, ((i - 1) % m, j), south]
        sigs[((i, h - 1), ((m - i) % m, 0))] = -1
    return _int_relabel(RotationEmbedding.from_neighbors(nbrs, signatures=sigs))[0]


# -- planar corpus instances --------------------------------------------------


def wheel(n: int) -> RotationEmbedding:
    """Hub 0 joined to an n-cycle 1..n."""
    if not isinstance(n, int) or n < 4:
        raise PreconditionError("wheel needs a rim of length >= 4")
    nbrs: Dict[Any, List[Any]] = {0: list(range(1, n + 1))}
    for k in range(1, n + 1):
        nbrs[k] = [k % n + 1, 0, (k - 2) % n + 1]
    return RotationEmbedding.from_neighbors(nbrs)


def icosahedron() -> RotationEmbedding:
    g = nx.icosahedral_graph()
    _, planar = nx.check_planarity(g)
    data = planar.get_data()
    return RotationEmbedding.from_neighbors({v: data[v] for v in sorted(g)})


class _TriBuilder:
    """Planar triangulation under construction, as ccw neighbor lists.

    Starts from K4 and grows by stacking a vertex into a face; edges of
    quadrilaterals (pairs of adjacent faces) can be flipped.  Both
    operations keep the neighbor lists exactly consistent with a plane
    embedding, so the final graph needs no re-embedding step.
    """

    def __init__(self) -> None:
        self.nbrs: Dict[int, List[int]] = {
            0: [1, 2, 3],
            1: [2, 0, 3],
            2: [0, 1, 3],
            3: [0, 2, 1],
        }
        self.faces: Set[FrozenSet[int]] = {
            frozenset(f) for f in ((0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2))
        }
        self.n = 4

    def _insert_between(self, v: int, x: int, a: int, b: int) -> Tuple[int, int]:
        # a and b are cyclically consecutive at v; x lands between them
        lst = self.nbrs[v]
        k = len(lst)
        for idx in range(k):
            nxt = lst[(idx + 1) % k]
            if lst[idx] == a and nxt == b:
                lst.insert(idx + 1, x)
                return a, b
            if lst[idx] == b and nxt == a:
                lst.insert(idx + 1, x)
                return b, a
        raise AssertionError(f"{a} and {b} not consecutive at {v}")

    def stack(self, face: FrozenSet[int]) -> int:
        if face not in self.faces:
            raise AssertionError(f"{sorted(face)} is not a face")
        x = self.n
        self.n += 1
        succ: Dict[int, int] = {}
        for v in sorted(face):
            pa, pb = sorted(face - {v})
            _, after = self._insert_between(v, x, pa, pb)
            succ[v] = after
        start = min(face)
        cyc = [start, succ[start], succ[succ[start]]]
        # new vertex's ccw order is the reverse of the corner successor cycle
        self.nbrs[x] = [cyc[0], cyc[2], cyc[1]]
        self.faces.remove(face)
        for v in face:
            self.faces.add(frozenset({x} | (face - {v})))
        return x

    def flip(self, u: int, w: int) -> bool:
        if len(self.nbrs[u]) <= 3 or len(self.nbrs[w]) <= 3:
            return False
        pair = [f for f in self.faces if u in f and w in f]
        if len(pair) != 2:
            raise AssertionError(f"edge {u}-{w} is not on exactly 2 faces")
        c = next(iter(pair[0] - {u, w}))
        d = next(iter(pair[1] - {u, w}))
        if c == d or d in self.nbrs[c]:
            return False
        self._insert_between(c, d, u, w)
        self._insert_between(d, c, u, w)
        self.nbrs[u].remove(w)
        self.nbrs[w].remove(u)
        self.faces.remove(pair[0])
        self.faces.remove(pair[1])
        self.faces.add(frozenset((c, d, u)))
        self.faces.add(frozenset((c, d, w)))
        return True

    def embedding(self, roots: Sequence[int] = ()) -> RotationEmbedding:
        emb = RotationEmbedding.from_neighbors(
            {v: self.nbrs[v] for v in range(self.n)}, roots=roots
        )
        if emb.euler_genus != 0:
            raise AssertionError("triangulation builder left the sphere")
        if any(len(f) != 3 for f in emb.faces):
            raise AssertionError("triangulation builder left a non-triangle")
        return emb


def random_triangulation(
    n: int, seed: int = 0, n_roots: Optional[int] = None
) -> RotationEmbedding:
    """Seeded random planar triangulation: random stacking to n vertices,
    then random diagonal flips.  Simple maximal planar on n >= 4 vertices,
    hence 3-connected."""
    if not isinstance(n, int) or n < 4:
        raise PreconditionError("triangulations need n >= 4 vertices")
    rng = random.Random(seed)
    tb = _TriBuilder()
    while tb.n < n:
        tb.stack(rng.choice(sorted(tb.faces, key=sorted)))
    for _ in range(3 * n):
        u = rng.randrange(tb.n)
        w = rng.choice(tb.nbrs[u])
        tb.flip(u, w)
    roots: Sequence[int] = ()
    if n_roots is not None:
        if not 0 <= n_roots <= n:
            raise PreconditionError("root count must lie in [0, n]")
        roots = sorted(rng.sample(range(n), n_roots))
    return tb.embedding(roots)


def stacked_chain(levels: int, stride: int = 2) -> RotationEmbedding:
    """Triangulation of nested stacked triangles sharing the edge 1-2, with
    every stride-th stacked vertex rooted.

    Root k+1 sits inside a triangle on root k's far side, so distinct roots
    share no face; the nesting lines the roots up along a long chain of
    containments."""
    if not isinstance(levels, int) or levels < 1 or stride < 2:
        raise PreconditionError("stacked chain needs levels >= 1 and stride >= 2")
    tb = _TriBuilder()
    prev = 3
    roots = []
    for k in range(levels):
        prev = tb.stack(frozenset((prev, 1, 2)))
        if k % stride == stride - 1:
            roots.append(prev)
    return tb.embedding(roots)
