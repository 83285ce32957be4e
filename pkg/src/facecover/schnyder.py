"""Schnyder woods on 3-connected plane graphs, with exact coordinates.

A Schnyder wood for a plane graph with three distinct special vertices
a1, a2, a3 on the outer face is a triple of spanning in-arborescences
T1, T2, T3 (Ti directed toward ai) together with barycentric coordinates
mu mapping vertices into the standard 2-simplex so that mu(ai) = ei and,
for every vertex v != ai, the parallelogram

    Pi_i(mu(v)) = {x : x[i-1] <= mu(v)[i-1] and x[i+1] <= mu(v)[i+1]}

(indices cyclic in {1,2,3}, both bounds closed) contains exactly one
neighbor image, namely that of v's parent in Ti.  Coordinates are exact
rationals: mu_i(v) counts, out of the f - 1 bounded faces, the faces cut
off by the paths from v to a(i-1) and a(i+1) and the far outer arc, so
every coordinate is a multiple of 1/(f - 1) and no float enters any
ordering decision.

Construction peels the graph down to the base arc between a1 and a2.
Each step removes a contiguous run of contour vertices, exposes the
boundary underneath, and colors the removed edges: the leftmost
attachment joins T1, the rightmost joins T2, run edges become bidirected
(T1 toward a1's side, T2 toward a2's side), and each run vertex sends
its T3 arc to the neighbor that was peeled first, the one whose removal
exposed it.  Outer arc edges are bidirected between the two incident
trees from the start.  Peel choices backtrack, leftmost contour position
first, so the output is deterministic; every completed wood is re-checked
against the full axioms before it is returned.  Trees on
non-triangulations may share edges; the three parent maps are
independent.

The dominance order u <=_i v (u = v, or u strictly below v in both
coordinates i-1 and i+1) is what the planar dichotomy consumes: a long
chain in one order yields deeply nested tree paths, and Mirsky's theorem
partitions each order into height-many antichains.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

from .embedding import RotationEmbedding, is_three_connected
from .errors import PreconditionError, WoodError

__all__ = [
    "SchnyderWood",
    "DominancePoset",
    "MirskyDecomposition",
    "AncestorSubtree",
    "compute_schnyder_wood",
    "validate_schnyder_wood",
    "dominance",
    "dominance_poset",
    "mirsky_partition",
    "ancestors_subtree",
]

Coordinate = Tuple[Fraction, Fraction, Fraction]


def _vkey(v) -> Tuple:
    # deterministic order over mixed vertex label types
    return (0, v, "") if isinstance(v, int) else (1, 0, repr(v))


@dataclass(frozen=True, eq=False)
class SchnyderWood:
    """Three in-arborescences plus exact simplex coordinates.

    parent[i-1][v] is the parent of v in T_i; the special vertex a_i is the
    only vertex without a T_i-parent.  coordinates[v] is mu(v) as a triple
    of Fractions with denominator dividing f - 1.
    """

    special_vertices: Tuple[Any, Any, Any]
    parent: Tuple[Dict[Any, Any], Dict[Any, Any], Dict[Any, Any]]
    coordinates: Dict[Any, Coordinate]
    outer_face: int

    def parent_of(self, v, i: int) -> Optional[Any]:
        return self.parent[i - 1].get(v)

    def tree_path(self, v, i: int) -> Tuple[Any, ...]:
        """Vertices from v to the special vertex a_i along T_i."""
        target = self.special_vertices[i - 1]
        path = [v]
        seen = {v}
        while path[-1] != target:
            p = self.parent[i - 1].get(path[-1])
            if p is None or p in seen:
                raise WoodError(f"T_{i} walk from {v!r} does not reach {target!r}")
            path.append(p)
            seen.add(p)
        return tuple(path)

    def tree_arcs(self, i: int) -> Tuple[Tuple[Any, Any], ...]:
        """All (child, parent) arcs of T_i, sorted by child."""
        return tuple(sorted(self.parent[i - 1].items(), key=lambda a: _vkey(a[0])))

    @property
    def vertices(self) -> Tuple[Any, ...]:
        return tuple(self.coordinates)


# -- oriented rotations and the outer walk -----------------------------------


def _oriented_rings(emb: RotationEmbedding) -> Dict[Any, List[Any]]:
    """Per-vertex neighbor cycles under one global orientation.

    A genus-0 embedding is orientable, so vertex flips can make every
    signature +1; flipping reverses the flipped vertex's neighbor cycle.
    """
    flip: Dict[Any, int] = {}
    for v0 in emb.rotations:
        if v0 in flip:
            continue
        flip[v0] = 1
        stack = [v0]
        while stack:
            v = stack.pop()
            for d in emb.rotations[v]:
                w = emb.head(d)
                if w not in flip:
                    flip[w] = flip[v] * emb.signature(d[0])
                    stack.append(w)
    for e, (u, v, s) in emb.edges.items():
        if flip[u] * s * flip[v] != 1:
            raise PreconditionError("embedding is not orientable")
    rings = {}
    for v, rot in emb.rotations.items():
        ring = [emb.head(d) for d in rot]
        rings[v] = ring if flip[v] == 1 else list(reversed(ring))
    return rings


def _trace_face(rings: Dict[Any, List[Any]], start: Tuple[Any, Any]) -> List[Tuple[Any, Any]]:
    # next dart after (u, v): leave v toward the successor of u in v's ring
    walk = [start]
    u, v = start
    while True:
        ring = rings[v]
        w = ring[(ring.index(u) + 1) % len(ring)]
        u, v = v, w
        if (u, v) == start:
            return walk
        walk.append((u, v))


def _outer_walk(
    emb: RotationEmbedding,
    rings: Dict[Any, List[Any]],
    outer_index: int,
    pair_eid: Dict[FrozenSet, int],
) -> List[Tuple[Any, Any]]:
    """The directed boundary walk of the chosen outer face, in ring order."""
    target = sorted(emb.face_edge_ids(emb.faces[outer_index]))
    seen: Set[Tuple[Any, Any]] = set()
    for u in rings:
        for v in rings[u]:
            if (u, v) in seen:
                continue
            walk = _trace_face(rings, (u, v))
            seen.update(walk)
            eids = sorted(pair_eid[frozenset(d)] for d in walk)
            if eids == target:
                return walk
    raise WoodError("outer face not found in the oriented rotation system")


# -- canonical peeling --------------------------------------------------------


class _Peeler:
    """Backtracking search for a canonical path decomposition.

    The contour is the upper boundary path from a1 to a2; peeling a run of
    contour vertices exposes the walk underneath.  A run is admissible when
    its vertices see no contour vertex besides their two contour neighbors,
    the exposed walk repeats no vertex, the remainder stays 2-connected
    once a virtual base edge closes the boundary, every run vertex has a
    neighbor that was peeled earlier (its T3 parent; deferring T3 to the
    peel, instead of guessing at exposure, is what keeps the coloring of
    one peel independent of every later one), and no edge receives a
    second color in one direction or a second parent in one tree.
    Candidates are tried leftmost first; the first peel is {a3}.
    """

    def __init__(self, rings, n_edges, b1, b2, b3, contour):
        self.rings = rings
        self.adj = {v: set(r) for v, r in rings.items()}
        self.n_edges = n_edges
        self.b1 = b1
        self.b1set = set(b1)
        self.a1, self.a2, self.a3 = b1[0], b1[-1], b2[-1]
        self.alive: Set[Any] = set(rings)
        self.order: Dict[Any, int] = {}  # vertex -> peel step
        self.step = 0
        self.contour: List[Any] = list(contour)
        self.contour_set: Set[Any] = set(contour)
        self.parents: Tuple[Dict, Dict, Dict] = ({}, {}, {})
        # base arc edges carry T1 toward a1 and T2 toward a2; the other two
        # arcs carry T3 toward a3 from the start
        for x, y in zip(b1, b1[1:]):
            self.parents[0][y] = x
            self.parents[1][x] = y
        for x, y in zip(b2, b2[1:]):
            self.parents[2][x] = y
        for x, y in zip(b3, b3[1:]):
            self.parents[2][y] = x

    # - helpers -

    def _ring(self, v) -> List[Any]:
        return [w for w in self.rings[v] if w in self.alive]

    def _assign(self, i: int, child, parent, log: List[Tuple[int, Any]]) -> bool:
        ps = self.parents
        if child == parent or child in ps[i]:
            return False
        if ps[i].get(parent) == child:
            return False  # would close a 2-cycle inside one tree
        for j in range(3):
            if j != i and ps[j].get(child) == parent:
                return False  # same direction in two trees is never valid
        ps[i][child] = parent
        log.append((i, child))
        return True

    def _clean(self, i: int, j: int) -> bool:
        # run vertices may touch the contour only at their two neighbors
        cs = self.contour_set
        for k in range(i, j + 1):
            allowed = (self.contour[k - 1], self.contour[k + 1])
            for w in self.adj[self.contour[k]]:
                if w in self.alive and w in cs and w not in allowed:
                    return False
        return True

    def _biconnected(self) -> bool:
        """No articulation vertex once a virtual base edge a1-a2 is added.

        This is the state invariant of the peeling: the boundary stays a
        cycle (through the virtual edge), so every intermediate graph still
        admits further peels.  Pinches at exposed base-arc vertices are
        fine; the virtual edge closes the cycle around them.
        """
        alive = self.alive
        if len(alive) <= 2:
            return True
        virtual = self.a2 not in self.adj[self.a1]

        def nbrs(v):
            out = [w for w in self.adj[v] if w in alive]
            if virtual and v == self.a1:
                out.append(self.a2)
            elif virtual and v == self.a2:
                out.append(self.a1)
            return out

        root = self.a1
        disc = {root: 0}
        low = {root: 0}
        t = 1
        root_children = 0
        stack = [(root, None, iter(nbrs(root)))]
        while stack:
            v, par, it = stack[-1]
            advanced = False
            for w in it:
                if w == par:
                    continue
                if w in disc:
                    if disc[w] < low[v]:
                        low[v] = disc[w]
                else:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, v, iter(nbrs(w))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if par is None:
                    continue
                if low[v] < low[par]:
                    low[par] = low[v]
                if par == root:
                    root_children += 1
                elif low[v] >= disc[par]:
                    return False
        if root_children > 1:
            return False
        return len(disc) == len(alive)

    def _trace_exposed(self, i: int, j: int) -> Optional[List[Any]]:
        """Boundary vertices revealed under contour[i..j], left to right."""
        w_p = self.contour[i - 1]
        w_q = self.contour[j + 1]
        u = self.contour[i - 2] if i >= 2 else self.b1[1]
        v = w_p
        out: List[Any] = []
        local: Set[Any] = set()
        for _ in range(2 * self.n_edges + 2):
            ring = self._ring(v)
            w = ring[(ring.index(u) + 1) % len(ring)]
            u, v = v, w
            if v == w_q:
                return out
            if v in self.contour_set or v in local:
                return None  # pinch: the new contour would repeat a vertex
            local.add(v)
            out.append(v)
        return None

    # - one peel step -

    def _cover_parent(self, v) -> Optional[Any]:
        """The earliest-peeled neighbor of v, v's parent in T3.

        For a vertex exposed by a peel it is adjacent to, this recovers
        that unique run neighbor; a vertex exposed across a larger face
        picks up its T3 parent later, from the first adjacent contour
        vertex that leaves.  Either way the T3 arc rides an edge no
        future peel will claim in the same direction.
        """
        best = None
        for w in self.adj[v]:
            t = self.order.get(w)
            if t is None:
                continue
            key = (t, _vkey(w))
            if best is None or key < best[0]:
                best = (key, w)
        return None if best is None else best[1]

    def _peel_plan(self, i: int, j: int, run: List[Any]) -> Optional[List]:
        """Arcs a peel of contour[i..j] assigns, or None if uncolorable."""
        plan: List[Tuple[int, Any, Any]] = [
            (0, run[0], self.contour[i - 1]),
            (1, run[-1], self.contour[j + 1]),
        ]
        for r in range(len(run) - 1):
            plan.append((0, run[r + 1], run[r]))
            plan.append((1, run[r], run[r + 1]))
        for v in run:
            if v == self.a3 or v in self.parents[2]:
                continue  # the T3 root, and outer arc vertices, are preset
            up = self._cover_parent(v)
            if up is None:
                return None  # no earlier neighbor: both contour edges are taken
            plan.append((2, v, up))
        return plan

    # - search -

    def _candidates(self) -> Iterator[Tuple[int, int]]:
        """Peelable runs, leftmost contour position first.

        Singles are any chord-free interior contour vertex.  Longer runs
        are only the maximal stretches of vertices of alive degree two:
        such a stretch rides a single face and one peel removes it whole.
        Position order keeps each peel near the previous one, which is
        what lets the first branch of the search succeed on ladders and
        long fans instead of backtracking through them.
        """
        if not self.order:
            k = self.contour.index(self.a3)
            yield (k, k)
            return
        L = len(self.contour)
        found: List[Tuple[int, int]] = []
        for k in range(1, L - 1):
            if self.contour[k] not in self.b1set and self._clean(k, k):
                found.append((k, k))
        k = 1
        while k < L - 1:
            z = self.contour[k]
            if z in self.b1set or len(self._ring(z)) != 2:
                k += 1
                continue
            j = k
            while (
                j + 1 < L - 1
                and self.contour[j + 1] not in self.b1set
                and len(self._ring(self.contour[j + 1])) == 2
            ):
                j += 1
            if j > k and self._clean(k, j):
                found.append((k, j))
            k = j + 1
        yield from sorted(found)

    def decompositions(self) -> Iterator[Tuple[Dict, Dict, Dict]]:
        if self.alive == self.b1set:
            inner = sum(len(self._ring(v)) for v in self.alive)
            if self.contour == self.b1 and inner == 2 * (len(self.b1) - 1):
                log: List[Tuple[int, Any]] = []
                ok = True
                for x in self.b1[1:-1]:
                    up = self._cover_parent(x)
                    if up is None or not self._assign(2, x, up, log):
                        ok = False
                        break
                if ok:
                    yield tuple(dict(p) for p in self.parents)
                for t, child in log:
                    del self.parents[t][child]
            return
        for i, j in self._candidates():
            run = self.contour[i : j + 1]
            runset = set(run)
            self.alive -= runset
            exposed = self._trace_exposed(i, j)
            if exposed is None or not self._biconnected():
                self.alive |= runset
                continue
            plan = self._peel_plan(i, j, run)
            if plan is None:
                self.alive |= runset
                continue
            log: List[Tuple[int, Any]] = []
            ok = True
            for t, child, parent in plan:
                if not self._assign(t, child, parent, log):
                    ok = False
                    break
            if not ok:
                for t, child in log:
                    del self.parents[t][child]
                self.alive |= runset
                continue
            for v in run:
                self.order[v] = self.step
            self.step += 1
            old_contour = self.contour
            self.contour = old_contour[:i] + exposed + old_contour[j + 1 :]
            self.contour_set = set(self.contour)
            yield from self.decompositions()
            self.contour = old_contour
            self.contour_set = set(old_contour)
            self.step -= 1
            for v in run:
                del self.order[v]
            for t, child in log:
                del self.parents[t][child]
            self.alive |= runset


# -- coordinates by region face counting --------------------------------------


def _region_coordinates(
    emb: RotationEmbedding,
    outer_index: int,
    specials: Tuple[Any, Any, Any],
    parents: Tuple[Dict, Dict, Dict],
    arcs: Tuple[List[Any], List[Any], List[Any]],
    pair_eid: Dict[FrozenSet, int],
) -> Optional[Dict[Any, Coordinate]]:
    """mu from bounded-face counts of the three path-bounded regions.

    Region i at v is bounded by the T_(i-1)- and T_(i+1)-paths out of v and
    the outer arc joining a(i-1) to a(i+1); its faces are the ones a dual
    flood from the outer face cannot reach across that boundary.  Returns
    None when the three paths out of some vertex are not internally
    disjoint or the regions fail to partition the bounded faces, both signs
    of an invalid wood.
    """
    f_all = emb.n_faces
    if f_all < 2:
        return None
    face_eids = [emb.face_edge_ids(face) for face in emb.faces]
    side = {e: emb.sides_of_edge(e) for e in emb.edges}
    arc_eids = [
        frozenset(pair_eid[frozenset((x, y))] for x, y in zip(arc, arc[1:]))
        for arc in arcs
    ]
    n = emb.n_vertices
    coords: Dict[Any, Coordinate] = {}
    for v in emb.rotations:
        paths = []
        for i in range(3):
            walk = [v]
            while walk[-1] != specials[i]:
                p = parents[i].get(walk[-1])
                if p is None or len(walk) > n:
                    return None
                walk.append(p)
            paths.append(walk)
        inner = [set(p[1:]) for p in paths]
        if (inner[0] & inner[1]) or (inner[0] & inner[2]) or (inner[1] & inner[2]):
            return None
        path_eids = [
            frozenset(pair_eid[frozenset((x, y))] for x, y in zip(p, p[1:]))
            for p in paths
        ]
        counts = []
        for i in range(3):
            blocked = path_eids[(i - 1) % 3] | path_eids[(i + 1) % 3] | arc_eids[(i + 1) % 3]
            reached = {outer_index}
            stack = [outer_index]
            while stack:
                f = stack.pop()
                for e in face_eids[f]:
                    if e in blocked:
                        continue
                    for g in side[e]:
                        if g not in reached:
                            reached.add(g)
                            stack.append(g)
            counts.append(f_all - len(reached))
        if sum(counts) != f_all - 1:
            return None
        coords[v] = tuple(Fraction(c, f_all - 1) for c in counts)
    return coords


# -- construction -------------------------------------------------------------

# distinct complete decompositions to try before giving up; the first one
# passes validation on every instance seen, this only bounds pathologies
_MAX_ATTEMPTS = 64


def compute_schnyder_wood(
    emb: RotationEmbedding, outer_face, a1, a2, a3
) -> SchnyderWood:
    """Build a Schnyder wood for a simple 3-connected plane embedding.

    outer_face is a face index (or Face) of emb; a1, a2, a3 must be
    distinct vertices on its boundary.  The result satisfies all wood
    axioms and is deterministic for a fixed input.
    """
    if not emb.is_connected:
        raise PreconditionError("graph is not connected")
    if not emb.is_simple:
        raise PreconditionError("graph is not simple")
    if emb.euler_genus != 0:
        raise PreconditionError(f"Euler genus {emb.euler_genus}, expected 0")
    if not is_three_connected(emb):
        raise PreconditionError("not 3-connected")
    if isinstance(outer_face, int):
        if not 0 <= outer_face < emb.n_faces:
            raise PreconditionError(f"no face with index {outer_face}")
        outer_index = outer_face
    else:
        outer_index = outer_face.index
    specials = (a1, a2, a3)
    if len(set(specials)) != 3:
        raise PreconditionError("special vertices are not distinct")
    boundary = set(emb.face_vertices(emb.faces[outer_index]))
    for a in specials:
        if a not in boundary:
            raise PreconditionError(
                f"special vertex {a!r} is not on face {outer_index}"
            )

    rings = _oriented_rings(emb)
    pair_eid = {frozenset((u, v)): e for e, (u, v, _) in emb.edges.items()}
    walk = _outer_walk(emb, rings, outer_index, pair_eid)
    cyc = [u for u, _ in walk]
    k = cyc.index(a1)
    cyc = cyc[k:] + cyc[:k]
    if cyc.index(a2) < cyc.index(a3):
        # re-orient so the boundary walk runs a1 -> a3 -> a2 -> base
        rings = {v: list(reversed(r)) for v, r in rings.items()}
        walk = _outer_walk(emb, rings, outer_index, pair_eid)
        cyc = [u for u, _ in walk]
        k = cyc.index(a1)
        cyc = cyc[k:] + cyc[:k]
    p2, p3 = cyc.index(a2), cyc.index(a3)
    b1 = [a1] + list(reversed(cyc[p2:]))  # base arc, a1 .. a2
    b2 = list(reversed(cyc[p3 : p2 + 1]))  # a2 .. a3
    b3 = list(reversed(cyc[: p3 + 1]))  # a3 .. a1
    contour = cyc[: p2 + 1]

    peeler = _Peeler(rings, emb.n_edges, b1, b2, b3, contour)
    failures: List[str] = []
    for attempt, parents in enumerate(peeler.decompositions()):
        if attempt >= _MAX_ATTEMPTS:
            break
        coords = _region_coordinates(
            emb, outer_index, specials, parents, (b1, b2, b3), pair_eid
        )
        if coords is None:
            failures.append("regions do not partition the bounded faces")
            continue
        wood = SchnyderWood(specials, parents, coords, outer_index)
        ok, diags = validate_schnyder_wood(emb, wood)
        if ok:
            return wood
        failures.extend(diags)
    detail = f": {failures[0]}" if failures else ""
    raise WoodError("no canonical decomposition yields a valid wood" + detail)


# -- validation ----------------------------------------------------------------


def validate_schnyder_wood(emb: RotationEmbedding, wood: SchnyderWood):
    """Re-check every wood axiom from scratch; returns (ok, diagnostics).

    Covers: parent maps are arborescences into the three special vertices
    along graph edges, mu(a_i) = e_i, coordinates are non-negative exact
    multiples of 1/(f-1) summing to 1, mu is injective, and each closed
    parallelogram Pi_i(mu(v)) captures exactly one neighbor image, the
    T_i-parent's.
    """
    diags: List[str] = []
    a = wood.special_vertices
    verts = sorted(emb.rotations, key=_vkey)
    if len(set(a)) != 3:
        diags.append("special vertices are not distinct")
    if not 0 <= wood.outer_face < emb.n_faces:
        diags.append(f"outer face index {wood.outer_face} out of range")
    else:
        boundary = set(emb.face_vertices(emb.faces[wood.outer_face]))
        for x in a:
            if x not in boundary:
                diags.append(f"special vertex {x!r} not on the outer face")
    mu = wood.coordinates
    if set(mu) != set(verts):
        diags.append("coordinate map does not cover the vertex set")
        return (False, diags)
    adj = {v: emb.neighbors(v) for v in verts}

    for i in range(3):
        pm = wood.parent[i]
        if a[i] in pm:
            diags.append(f"a{i + 1} has a parent in T{i + 1}")
        reaches: Dict[Any, bool] = {a[i]: True}

        def _reaches(v) -> bool:
            trail = []
            while v not in reaches:
                trail.append(v)
                v = pm.get(v)
                if v is None or v in trail:
                    for w in trail:
                        reaches[w] = False
                    return False
            ok = reaches[v]
            for w in trail:
                reaches[w] = ok
            return ok

        for v in verts:
            if v == a[i]:
                continue
            p = pm.get(v)
            if p is None:
                diags.append(f"{v!r} has no parent in T{i + 1}")
            elif p not in adj[v]:
                diags.append(f"T{i + 1} arc {v!r}->{p!r} is not a graph edge")
            elif not _reaches(v):
                diags.append(f"T{i + 1} walk from {v!r} does not reach a{i + 1}")

    f1 = emb.n_faces - 1
    one = Fraction(1)
    for v in verts:
        c = mu[v]
        if len(c) != 3 or any(x < 0 for x in c) or sum(c) != one:
            diags.append(f"mu({v!r}) is not a point of the simplex")
        elif any((x * f1).denominator != 1 for x in c):
            diags.append(f"mu({v!r}) is not a multiple of 1/{f1}")
    for i in range(3):
        want = tuple(Fraction(1 if k == i else 0) for k in range(3))
        if mu.get(a[i]) != want:
            diags.append(f"mu(a{i + 1}) != e{i + 1}")
    if len(set(mu.values())) != len(verts):
        diags.append("coordinates are not injective")

    for i in range(3):
        lo, hi = (i - 1) % 3, (i + 1) % 3
        for v in verts:
            if v == a[i]:
                continue
            z = mu[v]
            inside = {mu[w] for w in adj[v] if mu[w][lo] <= z[lo] and mu[w][hi] <= z[hi]}
            p = wood.parent[i].get(v)
            if p is None:
                continue
            if inside != {mu[p]}:
                diags.append(
                    f"parallelogram {i + 1} at {v!r} holds {len(inside)} "
                    f"neighbor images instead of the T{i + 1}-parent alone"
                )
    return (not diags, diags)


# -- dominance orders ----------------------------------------------------------


def dominance(u, v, wood: SchnyderWood, i: int) -> str:
    """Compare u and v in the i-th dominance order.

    Returns "equal", "less", "greater", or "incomparable"; u is less than v
    exactly when u is strictly below v in both coordinates i-1 and i+1.
    """
    if i not in (1, 2, 3):
        raise PreconditionError(f"order index {i} not in {{1,2,3}}")
    mu = wood.coordinates
    if u not in mu or v not in mu:
        missing = u if u not in mu else v
        raise PreconditionError(f"{missing!r} has no coordinates")
    if u == v:
        return "equal"
    lo, hi = (i - 2) % 3, i % 3
    cu, cv = mu[u], mu[v]
    if cu[lo] < cv[lo] and cu[hi] < cv[hi]:
        return "less"
    if cv[lo] < cu[lo] and cv[hi] < cu[hi]:
        return "greater"
    return "incomparable"


@dataclass(frozen=True, eq=False)
class DominancePoset:
    """One of the three coordinate orders restricted to a ground set."""

    wood: SchnyderWood
    index: int
    elements: Tuple[Any, ...]

    def le(self, u, v) -> bool:
        return dominance(u, v, self.wood, self.index) in ("equal", "less")

    def lt(self, u, v) -> bool:
        return dominance(u, v, self.wood, self.index) == "less"


def dominance_poset(wood: SchnyderWood, index: int, elements: Iterable[Any]) -> DominancePoset:
    if index not in (1, 2, 3):
        raise PreconditionError(f"order index {index} not in {{1,2,3}}")
    ground = sorted(set(elements), key=_vkey)
    for v in ground:
        if v not in wood.coordinates:
            raise PreconditionError(f"{v!r} has no coordinates")
    return DominancePoset(wood, index, tuple(ground))


@dataclass(frozen=True)
class MirskyDecomposition:
    """Antichain partition of a poset plus one maximum chain as witness.

    The number of antichains equals the length of the chain, which is the
    poset height; no smaller antichain partition can exist.
    """

    antichains: Tuple[FrozenSet[Any], ...]
    chain: Tuple[Any, ...]

    @property
    def height(self) -> int:
        return len(self.antichains)


def mirsky_partition(poset: DominancePoset) -> MirskyDecomposition:
    """Partition a dominance poset into height-many antichains.

    Elements of equal longest-chain height are pairwise incomparable, so
    grouping by height is an antichain partition; tracking one predecessor
    per element recovers a chain of maximal length.
    """
    mu = poset.wood.coordinates
    lo, hi = (poset.index - 2) % 3, poset.index % 3
    elems = sorted(poset.elements, key=lambda v: (mu[v][lo] + mu[v][hi], _vkey(v)))
    height: Dict[Any, int] = {}
    pred: Dict[Any, Optional[Any]] = {}
    for k, v in enumerate(elems):
        height[v] = 1
        pred[v] = None
        for u in elems[:k]:
            if height[u] + 1 > height[v] and poset.lt(u, v):
                height[v] = height[u] + 1
                pred[v] = u
    if not elems:
        return MirskyDecomposition((), ())
    top = max(elems, key=lambda v: (height[v], _vkey(v)))
    chain = [top]
    while pred[chain[-1]] is not None:
        chain.append(pred[chain[-1]])
    h = height[top]
    classes = tuple(
        frozenset(v for v in elems if height[v] == lvl) for lvl in range(1, h + 1)
    )
    return MirskyDecomposition(classes, tuple(reversed(chain)))


# -- ancestor subtrees ---------------------------------------------------------


@dataclass(frozen=True)
class AncestorSubtree:
    """The subtree of one arborescence spanning a set and its ancestors."""

    root: Any
    vertices: FrozenSet[Any]
    arcs: Tuple[Tuple[Any, Any], ...]


def ancestors_subtree(wood: SchnyderWood, i: int, S: Iterable[Any]) -> AncestorSubtree:
    """Restrict T_i to the vertices of S and all their T_i-ancestors."""
    if i not in (1, 2, 3):
        raise PreconditionError(f"order index {i} not in {{1,2,3}}")
    seeds = sorted(set(S), key=_vkey)
    if not seeds:
        raise PreconditionError("empty vertex set")
    root = wood.special_vertices[i - 1]
    pm = wood.parent[i - 1]
    verts: Set[Any] = set()
    for s in seeds:
        if s not in wood.coordinates:
            raise PreconditionError(f"{s!r} has no coordinates")
        v = s
        while v not in verts:
            verts.add(v)
            if v == root:
                break
            v = pm[v]
    arcs = tuple(
        sorted(((v, pm[v]) for v in verts if v != root), key=lambda a: _vkey(a[0]))
    )
    return AncestorSubtree(root, frozenset(verts), arcs)
