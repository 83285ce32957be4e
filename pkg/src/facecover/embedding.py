"""Rotation systems with edge signatures: graphs cellularly embedded in surfaces.

The kernel type is RotationEmbedding: for every vertex a cyclic order of
incident darts, for every edge a signature in {+1, -1}.  A dart is a pair
(edge id, end) with end in {0, 1}; dart (e, 0) is attached at the first
endpoint of e.  Faces, Euler genus, orientability, duals and radial graphs
are all derived from the action of three involutions s0, s1, s2 on flags
(a graph-encoded map).  Working at the flag level keeps every construction
correct on non-orientable surfaces, where ad hoc face tracing is easy to
get wrong.

Conventions.  A flag is (dart, side) with side in {+1, -1}, so each edge
carries four flags.  With lam the signature of the dart's edge and pi_v the
rotation at its tail:

    s0(d, s) = (rev d, -s * lam)
    s1(d, +1) = (pi_v(d), -1)      s1(d, -1) = (pi_v^{-1}(d), +1)
    s2(d, s) = (d, -s)

Faces are <s0, s1> orbits, vertices are <s1, s2> orbits, edges are
<s0, s2> orbits.  For a connected embedding the Euler genus is
2 + |E| - |V| - |F|; an embedding is orientable iff all signatures can be
made +1 by vertex flips.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from .errors import MalformedInput, PreconditionError

Dart = Tuple[int, int]
Flag = Tuple[Dart, int]
# A side of an edge is (eid, s); it names the flag ((eid, 0), s) and hence
# one of the two face incidences of the edge.
EdgeSide = Tuple[int, int]


def rev(dart: Dart) -> Dart:
    return (dart[0], 1 - dart[1])


@dataclass(frozen=True)
class Face:
    """One face orbit: canonical boundary walk plus its flag set."""

    index: int
    walk: Tuple[Dart, ...]
    flags: frozenset

    @property
    def sides(self) -> frozenset:
        # one (eid, s) per traversal of the edge by this face
        return frozenset((d[0], s) for (d, s) in self.flags if d[1] == 0)

    def __len__(self) -> int:
        return len(self.walk)


class RotationEmbedding:
    """Immutable embedded multigraph; all surgeries return new instances."""

    def __init__(
        self,
        rotations: Mapping[Any, Sequence[Dart]],
        edges: Mapping[int, Tuple[Any, Any, int]],
        roots: Sequence[Any] = (),
    ):
        self.rotations: Dict[Any, Tuple[Dart, ...]] = {
            v: tuple(ds) for v, ds in rotations.items()
        }
        self.edges: Dict[int, Tuple[Any, Any, int]] = {
            int(e): (u, v, int(sig)) for e, (u, v, sig) in edges.items()
        }
        self.roots: Tuple[Any, ...] = tuple(dict.fromkeys(roots))
        self._validate()

    def _validate(self) -> None:
        for e, (u, v, sig) in self.edges.items():
            if sig not in (1, -1):
                raise MalformedInput(f"edge {e}: signature {sig} not in {{+1,-1}}")
            if u not in self.rotations or v not in self.rotations:
                raise MalformedInput(f"edge {e}: endpoint missing from vertex set")
        seen: Dict[Dart, Any] = {}
        for v, rot in self.rotations.items():
            for d in rot:
                if not (isinstance(d, tuple) and len(d) == 2 and d[1] in (0, 1)):
                    raise MalformedInput(f"vertex {v!r}: {d!r} is not a dart")
                if d[0] not in self.edges:
                    raise MalformedInput(f"vertex {v!r}: dart {d!r} has unknown edge")
                if d in seen:
                    raise MalformedInput(f"dart {d!r} appears twice")
                seen[d] = v
                if self.edges[d[0]][d[1]] != v:
                    raise MalformedInput(
                        f"dart {d!r} listed at {v!r} but its tail is "
                        f"{self.edges[d[0]][d[1]]!r}"
                    )
        if len(seen) != 2 * len(self.edges):
            missing = 2 * len(self.edges) - len(seen)
            raise MalformedInput(f"{missing} dart(s) missing from rotations")
        for r in self.roots:
            if r not in self.rotations:
                raise MalformedInput(f"root {r!r} is not a vertex")

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> List[Any]:
        return list(self.rotations)

    @property
    def n_vertices(self) -> int:
        return len(self.rotations)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def rotation(self, v) -> Tuple[Dart, ...]:
        return self.rotations[v]

    def tail(self, d: Dart):
        return self.edges[d[0]][d[1]]

    def head(self, d: Dart):
        return self.edges[d[0]][1 - d[1]]

    def endpoints(self, e: int) -> Tuple[Any, Any]:
        u, v, _ = self.edges[e]
        return u, v

    def signature(self, e: int) -> int:
        return self.edges[e][2]

    def darts(self) -> Iterator[Dart]:
        for e in self.edges:
            yield (e, 0)
            yield (e, 1)

    def degree(self, v) -> int:
        return len(self.rotations[v])

    def neighbors(self, v) -> set:
        return {self.head(d) for d in self.rotations[v]}

    def is_loop(self, e: int) -> bool:
        u, v, _ = self.edges[e]
        return u == v

    @property
    def is_simple(self) -> bool:
        pairs = set()
        for e, (u, v, _) in self.edges.items():
            if u == v:
                return False
            key = frozenset((u, v))
            if key in pairs:
                return False
            pairs.add(key)
        return True

    @staticmethod
    def _canon_rot(rot: Tuple[Dart, ...]) -> Tuple[Dart, ...]:
        if not rot:
            return rot
        i = rot.index(min(rot))
        return rot[i:] + rot[:i]

    def __eq__(self, other) -> bool:
        """Structural equality: same labels, edges, and cyclic rotations."""
        if not isinstance(other, RotationEmbedding):
            return NotImplemented
        if self.edges != other.edges or set(self.roots) != set(other.roots):
            return False
        if self.rotations.keys() != other.rotations.keys():
            return False
        return all(
            self._canon_rot(r) == self._canon_rot(other.rotations[v])
            for v, r in self.rotations.items()
        )

    __hash__ = None  # mutable-free but dict-valued; identity hashing is a trap

    def __repr__(self) -> str:
        return f"RotationEmbedding(V={self.n_vertices}, E={self.n_edges})"

    # -- flag machinery --------------------------------------------------

    @cached_property
    def _rotation_index(self) -> Dict[Dart, Tuple[Any, int]]:
        idx = {}
        for v, rot in self.rotations.items():
            for i, d in enumerate(rot):
                idx[d] = (v, i)
        return idx

    @cached_property
    def flags(self) -> List[Flag]:
        out = []
        for e in sorted(self.edges):
            for end in (0, 1):
                for s in (-1, 1):
                    out.append(((e, end), s))
        return out

    def s0(self, f: Flag) -> Flag:
        d, s = f
        return (rev(d), -s * self.edges[d[0]][2])

    def s1(self, f: Flag) -> Flag:
        d, s = f
        v, i = self._rotation_index[d]
        rot = self.rotations[v]
        k = len(rot)
        if s == 1:
            return (rot[(i + 1) % k], -1)
        return (rot[(i - 1) % k], 1)

    def s2(self, f: Flag) -> Flag:
        d, s = f
        return (d, -s)

    # -- faces -----------------------------------------------------------

    @cached_property
    def faces(self) -> Tuple[Face, ...]:
        seen = set()
        out: List[Face] = []
        for f0 in self.flags:
            if f0 in seen:
                continue
            # phi = s1 . s0 walks the boundary; the full <s0,s1> orbit is
            # the phi-orbit plus its s0-mirror
            walk: List[Dart] = []
            orbit = set()
            g = f0
            while True:
                walk.append(g[0])
                orbit.add(g)
                orbit.add(self.s0(g))
                g = self.s1(self.s0(g))
                if g == f0:
                    break
            out.append(Face(len(out), tuple(walk), frozenset(orbit)))
            seen |= orbit
        return tuple(out)

    @cached_property
    def face_of_flag(self) -> Dict[Flag, int]:
        m = {}
        for face in self.faces:
            for fl in face.flags:
                m[fl] = face.index
        return m

    @cached_property
    def face_of_side(self) -> Dict[EdgeSide, int]:
        fol = self.face_of_flag
        out = {}
        for e in self.edges:
            for s in (1, -1):
                out[(e, s)] = fol[((e, 0), s)]
        return out

    def sides_of_edge(self, e: int) -> Tuple[int, int]:
        """Face indices on the two sides of e (may coincide)."""
        fos = self.face_of_side
        return (fos[(e, 1)], fos[(e, -1)])

    def face_vertices(self, face: Face) -> Tuple[Any, ...]:
        return tuple(self.tail(d) for d in face.walk)

    def face_edge_ids(self, face: Face) -> Tuple[int, ...]:
        return tuple(d[0] for d in face.walk)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    # -- connectivity and genus -------------------------------------------

    @cached_property
    def components(self) -> Tuple[frozenset, ...]:
        seen = set()
        comps = []
        for v0 in self.rotations:
            if v0 in seen:
                continue
            comp = {v0}
            stack = [v0]
            while stack:
                v = stack.pop()
                for d in self.rotations[v]:
                    w = self.head(d)
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return tuple(comps)

    @property
    def is_connected(self) -> bool:
        return len(self.components) <= 1

    @cached_property
    def _component_of_vertex(self) -> Dict[Any, int]:
        out = {}
        for i, comp in enumerate(self.components):
            for v in comp:
                out[v] = i
        return out

    @cached_property
    def genus_by_component(self) -> Tuple[int, ...]:
        nc = len(self.components)
        cov = self._component_of_vertex
        V = [len(c) for c in self.components]
        E = [0] * nc
        F = [0] * nc
        for u, v, _ in self.edges.values():
            E[cov[u]] += 1
        for face in self.faces:
            F[cov[self.tail(face.walk[0])]] += 1
        out = []
        for i in range(nc):
            if E[i] == 0:
                F[i] = 1  # lone vertex on a sphere
            eg = 2 + E[i] - V[i] - F[i]
            if eg < 0:
                raise MalformedInput(f"component {i}: negative Euler genus {eg}")
            out.append(eg)
        return tuple(out)

    @property
    def euler_genus(self) -> int:
        return sum(self.genus_by_component)

    @cached_property
    def orientable(self) -> bool:
        # flip(v) in {+1,-1}; spanning-tree normalization makes tree edges +1,
        # then all remaining effective signatures must be +1
        flip: Dict[Any, int] = {}
        adj: Dict[Any, List[Tuple[Any, int]]] = {v: [] for v in self.rotations}
        loops = []
        for e, (u, v, sig) in self.edges.items():
            if u == v:
                loops.append(e)
            else:
                adj[u].append((v, sig))
                adj[v].append((u, sig))
        for v0 in self.rotations:
            if v0 in flip:
                continue
            flip[v0] = 1
            stack = [v0]
            while stack:
                v = stack.pop()
                for w, sig in adj[v]:
                    if w not in flip:
                        flip[w] = flip[v] * sig
                        stack.append(w)
        for e, (u, v, sig) in self.edges.items():
            if u == v:
                if sig != 1:
                    return False
            elif flip[u] * sig * flip[v] != 1:
                return False
        return True

    def component_embeddings(self) -> List["RotationEmbedding"]:
        out = []
        for comp in self.components:
            rot = {v: self.rotations[v] for v in comp}
            eds = {e: t for e, t in self.edges.items() if t[0] in comp}
            roots = [r for r in self.roots if r in comp]
            out.append(RotationEmbedding(rot, eds, roots))
        return out

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_neighbors(
        cls,
        neighbors_ccw: Mapping[Any, Sequence[Any]],
        signatures: Optional[Mapping[Tuple[Any, Any], int]] = None,
        roots: Sequence[Any] = (),
    ) -> "RotationEmbedding":
        """Build a simple embedded graph from per-vertex ccw neighbor lists.

        Each unordered pair must occur exactly once in each endpoint's list;
        loops and parallel edges are rejected (use the dart constructor for
        those).  signatures maps (u, v) or (v, u) to -1 for reflected edges.
        """
        sig_of = {}
        if signatures:
            for (u, v), s in signatures.items():
                sig_of[frozenset((u, v))] = int(s)
        eid_of: Dict[frozenset, int] = {}
        edges: Dict[int, Tuple[Any, Any, int]] = {}
        rotations: Dict[Any, Tuple[Dart, ...]] = {}
        nxt = 0
        for v, nbrs in neighbors_ccw.items():
            rot: List[Dart] = []
            for u in nbrs:
                if u == v:
                    raise MalformedInput(f"loop at {v!r} not allowed here")
                key = frozenset((u, v))
                if key not in eid_of:
                    eid_of[key] = nxt
                    edges[nxt] = (v, u, sig_of.get(key, 1))
                    nxt += 1
                    rot.append((eid_of[key], 0))
                else:
                    e = eid_of[key]
                    if edges[e][0] == v:
                        raise MalformedInput(f"pair ({u!r},{v!r}) repeated at {v!r}")
                    rot.append((e, 1))
            rotations[v] = tuple(rot)
        return cls(rotations, edges, roots)

    def with_roots(self, roots: Sequence[Any]) -> "RotationEmbedding":
        return RotationEmbedding(self.rotations, self.edges, roots)

    def relabel_vertices(self, mapping: Mapping[Any, Any]) -> "RotationEmbedding":
        if len(set(mapping.values())) != len(mapping):
            raise MalformedInput("relabeling is not injective")
        rot = {mapping[v]: ds for v, ds in self.rotations.items()}
        eds = {e: (mapping[u], mapping[v], s) for e, (u, v, s) in self.edges.items()}
        return RotationEmbedding(rot, eds, [mapping[r] for r in self.roots])

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.rotations)
        g.add_edges_from((u, v) for u, v, _ in self.edges.values() if u != v)
        return g

    def to_multigraph(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.rotations)
        for e, (u, v, _) in self.edges.items():
            g.add_edge(u, v, key=e)
        return g

    # -- local surgeries ---------------------------------------------------

    def flip_vertex(self, v) -> Tuple["RotationEmbedding", Dict[EdgeSide, EdgeSide]]:
        """Reverse the rotation at v and negate incident non-loop signatures.

        Returns the flipped embedding and the induced map on edge sides.
        The flip is a homeomorphism; faces correspond via the side map.
        """
        if v not in self.rotations:
            raise MalformedInput(f"no vertex {v!r}")
        rotations = dict(self.rotations)
        rotations[v] = tuple(reversed(rotations[v]))
        edges = {}
        side_map = {}
        for e, (a, b, s) in self.edges.items():
            if (a == v) != (b == v):
                edges[e] = (a, b, -s)
            else:
                edges[e] = (a, b, s)
            swap = a == v  # sides are named by flags of dart (e, 0), tail a
            for t in (1, -1):
                side_map[(e, t)] = (e, -t if swap else t)
        return RotationEmbedding(rotations, edges, self.roots), side_map

    def contract_edge(
        self, eid: int
    ) -> Tuple["RotationEmbedding", Dict[int, int], Dict[EdgeSide, EdgeSide]]:
        """Contract a non-loop edge; the tail of dart (eid, 0) survives.

        Returns (new embedding, face bijection old index -> new index,
        side map for surviving edges).  Contraction preserves faces.
        """
        u, v, sig = self.edges[eid]
        if u == v:
            raise PreconditionError(f"edge {eid} is a loop; cannot contract")
        base, side_map = (self, None) if sig == 1 else self.flip_vertex(v)
        if side_map is None:
            side_map = {(e, t): (e, t) for e in self.edges for t in (1, -1)}
        rot_u = list(base.rotations[u])
        rot_v = list(base.rotations[v])
        i = rot_u.index((eid, 0))
        j = rot_v.index((eid, 1))
        merged = rot_u[:i] + rot_v[j + 1 :] + rot_v[:j] + rot_u[i + 1 :]
        rotations = {w: r for w, r in base.rotations.items() if w != v}
        rotations[u] = tuple(merged)
        edges = {}
        for e, (a, b, s) in base.edges.items():
            if e == eid:
                continue
            edges[e] = (u if a == v else a, u if b == v else b, s)
        roots = [u if r == v else r for r in self.roots]
        new = RotationEmbedding(rotations, edges, roots)
        side_map = {k: t for k, t in side_map.items() if k[0] != eid}
        face_map: Dict[int, int] = {}
        new_fos = new.face_of_side
        for face in self.faces:
            images = {new_fos[side_map[s]] for s in face.sides if s[0] != eid}
            if not images:
                raise PreconditionError(
                    f"face {face.index} is bounded only by edge {eid}"
                )
            if len(images) != 1:
                raise AssertionError("contraction split a face")
            face_map[face.index] = images.pop()
        if len(set(face_map.values())) != len(new.faces):
            raise AssertionError("contraction did not preserve the face count")
        return new, face_map, side_map

    def delete_edge(self, eid: int) -> "RotationEmbedding":
        """Remove an edge, keeping all vertices.  Faces merge or split."""
        if eid not in self.edges:
            raise MalformedInput(f"no edge {eid}")
        rotations = {
            v: tuple(d for d in rot if d[0] != eid)
            for v, rot in self.rotations.items()
        }
        edges = {e: t for e, t in self.edges.items() if e != eid}
        return RotationEmbedding(rotations, edges, self.roots)

    # -- derived embeddings -------------------------------------------------

    def dual(self) -> "RotationEmbedding":
        """Dual embedding in the same surface: one vertex per face, same edge ids."""
        fol = self.face_of_flag
        return _embedding_from_gem(
            self.flags,
            s0=self.s2,
            s1=self.s1,
            s2=self.s0,
            vertex_label=lambda f: fol[f],
            edge_label=lambda f: f[0][0],
        )

    def radial(self) -> "RotationEmbedding":
        """Vertex-face incidence graph embedded in the same surface.

        Vertices are ('v', v) and ('f', face index); one edge per corner.
        Every face of the radial embedding is a quadrilateral and the Euler
        genus equals that of the host.
        """
        fol = self.face_of_flag
        corners = sorted({min(f, self.s1(f)) for f in self.flags})
        corner_ids = {c: i for i, c in enumerate(corners)}
        flags = [(f, a) for f in self.flags for a in (0, 1)]

        def r0(F):
            f, a = F
            return (f, 1 - a)

        def r1(F):
            f, a = F
            return (self.s2(f), 0) if a == 0 else (self.s0(f), 1)

        def r2(F):
            f, a = F
            return (self.s1(f), a)

        def vlabel(F):
            f, a = F
            if a == 0:
                return ("v", self.tail(f[0]))
            return ("f", fol[f])

        def elabel(F):
            f, _ = F
            return corner_ids[min(f, self.s1(f))]

        return _embedding_from_gem(flags, r0, r1, r2, vlabel, elabel)


def _embedding_from_gem(flags, s0, s1, s2, vertex_label, edge_label) -> RotationEmbedding:
    """Convert a graph-encoded map to a rotation system with signatures.

    flags must be sortable and hashable; s0, s1, s2 are involutions on them
    with s0 s2 = s2 s0 and edge orbits of size 4.  vertex_label must be
    constant on <s1,s2> orbits and distinct across them; edge_label likewise
    for <s0,s2> orbits.  Per-vertex traversal direction is chosen from the
    minimal flag, which fixes the output up to vertex flips.
    """
    flags = sorted(flags)
    dart_of_flag: Dict[Any, Dart] = {}
    edge_min: Dict[int, Any] = {}
    seen = set()
    for f in flags:
        if f in seen:
            continue
        orbit = [f, s0(f), s2(f), s2(s0(f))]
        if len(set(orbit)) != 4:
            raise MalformedInput("degenerate edge orbit in map")
        e = edge_label(f)
        for g in orbit:
            if edge_label(g) != e:
                raise MalformedInput("edge label not constant on orbit")
        e = int(e)
        if e in edge_min:
            raise MalformedInput(f"edge label {e} reused")
        a = min(orbit)
        edge_min[e] = a
        for g in (a, s2(a)):
            dart_of_flag[g] = (e, 0)
        for g in (s0(a), s2(s0(a))):
            dart_of_flag[g] = (e, 1)
        seen |= set(orbit)

    rotations: Dict[Any, Tuple[Dart, ...]] = {}
    side_of: Dict[Any, int] = {}
    vlabel_of: Dict[Any, Any] = {}
    visited = set()
    for f0 in flags:
        if f0 in visited:
            continue
        label = vertex_label(f0)
        if label in rotations:
            raise MalformedInput(f"vertex label {label!r} reused")
        beads: List[Dart] = []
        g = f0
        while True:
            beads.append(dart_of_flag[g])
            side_of[g] = -1
            side_of[s2(g)] = 1
            vlabel_of[g] = label
            vlabel_of[s2(g)] = label
            visited.add(g)
            visited.add(s2(g))
            g = s1(s2(g))
            if g == f0:
                break
            if g in visited:
                raise MalformedInput("vertex orbit traversal collided")
        rotations[label] = tuple(beads)

    edges: Dict[int, Tuple[Any, Any, int]] = {}
    for e, a in edge_min.items():
        b = s0(a)
        lam = -side_of[a] * side_of[b]
        if lam != -side_of[s2(a)] * side_of[s2(b)]:
            raise MalformedInput("inconsistent signature extraction")
        edges[e] = (vlabel_of[a], vlabel_of[b], lam)
    return RotationEmbedding(rotations, edges)


# -- predicates ------------------------------------------------------------


def trace_faces(emb: RotationEmbedding) -> Tuple[Face, ...]:
    return emb.faces


def euler_genus(emb: RotationEmbedding) -> int:
    return emb.euler_genus


def dual(emb: RotationEmbedding) -> RotationEmbedding:
    return emb.dual()


def is_three_connected(emb: RotationEmbedding) -> bool:
    g = emb.to_networkx()
    if g.number_of_nodes() < 4:
        return False
    return nx.node_connectivity(g) >= 3


def polyhedral_violation(emb: RotationEmbedding) -> Optional[str]:
    """None if every face is a cycle of length >= 3 and facial cycles
    pairwise meet in at most one vertex or exactly one edge."""
    vsets = []
    esets = []
    for face in emb.faces:
        verts = emb.face_vertices(face)
        if len(verts) < 3:
            return f"face {face.index} has length {len(verts)}"
        if len(set(verts)) != len(verts):
            return f"face {face.index} is not bounded by a simple cycle"
        vsets.append(frozenset(verts))
        esets.append(frozenset(emb.face_edge_ids(face)))
    nf = len(vsets)
    for i in range(nf):
        for j in range(i + 1, nf):
            shared_v = vsets[i] & vsets[j]
            if len(shared_v) <= 1:
                continue
            shared_e = esets[i] & esets[j]
            if len(shared_e) != 1 or len(shared_v) != 2:
                return (
                    f"faces {i} and {j} share {len(shared_v)} vertices "
                    f"and {len(shared_e)} edges"
                )
            e = next(iter(shared_e))
            if shared_v != set(emb.endpoints(e)):
                return f"faces {i} and {j} share an edge but extra vertices"
    return None


def check_polyhedral(emb: RotationEmbedding) -> bool:
    return polyhedral_violation(emb) is None
