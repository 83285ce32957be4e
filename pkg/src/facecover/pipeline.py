"""Positive-genus cover-or-minor pipeline.

The cut graph of a planarization is a sphere whose cuff faces stand in
for the boundary.  Around every cuff a nest of disjoint cycles is grown,
each bounding a disk containing the previous one; the union of all nest
cycles carves the sphere into zones whose adjacency forms a tree with one
leaf per cuff.  Balls around the leaves and the components of their
complement yield a bounded list of tree classes, each realized as a pair
of host regions (a piece and a one-ring enlargement).  Capping the outer
region and contracting every component outside the inner closure gives a
3-connected minor that agrees with the host on the piece, so a face cover
of the minor lifts to the host face by face, and a rooted minor of the
minor expands to a rooted minor of the host.  Pieces around one-sided
cuffs are projective planes with boundary; those are covered again by
three nested disk pairs read off a K4-subdivision before the planar
dichotomy runs.

Every stage revalidates its output (disk classification, nested pairs,
3-connectivity, per-face incidence agreement, lifted certificates), so a
run that returns at all returns a checked object.  When face-width or
nest depth is too small for the construction the driver degrades to an
exhaustive cover and says so in its report.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .cover import EXACT_COVER_LIMIT, min_face_cover, verify_cover
from .dichotomy import FaceCover, plane_dichotomy
from .embedding import RotationEmbedding, is_three_connected, polyhedral_violation
from .errors import (
    MalformedInput,
    NestError,
    PreconditionError,
    RegionError,
)
from .formats import K4Hint
from .minors import RootedK2tModel, _vkey, verify_model
from .planarize import Planarization, planarize
from .regions import (
    Region,
    classify_region,
    extract_region,
    is_nested_pair,
    region_from_faces,
)
from .surgery import Cycle, darts_of_vertex_cycle
from .width import face_width

__all__ = [
    "Nest",
    "NestSystem",
    "find_nests",
    "NestTree",
    "build_nest_tree",
    "region_of",
    "CoverPiece",
    "partition_cover_pieces",
    "ContractedMinor",
    "contract_outside",
    "projective_cover",
    "lift_cover",
    "FallbackReport",
    "PipelineReport",
    "genus_face_cover",
    "NEST_DEPTH_REQUEST",
]

# depth 3*16 + 1 backs the projective-piece face-width requirement; any
# achieved depth >= 3 still yields verified covers, with a degraded bound
NEST_DEPTH_REQUEST = 49


def _closure_vertices(emb: RotationEmbedding, faces: Iterable[int]) -> Set[Any]:
    out: Set[Any] = set()
    for f in faces:
        out.update(emb.face_vertices(emb.faces[f]))
    return out


def _faces_at(emb: RotationEmbedding) -> Dict[Any, Set[int]]:
    at: Dict[Any, Set[int]] = {v: set() for v in emb.rotations}
    for f in emb.faces:
        for v in emb.face_vertices(f):
            at[v].add(f.index)
    return at


# -- nests ---------------------------------------------------------------------


@dataclass(frozen=True)
class Nest:
    """Cycles D_0..D_d around one cuff and the disks they bound.

    cycles[j] bounds disks[j] in the cut graph, whose cuff faces are
    ordinary faces (the cut graph is its own capped sphere); cycles[0] is
    the cuff walk and disks[0] the cuff face alone.
    """

    cuff_index: int
    cycles: Tuple[Cycle, ...]
    disks: Tuple[FrozenSet[int], ...]

    @property
    def achieved(self) -> int:
        return len(self.cycles) - 1


@dataclass
class NestSystem:
    planarization: Planarization
    nests: Tuple[Nest, ...]
    requested: int
    diagnostics: Tuple[str, ...]

    @property
    def depth(self) -> int:
        return min(n.achieved for n in self.nests)

    def truncate(self, depth: int) -> "NestSystem":
        """Uniform-depth copy; every nest keeps its first depth+1 rings."""
        if depth < 0 or depth > self.depth:
            raise PreconditionError(f"cannot truncate to depth {depth}")
        nests = tuple(
            Nest(n.cuff_index, n.cycles[: depth + 1], n.disks[: depth + 1])
            for n in self.nests
        )
        return NestSystem(self.planarization, nests, self.requested, self.diagnostics)


def find_nests(plan: Planarization, depth_request: int) -> NestSystem:
    """Grow disjoint nests of cycles around every cuff of the cut graph.

    Each round extends every still-active nest by one ring: the next disk
    is the union of the closed faces meeting the current disk's closure,
    accepted only while it stays a disk and its closure stays disjoint
    from every other nest's current closure.  Disjoint closures are
    stricter than the mutual-outside condition they guarantee: each top
    cycle ends up outright outside every other nest's disk.  Achieved
    depth below the request is reported through diagnostics, not fatal;
    an immediate collision leaves that nest at depth 0.
    """
    if not isinstance(depth_request, int) or depth_request < 1:
        raise PreconditionError("depth request must be a positive integer")
    gp = plan.cut_graph
    if gp.euler_genus != 0 or not gp.is_connected:
        raise PreconditionError("cut graph is not a sphere with boundary")
    at = _faces_at(gp)
    k = len(plan.cuffs)
    disks: List[List[FrozenSet[int]]] = []
    cycles: List[List[Cycle]] = []
    closures: List[Set[Any]] = []
    active = [True] * k
    diags: List[str] = []
    for c in plan.cuffs:
        base = frozenset((c.face,))
        reg = region_from_faces(gp, base)
        if (reg.euler_genus, reg.orientable, reg.cuff_count) != (0, True, 1):
            raise PreconditionError(f"cuff face {c.face} is not a disk")
        disks.append([base])
        cycles.append([c.walk])
        closures.append(_closure_vertices(gp, base))

    while True:
        grew = False
        for i in range(k):
            if not active[i] or len(cycles[i]) - 1 >= depth_request:
                continue
            depth = len(cycles[i]) - 1
            cand = set(disks[i][-1])
            for v in closures[i]:
                cand |= at[v]
            fcand = frozenset(cand)
            if fcand == disks[i][-1]:
                active[i] = False
                diags.append(f"nest {i} saturated at depth {depth}")
                continue
            try:
                reg = region_from_faces(gp, fcand)
            except RegionError as exc:
                active[i] = False
                diags.append(f"nest {i} stopped at depth {depth}: {exc}")
                continue
            if (reg.euler_genus, reg.orientable, reg.cuff_count) != (0, True, 1):
                active[i] = False
                diags.append(
                    f"nest {i} stopped at depth {depth}: grown region is not "
                    f"a disk"
                )
                continue
            clo = _closure_vertices(gp, fcand)
            hit = [j for j in range(k) if j != i and clo & closures[j]]
            if hit:
                active[i] = False
                diags.append(
                    f"nest {i} stopped at depth {depth}: collision with "
                    f"nest{'s' if len(hit) > 1 else ''} {hit}"
                )
                continue
            disks[i].append(fcand)
            cycles[i].append(reg.boundary[0])
            closures[i] = clo
            grew = True
        if not grew:
            break

    nests = tuple(
        Nest(i, tuple(cycles[i]), tuple(disks[i])) for i in range(k)
    )
    _validate_nests(gp, nests)
    return NestSystem(
        planarization=plan,
        nests=nests,
        requested=depth_request,
        diagnostics=tuple(diags),
    )


def _validate_nests(gp: RotationEmbedding, nests: Sequence[Nest]) -> None:
    vsets = []
    for n in nests:
        for j in range(len(n.disks) - 1):
            if not n.disks[j] < n.disks[j + 1]:
                raise AssertionError("nest disks are not strictly nested")
        for cyc in n.cycles:
            vsets.append({gp.tail(d) for d in cyc})
    for a in range(len(vsets)):
        for b in range(a + 1, len(vsets)):
            if vsets[a] & vsets[b]:
                raise AssertionError("nest cycles are not pairwise disjoint")
    for a in range(len(nests)):
        for b in range(a + 1, len(nests)):
            ca = _closure_vertices(gp, nests[a].disks[-1])
            cb = _closure_vertices(gp, nests[b].disks[-1])
            if ca & cb:
                raise AssertionError("top disks of distinct nests touch")


# -- nest tree -------------------------------------------------------------------


@dataclass
class NestTree:
    """Dual tree of the union of nest cycles in the cut-graph sphere.

    Vertices are zone ids; faces[z] lists the cut-graph faces of zone z;
    the edge between two zones carries the nest cycle separating them.
    leaf_of_cuff[i] is the zone holding nest i's cuff face; the root is
    the zone outside every top disk.
    """

    system: NestSystem
    graph: nx.Graph
    root: int
    leaf_of_cuff: Tuple[int, ...]
    faces: Dict[int, FrozenSet[int]]
    edge_label: Dict[FrozenSet[int], Tuple[int, int]]

    @property
    def leaves(self) -> FrozenSet[int]:
        return frozenset(self.leaf_of_cuff)

    def cycle_of_edge(self, u: int, v: int) -> Cycle:
        i, j = self.edge_label[frozenset((u, v))]
        return self.system.nests[i].cycles[j]


def build_nest_tree(system: NestSystem) -> NestTree:
    """Carve the cut-graph sphere along all nest cycles into a zone tree.

    Requires uniform achieved depth d >= 1 (truncate first); the result
    has g(d+1)+1 zones and g non-root leaves: per nest a path of d+1
    annular zones from the cuff face to the shared outside zone.
    """
    depths = {n.achieved for n in system.nests}
    if len(depths) != 1:
        raise PreconditionError(
            f"nest depths {sorted(depths)} are not uniform; truncate first"
        )
    d = depths.pop()
    if d < 1:
        raise PreconditionError("nest depth 0 leaves nothing to build")
    gp = system.planarization.cut_graph
    g = len(system.nests)

    vsets = []
    for n in system.nests:
        for cyc in n.cycles:
            vsets.append({gp.tail(x) for x in cyc})
    for a in range(len(vsets)):
        for b in range(a + 1, len(vsets)):
            if vsets[a] & vsets[b]:
                raise NestError("nest cycles not disjoint")

    # zone = face class under the membership signature over all disks
    def signature(f: int) -> Tuple[bool, ...]:
        return tuple(
            f in disk for n in system.nests for disk in n.disks
        )

    groups: Dict[Tuple[bool, ...], List[int]] = {}
    for f in gp.faces:
        groups.setdefault(signature(f.index), []).append(f.index)
    ordered = sorted(groups.values(), key=min)
    zone_of: Dict[int, int] = {}
    faces: Dict[int, FrozenSet[int]] = {}
    for z, fs in enumerate(ordered):
        faces[z] = frozenset(fs)
        for f in fs:
            zone_of[f] = z

    if len(faces) != g * (d + 1) + 1:
        raise AssertionError(
            f"{len(faces)} zones, expected {g}*({d}+1)+1 = {g * (d + 1) + 1}"
        )

    tree = nx.Graph()
    tree.add_nodes_from(faces)
    label: Dict[FrozenSet[int], Tuple[int, int]] = {}
    fos = gp.face_of_side
    for i, n in enumerate(system.nests):
        for j, cyc in enumerate(n.cycles):
            pairs = set()
            for x in cyc:
                f1, f2 = fos[(x[0], 1)], fos[(x[0], -1)]
                inside1 = f1 in n.disks[j]
                if inside1 == (f2 in n.disks[j]):
                    raise AssertionError("cycle edge does not separate its disk")
                fin, fout = (f1, f2) if inside1 else (f2, f1)
                pairs.add((zone_of[fin], zone_of[fout]))
            if len(pairs) != 1:
                raise AssertionError(f"cycle ({i},{j}) borders {len(pairs)} zone pairs")
            zin, zout = pairs.pop()
            key = frozenset((zin, zout))
            if key in label:
                raise AssertionError("two nest cycles separate the same zones")
            tree.add_edge(zin, zout)
            label[key] = (i, j)

    if not nx.is_tree(tree):
        raise AssertionError("zone adjacency is not a tree")
    leaf_of_cuff = tuple(zone_of[system.planarization.cuffs[n.cuff_index].face] for n in system.nests)
    top = set()
    for n in system.nests:
        top |= n.disks[-1]
    outside = [f.index for f in gp.faces if f.index not in top]
    root_zone = {zone_of[f] for f in outside}
    if len(root_zone) != 1:
        raise AssertionError("outside of the top disks is not a single zone")
    root = root_zone.pop()
    nonroot_leaves = {v for v in tree if tree.degree(v) == 1 and v != root}
    if nonroot_leaves != set(leaf_of_cuff) or len(leaf_of_cuff) != g:
        raise AssertionError("leaves do not match the cuffs")

    # every zone must itself be a region: cuff faces and annuli between
    # consecutive cycles, plus the g-holed outside
    for z, fs in faces.items():
        reg = region_from_faces(gp, fs)
        want = (0, True, tree.degree(z))
        got = (reg.euler_genus, reg.orientable, reg.cuff_count)
        if got != want:
            raise AssertionError(f"zone {z} classifies {got}, expected {want}")

    return NestTree(
        system=system,
        graph=tree,
        root=root,
        leaf_of_cuff=leaf_of_cuff,
        faces=faces,
        edge_label=label,
    )


# -- regions of tree classes -------------------------------------------------------


def _matched_leaf_pairs(tree: NestTree) -> List[Tuple[int, int]]:
    by_cycle: Dict[int, List[int]] = {}
    plan = tree.system.planarization
    for i, n in enumerate(tree.system.nests):
        cuff = plan.cuffs[n.cuff_index]
        if not cuff.one_sided:
            by_cycle.setdefault(cuff.cycle_index, []).append(i)
    pairs = []
    for ci in sorted(by_cycle):
        idxs = by_cycle[ci]
        if len(idxs) != 2:
            raise AssertionError(f"two-sided cycle {ci} has {len(idxs)} cuffs")
        pairs.append((tree.leaf_of_cuff[idxs[0]], tree.leaf_of_cuff[idxs[1]]))
    return pairs


def region_of(
    tree: NestTree,
    U: Iterable[int],
    projection: Optional[Planarization] = None,
) -> Region:
    """Region of the faces behind a connected set of tree zones.

    Without a projection the region lives in the cut graph and U must
    avoid the leaf zones (cuff faces have no host image).  With the
    planarization passed as projection the region lives in the host: leaf
    zones contribute no faces but mark that the adjacent cuff is glued
    shut, and U need only be connected up to identifying the two leaves
    of each two-sided planarizing cycle.
    """
    uset = frozenset(U)
    if not uset:
        raise PreconditionError("empty zone set")
    bad = uset - set(tree.graph.nodes)
    if bad:
        raise MalformedInput(f"{sorted(bad)} are not zones of the tree")
    plan = tree.system.planarization
    leaves = tree.leaves
    if projection is None:
        if uset & leaves:
            raise PreconditionError(
                "leaf zones require the projection; the cuff faces they "
                "hold have no place in an unglued region"
            )
        sub = tree.graph.subgraph(uset)
        if not nx.is_connected(sub):
            raise PreconditionError("U is not connected in the nest tree")
        fs: Set[int] = set()
        for z in uset:
            fs |= tree.faces[z]
        return region_from_faces(plan.cut_graph, fs)
    if projection is not plan and projection != plan:
        raise PreconditionError("projection does not match the tree's planarization")
    aug = nx.Graph(tree.graph.subgraph(uset))
    for a, b in _matched_leaf_pairs(tree):
        if a in uset and b in uset:
            aug.add_edge(a, b)
    if not nx.is_connected(aug):
        raise PreconditionError("U is not connected in the nest tree")
    inner = uset - leaves
    if not inner:
        raise PreconditionError("U holds only leaf zones; the region is empty")
    fs = set()
    for z in inner:
        fs |= tree.faces[z]
    return region_from_faces(plan.host, plan.project_faces(fs))


# -- cover pieces ---------------------------------------------------------------


@dataclass(frozen=True)
class CoverPiece:
    """A tree class with its host piece and one-ring enlargement.

    For pieces produced without a tree (projective covers) S and s_plus
    are empty and only the regions matter.
    """

    S: FrozenSet[int]
    s_plus: FrozenSet[int]
    inner: Region
    outer: Region
    kind: str  # "sphere" | "projective"


def partition_cover_pieces(
    tree: NestTree, embedding: RotationEmbedding, d: int
) -> List[CoverPiece]:
    """Balls around the leaves plus the components of their complement.

    Balls use radius floor(d/3); one-sided cuffs keep their own ball
    (projective pieces), the two balls of a two-sided planarizing cycle
    merge into one sphere piece, and each complement component is a
    sphere piece.  Every piece is returned with verified nested regions;
    the component count is asserted to stay within the cuff count and the
    inner regions are asserted to cover every host face.
    """
    plan = tree.system.planarization
    if embedding != plan.host:
        raise PreconditionError("embedding is not the planarized host")
    if d < 3:
        raise PreconditionError(f"depth {d} < 3 leaves no separation radius")
    if {n.achieved for n in tree.system.nests} != {d}:
        raise PreconditionError(f"tree depth does not match d = {d}")

    dist = {
        leaf: nx.single_source_shortest_path_length(tree.graph, leaf)
        for leaf in tree.leaf_of_cuff
    }
    for a in range(len(tree.leaf_of_cuff)):
        for b in range(a + 1, len(tree.leaf_of_cuff)):
            la, lb = tree.leaf_of_cuff[a], tree.leaf_of_cuff[b]
            if dist[la][lb] < d:
                raise PreconditionError(
                    f"leaves {la} and {lb} at distance {dist[la][lb]} < d = {d}"
                )
    radius = d // 3
    ball = {
        leaf: frozenset(v for v, dv in dist[leaf].items() if dv <= radius)
        for leaf in tree.leaf_of_cuff
    }

    classes: List[Tuple[FrozenSet[int], str]] = []
    for i, n in enumerate(tree.system.nests):
        if plan.cuffs[n.cuff_index].one_sided:
            classes.append((ball[tree.leaf_of_cuff[i]], "projective"))
    for a, b in _matched_leaf_pairs(tree):
        classes.append((ball[a] | ball[b], "sphere"))
    balls_union: Set[int] = set()
    for leaf in tree.leaf_of_cuff:
        balls_union |= ball[leaf]
    rest = [v for v in tree.graph if v not in balls_union]
    comps = sorted(nx.connected_components(tree.graph.subgraph(rest)), key=min)
    g = len(tree.leaf_of_cuff)
    if len(comps) > g:
        raise AssertionError(
            f"{len(comps)} complement components exceed the cuff count {g}"
        )
    for comp in comps:
        classes.append((frozenset(comp), "sphere"))
    if len(classes) > 2 * g:
        raise AssertionError(f"{len(classes)} pieces exceed 2g = {2 * g}")

    pieces: List[CoverPiece] = []
    for S, kind in classes:
        s_plus = frozenset(S | {w for v in S for w in tree.graph.neighbors(v)})
        inner = region_of(tree, S, projection=plan)
        outer = region_of(tree, s_plus, projection=plan)
        if not is_nested_pair(plan.host, inner, outer):
            raise AssertionError(f"piece {sorted(S)} regions are not nested")
        want = (1, False) if kind == "projective" else (0, True)
        for reg in (inner, outer):
            got = classify_region(plan.host, reg)[:2]
            if got != want:
                raise AssertionError(
                    f"piece {sorted(S)} classifies {got}, expected {want} ({kind})"
                )
        pieces.append(CoverPiece(S=S, s_plus=s_plus, inner=inner, outer=outer, kind=kind))

    covered: Set[int] = set()
    for p in pieces:
        covered |= p.inner.faces
    if covered != {f.index for f in plan.host.faces}:
        raise AssertionError("piece interiors do not cover the surface")
    return pieces


# -- outside contraction ------------------------------------------------------------


@dataclass
class ContractedMinor:
    """3-connected minor agreeing with the host on the inner region.

    embedding is the capped outer region with every component outside the
    inner closure contracted to a single vertex (which keeps the name of
    one member); phi sends every face to a host face incident to exactly
    the same inner-closure vertices; components names each contracted
    vertex's host vertex set.
    """

    embedding: RotationEmbedding
    phi: Dict[int, int]
    components: Dict[Any, FrozenSet[Any]]
    inner: Region
    outer: Region
    host: RotationEmbedding

    @property
    def inner_vertices(self) -> FrozenSet[Any]:
        return frozenset(_closure_vertices(self.host, self.inner.faces))

    def expand_vertex(self, v: Any) -> FrozenSet[Any]:
        return self.components.get(v, frozenset((v,)))

    def expand(self, vs: Iterable[Any]) -> FrozenSet[Any]:
        out: Set[Any] = set()
        for v in vs:
            out |= self.expand_vertex(v)
        return frozenset(out)

    def lift_faces(self, faces: Iterable[int]) -> FrozenSet[int]:
        return frozenset(self.phi[f] for f in faces)

    def lift_model(self, model: RootedK2tModel) -> RootedK2tModel:
        return RootedK2tModel(
            centers=(self.expand(model.centers[0]), self.expand(model.centers[1])),
            satellites=tuple(self.expand(s) for s in model.satellites),
        )


def _match_faces_after_delete(
    old: RotationEmbedding, new: RotationEmbedding
) -> Dict[int, List[int]]:
    """new face index -> old face indices it came from (1 or 2 entries)."""
    out: Dict[int, Set[int]] = {}
    old_fos = old.face_of_side
    for side, nf in new.face_of_side.items():
        out.setdefault(nf, set()).add(old_fos[side])
    return {nf: sorted(fs) for nf, fs in out.items()}


def contract_outside(
    embedding: RotationEmbedding, inner: Region, outer: Region
) -> ContractedMinor:
    """Contract everything between the inner region and the capped outer
    boundary into component vertices, tracking a face map.

    Face bookkeeping: faces whose vertices all sit inside one component
    are doomed (they vanish with it); every other face keeps its
    inner-closure incidence through contractions, loop deletions, and
    parallel-edge merges, which is checked face by face at the end.
    """
    host = embedding
    if not inner.faces <= outer.faces:
        raise PreconditionError("inner region is not inside the outer region")
    if not is_nested_pair(host, inner, outer):
        raise PreconditionError("regions do not form a nested pair")
    piece = extract_region(host, outer.faces)
    K = frozenset(_closure_vertices(host, inner.faces))

    pg = nx.Graph()
    pg.add_nodes_from(v for v in piece.embedding.rotations if v not in K)
    for e, (u, w, _) in piece.embedding.edges.items():
        if u not in K and w not in K:
            pg.add_edge(u, w)
    comps = sorted(nx.connected_components(pg), key=lambda c: _vkey(min(c, key=_vkey)))

    cur = piece.embedding
    tag: Dict[int, Optional[int]] = {f.index: f.index for f in cur.faces}
    components: Dict[Any, FrozenSet[Any]] = {}

    for comp in comps:
        members = set(comp)
        for f in cur.faces:
            if set(cur.face_vertices(f)) <= members:
                tag[f.index] = None
        # contract every internal edge; each step merges the head into the
        # tail of the canonical dart, so the survivor stays in members
        while True:
            eid = None
            for e in sorted(cur.edges):
                u, w, _ = cur.edges[e]
                if u != w and u in members and w in members:
                    eid = e
                    break
            if eid is None:
                break
            u, w, _ = cur.edges[eid]
            nxt, fmap, _ = cur.contract_edge(eid)
            tag = {fmap[f]: t for f, t in tag.items()}
            gone = u if u not in nxt.rotations else w
            members.discard(gone)
            cur = nxt
        if len(members) != 1:
            raise AssertionError("component did not contract to one vertex")
        blob = members.pop()
        components[blob] = frozenset(comp)
        cur, tag = _delete_blob_loops(cur, tag, blob)
        cur, tag = _simplify_parallel(cur, tag, K)
        dangling = [f for f, t in tag.items() if t is None]
        if dangling:
            raise AssertionError(f"doomed faces {dangling} survived contraction")
        deg = len(set(cur.neighbors(blob)))
        if deg < 3:
            raise PreconditionError(
                f"component {sorted(comp, key=_vkey)[:4]}... contracts to "
                f"degree {deg}: witnesses face-width < 3 or missing "
                f"3-connectivity"
            )

    phi: Dict[int, int] = {}
    for f in cur.faces:
        t = tag[f.index]
        if t is None:
            raise AssertionError("untagged face after contraction")
        if t not in piece.face_map:
            # a cap boundary always lies in an outside component, so caps
            # vanish with their component; the whole-surface case has none
            raise AssertionError(f"cap face {t} survived contraction")
        phi[f.index] = piece.face_map[t]

    _verify_minor(host, cur, phi, components, inner, outer, K)
    return ContractedMinor(
        embedding=cur,
        phi=phi,
        components=components,
        inner=inner,
        outer=outer,
        host=host,
    )


def _combine_tags(t1: Optional[int], t2: Optional[int], ctx: str) -> Optional[int]:
    if t1 is None:
        return t2
    if t2 is None:
        return t1
    raise AssertionError(f"{ctx} merges two live faces {t1} and {t2}")


def _retag_after_delete(
    old: RotationEmbedding,
    new: RotationEmbedding,
    tag: Dict[int, Optional[int]],
    merged: Tuple[int, int],
    combined: Optional[int],
) -> Dict[int, Optional[int]]:
    match = _match_faces_after_delete(old, new)
    out: Dict[int, Optional[int]] = {}
    f1, f2 = merged
    for nf, olds in match.items():
        if set(olds) <= {f1, f2}:
            out[nf] = combined
        elif len(olds) == 1:
            out[nf] = tag[olds[0]]
        else:
            raise AssertionError(f"deletion merged unexpected faces {olds}")
    return out


def _delete_blob_loops(
    cur: RotationEmbedding, tag: Dict[int, Optional[int]], blob: Any
) -> Tuple[RotationEmbedding, Dict[int, Optional[int]]]:
    while True:
        loops = sorted(e for e, (u, w, _) in cur.edges.items() if u == w)
        if not loops:
            return cur, tag
        e = loops[0]
        if cur.edges[e][0] != blob:
            raise AssertionError("loop away from the active component")
        fos = cur.face_of_side
        f1, f2 = fos[(e, 1)], fos[(e, -1)]
        if f1 == f2:
            raise AssertionError("loop bounds the same face on both sides")
        combined = _combine_tags(tag[f1], tag[f2], "loop deletion")
        nxt = cur.delete_edge(e)
        tag = _retag_after_delete(cur, nxt, tag, (f1, f2), combined)
        cur = nxt


def _simplify_parallel(
    cur: RotationEmbedding, tag: Dict[int, Optional[int]], K: FrozenSet[Any]
) -> Tuple[RotationEmbedding, Dict[int, Optional[int]]]:
    """Delete parallel copies whose two sides have comparable inner
    incidence until every endpoint pair keeps a single edge."""
    while True:
        classes: Dict[FrozenSet[Any], List[int]] = {}
        for e, (u, w, _) in cur.edges.items():
            classes.setdefault(frozenset((u, w)), []).append(e)
        multi = {k: sorted(v) for k, v in classes.items() if len(v) > 1}
        if not multi:
            return cur, tag
        progress = False
        for pair in sorted(multi, key=lambda p: min(multi[p])):
            fos = cur.face_of_side
            for e in multi[pair]:
                f1, f2 = fos[(e, 1)], fos[(e, -1)]
                if f1 == f2:
                    continue
                inc1 = set(cur.face_vertices(cur.faces[f1])) & K
                inc2 = set(cur.face_vertices(cur.faces[f2])) & K
                if not (inc1 <= inc2 or inc2 <= inc1):
                    continue
                keep = tag[f1] if inc2 <= inc1 else tag[f2]
                if tag[f1] is None or tag[f2] is None:
                    keep = _combine_tags(tag[f1], tag[f2], "parallel deletion")
                nxt = cur.delete_edge(e)
                tag = _retag_after_delete(cur, nxt, tag, (f1, f2), keep)
                cur = nxt
                progress = True
                break
            if progress:
                break
        if not progress:
            raise PreconditionError(
                "parallel edges resist simplification: no copy has "
                "comparable side incidences"
            )


def _verify_minor(
    host: RotationEmbedding,
    h: RotationEmbedding,
    phi: Dict[int, int],
    components: Dict[Any, FrozenSet[Any]],
    inner: Region,
    outer: Region,
    K: FrozenSet[Any],
) -> None:
    if not h.is_simple:
        raise AssertionError("contracted minor is not simple")
    if not h.is_connected:
        raise AssertionError("contracted minor is not connected")
    # agreement on the inner region: every inner vertex and edge survives
    for v in K:
        if v not in h.rotations:
            raise AssertionError(f"inner vertex {v!r} missing from the minor")
    for e, (u, w, _) in host.edges.items():
        fa, fb = host.sides_of_edge(e)
        if fa in inner.faces or fb in inner.faces:
            if e not in h.edges:
                raise AssertionError(f"inner edge {e} missing from the minor")
            hu, hw, _ = h.edges[e]
            if {hu, hw} != {u, w}:
                raise AssertionError(f"inner edge {e} changed endpoints")
    hv = set(h.rotations)
    expected = K | set(components)
    if hv != expected:
        raise AssertionError("minor vertex set differs from closure + components")
    for f in h.faces:
        hf = phi[f.index]
        inc_h = set(h.face_vertices(f)) & K
        inc_g = set(host.face_vertices(host.faces[hf])) & K
        if inc_h != inc_g:
            raise AssertionError(
                f"face {f.index} -> {hf}: incidence {sorted(inc_h, key=_vkey)} "
                f"!= {sorted(inc_g, key=_vkey)}"
            )
    if not is_three_connected(h):
        raise PreconditionError(
            "contracted minor is not 3-connected: the input violates the "
            "pipeline preconditions"
        )
    if polyhedral_violation(host) is None and polyhedral_violation(h) is not None:
        raise AssertionError(
            f"polyhedral host contracted to a non-polyhedral minor: "
            f"{polyhedral_violation(h)}"
        )


# -- projective covers ----------------------------------------------------------


def _disk_side(emb: RotationEmbedding, vertex_cycle: Sequence[Any]) -> FrozenSet[int]:
    """Faces on the disk side of a separating cycle given by vertices."""
    darts = darts_of_vertex_cycle(emb, tuple(vertex_cycle))
    blocked = {d[0] for d in darts}
    adj: Dict[int, Set[int]] = {f.index: set() for f in emb.faces}
    for e in emb.edges:
        if e in blocked:
            continue
        fa, fb = emb.sides_of_edge(e)
        adj[fa].add(fb)
        adj[fb].add(fa)
    seen: Dict[int, int] = {}
    comps: List[Set[int]] = []
    for f in adj:
        if f in seen:
            continue
        comp = {f}
        stack = [f]
        seen[f] = len(comps)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen[y] = len(comps)
                    comp.add(y)
                    stack.append(y)
        comps.append(comp)
    if len(comps) != 2:
        raise NestError(
            f"cycle {tuple(vertex_cycle)} splits the surface into "
            f"{len(comps)} parts, expected 2"
        )
    disks = []
    for comp in comps:
        reg = region_from_faces(emb, comp)
        if (reg.euler_genus, reg.orientable, reg.cuff_count) == (0, True, 1):
            disks.append(frozenset(comp))
    if len(disks) != 1:
        raise NestError(
            f"cycle {tuple(vertex_cycle)} bounds {len(disks)} disk sides, "
            f"expected exactly 1"
        )
    return disks[0]


def projective_cover(
    embedding: RotationEmbedding, k4_hint: Optional[K4Hint] = None
) -> List[CoverPiece]:
    """Three nested disk pairs covering a projective-plane embedding.

    With a hint the inner disks are the disk sides of the hinted cycles
    (face closures of an embedded K4-subdivision) and the outer disks the
    hinted protective cycles; everything is verified.  Without a hint a
    face-width of at least 16 is required and three disks are grown from
    spread dual seeds, each kept one ring inside its enlargement.
    """
    eg = embedding.euler_genus
    if eg != 1:
        raise PreconditionError(f"projective cover needs Euler genus 1, got {eg}")
    if k4_hint is not None:
        if len(k4_hint.inner) != 3:
            raise MalformedInput(
                f"projective hint needs 3 cycle pairs, got {len(k4_hint.inner)}"
            )
        pieces = []
        for i in range(3):
            fs_in = _disk_side(embedding, k4_hint.inner[i])
            fs_out = _disk_side(embedding, k4_hint.outer[i])
            inner = region_from_faces(embedding, fs_in)
            outer = region_from_faces(embedding, fs_out)
            if not is_nested_pair(embedding, inner, outer):
                raise NestError(f"hint pair {i + 1} is not a nested pair")
            pieces.append(
                CoverPiece(
                    S=frozenset(),
                    s_plus=frozenset(),
                    inner=inner,
                    outer=outer,
                    kind="sphere",
                )
            )
        covered: Set[int] = set()
        for p in pieces:
            covered |= p.inner.faces
        if covered != {f.index for f in embedding.faces}:
            raise NestError("hint disks do not cover the surface")
        return pieces
    fw = face_width(embedding)
    if fw < 16:
        raise NestError(
            f"face-width {fw} is below 16: no covering K4-subdivision search "
            f"attempted"
        )
    return _grow_disk_cover(embedding)


def _dual_layers(emb: RotationEmbedding, seed: int) -> Dict[int, int]:
    adj: Dict[int, Set[int]] = {f.index: set() for f in emb.faces}
    for e in emb.edges:
        fa, fb = emb.sides_of_edge(e)
        adj[fa].add(fb)
        adj[fb].add(fa)
    dist = {seed: 0}
    frontier = [seed]
    while frontier:
        nxt = []
        for f in frontier:
            for x in adj[f]:
                if x not in dist:
                    dist[x] = dist[f] + 1
                    nxt.append(x)
        frontier = nxt
    return dist


def _grow_disk_cover(emb: RotationEmbedding) -> List[CoverPiece]:
    d0 = _dual_layers(emb, 0)
    f1 = min(d0, key=lambda f: (-d0[f], f))
    d1 = _dual_layers(emb, f1)
    f2 = min(d0, key=lambda f: (-min(d0[f], d1[f]), f))
    seeds = [0, f1, f2]
    at = _faces_at(emb)
    hist: List[List[FrozenSet[int]]] = [[frozenset((s,))] for s in seeds]
    active = [True, True, True]
    total = {f.index for f in emb.faces}

    def shrunk_union() -> Set[int]:
        out: Set[int] = set()
        for h in hist:
            if len(h) >= 2:
                out |= h[-2]
        return out

    while any(active) and shrunk_union() != total:
        grew = False
        for i in range(3):
            if not active[i]:
                continue
            cand = set(hist[i][-1])
            for v in _closure_vertices(emb, hist[i][-1]):
                cand |= at[v]
            fcand = frozenset(cand)
            if fcand == hist[i][-1]:
                active[i] = False
                continue
            try:
                reg = region_from_faces(emb, fcand)
            except RegionError:
                active[i] = False
                continue
            if (reg.euler_genus, reg.orientable, reg.cuff_count) != (0, True, 1):
                active[i] = False
                continue
            hist[i].append(fcand)
            grew = True
        if not grew:
            break
    if shrunk_union() != total:
        missing = len(total - shrunk_union())
        raise NestError(
            f"disk growth stalled with {missing} faces uncovered: no "
            f"covering K4-subdivision found"
        )
    pieces = []
    for i in range(3):
        inner = region_from_faces(emb, hist[i][-2])
        outer = region_from_faces(emb, hist[i][-1])
        if not is_nested_pair(emb, inner, outer):
            raise NestError(f"grown disk {i} pair is not nested")
        pieces.append(
            CoverPiece(
                S=frozenset(),
                s_plus=frozenset(),
                inner=inner,
                outer=outer,
                kind="sphere",
            )
        )
    return pieces


# -- lifting ----------------------------------------------------------------------


def lift_cover(
    embedding: RotationEmbedding,
    contributions: Sequence[Tuple[ContractedMinor, Iterable[Any], Iterable[int]]],
    roots: Iterable[Any],
) -> FaceCover:
    """Union of per-piece covers mapped through their face maps.

    contributions are (minor, piece roots, minor-face cover) triples; the
    piece roots must exhaust the roots, each per-piece cover must cover
    its piece roots in the minor, and every lifted face is checked to see
    the same piece roots as its source.
    """
    rts = set(roots)
    claimed: Set[Any] = set()
    for minor, prts, _ in contributions:
        prset = set(prts)
        if not prset <= minor.inner_vertices:
            raise PreconditionError("piece roots leave the piece's inner closure")
        claimed |= prset
    missing = rts - claimed
    if missing:
        raise PreconditionError(
            f"root {sorted(missing, key=_vkey)[0]!r} lies in no piece: the "
            f"pieces do not cover the surface"
        )
    lifted: Set[int] = set()
    for minor, prts, faces in contributions:
        prset = set(prts)
        fset = set(faces)
        ok, diags = verify_cover(minor.embedding, prset, fset)
        if not ok:
            raise PreconditionError(f"piece cover invalid: {diags[0]}")
        h = minor.embedding
        for f in fset:
            hf = minor.phi[f]
            inc_h = set(h.face_vertices(h.faces[f])) & prset
            inc_g = set(embedding.face_vertices(embedding.faces[hf])) & prset
            if inc_h != inc_g:
                raise AssertionError(
                    f"lifted face {hf} sees roots {sorted(inc_g, key=_vkey)}, "
                    f"source saw {sorted(inc_h, key=_vkey)}"
                )
            lifted.add(hf)
    ok, diags = verify_cover(embedding, rts, lifted)
    if not ok:
        raise AssertionError(f"lifted cover fails verification: {diags[0]}")
    return FaceCover(frozenset(lifted), exact=False)


# -- driver ----------------------------------------------------------------------


@dataclass
class PipelineReport:
    lines: List[str]

    def log(self, msg: str) -> None:
        self.lines.append(msg)

    @property
    def text(self) -> str:
        return "\n".join(self.lines) + ("\n" if self.lines else "")


@dataclass(frozen=True)
class FallbackReport:
    """Desk-scale exhaustive cover returned when the pipeline cannot run."""

    reason: str
    face_width: int
    cover: FaceCover


def _oracle_cover(emb: RotationEmbedding, rts: FrozenSet[Any]) -> FaceCover:
    mode = "exact" if len(rts) <= EXACT_COVER_LIMIT else "greedy"
    return FaceCover(min_face_cover(emb, rts, mode=mode), exact=(mode == "exact"))


def _cover_disk_pieces(
    emb: RotationEmbedding,
    rts: FrozenSet[Any],
    t: int,
    pieces: Sequence[CoverPiece],
    oracle_budget: Optional[float],
    rep: PipelineReport,
    depth: str = "",
):
    """Run contract + dichotomy over disk pieces; cover union or model."""
    contributions = []
    for idx, piece in enumerate(pieces):
        minor = contract_outside(emb, piece.inner, piece.outer)
        prts = rts & minor.inner_vertices
        rep.log(
            f"{depth}piece {idx}: kind={piece.kind} inner={len(piece.inner.faces)} "
            f"faces, minor n={minor.embedding.n_vertices} "
            f"components={len(minor.components)} roots={len(prts)}"
        )
        res = plane_dichotomy(minor.embedding, prts, t, oracle_budget=oracle_budget)
        if isinstance(res, RootedK2tModel):
            lifted = minor.lift_model(res)
            ok, diags = verify_model(emb, rts, lifted)
            if not ok:
                raise AssertionError(f"lifted model fails verification: {diags[0]}")
            rep.log(f"{depth}piece {idx}: K_(2,{t}) minor found and lifted")
            return lifted
        rep.log(f"{depth}piece {idx}: cover of {len(res)} faces")
        contributions.append((minor, prts, res.faces))
    return lift_cover(emb, contributions, rts)


def genus_face_cover(
    embedding: RotationEmbedding,
    roots: Optional[Iterable[Any]] = None,
    t: int = 1,
    hint: Optional[K4Hint] = None,
    oracle_budget: Optional[float] = 60.0,
    with_report: bool = False,
):
    """Face cover or rooted K_(2,t) minor on a positive-genus embedding.

    Plans: planarize, grow nests (depth 49 requested, any depth >= 3
    accepted with a degraded size bound), build the zone tree, partition
    into pieces, contract each piece's outside and run the planar
    dichotomy, handling projective pieces through a three-disk cover.  A
    model from any piece lifts and returns immediately; otherwise the
    piece covers union into a host cover.  Face-width below 3, shallow
    nests, or a failed projective search degrade to an exhaustive cover
    wrapped in a FallbackReport.  with_report=True returns (result,
    PipelineReport).
    """
    rep = PipelineReport([])
    if not isinstance(t, int) or t < 1:
        raise PreconditionError("satellite count t must be a positive integer")
    if not embedding.is_connected:
        raise PreconditionError("graph is not connected")
    if not embedding.is_simple:
        raise PreconditionError("graph is not simple")
    g = embedding.euler_genus
    if g == 0:
        raise PreconditionError("Euler genus 0: use the planar dichotomy")
    if not is_three_connected(embedding):
        raise PreconditionError("not 3-connected")
    rts = frozenset(embedding.roots if roots is None else roots)
    for r in rts:
        if r not in embedding.rotations:
            raise PreconditionError(f"root {r!r} is not a vertex")
    fw = face_width(embedding)
    rep.log(
        f"instance: n={embedding.n_vertices} genus={g} fw={fw} "
        f"roots={len(rts)} t={t}"
    )

    def fallback(reason: str):
        cover = _oracle_cover(embedding, rts)
        rep.log(f"fallback: {reason}")
        rep.log(
            f"exhaustive cover of {len(cover)} faces "
            f"({'exact' if cover.exact else 'greedy'})"
        )
        fb = FallbackReport(reason=reason, face_width=fw, cover=cover)
        return (fb, rep) if with_report else fb

    if fw < 3:
        return fallback(f"face-width {fw} < 3")

    try:
        if g == 1:
            rep.log(
                "projective route: "
                + ("generator hint" if hint is not None else "disk growth")
            )
            pieces = projective_cover(embedding, hint)
            result = _cover_disk_pieces(embedding, rts, t, pieces, oracle_budget, rep)
        else:
            result = _genus_route(embedding, rts, t, oracle_budget, rep)
    except NestError as exc:
        return fallback(str(exc))
    if isinstance(result, FaceCover):
        rep.log(f"final cover: {len(result)} faces, verified")
    else:
        rep.log(f"final certificate: rooted K_(2,{result.t}) minor, verified")
    return (result, rep) if with_report else result


def _genus_route(
    emb: RotationEmbedding,
    rts: FrozenSet[Any],
    t: int,
    oracle_budget: Optional[float],
    rep: PipelineReport,
):
    plan = planarize(emb)
    rep.log(
        "planarized along "
        + ", ".join(
            f"cycle {i} (len {len(c)}, "
            f"{'one' if plan.cut.twists[i] == -1 else 'two'}-sided)"
            for i, c in enumerate(plan.cut_cycles)
        )
    )
    ns = find_nests(plan, NEST_DEPTH_REQUEST)
    rep.log(
        f"nest depths: {[n.achieved for n in ns.nests]} "
        f"(requested {NEST_DEPTH_REQUEST})"
    )
    for d in ns.diagnostics:
        rep.log(f"  {d}")
    depth = ns.depth
    if depth < 3:
        raise NestError(f"nest depth {depth} below 3")
    if depth < NEST_DEPTH_REQUEST:
        rep.log(f"depth {depth} < {NEST_DEPTH_REQUEST}: size bound degraded")
    tree = build_nest_tree(ns.truncate(depth))
    pieces = partition_cover_pieces(tree, emb, depth)
    rep.log(
        "pieces: "
        + ", ".join(
            f"{sorted(p.S)} {p.kind} ({classify_region(emb, p.inner)})"
            for p in pieces
        )
    )
    contributions = []
    for idx, piece in enumerate(pieces):
        minor = contract_outside(emb, piece.inner, piece.outer)
        prts = rts & minor.inner_vertices
        rep.log(
            f"piece {idx}: kind={piece.kind} minor n={minor.embedding.n_vertices} "
            f"components={len(minor.components)} roots={len(prts)}"
        )
        if piece.kind == "sphere":
            res = plane_dichotomy(minor.embedding, prts, t, oracle_budget=oracle_budget)
            if isinstance(res, RootedK2tModel):
                lifted = minor.lift_model(res)
                ok, diags = verify_model(emb, rts, lifted)
                if not ok:
                    raise AssertionError(
                        f"lifted model fails verification: {diags[0]}"
                    )
                rep.log(f"piece {idx}: K_(2,{t}) minor found and lifted")
                return lifted
            rep.log(f"piece {idx}: cover of {len(res)} faces")
            contributions.append((minor, prts, res.faces))
            continue
        sub_pieces = projective_cover(minor.embedding, None)
        sub = _cover_disk_pieces(
            minor.embedding, prts, t, sub_pieces, oracle_budget, rep, depth="  "
        )
        if isinstance(sub, RootedK2tModel):
            lifted = minor.lift_model(sub)
            ok, diags = verify_model(emb, rts, lifted)
            if not ok:
                raise AssertionError(f"lifted model fails verification: {diags[0]}")
            rep.log(f"piece {idx}: K_(2,{t}) minor found and lifted twice")
            return lifted
        rep.log(f"piece {idx}: projective cover of {len(sub)} faces")
        contributions.append((minor, prts, sub.faces))
    return lift_cover(emb, contributions, rts)
