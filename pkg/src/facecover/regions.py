"""Regions: subsurfaces given by face sets, contoured by the graph.

A region is the closure of a set of faces.  Extracting it keeps every
dart with an adjacent corner inside the region; each maximal run of
dropped corners around a boundary vertex would contribute one boundary
passage, so a vertex whose inside corners are not cyclically contiguous
pinches the boundary and is rejected.  The extracted embedding caps each
cuff with a disk face, which makes the classification of the region
(Euler genus, orientability, cuff count) plain face counting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, Tuple

from .embedding import Dart, RotationEmbedding
from .errors import MalformedInput, RegionError

Cycle = Tuple[Dart, ...]


@dataclass(frozen=True)
class Region:
    """A surface with boundary inside a host embedding."""

    faces: FrozenSet[int]
    boundary: Tuple[Cycle, ...]
    orientable: bool
    euler_genus: int
    cuff_count: int


@dataclass
class RegionPiece:
    """A region extracted as a standalone embedding with capped cuffs.

    Vertex names and edge ids are inherited from the host, so piece
    elements address host elements directly.  face_map sends piece face
    indices to host face indices; the cap disks have no preimage.
    """

    embedding: RotationEmbedding
    face_map: Dict[int, int]
    cap_faces: Tuple[int, ...]


def _face_set(emb: RotationEmbedding, faces: Iterable[int]) -> FrozenSet[int]:
    fs = frozenset(faces)
    n = emb.n_faces
    for f in fs:
        if not isinstance(f, int) or not 0 <= f < n:
            raise MalformedInput(f"{f!r} is not a face index")
    return fs


def extract_region(emb: RotationEmbedding, faces: Iterable[int]) -> RegionPiece:
    """Cut out the closure of the given faces, capping each cuff."""
    fs = _face_set(emb, faces)
    if not fs:
        raise RegionError("empty region")
    fof = emb.face_of_flag
    rotations: Dict[Any, Tuple[Dart, ...]] = {}
    for v in emb.rotations:
        rot = emb.rotation(v)
        deg = len(rot)
        inside = [fof[(rot[i], 1)] in fs for i in range(deg)]
        if not any(inside):
            continue
        if all(inside):
            rotations[v] = rot
            continue
        blocks = sum(
            1 for i in range(deg) if inside[i] and not inside[i - 1]
        )
        if blocks != 1:
            raise RegionError(f"region boundary pinches at vertex {v!r}")
        kept = tuple(
            rot[i] for i in range(deg) if inside[i] or inside[i - 1]
        )
        rotations[v] = kept
    edges = {
        e: emb.edges[e]
        for e in emb.edges
        if emb.face_of_side[(e, 1)] in fs or emb.face_of_side[(e, -1)] in fs
    }
    roots = tuple(r for r in emb.roots if r in rotations)
    piece = RotationEmbedding(rotations, edges, roots)

    fos = piece.face_of_side
    host_to_piece: Dict[int, int] = {}
    for f in fs:
        images = {fos[s] for s in emb.faces[f].sides}
        if len(images) != 1:
            raise AssertionError(f"extraction split face {f}")
        host_to_piece[f] = images.pop()
    if len(set(host_to_piece.values())) != len(host_to_piece):
        raise AssertionError("extraction merged two faces")
    face_map = {p: f for f, p in host_to_piece.items()}
    caps = tuple(
        sorted(f.index for f in piece.faces if f.index not in face_map)
    )
    cap_vertices: List[Any] = []
    for c in caps:
        cap_vertices.extend(piece.face_vertices(piece.faces[c]))
    if len(cap_vertices) != len(set(cap_vertices)):
        raise AssertionError("cap boundaries are not disjoint simple cycles")
    return RegionPiece(embedding=piece, face_map=face_map, cap_faces=caps)


def region_from_faces(emb: RotationEmbedding, faces: Iterable[int]) -> Region:
    """Build a Region value, rejecting disconnected or pinched face sets."""
    piece = extract_region(emb, faces)
    sub = piece.embedding
    if not sub.is_connected:
        raise RegionError("region not connected")
    boundary: List[Cycle] = []
    for c in piece.cap_faces:
        walk = sub.faces[c].walk
        k = walk.index(min(walk))
        boundary.append(walk[k:] + walk[:k])
    boundary.sort()
    return Region(
        faces=_face_set(emb, faces),
        boundary=tuple(boundary),
        orientable=sub.orientable,
        euler_genus=sub.euler_genus,
        cuff_count=len(piece.cap_faces),
    )


def _faces_of(region) -> FrozenSet[int]:
    if isinstance(region, Region):
        return region.faces
    return frozenset(region)


def classify_region(emb: RotationEmbedding, region) -> Tuple[int, bool, int]:
    """(euler_genus, orientable, cuff_count) of the region, recomputed."""
    r = region_from_faces(emb, _faces_of(region))
    if isinstance(region, Region):
        stored = (region.euler_genus, region.orientable, region.cuff_count)
        fresh = (r.euler_genus, r.orientable, r.cuff_count)
        if stored != fresh:
            raise RegionError(f"region fields {stored} disagree with {fresh}")
    return (r.euler_genus, r.orientable, r.cuff_count)


def boundary_edges(emb: RotationEmbedding, faces: Iterable[int]) -> FrozenSet[int]:
    fs = _face_set(emb, faces)
    out = set()
    for e in emb.edges:
        f1, f2 = emb.sides_of_edge(e)
        if (f1 in fs) != (f2 in fs):
            out.add(e)
    return frozenset(out)


def is_nested_pair(emb: RotationEmbedding, inner, outer) -> bool:
    """True iff inner sits in the interior of outer and the in-between
    components are spheres with boundary, each sharing exactly one cuff
    with inner."""
    fs_in = _faces_of(inner)
    fs_out = _faces_of(outer)
    if not fs_in or not fs_in <= fs_out:
        return False
    non_outer = {f.index for f in emb.faces} - fs_out
    touch_in: set = set()
    for f in fs_in:
        touch_in.update(emb.face_vertices(emb.faces[f]))
    for f in non_outer:
        if touch_in & set(emb.face_vertices(emb.faces[f])):
            return False
    between = fs_out - fs_in
    if not between:
        return True
    try:
        inner_bd = {
            frozenset(d[0] for d in cyc)
            for cyc in region_from_faces(emb, fs_in).boundary
        }
        piece = extract_region(emb, between)
    except RegionError:
        return False
    sub = piece.embedding
    genus = sub.genus_by_component
    if any(g != 0 for g in genus):
        return False
    cov = sub._component_of_vertex
    inner_caps = [0] * len(sub.components)
    for c in piece.cap_faces:
        walk = sub.faces[c].walk
        if frozenset(d[0] for d in walk) in inner_bd:
            inner_caps[cov[sub.tail(walk[0])]] += 1
    return all(k == 1 for k in inner_caps)
