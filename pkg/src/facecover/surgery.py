"""Cutting a surface along embedded cycles, and contractibility tests.

cut_along severs the surface along pairwise disjoint simple cycles.  Each
cycle vertex is split in two, each cycle edge doubled; every face of the
input survives unchanged and each cycle contributes one new cuff face
(one-sided cycle) or two (two-sided).  The construction is checked on every
call: all old faces must reappear through the induced side map, the cuff
count must match the cycle's twist, and the Euler genus must drop by the
number of new cuffs (or split additively when the cut disconnects).

Side bookkeeping.  Walking the cycle with local signs s_1 = +1,
s_{i+1} = s_i * lam(e_i), the rotation at v_i splits at the cycle darts
into a forward arc (after the outgoing dart) and a backward arc.  Copy A
of v_i owns the forward arc iff s_i = +1, and the face on relative side r
of the i-th traversal dart moves to copy A iff r * s_i = +1.  Sides keyed
on the canonical dart (e, 0) convert to relative sides by a factor of
-lam(e) when the cycle traverses (e, 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

from .embedding import Dart, EdgeSide, RotationEmbedding, rev
from .errors import MalformedInput, PreconditionError

Cycle = Tuple[Dart, ...]


def check_cycle(emb: RotationEmbedding, darts: Sequence[Dart]) -> Tuple[Any, ...]:
    """Validate a closed walk through distinct vertices; return the vertices."""
    if not darts:
        raise MalformedInput("empty cycle")
    for d in darts:
        if d[0] not in emb.edges or d[1] not in (0, 1):
            raise MalformedInput(f"{d!r} is not a dart of the embedding")
    k = len(darts)
    verts = tuple(emb.tail(d) for d in darts)
    for i in range(k):
        if emb.head(darts[i]) != verts[(i + 1) % k]:
            raise MalformedInput("darts do not chain into a closed walk")
    if len(set(verts)) != k:
        raise PreconditionError("cycle revisits a vertex")
    if len({d[0] for d in darts}) != k:
        raise PreconditionError("cycle revisits an edge")
    return verts


def cycle_twist(emb: RotationEmbedding, darts: Sequence[Dart]) -> int:
    t = 1
    for d in darts:
        t *= emb.signature(d[0])
    return t


def darts_of_vertex_cycle(emb: RotationEmbedding, vertices: Sequence[Any]) -> Cycle:
    """Resolve a vertex cycle to darts, picking the smallest edge id available."""
    k = len(vertices)
    out: List[Dart] = []
    for i in range(k):
        u, w = vertices[i], vertices[(i + 1) % k]
        best = None
        for e, (a, b, _) in emb.edges.items():
            if (a, b) == (u, w):
                cand = (e, 0)
            elif (b, a) == (u, w):
                cand = (e, 1)
            else:
                continue
            if best is None or cand[0] < best[0]:
                best = cand
        if best is None:
            raise MalformedInput(f"no edge from {u!r} to {w!r}")
        out.append(best)
    return tuple(out)


@dataclass(frozen=True)
class CutRecord:
    """Construction data for one cycle, enough to reglue exactly."""

    darts: Cycle
    twist: int
    signs: Tuple[int, ...]
    copy_a: Tuple[Any, ...]  # per cycle vertex, name of its A copy
    copy_b: Tuple[Any, ...]
    edge_a: Tuple[int, ...]  # per cycle edge, id of its A copy
    edge_b: Tuple[int, ...]


@dataclass
class CutResult:
    embedding: RotationEmbedding
    records: List[CutRecord]
    vertex_map: Dict[Any, Any]  # cut vertex -> original vertex
    edge_map: Dict[int, int]  # cut edge id -> original edge id
    face_map: Dict[int, int]  # cut face index -> original face index (no cuffs)
    cuff_faces: List[Tuple[int, ...]]  # per input cycle, final face indices
    twists: List[int]


def _copy_name(v, tag: str):
    return ("cut", tag, v)


def _cut_one(emb: RotationEmbedding, darts: Cycle):
    verts = check_cycle(emb, darts)
    k = len(darts)
    lam = [emb.signature(d[0]) for d in darts]
    signs = [1]
    for i in range(k - 1):
        signs.append(signs[-1] * lam[i])
    twist = signs[-1] * lam[-1]
    cyc_edges = [d[0] for d in darts]
    cyc_vset = set(verts)

    next_eid = max(emb.edges) + 1
    edge_a = list(range(next_eid, next_eid + k))
    edge_b = list(range(next_eid + k, next_eid + 2 * k))
    copy_a = [_copy_name(v, "a") for v in verts]
    copy_b = [_copy_name(v, "b") for v in verts]
    for c in copy_a + copy_b:
        if c in emb.rotations:
            raise MalformedInput(f"vertex name {c!r} already in use")

    # arcs at each cycle vertex
    arc_fwd: List[List[Dart]] = []
    arc_bck: List[List[Dart]] = []
    for i in range(k):
        rot = emb.rotation(verts[i])
        out_d = darts[i]
        in_d = rev(darts[i - 1])
        p = rot.index(out_d)
        fwd: List[Dart] = []
        bck: List[Dart] = []
        cur = fwd
        for j in range(1, len(rot)):
            d = rot[(p + j) % len(rot)]
            if d == in_d:
                cur = bck
                continue
            cur.append(d)
        arc_fwd.append(fwd)
        arc_bck.append(bck)

    # ownership: copy A owns the forward arc iff signs[i] == +1
    owner_of_dart: Dict[Dart, Any] = {}
    for i in range(k):
        a_arc, b_arc = (
            (arc_fwd[i], arc_bck[i]) if signs[i] == 1 else (arc_bck[i], arc_fwd[i])
        )
        for d in a_arc:
            owner_of_dart[d] = copy_a[i]
        for d in b_arc:
            owner_of_dart[d] = copy_b[i]

    def new_endpoint(v, d: Dart):
        if v in cyc_vset and d in owner_of_dart:
            return owner_of_dart[d]
        return v

    cyc_eset = set(cyc_edges)
    edges: Dict[int, Tuple[Any, Any, int]] = {}
    for e, (u, v, sig) in emb.edges.items():
        if e in cyc_eset:
            continue
        edges[e] = (new_endpoint(u, (e, 0)), new_endpoint(v, (e, 1)), sig)
    for i in range(k):
        ni = (i + 1) % k
        if i == k - 1 and twist == -1:
            head_a, head_b = copy_b[ni], copy_a[ni]
        else:
            head_a, head_b = copy_a[ni], copy_b[ni]
        edges[edge_a[i]] = (copy_a[i], head_a, lam[i])
        edges[edge_b[i]] = (copy_b[i], head_b, lam[i])

    # incoming cycle-copy dart at each vertex copy
    inc_at: Dict[Any, Dart] = {}
    for i in range(k):
        pi = (i - 1) % k
        if i == 0 and twist == -1:
            inc_at[copy_a[i]] = (edge_b[pi], 1)
            inc_at[copy_b[i]] = (edge_a[pi], 1)
        else:
            inc_at[copy_a[i]] = (edge_a[pi], 1)
            inc_at[copy_b[i]] = (edge_b[pi], 1)

    rotations: Dict[Any, Tuple[Dart, ...]] = {
        v: rot for v, rot in emb.rotations.items() if v not in cyc_vset
    }
    for i in range(k):
        out_a: Dart = (edge_a[i], 0)
        out_b: Dart = (edge_b[i], 0)
        if signs[i] == 1:
            rotations[copy_a[i]] = tuple([out_a] + arc_fwd[i] + [inc_at[copy_a[i]]])
            rotations[copy_b[i]] = tuple([inc_at[copy_b[i]]] + arc_bck[i] + [out_b])
        else:
            rotations[copy_a[i]] = tuple([inc_at[copy_a[i]]] + arc_bck[i] + [out_a])
            rotations[copy_b[i]] = tuple([out_b] + arc_fwd[i] + [inc_at[copy_b[i]]])

    roots: List[Any] = []
    for r in emb.roots:
        if r in cyc_vset:
            i = verts.index(r)
            roots.extend([copy_a[i], copy_b[i]])
        else:
            roots.append(r)

    new = RotationEmbedding(rotations, edges, roots)

    # Side map.  Sides are keyed on the canonical dart (e, 0); the face on
    # canonical side s sits on relative side s of the traversal dart when the
    # cycle uses (e, 0), and on relative side -s*lam when it uses (e, 1).
    # Relative side r of cycle edge i goes to copy A iff r * signs[i] = +1,
    # and the copy edge's canonical dart points forward, so the new side is r.
    copy_eids = set(edge_a) | set(edge_b)
    side_map: Dict[EdgeSide, EdgeSide] = {}
    for e in edges:
        if e in copy_eids:
            continue
        side_map[(e, 1)] = (e, 1)
        side_map[(e, -1)] = (e, -1)
    for i in range(k):
        for s in (1, -1):
            rel = s if darts[i][1] == 0 else -s * lam[i]
            tgt = edge_a[i] if rel * signs[i] == 1 else edge_b[i]
            side_map[(cyc_edges[i], s)] = (tgt, rel)

    new_fos = new.face_of_side
    face_map: Dict[int, int] = {}
    for face in emb.faces:
        images = {new_fos[side_map[s]] for s in face.sides}
        if len(images) != 1:
            raise AssertionError(f"cut split face {face.index}: {images}")
        face_map[face.index] = images.pop()
    if len(set(face_map.values())) != len(face_map):
        raise AssertionError("cut merged two faces")
    cuffs = tuple(
        sorted(f.index for f in new.faces if f.index not in set(face_map.values()))
    )
    want = 1 if twist == -1 else 2
    if len(cuffs) != want:
        raise AssertionError(f"expected {want} cuff faces, found {len(cuffs)}")
    cuff_total = sum(len(new.faces[c]) for c in cuffs)
    if cuff_total != 2 * k:
        raise AssertionError("cuff boundary length mismatch")
    comps = len(new.components)
    if comps == len(emb.components):
        if new.euler_genus != emb.euler_genus - want:
            raise AssertionError("Euler genus did not drop by the cuff count")
    elif comps == len(emb.components) + 1 and twist == 1:
        if new.euler_genus != emb.euler_genus:
            raise AssertionError("separating cut changed total Euler genus")
    else:
        raise AssertionError("cut produced an impossible component count")

    record = CutRecord(
        darts=tuple(darts),
        twist=twist,
        signs=tuple(signs),
        copy_a=tuple(copy_a),
        copy_b=tuple(copy_b),
        edge_a=tuple(edge_a),
        edge_b=tuple(edge_b),
    )
    vmap = {v: v for v in rotations}
    for i in range(k):
        vmap[copy_a[i]] = verts[i]
        vmap[copy_b[i]] = verts[i]
    emap = {e: e for e in edges}
    for i in range(k):
        emap[edge_a[i]] = cyc_edges[i]
        emap[edge_b[i]] = cyc_edges[i]
    return new, record, vmap, emap, face_map, cuffs, side_map


def cut_along(emb: RotationEmbedding, cycles: Sequence[Sequence[Dart]]) -> CutResult:
    """Cut along pairwise vertex-disjoint simple cycles."""
    vsets = []
    for c in cycles:
        vsets.append(set(check_cycle(emb, c)))
    for i in range(len(vsets)):
        for j in range(i + 1, len(vsets)):
            if vsets[i] & vsets[j]:
                raise PreconditionError("cut cycles share a vertex")

    cur = emb
    records: List[CutRecord] = []
    vertex_map = {v: v for v in emb.rotations}
    edge_map = {e: e for e in emb.edges}
    face_map = {f.index: f.index for f in emb.faces}
    cuff_faces: List[Tuple[int, ...]] = []
    cuff_sides: List[List[EdgeSide]] = []
    twists: List[int] = []
    for cyc in cycles:
        nxt, rec, vmap, emap, fmap, cuffs, smap = _cut_one(cur, tuple(cyc))
        records.append(rec)
        twists.append(rec.twist)
        vertex_map = {v: vertex_map[vmap[v]] for v in vmap}
        edge_map = {e: edge_map[emap[e]] for e in emap}
        # face_map is maintained as current index -> original index; fmap from
        # _cut_one maps pre-cut index -> post-cut index and cuffs stay absent
        face_map = {fmap[mid_f]: orig_f for mid_f, orig_f in face_map.items()}
        # pre-existing cuffs: track one representative side through this cut
        for sides in cuff_sides:
            sides[:] = [smap[s] for s in sides]
        cuff_sides.append([_side_of_face(nxt, c) for c in cuffs])
        cur = nxt
    fos = cur.face_of_side
    for sides in cuff_sides:
        cuff_faces.append(tuple(sorted({fos[s] for s in sides})))
    return CutResult(
        embedding=cur,
        records=records,
        vertex_map=vertex_map,
        edge_map=edge_map,
        face_map=face_map,
        cuff_faces=cuff_faces,
        twists=twists,
    )


def _side_of_face(emb: RotationEmbedding, face_index: int) -> EdgeSide:
    for side, f in emb.face_of_side.items():
        if f == face_index:
            return side
    raise AssertionError("face without sides")


def reglue(result: CutResult, original_roots: Sequence[Any] = ()) -> RotationEmbedding:
    """Invert a cut_along, restoring the exact rotations and edge ids."""
    cur = result.embedding
    for rec in reversed(result.records):
        cur = _reglue_one(cur, rec)
    if original_roots:
        cur = cur.with_roots(original_roots)
    return cur


def _reglue_one(emb: RotationEmbedding, rec: CutRecord) -> RotationEmbedding:
    k = len(rec.darts)
    copy_eids = set(rec.edge_a) | set(rec.edge_b)
    copy_verts = set(rec.copy_a) | set(rec.copy_b)
    # original cycle vertices are recoverable from the copy names
    verts = [c[2] for c in rec.copy_a]

    def back(x):
        return x[2] if x in copy_verts else x

    edges: Dict[int, Tuple[Any, Any, int]] = {}
    for e, (u, v, sig) in emb.edges.items():
        if e in copy_eids:
            continue
        edges[e] = (back(u), back(v), sig)
    for i, d in enumerate(rec.darts):
        e = d[0]
        u = verts[i]
        w = verts[(i + 1) % k]
        tail, head = (u, w) if d[1] == 0 else (w, u)
        edges[e] = (tail, head, emb.signature(rec.edge_a[i]))

    rotations: Dict[Any, Tuple[Dart, ...]] = {
        v: rot for v, rot in emb.rotations.items() if v not in copy_verts
    }
    for i in range(k):
        rot_a = list(emb.rotation(rec.copy_a[i]))
        rot_b = list(emb.rotation(rec.copy_b[i]))
        if rec.signs[i] == 1:
            fwd = rot_a[1:-1]
            bck = rot_b[1:-1]
        else:
            fwd = rot_b[1:-1]
            bck = rot_a[1:-1]
        out_d = rec.darts[i]
        in_d = rev(rec.darts[i - 1])
        rotations[verts[i]] = tuple([out_d] + fwd + [in_d] + bck)

    roots = []
    for r in emb.roots:
        rr = r[2] if r in copy_verts else r
        if rr not in roots:
            roots.append(rr)
    return RotationEmbedding(rotations, edges, roots)


def is_contractible(emb: RotationEmbedding, cycle: Sequence[Dart]) -> bool:
    """True iff the simple cycle bounds a disk in the surface."""
    check_cycle(emb, cycle)
    if cycle_twist(emb, cycle) == -1:
        return False
    before = len(emb.components)
    res = cut_along(emb, [tuple(cycle)])
    cut = res.embedding
    if len(cut.components) == before:
        return False
    cov = cut._component_of_vertex
    genus = cut.genus_by_component
    tails = [cut.tail(cut.faces[f].walk[0]) for f in res.cuff_faces[0]]
    return any(genus[cov[t]] == 0 for t in tails)


def is_separating(emb: RotationEmbedding, cycle: Sequence[Dart]) -> bool:
    if cycle_twist(emb, cycle) == -1:
        return False
    res = cut_along(emb, [tuple(cycle)])
    return len(res.embedding.components) > len(emb.components)
