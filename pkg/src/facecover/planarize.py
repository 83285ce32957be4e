"""Planarizing a positive-genus embedding by cutting along disjoint cycles.

The cycle set is grown greedily: take a shortest cycle of the current cut
graph with nonzero mod-2 homology signature (hence noncontractible and
nonseparating) that avoids the vertex copies made by earlier cuts, cut
along it, repeat until the Euler genus is exhausted.  Cutting leaves
off-cycle edges untouched (ids, endpoints, signatures), so each cycle
found this way reads verbatim as a cycle of the host, and the final object
is one simultaneous cut of the host along pairwise disjoint cycles.

Every successful cut drops the Euler genus by exactly its cuff count and
keeps the graph connected, so the cut graph ends up a single sphere with
eg(host) boundary cuffs and the cycle set is inclusion-minimal.  Both
facts, and exact invertibility of the cut, are rechecked on every call.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from .embedding import Dart, RotationEmbedding, rev
from .errors import NestError, PreconditionError
from .surgery import CutResult, Cycle, check_cycle, cut_along, reglue
from .width import shortest_noncontractible_cycle

__all__ = ["Cuff", "Planarization", "planarize"]


@dataclass(frozen=True)
class Cuff:
    """One boundary cycle of the cut graph."""

    cycle_index: int  # which planarizing cycle produced it
    face: int  # cuff face index in the cut graph
    walk: Cycle  # the facial walk, a simple cycle of the cut graph
    one_sided: bool


@dataclass
class Planarization:
    """A minimal planarizing cycle set together with the cut it induces.

    cut_cycles live in the host; the cut graph is a sphere whose cuff
    faces stand in for the boundary (capping them is a no-op, so disk
    regions of the cut graph are disk regions of the capped sphere).
    dart_map projects cut-graph darts to host darts; composed with the
    cut's vertex map it is the identity off the cuffs and two-to-one on
    them.
    """

    host: RotationEmbedding
    cut_cycles: Tuple[Cycle, ...]
    cut: CutResult
    cuffs: Tuple[Cuff, ...]
    dart_map: Dict[Dart, Dart]

    @property
    def cut_graph(self) -> RotationEmbedding:
        return self.cut.embedding

    @property
    def g(self) -> int:
        return self.host.euler_genus

    def project_vertex(self, v: Any) -> Any:
        return self.cut.vertex_map[v]

    def project_dart(self, d: Dart) -> Dart:
        return self.dart_map[d]

    def project_face(self, f: int) -> Optional[int]:
        """Host face behind a cut-graph face; None for cuff faces."""
        return self.cut.face_map.get(f)

    def project_faces(self, faces) -> frozenset:
        out = set()
        for f in faces:
            h = self.cut.face_map.get(f)
            if h is None:
                raise PreconditionError(f"face {f} is a cuff, it has no image")
            out.add(h)
        return frozenset(out)


def _dart_projection(cut: CutResult) -> Dict[Dart, Dart]:
    out: Dict[Dart, Dart] = {}
    for e in cut.embedding.edges:
        out[(e, 0)] = (e, 0)
        out[(e, 1)] = (e, 1)
    # copy edges: the canonical dart of either copy runs along the cycle
    # traversal, so it projects to the recorded traversal dart
    for rec in cut.records:
        for i, d in enumerate(rec.darts):
            for eid in (rec.edge_a[i], rec.edge_b[i]):
                if (eid, 0) in out:
                    out[(eid, 0)] = d
                    out[(eid, 1)] = rev(d)
    return out


def planarize(emb: RotationEmbedding) -> Planarization:
    """Cut the embedding down to a sphere with eg(emb) boundary cuffs."""
    if not emb.is_connected:
        raise PreconditionError("embedding is not connected")
    g = emb.euler_genus
    if g == 0:
        raise PreconditionError("Euler genus 0: nothing to planarize")

    cycles: List[Cycle] = []
    cur = emb
    res: Optional[CutResult] = None
    while cur.euler_genus > 0:
        avoid = [v for v in cur.rotations if v not in emb.rotations]
        found = shortest_noncontractible_cycle(
            cur, avoid_vertices=avoid, nonseparating=True
        )
        if found is None:
            raise NestError(
                f"planarization stuck at Euler genus {cur.euler_genus}: no "
                f"nonseparating cycle avoids the {len(avoid)} copy vertices "
                f"of the {len(cycles)} cycles cut so far"
            )
        check_cycle(emb, found)  # reads verbatim as a host cycle
        cycles.append(found)
        res = cut_along(emb, cycles)
        cur = res.embedding
    assert res is not None

    if not cur.is_connected:
        raise AssertionError("cut graph disconnected despite nonseparating cuts")
    cuffs: List[Cuff] = []
    for j, faces in enumerate(res.cuff_faces):
        for f in faces:
            walk = cur.faces[f].walk
            check_cycle(cur, walk)
            cuffs.append(
                Cuff(
                    cycle_index=j,
                    face=f,
                    walk=walk,
                    one_sided=res.twists[j] == -1,
                )
            )
    if len(cuffs) != g:
        raise AssertionError(
            f"minimal planarization must leave {g} cuffs, found {len(cuffs)}"
        )
    for j in range(len(cycles)):
        rest = cycles[:j] + cycles[j + 1 :]
        if rest and cut_along(emb, rest).embedding.euler_genus == 0:
            raise AssertionError(f"planarizing cycle {j} is redundant")
    if reglue(res, emb.roots) != emb:
        raise AssertionError("regluing the cut does not recover the host")
    return Planarization(
        host=emb,
        cut_cycles=tuple(cycles),
        cut=res,
        cuffs=tuple(cuffs),
        dart_map=_dart_projection(res),
    )
