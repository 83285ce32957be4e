"""Face covers of root sets: verification, exact and greedy minimization,
and selection of pairwise face-independent roots.

A face cover is a set of face indices such that every root lies on at
least one chosen face.  Exact minimization runs branch-and-bound over the
root/face incidence system with a greedy warm start and a lower bound from
a greedily packed face-disjoint root set; the greedy mode is the standard
most-uncovered-first heuristic with no optimality claim.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Tuple

from .embedding import RotationEmbedding
from .errors import PreconditionError
from .oracles import max_face_independent_set

__all__ = [
    "IndependentRoots",
    "verify_cover",
    "min_face_cover",
    "face_independent_roots",
]

EXACT_COVER_LIMIT = 60
EXACT_INDEPENDENCE_LIMIT = 40


def _incidence(
    emb: RotationEmbedding, roots: Tuple[Any, ...]
) -> Dict[Any, FrozenSet[int]]:
    on_face: Dict[Any, List[int]] = {r: [] for r in roots}
    rset = set(roots)
    for f in emb.faces:
        for v in set(emb.face_vertices(f)):
            if v in rset:
                on_face[v].append(f.index)
    inc = {}
    for r in roots:
        if r not in emb.rotations:
            raise PreconditionError(f"root {r!r} is not a vertex")
        if not on_face[r]:
            raise PreconditionError(f"root {r!r} lies on no face")
        inc[r] = frozenset(on_face[r])
    return inc


def verify_cover(
    emb: RotationEmbedding, roots: Iterable[Any], faces: Iterable[int]
) -> Tuple[bool, List[str]]:
    """Check that every root is incident to a chosen face."""
    diags = []
    chosen = set(faces)
    n = emb.n_faces
    for f in sorted(chosen):
        if not isinstance(f, int) or not 0 <= f < n:
            diags.append(f"face {f!r} is not a face index of the embedding")
    if diags:
        return False, diags
    covered = set()
    for f in chosen:
        covered.update(emb.face_vertices(emb.faces[f]))
    for r in sorted(set(roots), key=repr):
        if r not in emb.rotations:
            diags.append(f"root {r!r} is not a vertex")
        elif r not in covered:
            diags.append(f"root {r!r} is not covered")
    return not diags, diags


def _greedy_cover(inc: Dict[Any, FrozenSet[int]]) -> FrozenSet[int]:
    uncovered = set(inc)
    chosen: List[int] = []
    while uncovered:
        gain: Dict[int, int] = {}
        for r in uncovered:
            for f in inc[r]:
                gain[f] = gain.get(f, 0) + 1
        f = min(gain, key=lambda k: (-gain[k], k))
        chosen.append(f)
        uncovered = {r for r in uncovered if f not in inc[r]}
    return frozenset(chosen)


def _disjoint_bound(inc: Dict[Any, FrozenSet[int]], uncovered: FrozenSet[Any]) -> int:
    """Greedy count of uncovered roots with pairwise disjoint face sets;
    any cover needs one face per counted root."""
    used: set = set()
    count = 0
    for r in sorted(uncovered, key=lambda r: (len(inc[r]), repr(r))):
        if not inc[r] & used:
            used |= inc[r]
            count += 1
    return count


def min_face_cover(
    emb: RotationEmbedding,
    roots: Optional[Iterable[Any]] = None,
    mode: str = "exact",
) -> FrozenSet[int]:
    """Smallest (exact mode) or small (greedy mode) face cover of the roots."""
    rts = tuple(sorted(set(emb.roots if roots is None else roots), key=repr))
    if not rts:
        return frozenset()
    inc = _incidence(emb, rts)
    if mode == "greedy":
        return _greedy_cover(inc)
    if mode != "exact":
        raise PreconditionError(f"unknown cover mode {mode!r}")
    if len(rts) > EXACT_COVER_LIMIT:
        raise PreconditionError(
            f"{len(rts)} roots exceed the exact cover limit of {EXACT_COVER_LIMIT}"
        )

    best = list(_greedy_cover(inc))
    roots_by_face: Dict[int, List[Any]] = {}
    for r, fs in inc.items():
        for f in fs:
            roots_by_face.setdefault(f, []).append(r)

    def bnb(uncovered: FrozenSet[Any], chosen: List[int]) -> None:
        nonlocal best
        if not uncovered:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + _disjoint_bound(inc, uncovered) >= len(best):
            return
        r = min(uncovered, key=lambda r: (len(inc[r]), repr(r)))
        for f in sorted(inc[r]):
            rest = frozenset(u for u in uncovered if f not in inc[u])
            chosen.append(f)
            bnb(rest, chosen)
            chosen.pop()

    bnb(frozenset(rts), [])
    return frozenset(best)


@dataclass(frozen=True)
class IndependentRoots:
    """Roots no two of which share a face; exact marks a maximum witness."""

    roots: FrozenSet[Any]
    exact: bool


def face_independent_roots(
    emb: RotationEmbedding,
    roots: Optional[Iterable[Any]] = None,
    target: Optional[int] = None,
) -> IndependentRoots:
    """Pairwise face-independent roots: an exact maximum set when few
    enough roots, otherwise a greedy packing (stopped at target if set)."""
    rts = tuple(sorted(set(emb.roots if roots is None else roots), key=repr))
    if not rts:
        return IndependentRoots(frozenset(), True)
    if len(rts) <= EXACT_INDEPENDENCE_LIMIT:
        return IndependentRoots(max_face_independent_set(emb, rts), True)
    inc = _incidence(emb, rts)
    used: set = set()
    picked = []
    for r in sorted(rts, key=lambda r: (len(inc[r]), repr(r))):
        if not inc[r] & used:
            used |= inc[r]
            picked.append(r)
            if target is not None and len(picked) >= target:
                break
    return IndependentRoots(frozenset(picked), False)
