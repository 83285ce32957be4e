"""Ground-truth brute-force engines.

brute_force_rooted_k2t performs a complete search for a rooted K_{2,t}
model.  It enumerates one center as a connected vertex set, then grows the
t satellites (disjoint connected sets, each containing an unused root and
a neighbor of the first center), and finally looks for a free component
adjacent to every satellite to serve as the second center.  Taking the
whole free component is lossless: enlarging a center keeps every model
clause valid, so a model exists iff one of this restricted shape exists.

Satellite families are enumerated once each by requiring their minimum
vertices to increase, and connected sets are enumerated by the standard
include/exclude frontier recursion on bitmasks, so the scan is exhaustive
without repetition.  Absence is reported only when the whole space was
searched within budget; running out of budget raises instead.
"""

from __future__ import annotations

import time
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .errors import BudgetExceeded, PreconditionError
from .minors import RootedK2tModel, verify_model, _as_graph

__all__ = [
    "verify_model",
    "brute_force_rooted_k2t",
    "max_face_independent_set",
]


class _Deadline:
    __slots__ = ("at", "ticks")

    def __init__(self, budget: Optional[float]):
        self.at = None if budget is None else time.monotonic() + budget
        self.ticks = 0

    def tick(self) -> None:
        self.ticks += 1
        if self.at is not None and self.ticks % 2048 == 0:
            if time.monotonic() > self.at:
                raise BudgetExceeded("rooted minor search ran out of budget")


def _connected_supersets(adj: List[int], base: int, ext: int, banned: int, cap: int):
    """Yield every connected set obtained by growing base inside the frontier,
    each exactly once.  base must be connected; ext holds the allowed
    frontier of base; banned vertices stay out of this subtree."""
    yield base
    if bin(base).count("1") >= cap:
        return
    while ext:
        v = ext & -ext
        ext &= ext - 1
        grown = base | v
        new_ext = ext | (_nbr(adj, v) & ~banned & ~grown & ~ext)
        yield from _connected_supersets(adj, grown, new_ext & ~banned, banned, cap)
        banned |= v


def _nbr(adj: List[int], bit: int) -> int:
    return adj[bit.bit_length() - 1]


def _neighborhood(adj: List[int], mask: int) -> int:
    out = 0
    m = mask
    while m:
        v = m & -m
        m &= m - 1
        out |= _nbr(adj, v)
    return out & ~mask


def _components(adj: List[int], mask: int) -> List[int]:
    comps = []
    left = mask
    while left:
        seed = left & -left
        comp = seed
        frontier = seed
        while frontier:
            frontier = _neighborhood(adj, comp) & mask & ~comp
            comp |= frontier
        comps.append(comp)
        left &= ~comp
    return comps


def brute_force_rooted_k2t(
    graph: Any,
    roots: Iterable[Any],
    t: int,
    budget: Optional[float] = None,
) -> Optional[RootedK2tModel]:
    """Search exhaustively for a rooted K_{2,t} model.

    Returns a verified model, or None when the exhausted search proves none
    exists.  Raises BudgetExceeded when the time budget (seconds) runs out
    first; no absence claim is implied in that case.
    """
    if not isinstance(t, int) or t < 1:
        raise PreconditionError("satellite count t must be a positive integer")
    g = _as_graph(graph)
    verts = sorted(g.nodes)
    n = len(verts)
    index = {v: i for i, v in enumerate(verts)}
    rootset = frozenset(roots)
    for r in rootset:
        if r not in index:
            raise PreconditionError(f"root {r!r} is not a vertex")
    adj = [0] * n
    for u, w in g.edges():
        if u == w:
            continue
        adj[index[u]] |= 1 << index[w]
        adj[index[w]] |= 1 << index[u]
    root_mask = 0
    for r in rootset:
        root_mask |= 1 << index[r]
    if bin(root_mask).count("1") < t or n < t + 2:
        return None

    deadline = _Deadline(budget)
    full = (1 << n) - 1

    def to_set(mask: int) -> FrozenSet[Any]:
        return frozenset(verts[i] for i in range(n) if mask >> i & 1)

    def pack(
        level: int, free: int, min_floor: int, sats: List[int], a1: int
    ) -> Optional[Tuple[int, List[int]]]:
        """Place satellites level..t-1 inside free, minima above min_floor;
        returns (second center mask, satellite masks) or None."""
        deadline.tick()
        if level == t:
            for comp in _components(adj, free):
                nc = _neighborhood(adj, comp)
                if all(nc & y for y in sats):
                    return comp, []
            return None
        remaining = t - level
        if bin(free & root_mask).count("1") < remaining:
            return None
        if bin(free & a1).count("1") < remaining:
            return None
        cap = bin(free).count("1") - remaining
        if cap < 1:
            return None
        cand_min = free & ~((1 << min_floor) - 1) if min_floor else free
        while cand_min:
            v = cand_min & -cand_min
            cand_min &= cand_min - 1
            vi = v.bit_length() - 1
            # satellites after this one keep minima above vi; free vertices
            # below vi are reserved for the second center
            allowed = free & ~((v << 1) - 1)
            for y in _connected_supersets(
                adj, v, _nbr(adj, v) & allowed, ~allowed, cap
            ):
                deadline.tick()
                if not (y & root_mask and y & a1):
                    continue
                got = pack(level + 1, free & ~y, vi + 1, sats + [y], a1)
                if got is not None:
                    return got[0], [y] + got[1]
        return None

    hubs: List[Tuple[int, int]] = []
    for s in range(n):
        sv = 1 << s
        allowed_hub = full & ~(sv - 1)
        for x1 in _connected_supersets(
            adj, sv, _nbr(adj, sv) & allowed_hub, ~allowed_hub, n - t - 1
        ):
            deadline.tick()
            hubs.append((bin(x1).count("1"), x1))
    hubs.sort()
    for _, x1 in hubs:
        deadline.tick()
        a1 = _neighborhood(adj, x1)
        if bin(a1).count("1") < t:
            continue
        got = pack(0, full & ~x1, 0, [], a1)
        if got is not None:
            x2, sat_masks = got
            model = RootedK2tModel(
                centers=(to_set(x1), to_set(x2)),
                satellites=tuple(to_set(y) for y in sat_masks),
            )
            ok, diags = verify_model(g, rootset, model)
            if not ok:
                raise AssertionError(f"search built a bad model: {diags}")
            return model
    return None


def max_face_independent_set(
    emb, roots: Optional[Iterable[Any]] = None, limit: int = 40
) -> FrozenSet[Any]:
    """Exact maximum set of roots no two of which lie on a common face."""
    rts = tuple(emb.roots if roots is None else sorted(set(roots), key=repr))
    for r in rts:
        if r not in emb.rotations:
            raise PreconditionError(f"root {r!r} is not a vertex")
    if len(rts) > limit:
        raise PreconditionError(
            f"{len(rts)} roots exceed the exact-search limit of {limit}"
        )
    if not rts:
        return frozenset()
    conflict = nx.Graph()
    conflict.add_nodes_from(rts)
    rset = set(rts)
    for f in emb.faces:
        on_face = sorted(set(emb.face_vertices(f)) & rset, key=repr)
        for i in range(len(on_face)):
            for j in range(i + 1, len(on_face)):
                conflict.add_edge(on_face[i], on_face[j])
    comp = nx.complement(conflict)
    clique, _ = nx.max_weight_clique(comp, weight=None)
    return frozenset(clique)
