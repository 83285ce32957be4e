"""Face width via the radial graph, and Z2 homology of embedded cycles.

The radial graph has one vertex per graph vertex and per face, and one
edge per face corner; a noose meeting the graph in k vertices is a cycle
of length 2k in the radial graph.  Shortest noncontractible cycles obey
the three-path condition, so a shortest one appears among the fundamental
cycles of breadth-first trees rooted at every vertex (every cycle of the
bipartite radial graph passes through both vertex classes, so rooting at
the smaller class suffices).

Homology: fix a spanning tree T of the graph and a spanning tree of the
dual on the edges outside T; the leftover edges X number exactly the
Euler genus.  Each x in X closes a dual cycle D_x through the dual tree,
and these generate H_1 over Z2, so the signature of a cycle C is the
vector of crossing parities |C meet D_x| mod 2.  The mod-2 intersection
pairing is nondegenerate on every closed surface, hence sig(C) = 0 iff C
is null-homologous iff (for simple C) it separates.  A separating cycle
bounds a disk iff one of its two sides has Euler characteristic 1, which
a flood fill over faces decides without cutting.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .embedding import Dart, RotationEmbedding, rev
from .surgery import Cycle, check_cycle
from . import surgery


class HomologyBasis:
    """Z2 homology signatures from a tree-cotree decomposition."""

    def __init__(self, emb: RotationEmbedding):
        tree: set = set()
        visited: set = set()
        for v0 in emb.rotations:
            if v0 in visited:
                continue
            visited.add(v0)
            queue = deque([v0])
            while queue:
                v = queue.popleft()
                for d in emb.rotation(v):
                    w = emb.head(d)
                    if w not in visited:
                        visited.add(w)
                        tree.add(d[0])
                        queue.append(w)

        # spanning forest of the dual restricted to non-tree edges, with
        # parents kept so the paths closing the leftover edges are known
        dual_adj: Dict[int, List[Tuple[int, int]]] = {
            f.index: [] for f in emb.faces
        }
        for e in sorted(emb.edges):
            if e in tree:
                continue
            f1, f2 = emb.sides_of_edge(e)
            dual_adj[f1].append((f2, e))
            if f1 != f2:
                dual_adj[f2].append((f1, e))
        dual_parent: Dict[int, Tuple[int, int]] = {}
        dual_depth: Dict[int, int] = {}
        cotree: set = set()
        for f0 in dual_adj:
            if f0 in dual_depth:
                continue
            dual_depth[f0] = 0
            queue = deque([f0])
            while queue:
                f = queue.popleft()
                for g, e in dual_adj[f]:
                    if g not in dual_depth:
                        dual_depth[g] = dual_depth[f] + 1
                        dual_parent[g] = (f, e)
                        cotree.add(e)
                        queue.append(g)

        x = tuple(sorted(e for e in emb.edges if e not in tree and e not in cotree))
        if len(x) != emb.euler_genus:
            raise AssertionError("leftover edge count disagrees with Euler genus")

        # D_x = x plus the dual tree path between its faces; an edge's mask
        # collects the bits of every D_x it lies on, so a cycle's signature
        # is the xor of its edge masks = crossing parity with each D_x
        mask: Dict[int, int] = {}
        for i, e in enumerate(x):
            bit = 1 << i
            mask[e] = mask.get(e, 0) ^ bit
            f1, f2 = emb.sides_of_edge(e)
            a, b = f1, f2
            da, db = dual_depth[a], dual_depth[b]
            while da > db:
                a, pe = dual_parent[a]
                mask[pe] = mask.get(pe, 0) ^ bit
                da -= 1
            while db > da:
                b, pe = dual_parent[b]
                mask[pe] = mask.get(pe, 0) ^ bit
                db -= 1
            while a != b:
                a, pe = dual_parent[a]
                mask[pe] = mask.get(pe, 0) ^ bit
                b, qe = dual_parent[b]
                mask[qe] = mask.get(qe, 0) ^ bit
        self.embedding = emb
        self.tree_edges = frozenset(tree)
        self.cotree_edges = frozenset(cotree)
        self.x_edges = x
        self._mask = mask

    def signature_of_edges(self, eids: Iterable[int]) -> int:
        sig = 0
        mask = self._mask
        for e in eids:
            sig ^= mask.get(e, 0)
        return sig

    def signature_of_cycle(self, darts: Sequence[Dart]) -> int:
        return self.signature_of_edges(d[0] for d in darts)


def homology_basis(emb: RotationEmbedding) -> HomologyBasis:
    return HomologyBasis(emb)


def bounds_disk(
    emb: RotationEmbedding,
    darts: Sequence[Dart],
    basis: Optional[HomologyBasis] = None,
) -> bool:
    """True iff the simple cycle bounds a disk; no surgery performed.

    A nonzero Z2 class means nonseparating, hence noncontractible.  A zero
    class means the cycle separates; flooding faces outward from each side
    until the smaller side closes yields that side's Euler characteristic,
    and the other side's follows from the component total 2 - eg.
    """
    if basis is None:
        basis = HomologyBasis(emb)
    if basis.signature_of_cycle(darts) != 0:
        return False
    cyc_eids = {d[0] for d in darts}
    fos = emb.face_of_side
    # side A along the cycle is relative side s_i of the i-th dart, with
    # s_1 = +1 and s_{i+1} = s_i * lam(e_i); one-sided cycles cannot reach
    # here because their class is never zero
    seed_a: set = set()
    seed_b: set = set()
    s = 1
    for e, o in darts:
        lam = emb.signature(e)
        sa = s if o == 0 else -s * lam
        seed_a.add(fos[(e, sa)])
        seed_b.add(fos[(e, -sa)])
        s *= lam
    if s == -1:
        raise AssertionError("one-sided cycle with zero signature")
    if seed_a & seed_b:
        raise AssertionError("zero-signature cycle has a face on both sides")

    faces = emb.faces
    qa, qb = deque(sorted(seed_a)), deque(sorted(seed_b))
    seen_a, seen_b = set(seed_a), set(seed_b)

    def expand(q: deque, seen: set) -> None:
        f = q.popleft()
        for d in faces[f].walk:
            e = d[0]
            if e in cyc_eids:
                continue
            f1, f2 = emb.sides_of_edge(e)
            g = f2 if f1 == f else f1
            if g not in seen:
                seen.add(g)
                q.append(g)

    while qa and qb:
        expand(qa, seen_a)
        expand(qb, seen_b)
    if seen_a & seen_b:
        raise AssertionError("cycle with zero signature does not separate")
    side = seen_a if not qa else seen_b
    vs: set = set()
    es: set = set()
    for f in side:
        for d in faces[f].walk:
            vs.add(emb.tail(d))
            es.add(d[0])
    chi = len(vs) - len(es) + len(side)
    if chi == 1:
        return True
    ci = emb._component_of_vertex[emb.tail(darts[0])]
    chi_total = 2 - emb.genus_by_component[ci]
    return chi_total - chi == 1


def shortest_noncontractible_cycle(
    emb: RotationEmbedding,
    avoid_vertices: Iterable[Any] = (),
    roots: Optional[Iterable[Any]] = None,
    nonseparating: bool = False,
) -> Optional[Cycle]:
    """Shortest cycle avoiding the given vertices that is noncontractible.

    Scans fundamental cycles of truncated breadth-first trees from every
    root (default: all vertices outside avoid_vertices).  Callers passing
    explicit roots must guarantee every relevant cycle meets them, as the
    three-path argument roots the search on the cycle itself.  Returns
    None when no noncontractible cycle survives the restrictions.

    With nonseparating=True only cycles with nonzero mod-2 homology
    signature qualify; those never separate, and one exists whenever the
    component carries positive Euler genus.
    """
    if emb.euler_genus == 0:
        return None
    avoid = set(avoid_vertices)
    basis = HomologyBasis(emb)
    order = [v for v in emb.rotations if v not in avoid]
    idx = {v: i for i, v in enumerate(order)}
    n = len(order)
    adj: List[List[Tuple[int, int, Dart]]] = [[] for _ in range(n)]
    for v in order:
        vi = idx[v]
        for d in emb.rotation(v):
            w = emb.head(d)
            if w in avoid:
                continue
            adj[vi].append((idx[w], d[0], d))

    cov = emb._component_of_vertex
    comp_genus = emb.genus_by_component
    if roots is None:
        root_ids = [i for i in range(n) if comp_genus[cov[order[i]]] > 0]
    else:
        root_ids = [idx[r] for r in roots if r in idx]

    depth = [-1] * n
    parent_eid = [-1] * n
    parent_dart: List[Optional[Dart]] = [None] * n
    stamp = [-1] * n

    best_len: Optional[int] = None
    best: Optional[Cycle] = None
    tested: set = set()

    for run, r in enumerate(root_ids):
        cap = n if best_len is None else (best_len - 1) // 2
        stamp[r] = run
        depth[r] = 0
        parent_eid[r] = -1
        bfs = deque([r])
        seen_order = [r]
        while bfs:
            x = bfs.popleft()
            if depth[x] >= cap:
                continue
            for yi, e, d in adj[x]:
                if stamp[yi] != run:
                    stamp[yi] = run
                    depth[yi] = depth[x] + 1
                    parent_eid[yi] = e
                    parent_dart[yi] = d
                    bfs.append(yi)
                    seen_order.append(yi)
        for x in seen_order:
            for yi, e, d in adj[x]:
                if stamp[yi] != run:
                    continue
                if e == parent_eid[x] or e == parent_eid[yi]:
                    continue
                if x == yi:
                    if d[1] != 0:
                        continue
                    cand: Tuple[Dart, ...] = (d,)
                elif x < yi:
                    dx, dy = depth[x], depth[yi]
                    if best_len is not None and dx + dy + 1 >= best_len:
                        stop = dx + dy + 1 - best_len
                    else:
                        stop = -1
                    px, py = x, yi
                    cx, cy = dx, dy
                    ok = True
                    while cx != cy:
                        if cx > cy:
                            px = idx[emb.tail(parent_dart[px])]
                            cx -= 1
                        else:
                            py = idx[emb.tail(parent_dart[py])]
                            cy -= 1
                    while px != py:
                        if 2 * cx <= stop:
                            ok = False
                            break
                        px = idx[emb.tail(parent_dart[px])]
                        py = idx[emb.tail(parent_dart[py])]
                        cx -= 1
                    if not ok:
                        continue
                    length = dx + dy + 1 - 2 * cx
                    if best_len is not None and length >= best_len:
                        continue
                    down: List[Dart] = []
                    v = x
                    while v != px:
                        down.append(parent_dart[v])
                        v = idx[emb.tail(parent_dart[v])]
                    down.reverse()
                    up: List[Dart] = []
                    v = yi
                    while v != px:
                        up.append(rev(parent_dart[v]))
                        v = idx[emb.tail(parent_dart[v])]
                    cand = tuple(down) + (d,) + tuple(up)
                else:
                    continue
                if best_len is not None and len(cand) >= best_len:
                    continue
                key = frozenset(c[0] for c in cand)
                if key in tested:
                    continue
                tested.add(key)
                if basis.signature_of_cycle(cand) == 0:
                    if nonseparating:
                        continue
                    if bounds_disk(emb, cand, basis):
                        continue
                check_cycle(emb, cand)
                best_len = len(cand)
                best = cand
    if best is None and not avoid and roots is None:
        raise AssertionError("positive genus but no noncontractible cycle found")
    return best


def face_width(emb: RotationEmbedding, *, with_noose: bool = False):
    """Minimum number of vertices met by a noncontractible noose.

    Returns math.inf on the sphere.  With with_noose=True returns a pair
    (width, noose), the noose given as the alternating ('v', vertex) /
    ('f', face index) sequence from the radial graph.
    """
    if emb.euler_genus == 0:
        return (math.inf, None) if with_noose else math.inf
    radial = emb.radial()
    n_v = sum(1 for v in radial.rotations if v[0] == "v")
    side = "v" if 2 * n_v <= radial.n_vertices else "f"
    roots = [v for v in radial.rotations if v[0] == side]
    cyc = shortest_noncontractible_cycle(radial, roots=roots)
    if cyc is None or len(cyc) % 2 != 0:
        raise AssertionError("radial scan failed to produce a noose")
    noose = tuple(radial.tail(d) for d in cyc)
    k = min(i for i, lab in enumerate(noose) if lab[0] == "v")
    noose = noose[k:] + noose[:k]
    width = len(cyc) // 2
    return (width, noose) if with_noose else width


# -- exhaustive oracle -------------------------------------------------------


def noncontractible_cycles_up_to(
    emb: RotationEmbedding, max_len: int
) -> Optional[Cycle]:
    """Shortest noncontractible cycle of length <= max_len by exhaustion.

    Independent of the signature machinery: every candidate is tested by
    actually cutting.  Intended for small instances and cross-checks.
    """
    order = {v: i for i, v in enumerate(emb.rotations)}
    adj: Dict[Any, List[Tuple[Any, int, Dart]]] = {v: [] for v in emb.rotations}
    for v in emb.rotations:
        for d in emb.rotation(v):
            adj[v].append((emb.head(d), d[0], d))
    for v in adj:
        adj[v].sort(key=lambda t: (order[t[0]], t[1], t[2]))

    best: Optional[Cycle] = None
    tested: set = set()

    def limit() -> int:
        return max_len if best is None else len(best) - 1

    def consider(cand: Tuple[Dart, ...]) -> None:
        nonlocal best
        key = frozenset(c[0] for c in cand)
        if key in tested:
            return
        tested.add(key)
        if not surgery.is_contractible(emb, cand):
            best = cand

    path: List[Dart] = []
    used: set = set()
    onpath: set = set()

    def dfs(v0: Any, v: Any) -> None:
        for w, e, d in adj[v]:
            if e in used:
                continue
            if w == v0 and len(path) + 1 <= limit():
                consider(tuple(path) + (d,))
            if (
                w != v0
                and w not in onpath
                and order[w] > order[v0]
                and len(path) + 1 < limit()
            ):
                path.append(d)
                used.add(e)
                onpath.add(w)
                dfs(v0, w)
                path.pop()
                used.remove(e)
                onpath.remove(w)

    for v0 in emb.rotations:
        if limit() < 1:
            break
        dfs(v0, v0)
    return best


def face_width_oracle(emb: RotationEmbedding, cap: Optional[int] = None):
    """face_width by exhaustive noose enumeration (small instances only)."""
    if emb.euler_genus == 0:
        return math.inf
    radial = emb.radial()
    top = cap if cap is not None else 2 * radial.n_vertices
    for max_len in range(2, top + 1, 2):
        cyc = noncontractible_cycles_up_to(radial, max_len)
        if cyc is not None:
            return len(cyc) // 2
    raise AssertionError("no noncontractible noose within the cap")
