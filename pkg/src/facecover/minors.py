"""Rooted K_{2,t}-minor certificates.

A model assigns pairwise disjoint connected branch sets to the two centers
x1, x2 and to the t satellites y1..yt; the host graph must contain an edge
between each center set and each satellite set, and every satellite set must
contain a root.  verify_model rechecks every clause from scratch and lists
the violated ones, so models can be trusted across module boundaries.
"""

from dataclasses import dataclass
from typing import Any, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx

from .errors import ModelError

__all__ = [
    "RootedK2tModel",
    "verify_model",
    "model_from_trees",
]


def _vkey(v) -> Tuple:
    # deterministic order over mixed vertex label types
    return (0, v, "") if isinstance(v, int) else (1, 0, repr(v))


@dataclass(frozen=True)
class RootedK2tModel:
    """Branch sets of a rooted K_{2,t} minor.

    witness_edges[i][j], when present, names one host edge joining
    centers[i] to satellites[j]; verify_model recomputes existence either
    way, so parsers may leave it None.
    """

    centers: Tuple[FrozenSet[Any], FrozenSet[Any]]
    satellites: Tuple[FrozenSet[Any], ...]
    witness_edges: Optional[
        Tuple[Tuple[Tuple[Any, Any], ...], Tuple[Tuple[Any, Any], ...]]
    ] = None

    @property
    def t(self) -> int:
        return len(self.satellites)

    def branch_sets(self) -> List[Tuple[str, FrozenSet[Any]]]:
        named = [("x1", self.centers[0]), ("x2", self.centers[1])]
        named += [(f"y{j + 1}", s) for j, s in enumerate(self.satellites)]
        return named

    def all_vertices(self) -> Set[Any]:
        out: Set[Any] = set()
        for _, s in self.branch_sets():
            out |= s
        return out


def _as_graph(graph) -> nx.Graph:
    if hasattr(graph, "to_networkx"):
        return graph.to_networkx()
    return graph


def verify_model(graph, roots: Iterable[Any], model: RootedK2tModel):
    """Check a model clause by clause; returns (ok, diagnostics)."""
    g = _as_graph(graph)
    rootset = set(roots)
    diags: List[str] = []
    named = model.branch_sets()

    owner = {}
    for name, s in named:
        if not s:
            diags.append(f"empty branch set {name}")
        for v in s:
            if v not in g:
                diags.append(f"{name} contains non-vertex {v!r}")
            elif v in owner:
                diags.append(f"overlapping branch sets {owner[v]} and {name}: {v!r}")
            else:
                owner[v] = name

    for name, s in named:
        live = [v for v in s if v in g]
        if live and not nx.is_connected(g.subgraph(live)):
            diags.append(f"disconnected branch set {name}")

    for i, c in enumerate(model.centers):
        for j, s in enumerate(model.satellites):
            if not any(g.has_edge(u, v) for u in c for v in s):
                diags.append(f"missing edge x{i + 1}-y{j + 1}")

    if model.witness_edges is not None:
        for i, row in enumerate(model.witness_edges):
            for j, (u, v) in enumerate(row):
                if not g.has_edge(u, v):
                    diags.append(f"witness x{i + 1}-y{j + 1} is not a host edge")
                elif not (
                    (u in model.centers[i] and v in model.satellites[j])
                    or (v in model.centers[i] and u in model.satellites[j])
                ):
                    diags.append(f"witness x{i + 1}-y{j + 1} joins the wrong sets")

    for j, s in enumerate(model.satellites):
        if not (s & rootset):
            diags.append(f"unrooted satellite {j + 1}")

    return (not diags, diags)


def model_from_trees(
    graph, roots: Iterable[Any], tree_a: nx.Graph, tree_b: nx.Graph, shared: Iterable[Any]
) -> RootedK2tModel:
    """Assemble a model from two edge-disjoint trees touching at a root set.

    Both trees must have at least three vertices, meet exactly in `shared`,
    and every shared vertex must be a leaf of both and a root.  Centers are
    the trees minus the shared leaves (connected since leaf removal keeps a
    tree connected); satellites are the shared singletons.
    """
    g = _as_graph(graph)
    s = set(shared)
    rootset = set(roots)
    for label, t in (("first", tree_a), ("second", tree_b)):
        if t.number_of_nodes() < 3:
            raise ModelError(f"{label} tree has fewer than 3 vertices")
        if not nx.is_tree(t):
            raise ModelError(f"{label} tree is not a tree")
        for u, v in t.edges():
            if not g.has_edge(u, v):
                raise ModelError(f"{label} tree edge {u!r}-{v!r} not in host graph")
    va, vb = set(tree_a), set(tree_b)
    if va & vb != s:
        raise ModelError("trees meet outside the declared shared set")
    ea = {frozenset(e) for e in tree_a.edges()}
    eb = {frozenset(e) for e in tree_b.edges()}
    if ea & eb:
        raise ModelError("trees share an edge")
    for v in s:
        if tree_a.degree(v) != 1 or tree_b.degree(v) != 1:
            raise ModelError(f"shared vertex {v!r} is not a leaf of both trees")
        if v not in rootset:
            raise ModelError(f"shared vertex {v!r} is not a root")

    order = sorted(s, key=_vkey)
    centers = (frozenset(va - s), frozenset(vb - s))
    satellites = tuple(frozenset([v]) for v in order)
    rows = []
    for tree in (tree_a, tree_b):
        row = []
        for v in order:
            (nbr,) = tree[v]
            row.append((nbr, v))
        rows.append(tuple(row))
    model = RootedK2tModel(centers, satellites, (rows[0], rows[1]))
    ok, diags = verify_model(g, rootset, model)
    if not ok:
        raise ModelError("assembled model fails verification: " + "; ".join(diags))
    return model
