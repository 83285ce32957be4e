"""Text serialization for embeddings, rooted graphs, certificates, and hints.

Writers emit a canonical form (fixed ordering, single spaces, trailing
newline) so write/parse/write round trips are byte-identical.  Parsers skip
blank lines and '#' comments and raise MalformedInput with a line number on
anything else they cannot read.

Embedded graphs (.emb) carry the full rotation system:

    emb 1
    V 4
    E 6
    edge 0 0 1 1          # edge id, tail, head, signature
    rot 0 0+ 1+ 2+        # cyclic dart order; k+ is the tail dart of edge k
    ...
    roots 0 2             # optional

Abstract rooted graphs (.rg) drop the rotation lines and signatures.
Certificates are single lines, either `cover f3 f17 ...` or
`model x1: ... ; x2: ... ; y1: ... ; ...`.  Hint sidecars list nested
cycle pairs by vertex sequence (`inner i v...` / `outer i v...`).
"""

import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Tuple, Union

import networkx as nx

from .embedding import Dart, RotationEmbedding
from .errors import MalformedInput
from .minors import RootedK2tModel

__all__ = [
    "write_emb",
    "parse_emb",
    "write_rg",
    "parse_rg",
    "write_cover",
    "write_model",
    "write_certificate",
    "parse_certificate",
    "K4Hint",
    "write_hint",
    "parse_hint",
    "sniff",
]

_DART_RE = re.compile(r"^(\d+)([+-])$")


def _dart_token(d: Dart) -> str:
    return f"{d[0]}{'+' if d[1] == 0 else '-'}"


def _content_lines(text: str) -> List[Tuple[int, List[str]]]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((i, line.split()))
    return out


def _fail(lineno: int, msg: str) -> "MalformedInput":
    return MalformedInput(f"line {lineno}: {msg}")


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise _fail(lineno, f"{what} {tok!r} is not an integer") from None


# -- embedded graphs ---------------------------------------------------------


def write_emb(emb: RotationEmbedding) -> str:
    if not all(isinstance(v, int) for v in emb.rotations):
        raise ValueError("serialization needs integer vertex labels; relabel first")
    lines = ["emb 1", f"V {emb.n_vertices}", f"E {emb.n_edges}"]
    for e in sorted(emb.edges):
        u, v, sig = emb.edges[e]
        lines.append(f"edge {e} {u} {v} {sig}")
    for v in sorted(emb.rotations):
        toks = " ".join(_dart_token(d) for d in emb.rotations[v])
        lines.append(f"rot {v} {toks}".rstrip())
    if emb.roots:
        lines.append("roots " + " ".join(str(r) for r in sorted(emb.roots)))
    return "\n".join(lines) + "\n"


def parse_emb(text: str) -> RotationEmbedding:
    lines = _content_lines(text)
    if not lines or lines[0][1] != ["emb", "1"]:
        raise MalformedInput("missing 'emb 1' header")
    if len(lines) < 3 or lines[1][1][0] != "V" or lines[2][1][0] != "E":
        raise MalformedInput("expected 'V n' then 'E m' after the header")
    n = _int(lines[1][1][1], lines[1][0], "vertex count")
    m = _int(lines[2][1][1], lines[2][0], "edge count")

    edges: Dict[int, Tuple[int, int, int]] = {}
    rotations: Dict[int, Tuple[Dart, ...]] = {}
    roots: List[int] = []
    saw_roots = False
    for lineno, toks in lines[3:]:
        kind = toks[0]
        if kind == "edge":
            if len(toks) != 5:
                raise _fail(lineno, "edge lines are 'edge k u v sig'")
            k = _int(toks[1], lineno, "edge id")
            if k in edges:
                raise _fail(lineno, f"duplicate edge id {k}")
            u = _int(toks[2], lineno, "endpoint")
            v = _int(toks[3], lineno, "endpoint")
            sig = _int(toks[4], lineno, "signature")
            edges[k] = (u, v, sig)
        elif kind == "rot":
            if len(toks) < 2:
                raise _fail(lineno, "rot lines are 'rot v d1 d2 ...'")
            v = _int(toks[1], lineno, "vertex")
            if v in rotations:
                raise _fail(lineno, f"duplicate rot line for vertex {v}")
            darts = []
            for tok in toks[2:]:
                mm = _DART_RE.match(tok)
                if not mm:
                    raise _fail(lineno, f"bad dart token {tok!r}")
                darts.append((int(mm.group(1)), 0 if mm.group(2) == "+" else 1))
            rotations[v] = tuple(darts)
        elif kind == "roots":
            if saw_roots:
                raise _fail(lineno, "second roots line")
            saw_roots = True
            roots = [_int(tok, lineno, "root") for tok in toks[1:]]
        else:
            raise _fail(lineno, f"unknown directive {kind!r}")
    if len(edges) != m:
        raise MalformedInput(f"header promises {m} edges, found {len(edges)}")
    if len(rotations) != n:
        raise MalformedInput(f"header promises {n} vertices, found {len(rotations)}")
    return RotationEmbedding(rotations, edges, roots)


# -- abstract rooted graphs --------------------------------------------------


def write_rg(graph: nx.Graph, roots: Iterable[int] = ()) -> str:
    if not all(isinstance(v, int) for v in graph):
        raise ValueError("serialization needs integer vertex labels; relabel first")
    rows = sorted(tuple(sorted((u, v))) for u, v in graph.edges())
    lines = ["rg 1", f"V {graph.number_of_nodes()}", f"E {len(rows)}"]
    for k, (u, v) in enumerate(rows):
        lines.append(f"edge {k} {u} {v}")
    isolated = sorted(v for v in graph if graph.degree(v) == 0)
    if isolated:
        lines.append("isolated " + " ".join(str(v) for v in isolated))
    rts = sorted(set(roots))
    if rts:
        lines.append("roots " + " ".join(str(r) for r in rts))
    return "\n".join(lines) + "\n"


def parse_rg(text: str) -> Tuple[nx.MultiGraph, FrozenSet[int]]:
    lines = _content_lines(text)
    if not lines or lines[0][1] != ["rg", "1"]:
        raise MalformedInput("missing 'rg 1' header")
    if len(lines) < 3 or lines[1][1][0] != "V" or lines[2][1][0] != "E":
        raise MalformedInput("expected 'V n' then 'E m' after the header")
    n = _int(lines[1][1][1], lines[1][0], "vertex count")
    m = _int(lines[2][1][1], lines[2][0], "edge count")
    g = nx.MultiGraph()
    roots: List[int] = []
    seen_ids = set()
    for lineno, toks in lines[3:]:
        kind = toks[0]
        if kind == "edge":
            if len(toks) != 4:
                raise _fail(lineno, "edge lines are 'edge k u v'")
            k = _int(toks[1], lineno, "edge id")
            if k in seen_ids:
                raise _fail(lineno, f"duplicate edge id {k}")
            seen_ids.add(k)
            u = _int(toks[2], lineno, "endpoint")
            v = _int(toks[3], lineno, "endpoint")
            g.add_edge(u, v)
        elif kind == "isolated":
            g.add_nodes_from(_int(tok, lineno, "vertex") for tok in toks[1:])
        elif kind == "roots":
            roots = [_int(tok, lineno, "root") for tok in toks[1:]]
        else:
            raise _fail(lineno, f"unknown directive {kind!r}")
    if g.number_of_edges() != m:
        raise MalformedInput(f"header promises {m} edges, found {g.number_of_edges()}")
    if g.number_of_nodes() != n:
        raise MalformedInput(
            f"header promises {n} vertices, found {g.number_of_nodes()}"
        )
    bad = [r for r in roots if r not in g]
    if bad:
        raise MalformedInput(f"roots {bad} are not vertices")
    return g, frozenset(roots)


# -- certificates ------------------------------------------------------------


def write_cover(faces: Iterable[int]) -> str:
    return "cover " + " ".join(f"f{i}" for i in sorted(set(faces))) + "\n"


def write_model(model: RootedK2tModel) -> str:
    parts = []
    for name, s in model.branch_sets():
        if not all(isinstance(v, int) for v in s):
            raise ValueError("serialization needs integer vertex labels")
        parts.append(f"{name}: " + " ".join(str(v) for v in sorted(s)))
    return "model " + " ; ".join(parts) + "\n"


def write_certificate(cert: Union[Iterable[int], RootedK2tModel]) -> str:
    if isinstance(cert, RootedK2tModel):
        return write_model(cert)
    return write_cover(cert)


def parse_certificate(text: str) -> Union[FrozenSet[int], RootedK2tModel]:
    lines = _content_lines(text)
    if len(lines) != 1:
        raise MalformedInput("a certificate is a single line")
    lineno, toks = lines[0]
    if toks[0] == "cover":
        faces = []
        for tok in toks[1:]:
            if not tok.startswith("f"):
                raise _fail(lineno, f"cover entries look like f12, got {tok!r}")
            faces.append(_int(tok[1:], lineno, "face id"))
        return frozenset(faces)
    if toks[0] == "model":
        groups = []
        cur_name, cur = None, []
        for tok in toks[1:]:
            if tok == ";":
                groups.append((cur_name, cur))
                cur_name, cur = None, []
            elif tok.endswith(":"):
                if cur_name is not None:
                    raise _fail(lineno, f"unexpected label {tok!r}")
                cur_name = tok[:-1]
            else:
                if cur_name is None:
                    raise _fail(lineno, f"vertex {tok!r} before any label")
                cur.append(_int(tok, lineno, "vertex"))
        if cur_name is not None:
            groups.append((cur_name, cur))
        names = [name for name, _ in groups]
        t = len(groups) - 2
        if t < 1 or names[:2] != ["x1", "x2"]:
            raise _fail(lineno, "model needs x1, x2, then y1..yt")
        if names[2:] != [f"y{j}" for j in range(1, t + 1)]:
            raise _fail(lineno, "satellite labels must be y1..yt in order")
        sets = [frozenset(vs) for _, vs in groups]
        if not all(sets):
            raise _fail(lineno, "empty branch set in certificate")
        return RootedK2tModel((sets[0], sets[1]), tuple(sets[2:]))
    raise _fail(lineno, f"unknown certificate kind {toks[0]!r}")


# -- hint sidecars -----------------------------------------------------------


@dataclass(frozen=True)
class K4Hint:
    """Nested cycle pairs guiding a projective-plane cover.

    inner[i] bounds a closed disk (for the intended use, the face closures
    of an embedded K4 subdivision, which jointly cover the projective
    plane); outer[i] is a cycle bounding a larger disk around it.  Cycles
    are vertex sequences without the repeated endpoint.
    """

    inner: Tuple[Tuple[int, ...], ...]
    outer: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.inner) != len(self.outer):
            raise ValueError("inner/outer cycle counts differ")


def write_hint(hint: K4Hint) -> str:
    lines = ["hint 1"]
    for i, cyc in enumerate(hint.inner, start=1):
        lines.append(f"inner {i} " + " ".join(str(v) for v in cyc))
    for i, cyc in enumerate(hint.outer, start=1):
        lines.append(f"outer {i} " + " ".join(str(v) for v in cyc))
    return "\n".join(lines) + "\n"


def parse_hint(text: str) -> K4Hint:
    lines = _content_lines(text)
    if not lines or lines[0][1] != ["hint", "1"]:
        raise MalformedInput("missing 'hint 1' header")
    inner: Dict[int, Tuple[int, ...]] = {}
    outer: Dict[int, Tuple[int, ...]] = {}
    for lineno, toks in lines[1:]:
        if toks[0] not in ("inner", "outer") or len(toks) < 3:
            raise _fail(lineno, "hint lines are 'inner i v...' or 'outer i v...'")
        i = _int(toks[1], lineno, "cycle index")
        cyc = tuple(_int(tok, lineno, "vertex") for tok in toks[2:])
        store = inner if toks[0] == "inner" else outer
        if i in store:
            raise _fail(lineno, f"duplicate {toks[0]} cycle {i}")
        store[i] = cyc
    if sorted(inner) != sorted(outer) or sorted(inner) != list(
        range(1, len(inner) + 1)
    ):
        raise MalformedInput("hint cycles must pair up as 1..k")
    order = range(1, len(inner) + 1)
    return K4Hint(tuple(inner[i] for i in order), tuple(outer[i] for i in order))


def sniff(text: str) -> str:
    """Return the format tag of the first content line: emb, rg, hint, cover, model."""
    lines = _content_lines(text)
    if not lines:
        raise MalformedInput("empty input")
    tag = lines[0][1][0]
    if tag in ("emb", "rg", "hint", "cover", "model"):
        return tag
    raise MalformedInput(f"unrecognized format {tag!r}")
