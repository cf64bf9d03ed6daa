"""Finite directed graphs with half-edges, subgraphs and decompositions.

A :class:`Graph` has edges ``0..n_edges-1`` and vertices ``0..n_vertices-1``.
Edge endpoints are vertex indices or ``None`` for the outside point ``*``.
Edges whose source is ``*`` are the graph inputs, edges whose target is
``*`` are the graph outputs; an edge with both ends at ``*`` is free and is
both an input and an output.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

STAR = None


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n_vertices: int
    src: tuple  # src[e] in range(n_vertices) or None
    tgt: tuple

    def __post_init__(self):
        if len(self.src) != len(self.tgt):
            raise GraphError("src and tgt must have one entry per edge")
        for end in itertools.chain(self.src, self.tgt):
            if end is not None and not (0 <= end < self.n_vertices):
                raise GraphError(f"edge endpoint {end} is not a vertex")

    @classmethod
    def from_edges(cls, n_vertices: int, edges: Iterable[tuple]) -> "Graph":
        edges = list(edges)
        return cls(n_vertices, tuple(e[0] for e in edges), tuple(e[1] for e in edges))

    @property
    def n_edges(self) -> int:
        return len(self.src)

    @property
    def edges(self) -> range:
        return range(self.n_edges)

    @property
    def vertices(self) -> range:
        return range(self.n_vertices)

    def __str__(self) -> str:
        return format_graph(self)


def corolla(n: int, m: int) -> Graph:
    """One vertex, ``n`` input half-edges then ``m`` output half-edges."""
    return Graph(1, (None,) * n + (0,) * m, (0,) * n + (None,) * m)


def vertex_io(g: Graph, v: int) -> tuple[frozenset, frozenset]:
    """``(in(v), out(v)) = (t^-1(v), s^-1(v))``."""
    if not (0 <= v < g.n_vertices):
        raise GraphError(f"unknown vertex {v}")
    ins = frozenset(e for e in g.edges if g.tgt[e] == v)
    outs = frozenset(e for e in g.edges if g.src[e] == v)
    return ins, outs


def graph_io(g: Graph) -> tuple[frozenset, frozenset]:
    """``(in(G), out(G)) = (s^-1(*), t^-1(*))``; free edges are in both."""
    ins = frozenset(e for e in g.edges if g.src[e] is None)
    outs = frozenset(e for e in g.edges if g.tgt[e] is None)
    return ins, outs


def edge_kinds(g: Graph) -> dict[str, frozenset]:
    """Partition of the edges into free, input, output and internal edges."""
    kinds: dict[str, set] = {"free": set(), "input": set(), "output": set(), "internal": set()}
    for e in g.edges:
        s, t = g.src[e], g.tgt[e]
        if s is None and t is None:
            kinds["free"].add(e)
        elif s is None:
            kinds["input"].add(e)
        elif t is None:
            kinds["output"].add(e)
        else:
            kinds["internal"].add(e)
    return {k: frozenset(v) for k, v in kinds.items()}


def successors(g: Graph) -> list[list[int]]:
    succ: list[list[int]] = [[] for _ in g.vertices]
    for e in g.edges:
        s, t = g.src[e], g.tgt[e]
        if s is not None and t is not None:
            succ[s].append(t)
    return succ


def is_acyclic(g: Graph) -> bool:
    """No directed cycle through vertices (loops included)."""
    indeg = [0] * g.n_vertices
    succ = successors(g)
    for s in g.vertices:
        for t in succ[s]:
            indeg[t] += 1
    ready = [v for v in g.vertices if indeg[v] == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return seen == g.n_vertices


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def components(g: Graph) -> list[tuple[frozenset, frozenset]]:
    """Connected components as ``(vertex set, edge set)``; each free edge is its own component."""
    parent = list(range(g.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.edges:
        s, t = g.src[e], g.tgt[e]
        if s is not None and t is not None:
            parent[find(s)] = find(t)
    groups: dict[int, tuple[set, set]] = {}
    for v in g.vertices:
        groups.setdefault(find(v), (set(), set()))[0].add(v)
    out = []
    for e in g.edges:
        s, t = g.src[e], g.tgt[e]
        end = s if s is not None else t
        if end is None:
            out.append((frozenset(), frozenset([e])))
        else:
            groups[find(end)][1].add(e)
    out = [(frozenset(vs), frozenset(es)) for vs, es in groups.values()] + out
    out.sort(key=lambda c: (min(c[0]) if c[0] else g.n_vertices, min(c[1]) if c[1] else -1))
    return out


# ---------------------------------------------------------------------------
# subgraphs and decompositions


@dataclass(frozen=True)
class Subgraph:
    parent: Graph
    edges: frozenset
    vertices: frozenset

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(self.edges))
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        if not self.edges <= set(self.parent.edges) or not self.vertices <= set(self.parent.vertices):
            raise GraphError("subgraph is not contained in its parent")

    def src(self, e: int):
        s = self.parent.src[e]
        return s if s in self.vertices else None

    def tgt(self, e: int):
        t = self.parent.tgt[e]
        return t if t in self.vertices else None

    def inputs(self) -> frozenset:
        return frozenset(e for e in self.edges if self.src(e) is None)

    def outputs(self) -> frozenset:
        return frozenset(e for e in self.edges if self.tgt(e) is None)

    def __and__(self, other: "Subgraph") -> "Subgraph":
        if other.parent != self.parent:
            raise GraphError("subgraphs of different graphs")
        return Subgraph(self.parent, self.edges & other.edges, self.vertices & other.vertices)

    def __or__(self, other: "Subgraph") -> "Subgraph":
        if other.parent != self.parent:
            raise GraphError("subgraphs of different graphs")
        return Subgraph(self.parent, self.edges | other.edges, self.vertices | other.vertices)

    def as_graph(self) -> tuple[Graph, list[int], list[int]]:
        """Standalone graph plus the lists of parent edges / vertices it came from."""
        es = sorted(self.edges)
        vs = sorted(self.vertices)
        vix = {v: i for i, v in enumerate(vs)}
        g = Graph(
            len(vs),
            tuple(vix.get(self.src(e)) for e in es),
            tuple(vix.get(self.tgt(e)) for e in es),
        )
        return g, es, vs


def full_subgraph(g: Graph) -> Subgraph:
    return Subgraph(g, frozenset(g.edges), frozenset(g.vertices))


def is_admissible(sub: Subgraph) -> bool:
    """Every parent edge incident to a vertex of the subgraph lies in it."""
    g = sub.parent
    for e in g.edges:
        if (g.src[e] in sub.vertices or g.tgt[e] in sub.vertices) and e not in sub.edges:
            return False
    return True


@dataclass(frozen=True)
class Decomposition:
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if self.parts:
            parent = self.parts[0].parent
            if any(p.parent != parent for p in self.parts):
                raise GraphError("decomposition parts have different parents")

    @property
    def parent(self) -> Graph:
        return self.parts[0].parent

    def is_proper(self) -> bool:
        return all(p.vertices for p in self.parts)


def is_decomposition(d: Decomposition) -> bool:
    if not d.parts:
        return False
    g = d.parent
    if not all(is_admissible(p) for p in d.parts):
        return False
    seen: set = set()
    for p in d.parts:
        if seen & p.vertices:
            return False
        seen |= p.vertices
    if seen != set(g.vertices):
        return False
    covered = set().union(*(p.edges for p in d.parts))
    return covered == set(g.edges)


def is_vertical_decomposition(d: Decomposition) -> bool:
    """Parts listed top first: ``out(G^1) = out(G)``, ``in(G^n) = in(G)``,
    ``out(G^i) = in(G^(i-1))``."""
    if not is_decomposition(d):
        return False
    g = d.parent
    g_in, g_out = graph_io(g)
    parts = d.parts
    if parts[0].outputs() != g_out or parts[-1].inputs() != g_in:
        return False
    return all(parts[i].outputs() == parts[i - 1].inputs() for i in range(1, len(parts)))


def vertical_split(g: Graph, lower: Iterable[int]) -> Decomposition:
    """The two-part vertical decomposition with ``lower`` as the bottom vertex set.

    ``lower`` must be closed under predecessors.
    """
    lower = frozenset(lower)
    upper = frozenset(g.vertices) - lower
    for e in g.edges:
        if g.src[e] in upper and g.tgt[e] in lower:
            raise GraphError("lower vertex set is not closed under predecessors")
    e_low = frozenset(
        e for e in g.edges if g.src[e] in lower or g.tgt[e] in lower or g.src[e] is None
    )
    e_up = frozenset(
        e for e in g.edges if g.src[e] in upper or g.tgt[e] in upper or g.tgt[e] is None
    )
    return Decomposition((Subgraph(g, e_up, upper), Subgraph(g, e_low, lower)))


def restrict_vertical(sub: Subgraph, d: Decomposition) -> Decomposition:
    """Induced vertical decomposition ``(G^01, G^02)`` of an admissible subgraph."""
    if len(d.parts) != 2 or not is_vertical_decomposition(d):
        raise GraphError("expected a two-part vertical decomposition")
    if not is_admissible(sub) or sub.parent != d.parent:
        raise GraphError("expected an admissible subgraph of the same graph")
    g1, g2 = d.parts
    e01 = (sub.edges & g1.edges) | sub.outputs()
    e02 = (sub.edges & g2.edges) | sub.inputs()
    return Decomposition(
        (
            Subgraph(sub.parent, e01, sub.vertices & g1.vertices),
            Subgraph(sub.parent, e02, sub.vertices & g2.vertices),
        )
    )


def restricted_is_vertical(sub: Subgraph, d: Decomposition) -> bool:
    """Check the restricted pair as a vertical decomposition of ``sub`` itself."""
    r = restrict_vertical(sub, d)
    g0, es, vs = sub.as_graph()
    eix = {e: i for i, e in enumerate(es)}
    vix = {v: i for i, v in enumerate(vs)}
    parts = tuple(
        Subgraph(g0, frozenset(eix[e] for e in p.edges), frozenset(vix[v] for v in p.vertices))
        for p in r.parts
    )
    return is_vertical_decomposition(Decomposition(parts))


def intersect_decompositions(a: Decomposition, b: Decomposition) -> Decomposition:
    if a.parent != b.parent:
        raise GraphError("decompositions of different graphs")
    return Decomposition(tuple(p & q for p in a.parts for q in b.parts))


# ---------------------------------------------------------------------------
# isomorphisms and canonical form


def _signature(g: Graph) -> list[tuple]:
    sig = []
    for v in g.vertices:
        ins = [e for e in g.edges if g.tgt[e] == v]
        outs = [e for e in g.edges if g.src[e] == v]
        sig.append(
            (
                len(ins),
                len(outs),
                sum(1 for e in ins if g.src[e] is None),
                sum(1 for e in outs if g.tgt[e] is None),
            )
        )
    return sig


def _refine(g: Graph, colors: list) -> list[int]:
    """Iterated colour refinement; returns canonical integer colours."""
    start = {k: i for i, k in enumerate(sorted(set(colors)))}
    cur = [start[c] for c in colors]
    while True:
        keys = []
        for v in g.vertices:
            preds = sorted(
                (cur[g.src[e]] if g.src[e] is not None else -1) for e in g.edges if g.tgt[e] == v
            )
            succs = sorted(
                (cur[g.tgt[e]] if g.tgt[e] is not None else -1) for e in g.edges if g.src[e] == v
            )
            keys.append((cur[v], tuple(preds), tuple(succs)))
        ranks = {k: i for i, k in enumerate(sorted(set(keys)))}
        new = [ranks[k] for k in keys]
        if len(set(new)) == len(set(cur)):
            return new
        cur = new


def _encode(g: Graph, order: Sequence[int]) -> tuple:
    pos = {v: i for i, v in enumerate(order)}
    pairs = sorted(
        (pos[g.src[e]] if g.src[e] is not None else -1, pos[g.tgt[e]] if g.tgt[e] is not None else -1)
        for e in g.edges
    )
    return (g.n_vertices, tuple(pairs))


def _leaf_orders(g: Graph, colors: list[int]) -> Iterator[list[int]]:
    """Individualisation-refinement search tree; leaves are vertex orders."""
    cells: dict[int, list[int]] = {}
    for v in g.vertices:
        cells.setdefault(colors[v], []).append(v)
    for key in sorted(cells):
        if len(cells[key]) > 1:
            for v in cells[key]:
                nxt = [2 * c for c in colors]
                nxt[v] = 2 * colors[v] + 1
                yield from _leaf_orders(g, _refine(g, nxt))
            return
    yield sorted(g.vertices, key=lambda v: colors[v])


def canonical_form(g: Graph) -> tuple[Graph, tuple[int, ...]]:
    """Canonical representative of the isomorphism class and a vertex relabelling.

    Returns ``(h, order)`` where ``order[i]`` is the vertex of ``g`` that
    becomes vertex ``i`` of ``h``.  The search is exact: every leaf of the
    individualisation-refinement tree is encoded and the least encoding wins.
    """
    if g.n_vertices == 0:
        n_free = g.n_edges
        return Graph(0, (None,) * n_free, (None,) * n_free), ()
    best = None
    best_order = None
    for order in _leaf_orders(g, _refine(g, _signature(g))):
        code = _encode(g, order)
        if best is None or code < best:
            best, best_order = code, order
    _, pairs = best
    h = Graph(
        g.n_vertices,
        tuple(None if s < 0 else s for s, _ in pairs),
        tuple(None if t < 0 else t for _, t in pairs),
    )
    return h, tuple(best_order)


def graph_key(g: Graph) -> tuple:
    """Hashable isomorphism invariant that is complete (equal iff isomorphic)."""
    h, _ = canonical_form(g)
    return (h.n_vertices, h.src, h.tgt)


def _edge_groups(g: Graph) -> dict[tuple, list[int]]:
    groups: dict[tuple, list[int]] = {}
    for e in g.edges:
        groups.setdefault((g.src[e], g.tgt[e]), []).append(e)
    return groups


def enumerate_isomorphisms(g: Graph, h: Graph) -> list[tuple[tuple, tuple]]:
    """All graph isomorphisms ``g -> h`` as ``(edge map, vertex map)`` tuples.

    ``edge_map[e]`` is the image of edge ``e``; ``vertex_map[v]`` of vertex
    ``v``.  Results are ordered lexicographically by vertex map, then edge map.
    """
    if g.n_vertices != h.n_vertices or g.n_edges != h.n_edges:
        return []
    sg, sh = _signature(g), _signature(h)
    if sorted(sg) != sorted(sh):
        return []
    gg, hh = _edge_groups(g), _edge_groups(h)
    results = []
    n = g.n_vertices

    def extend(vmap: list[int], used: set[int]):
        v = len(vmap)
        if v == n:
            yield list(vmap)
            return
        for w in range(n):
            if w in used or sg[v] != sh[w]:
                continue
            vmap.append(w)
            ok = True
            # check edge multiplicities between already-mapped vertices
            for u in range(v + 1):
                for a, b in ((u, v), (v, u)):
                    if len(gg.get((a, b), ())) != len(hh.get((vmap[a], vmap[b]), ())):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                used.add(w)
                yield from extend(vmap, used)
                used.discard(w)
            vmap.pop()

    for vmap in extend([], set()):
        f = lambda x: None if x is None else vmap[x]
        keys = sorted(gg, key=lambda k: tuple(-1 if x is None else x for x in k))
        choices = []
        ok = True
        for k in keys:
            target = hh.get((f(k[0]), f(k[1])), [])
            if len(target) != len(gg[k]):
                ok = False
                break
            choices.append([(gg[k], perm) for perm in itertools.permutations(target)])
        if not ok:
            continue
        for combo in itertools.product(*choices):
            emap = [0] * g.n_edges
            for src_edges, img in combo:
                for e, e2 in zip(src_edges, img):
                    emap[e] = e2
            results.append((tuple(emap), tuple(vmap)))
    results.sort(key=lambda r: (r[1], r[0]))
    return results


def automorphisms(g: Graph) -> list[tuple[tuple, tuple]]:
    return enumerate_isomorphisms(g, g)


# ---------------------------------------------------------------------------
# text format


def format_graph(g: Graph) -> str:
    lines = [f"vertices {g.n_vertices}"]
    for e in g.edges:
        s = "*" if g.src[e] is None else str(g.src[e])
        t = "*" if g.tgt[e] is None else str(g.tgt[e])
        lines.append(f"edge {e} {s} {t}")
    return "\n".join(lines)


def parse_graph(text: str) -> Graph:
    n_vertices = None
    edges: dict[int, tuple] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "vertices" and len(toks) == 2:
            n_vertices = int(toks[1])
        elif toks[0] == "edge" and len(toks) == 4:
            end = lambda x: None if x == "*" else int(x)
            edges[int(toks[1])] = (end(toks[2]), end(toks[3]))
        else:
            raise GraphError(f"cannot parse graph line: {raw!r}")
    if sorted(edges) != list(range(len(edges))):
        raise GraphError("edge ids must be 0..n-1")
    ends = [x for pair in edges.values() for x in pair if x is not None]
    if n_vertices is None:
        n_vertices = max(ends, default=-1) + 1
    return Graph.from_edges(n_vertices, (edges[i] for i in range(len(edges))))
