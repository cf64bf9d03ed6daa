"""Port-normalised string diagrams.

A :class:`Diagram` is a decoration whose vertex labels are bare generators:
every vertex carries ``(tau, g, sigma) = (id, g, id)`` and its in/out port
orders are the ones that make the colors match ``g`` exactly.  For a free
megagraph every decoration is related to exactly one such normal form up to
graph isomorphism, so equality of morphisms of the free prop reduces to
isomorphism of port-normalised diagrams.  Because ports are ordered, that
isomorphism test is a breadth-first relabelling started from the ordered
boundary; see :meth:`Diagram.canonical`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Optional, Sequence

from ..graphs import Graph
from ..kernel import Perm, PermError, act_left, act_right, format_color, format_colors
from ..megagraph import FreeMegagraph, Generator


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Node:
    gen: Any
    ins: tuple
    outs: tuple


# edge ends: ("i", k) input slot k, ("o", k) output slot k, ("n", v, port) node port


@dataclass(frozen=True)
class Diagram:
    colors: tuple
    nodes: tuple
    inputs: tuple
    outputs: tuple

    # -- basic structure ------------------------------------------------
    @property
    def n_edges(self) -> int:
        return len(self.colors)

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def source(self) -> tuple:
        return tuple(self.colors[e] for e in self.inputs)

    @property
    def target(self) -> tuple:
        return tuple(self.colors[e] for e in self.outputs)

    @cached_property
    def ends(self) -> tuple[tuple, tuple]:
        """``(src_end, tgt_end)`` per edge; raises if an edge is not wired exactly once."""
        src: list = [None] * self.n_edges
        tgt: list = [None] * self.n_edges

        def put(table, e, end):
            if not (0 <= e < self.n_edges):
                raise DiagramError(f"edge {e} out of range")
            if table[e] is not None:
                raise DiagramError(f"edge {e} has two {'source' if table is src else 'target'} ends")
            table[e] = end

        for k, e in enumerate(self.inputs):
            put(src, e, ("i", k))
        for k, e in enumerate(self.outputs):
            put(tgt, e, ("o", k))
        for v, node in enumerate(self.nodes):
            for p, e in enumerate(node.ins):
                put(tgt, e, ("n", v, p))
            for p, e in enumerate(node.outs):
                put(src, e, ("n", v, p))
        for e in range(self.n_edges):
            if src[e] is None or tgt[e] is None:
                raise DiagramError(f"edge {e} is missing an end")
        return tuple(src), tuple(tgt)

    def validate(self, megagraph: Optional[FreeMegagraph] = None) -> None:
        self.ends  # wiring
        if megagraph is not None:
            for v, node in enumerate(self.nodes):
                g = megagraph.generator(node.gen)
                if len(g.source) != len(node.ins) or len(g.target) != len(node.outs):
                    raise DiagramError(f"node {v} has the wrong arity for {node.gen!r}")
                if tuple(self.colors[e] for e in node.ins) != g.source:
                    raise DiagramError(f"node {v}: input colors do not match {node.gen!r}")
                if tuple(self.colors[e] for e in node.outs) != g.target:
                    raise DiagramError(f"node {v}: output colors do not match {node.gen!r}")
        if not self.is_acyclic():
            raise DiagramError("diagram has a directed cycle")

    def successors(self) -> list[list[int]]:
        src, tgt = self.ends
        succ: list[list[int]] = [[] for _ in self.nodes]
        for e in range(self.n_edges):
            if src[e][0] == "n" and tgt[e][0] == "n":
                succ[src[e][1]].append(tgt[e][1])
        return succ

    def predecessors(self) -> list[set]:
        src, tgt = self.ends
        pred: list[set] = [set() for _ in self.nodes]
        for e in range(self.n_edges):
            if src[e][0] == "n" and tgt[e][0] == "n":
                pred[tgt[e][1]].add(src[e][1])
        return pred

    def topological_order(self) -> list[int]:
        """Kahn's algorithm, always picking the smallest ready node."""
        import heapq

        succ = self.successors()
        indeg = [0] * self.n_nodes
        for v in range(self.n_nodes):
            for w in succ[v]:
                indeg[w] += 1
        ready = [v for v in range(self.n_nodes) if indeg[v] == 0]
        heapq.heapify(ready)
        order = []
        while ready:
            v = heapq.heappop(ready)
            order.append(v)
            for w in succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(ready, w)
        if len(order) != self.n_nodes:
            raise DiagramError("diagram has a directed cycle")
        return order

    def is_acyclic(self) -> bool:
        try:
            self.topological_order()
        except DiagramError:
            return False
        return True

    def to_graph(self) -> Graph:
        src, tgt = self.ends
        return Graph(
            self.n_nodes,
            tuple(end[1] if end[0] == "n" else None for end in src),
            tuple(end[1] if end[0] == "n" else None for end in tgt),
        )

    def components(self) -> list[tuple[list[int], list[int]]]:
        """Connected components as ``(nodes, edges)``; free edges are singleton components.

        Components are listed by their smallest boundary position, floating ones last.
        """
        src, tgt = self.ends
        parent = list(range(self.n_nodes))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in range(self.n_edges):
            if src[e][0] == "n" and tgt[e][0] == "n":
                a, b = find(src[e][1]), find(tgt[e][1])
                if a != b:
                    parent[a] = b
        comp_nodes: dict[int, list[int]] = {}
        for v in range(self.n_nodes):
            comp_nodes.setdefault(find(v), []).append(v)
        comp_edges: dict = {r: [] for r in comp_nodes}
        free: list = []
        for e in range(self.n_edges):
            if src[e][0] == "n":
                comp_edges[find(src[e][1])].append(e)
            elif tgt[e][0] == "n":
                comp_edges[find(tgt[e][1])].append(e)
            else:
                free.append(("free", e))
        comps = [(sorted(comp_nodes[r]), sorted(comp_edges[r])) for r in comp_nodes]
        comps += [([], [e]) for _, e in free]
        boundary_pos = {e: k for k, e in enumerate(self.inputs)}
        for k, e in enumerate(self.outputs):
            boundary_pos.setdefault(e, len(self.inputs) + k)
        big = len(self.inputs) + len(self.outputs)

        def key(c):
            pos = [boundary_pos[e] for e in c[1] if e in boundary_pos]
            return (min(pos) if pos else big, c[0][:1])

        comps.sort(key=key)
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    # -- canonical form ---------------------------------------------------
    def _label(self, edge_starts: Sequence[int], node_start: Optional[int], edge_lab: dict, node_lab: dict):
        """Breadth-first labelling from the given starts; labels continue from the dict sizes."""
        src, tgt = self.ends
        queue: deque = deque()

        def see_edge(e):
            if e not in edge_lab:
                edge_lab[e] = len(edge_lab)
                queue.append(e)

        def see_node(v):
            if v not in node_lab:
                node_lab[v] = len(node_lab)
                for e in self.nodes[v].ins:
                    see_edge(e)
                for e in self.nodes[v].outs:
                    see_edge(e)

        for e in edge_starts:
            see_edge(e)
        if node_start is not None:
            see_node(node_start)
        while queue:
            e = queue.popleft()
            if src[e][0] == "n":
                see_node(src[e][1])
            if tgt[e][0] == "n":
                see_node(tgt[e][1])

    def _relabelled(self, edge_lab: dict, node_lab: dict) -> "Diagram":
        colors = [None] * len(edge_lab)
        for e, i in edge_lab.items():
            colors[i] = self.colors[e]
        nodes = [None] * len(node_lab)
        for v, i in node_lab.items():
            n = self.nodes[v]
            nodes[i] = Node(n.gen, tuple(edge_lab[e] for e in n.ins), tuple(edge_lab[e] for e in n.outs))
        return Diagram(
            tuple(colors),
            tuple(nodes),
            tuple(edge_lab[e] for e in self.inputs if e in edge_lab),
            tuple(edge_lab[e] for e in self.outputs if e in edge_lab),
        )

    def _floating_code(self, root: int) -> tuple[str, "Diagram", dict, dict]:
        edge_lab: dict = {}
        node_lab: dict = {}
        self._label((), root, edge_lab, node_lab)
        sub = self._relabelled(edge_lab, node_lab)
        return repr((sub.colors, sub.nodes)), sub, edge_lab, node_lab

    def canonical(self) -> "Diagram":
        """The canonical representative of this diagram's isomorphism class."""
        edge_lab: dict = {}
        node_lab: dict = {}
        self._label(tuple(self.inputs) + tuple(self.outputs), None, edge_lab, node_lab)
        if len(node_lab) < self.n_nodes:
            # floating components: pick the least code over all roots of each
            remaining = [v for v in range(self.n_nodes) if v not in node_lab]
            done: set = set()
            floating = []
            for v in remaining:
                if v in done:
                    continue
                best = None
                _, _, _, comp_nodes = self._floating_code(v)
                for r in comp_nodes:
                    cand = self._floating_code(r)
                    if best is None or cand[0] < best[0]:
                        best = cand
                done.update(comp_nodes)
                floating.append(best)
            floating.sort(key=lambda t: t[0])
            for _, _, elab, nlab in floating:
                order_e = sorted(elab, key=elab.get)
                order_n = sorted(nlab, key=nlab.get)
                for e in order_e:
                    edge_lab[e] = len(edge_lab)
                for v in order_n:
                    node_lab[v] = len(node_lab)
        return self._relabelled(edge_lab, node_lab)

    # -- pretty -----------------------------------------------------------
    def __str__(self) -> str:
        parts = []
        for v, n in enumerate(self.nodes):
            parts.append(f"{format_color(n.gen)}{list(n.ins)}->{list(n.outs)}")
        return (
            f"Diagram({format_colors(self.source)} -> {format_colors(self.target)}; "
            f"in={list(self.inputs)} out={list(self.outputs)} nodes=[{', '.join(parts)}])"
        )


# ---------------------------------------------------------------------------
# constructors


def identity_diagram(colors: Sequence) -> Diagram:
    k = len(colors)
    return Diagram(tuple(colors), (), tuple(range(k)), tuple(range(k)))


def generator_diagram(gen: Generator) -> Diagram:
    n, m = len(gen.source), len(gen.target)
    ins = tuple(range(n))
    outs = tuple(range(n, n + m))
    return Diagram(tuple(gen.source) + tuple(gen.target), (Node(gen.name, ins, outs),), ins, outs)


def from_wires(
    node_specs: Sequence[tuple],
    n_inputs: int,
    n_outputs: int,
    wires: Sequence[tuple],
) -> Diagram:
    """Build a diagram from explicit wires.

    ``node_specs[v] = (gen, n_in, n_out)``; each wire is ``(color, src_end,
    tgt_end)`` with ``src_end`` either ``("i", k)`` or ``("n", v, port)`` and
    ``tgt_end`` either ``("o", k)`` or ``("n", v, port)``.
    """
    ins = [[None] * spec[1] for spec in node_specs]
    outs = [[None] * spec[2] for spec in node_specs]
    inputs: list = [None] * n_inputs
    outputs: list = [None] * n_outputs
    colors = []
    for e, (color, s, t) in enumerate(wires):
        colors.append(color)
        if s[0] == "i":
            if inputs[s[1]] is not None:
                raise DiagramError("input slot used twice")
            inputs[s[1]] = e
        else:
            if outs[s[1]][s[2]] is not None:
                raise DiagramError("node output port used twice")
            outs[s[1]][s[2]] = e
        if t[0] == "o":
            if outputs[t[1]] is not None:
                raise DiagramError("output slot used twice")
            outputs[t[1]] = e
        else:
            if ins[t[1]][t[2]] is not None:
                raise DiagramError("node input port used twice")
            ins[t[1]][t[2]] = e
    if any(x is None for x in inputs) or any(x is None for x in outputs):
        raise DiagramError("unwired boundary slot")
    if any(x is None for p in ins + outs for x in p):
        raise DiagramError("unwired node port")
    nodes = tuple(Node(spec[0], tuple(ins[v]), tuple(outs[v])) for v, spec in enumerate(node_specs))
    return Diagram(tuple(colors), nodes, tuple(inputs), tuple(outputs))


def wires_of(d: Diagram) -> list[tuple]:
    src, tgt = d.ends
    return [(d.colors[e], src[e], tgt[e]) for e in range(d.n_edges)]


# ---------------------------------------------------------------------------
# compositions


def hcomp(f: Diagram, g: Diagram) -> Diagram:
    off = f.n_edges
    shift = lambda es: tuple(e + off for e in es)
    return Diagram(
        f.colors + g.colors,
        f.nodes + tuple(Node(n.gen, shift(n.ins), shift(n.outs)) for n in g.nodes),
        f.inputs + shift(g.inputs),
        f.outputs + shift(g.outputs),
    )


def hcomp_all(ds: Iterable[Diagram]) -> Diagram:
    out = Diagram((), (), (), ())
    for d in ds:
        out = hcomp(out, d)
    return out


def vcomp(f: Diagram, g: Diagram) -> Diagram:
    """``f o_v g``: the outputs of ``g`` are glued to the inputs of ``f``."""
    if f.source != g.target:
        raise DiagramError(
            f"cannot compose: source {format_colors(f.source)} != target {format_colors(g.target)}"
        )
    off = g.n_edges
    total = off + f.n_edges
    parent = list(range(total))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in zip(g.outputs, f.inputs):
        parent[find(a)] = find(b + off)
    roots = sorted({find(x) for x in range(total)})
    new = {r: i for i, r in enumerate(roots)}
    colors = [None] * len(roots)
    for x in range(total):
        colors[new[find(x)]] = g.colors[x] if x < off else f.colors[x - off]
    gm = lambda e: new[find(e)]
    fm = lambda e: new[find(e + off)]
    nodes = tuple(Node(n.gen, tuple(map(gm, n.ins)), tuple(map(gm, n.outs))) for n in g.nodes) + tuple(
        Node(n.gen, tuple(map(fm, n.ins)), tuple(map(fm, n.outs))) for n in f.nodes
    )
    return Diagram(tuple(colors), nodes, tuple(map(gm, g.inputs)), tuple(map(fm, f.outputs)))


def act(d: Diagram, sigma: Perm | None = None, tau: Perm | None = None) -> Diagram:
    """``sigma^* tau_* d``: inputs reordered by the right action, outputs by the left."""
    try:
        inputs = act_right(d.inputs, sigma)
        outputs = act_left(tau, d.outputs)
    except PermError as exc:
        raise DiagramError(str(exc)) from None
    return Diagram(d.colors, d.nodes, inputs, outputs)
