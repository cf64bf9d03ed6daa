"""Decorations of graphs in the original form: arrows on vertices plus port orders.

A :class:`Decoration` may carry arbitrary arrows ``(tau, g, sigma)`` and
arbitrary vertex port orders.  :meth:`Decoration.to_diagram` moves every
vertex to its bare generator by reordering its ports, which is a relation
given by the identity automorphism; afterwards only graph isomorphism is left.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

from ..graphs import Graph, GraphError, parse_graph
from ..kernel import Perm, act_left, act_right, format_color, parse_color, perm_from_lists
from ..megagraph import Arrow, FreeMegagraph
from .diagram import Diagram, DiagramError, Node


class DecorationError(ValueError):
    pass


@dataclass(frozen=True)
class Decoration:
    graph: Graph
    d0: tuple  # color of each edge
    d1: tuple  # Arrow of each vertex
    vin: tuple  # ordered in(v) per vertex
    vout: tuple  # ordered out(v) per vertex
    gin: tuple  # ordered in(G)
    gout: tuple  # ordered out(G)

    def check(self, megagraph: FreeMegagraph) -> None:
        g = self.graph
        if len(self.d0) != g.n_edges or len(self.d1) != g.n_vertices:
            raise DecorationError("D0/D1 sizes do not match the graph")
        for v in g.vertices:
            ins = {e for e in g.edges if g.tgt[e] == v}
            outs = {e for e in g.edges if g.src[e] == v}
            if sorted(self.vin[v]) != sorted(ins) or sorted(self.vout[v]) != sorted(outs):
                raise DecorationError(f"vertex {v}: port orders are not orderings of in(v)/out(v)")
            x = self.d1[v]
            if megagraph.source(x) != tuple(self.d0[e] for e in self.vin[v]):
                raise DecorationError(f"vertex {v}: source square does not commute")
            if megagraph.target(x) != tuple(self.d0[e] for e in self.vout[v]):
                raise DecorationError(f"vertex {v}: target square does not commute")
        gin = [e for e in g.edges if g.src[e] is None]
        gout = [e for e in g.edges if g.tgt[e] is None]
        if sorted(self.gin) != gin or sorted(self.gout) != gout:
            raise DecorationError("global orders are not orderings of in(G)/out(G)")

    @property
    def source(self) -> tuple:
        return tuple(self.d0[e] for e in self.gin)

    @property
    def target(self) -> tuple:
        return tuple(self.d0[e] for e in self.gout)

    def to_diagram(self) -> Diagram:
        nodes = []
        for v in self.graph.vertices:
            x: Arrow = self.d1[v]
            ins = tuple(self.vin[v][j] for j in x.sigma.inverse().zero)
            outs = tuple(self.vout[v][j] for j in x.tau.zero)
            nodes.append(Node(x.gen, ins, outs))
        return Diagram(tuple(self.d0), tuple(nodes), tuple(self.gin), tuple(self.gout))

    @classmethod
    def from_diagram(cls, d: Diagram) -> "Decoration":
        d1 = tuple(
            Arrow(Perm.identity(len(n.outs)), n.gen, Perm.identity(len(n.ins))) for n in d.nodes
        )
        return cls(
            d.to_graph(),
            tuple(d.colors),
            d1,
            tuple(n.ins for n in d.nodes),
            tuple(n.outs for n in d.nodes),
            tuple(d.inputs),
            tuple(d.outputs),
        )

    # relating moves ---------------------------------------------------------
    def port_move(self, v: int, side: str, gamma: Perm, megagraph: FreeMegagraph) -> "Decoration":
        """Reorder the ports of ``v`` and compensate the arrow.

        ``side="in"``: ``in(v) -> in(v) . gamma`` and ``D1(v) -> D1(v) . gamma``.
        ``side="out"``: ``out(v) -> gamma . out(v)`` and ``D1(v) -> gamma . D1(v)``.
        """
        vin, vout, d1 = list(self.vin), list(self.vout), list(self.d1)
        if side == "in":
            vin[v] = act_right(vin[v], gamma)
            d1[v] = megagraph.act(d1[v], None, gamma)
        elif side == "out":
            vout[v] = act_left(gamma, vout[v])
            d1[v] = megagraph.act(d1[v], gamma, None)
        else:
            raise ValueError("side must be 'in' or 'out'")
        return replace(self, vin=tuple(vin), vout=tuple(vout), d1=tuple(d1))

    def interior_move(self, v: int, v2: int, beta: dict, megagraph: FreeMegagraph) -> "Decoration":
        """Permute the edges ``I = in(v) & out(v2)`` by the bijection ``beta`` in both port lists."""
        shared = set(self.vin[v]) & set(self.vout[v2])
        if set(beta) != shared or set(beta.values()) != shared:
            raise DecorationError("beta must be a bijection of in(v) & out(v2)")
        sub = lambda e: beta.get(e, e)
        new_in = tuple(sub(e) for e in self.vin[v])
        new_out = tuple(sub(e) for e in self.vout[v2])
        gamma = perm_from_lists(self.vin[v], new_in)
        out_pos = {e: k for k, e in enumerate(new_out)}
        rho = Perm._from_zero([out_pos[e] for e in self.vout[v2]])
        return self.port_move(v, "in", gamma, megagraph).port_move(v2, "out", rho, megagraph)

    def exterior_move(self, v: int, side: str, beta: dict, megagraph: FreeMegagraph) -> "Decoration":
        """Permute the boundary-incident ports of ``v``; global orders stay fixed."""
        g = self.graph
        if side == "in":
            allowed = {e for e in self.vin[v] if g.src[e] is None}
            ports = self.vin[v]
        else:
            allowed = {e for e in self.vout[v] if g.tgt[e] is None}
            ports = self.vout[v]
        if not set(beta) <= allowed or set(beta.values()) != set(beta):
            raise DecorationError("beta must permute boundary edges of the vertex")
        new = tuple(beta.get(e, e) for e in ports)
        if side == "in":
            return self.port_move(v, "in", perm_from_lists(ports, new), megagraph)
        pos = {e: k for k, e in enumerate(new)}
        return self.port_move(v, "out", Perm._from_zero([pos[e] for e in ports]), megagraph)

    def relabel(self, edge_perm: Sequence[int], vertex_perm: Sequence[int]) -> "Decoration":
        """Transport along a graph isomorphism given by new indices of edges and vertices."""
        g = self.graph
        n_e, n_v = g.n_edges, g.n_vertices
        src = [None] * n_e
        tgt = [None] * n_e
        d0 = [None] * n_e
        for e in g.edges:
            e2 = edge_perm[e]
            src[e2] = None if g.src[e] is None else vertex_perm[g.src[e]]
            tgt[e2] = None if g.tgt[e] is None else vertex_perm[g.tgt[e]]
            d0[e2] = self.d0[e]
        d1 = [None] * n_v
        vin = [None] * n_v
        vout = [None] * n_v
        for v in g.vertices:
            w = vertex_perm[v]
            d1[w] = self.d1[v]
            vin[w] = tuple(edge_perm[e] for e in self.vin[v])
            vout[w] = tuple(edge_perm[e] for e in self.vout[v])
        return Decoration(
            Graph(n_v, tuple(src), tuple(tgt)),
            tuple(d0),
            tuple(d1),
            tuple(vin),
            tuple(vout),
            tuple(edge_perm[e] for e in self.gin),
            tuple(edge_perm[e] for e in self.gout),
        )

    # text dump --------------------------------------------------------------
    def dump(self) -> str:
        lines = [str(self.graph)]
        for e in self.graph.edges:
            lines.append(f"D0 {e} {format_color(self.d0[e])}")
        for v in self.graph.vertices:
            x = self.d1[v]
            lines.append(f"D1 {v} {format_color(x.gen)} {x.tau} {x.sigma}")
            lines.append(f"vin {v} " + (" ".join(map(str, self.vin[v])) or "-"))
            lines.append(f"vout {v} " + (" ".join(map(str, self.vout[v])) or "-"))
        lines.append("in " + (" ".join(map(str, self.gin)) or "-"))
        lines.append("out " + (" ".join(map(str, self.gout)) or "-"))
        return "\n".join(lines)


def _ints(tokens: Sequence[str]) -> tuple:
    return () if list(tokens) == ["-"] else tuple(int(t) for t in tokens)


def parse_decoration(text: str) -> Decoration:
    graph_lines, d0, d1, vin, vout = [], {}, {}, {}, {}
    gin: tuple = ()
    gout: tuple = ()
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        head = toks[0]
        if head in ("vertices", "edge"):
            graph_lines.append(line)
        elif head == "D0":
            d0[int(toks[1])] = parse_color(toks[2])
        elif head == "D1":
            rest = line.split(None, 3)[3]
            # rest = "<tau> <sigma>", each parenthesised
            close = rest.index(")")
            tau = Perm.parse(rest[: close + 1])
            sigma = Perm.parse(rest[close + 1 :].strip())
            d1[int(toks[1])] = Arrow(tau, parse_color(toks[2]), sigma)
        elif head == "vin":
            vin[int(toks[1])] = _ints(toks[2:])
        elif head == "vout":
            vout[int(toks[1])] = _ints(toks[2:])
        elif head == "in":
            gin = _ints(toks[1:])
        elif head == "out":
            gout = _ints(toks[1:])
        else:
            raise DecorationError(f"cannot parse decoration line {raw!r}")
    try:
        graph = parse_graph("\n".join(graph_lines))
    except GraphError as exc:
        raise DecorationError(str(exc)) from None
    try:
        return Decoration(
            graph,
            tuple(d0[e] for e in graph.edges),
            tuple(d1[v] for v in graph.vertices),
            tuple(vin.get(v, ()) for v in graph.vertices),
            tuple(vout.get(v, ()) for v in graph.vertices),
            gin,
            gout,
        )
    except KeyError as exc:
        raise DecorationError(f"missing D0/D1 entry for {exc.args[0]}") from None
