"""Small utilities shared by the test modules."""
from __future__ import annotations

import random

from propkit.free_prop.diagram import Diagram, Node


def relabel_diagram(d: Diagram, rng: random.Random) -> Diagram:
    """The same decoration with edges renumbered and nodes listed in a random order."""
    edge_perm = list(range(d.n_edges))
    rng.shuffle(edge_perm)
    node_order = list(range(d.n_nodes))
    rng.shuffle(node_order)
    colors = [None] * d.n_edges
    for e, c in enumerate(d.colors):
        colors[edge_perm[e]] = c
    nodes = []
    for v in node_order:
        n = d.nodes[v]
        nodes.append(Node(n.gen, tuple(edge_perm[e] for e in n.ins), tuple(edge_perm[e] for e in n.outs)))
    return Diagram(
        tuple(colors),
        tuple(nodes),
        tuple(edge_perm[e] for e in d.inputs),
        tuple(edge_perm[e] for e in d.outputs),
    )
