"""Evaluating free-prop morphisms in an arbitrary prop.

:func:`evaluate` follows the inductive construction ``K_p``: vertex-free
diagrams become permuted identities, one-vertex diagrams become
``sigma^* tau_* (ids (x) f(g))``, disconnected diagrams factor horizontally and
connected ones split vertically into a lower part and an upper part.
:func:`evaluate_layered` is an independent second route through a layered
term.
"""
from __future__ import annotations

import random
from typing import Callable, Iterable, Mapping, Optional, Sequence

from ..kernel import Perm, format_color, format_colors, perm_from_lists
from ..megagraph import Arrow, FreeMegaMap, FreeMegagraph, MegagraphError, PropMegagraph, validate_mega_map
from ..prop_core.prop import Prop, PropError
from .diagram import Diagram, DiagramError, Node, from_wires
from .freeprop import FreeMorphism, FreeProp
from .terms import Act, Gen, HComp, Id, Term, VComp, evaluate_term, hcomp_terms, ids


# ---------------------------------------------------------------------------
# sub-diagrams


def restrict(d: Diagram, nodes: Iterable[int], inputs: Sequence[int], outputs: Sequence[int]) -> Diagram:
    """The sub-diagram on ``nodes`` with the given ordered boundary edges."""
    nodes = sorted(set(nodes))
    nidx = {v: i for i, v in enumerate(nodes)}
    in_pos = {e: k for k, e in enumerate(inputs)}
    out_pos = {e: k for k, e in enumerate(outputs)}
    src, tgt = d.ends
    edges = set(inputs) | set(outputs)
    for v in nodes:
        edges.update(d.nodes[v].ins)
        edges.update(d.nodes[v].outs)
    wires = []
    for e in sorted(edges):
        s, t = src[e], tgt[e]
        if s[0] == "n" and s[1] in nidx:
            s2 = ("n", nidx[s[1]], s[2])
        elif e in in_pos:
            s2 = ("i", in_pos[e])
        else:
            raise DiagramError(f"edge {e} has no source in the sub-diagram")
        if t[0] == "n" and t[1] in nidx:
            t2 = ("n", nidx[t[1]], t[2])
        elif e in out_pos:
            t2 = ("o", out_pos[e])
        else:
            raise DiagramError(f"edge {e} has no target in the sub-diagram")
        wires.append((d.colors[e], s2, t2))
    specs = [(d.nodes[v].gen, len(d.nodes[v].ins), len(d.nodes[v].outs)) for v in nodes]
    return from_wires(specs, len(inputs), len(outputs), wires)


def interface(d: Diagram, lower: set) -> list[int]:
    """Edges leaving the lower part: ``out(G^2) = in(G^1)`` in a default order."""
    src, tgt = d.ends
    lower_side = lambda end: end[0] == "i" or (end[0] == "n" and end[1] in lower)
    upper_side = lambda end: end[0] == "o" or (end[0] == "n" and end[1] not in lower)
    cut = [e for e in range(d.n_edges) if lower_side(src[e]) and upper_side(tgt[e])]
    order = {e: k for k, e in enumerate(d.inputs)}
    base = len(order)
    for v in sorted(lower):
        for p, e in enumerate(d.nodes[v].outs):
            order.setdefault(e, base + 1000 * v + p)
    return sorted(cut, key=lambda e: order[e])


def vertical_split(d: Diagram, lower: Iterable[int], cut_order: Optional[Sequence[int]] = None) -> tuple[Diagram, Diagram]:
    """``(upper, lower)`` with ``d = upper o_v lower``; ``lower`` must be closed under predecessors."""
    lower = set(lower)
    pred = d.predecessors()
    for v in lower:
        if not pred[v] <= lower:
            raise DiagramError("lower node set is not closed under predecessors")
    cut = interface(d, lower)
    if cut_order is not None:
        if sorted(cut_order) != sorted(cut):
            raise DiagramError("cut order is not a permutation of the interface edges")
        cut = list(cut_order)
    upper_nodes = [v for v in range(d.n_nodes) if v not in lower]
    return restrict(d, upper_nodes, cut, d.outputs), restrict(d, lower, d.inputs, cut)


def minimal_nodes(d: Diagram) -> list[int]:
    pred = d.predecessors()
    return [v for v in range(d.n_nodes) if not pred[v]]


def downward_closed_sets(d: Diagram) -> list[frozenset]:
    """All predecessor-closed node sets (exponential; desk scale only)."""
    pred = d.predecessors()
    out = []
    n = d.n_nodes
    for mask in range(1 << n):
        s = {v for v in range(n) if mask >> v & 1}
        if all(pred[v] <= s for v in s):
            out.append(frozenset(s))
    return out


# ---------------------------------------------------------------------------
# evaluation


class Evaluator:
    def __init__(self, target: Prop, color_of: Callable, gen_image: Callable):
        self.T = target
        self.color_of = color_of
        self.gen_image = gen_image

    def ids(self, colors: Sequence):
        return self.T.identities([self.color_of(c) for c in colors])

    def _place(self, x, l_in: Sequence[int], l_out: Sequence[int], d: Diagram):
        sigma = perm_from_lists(l_in, d.inputs)
        out_pos = {e: k for k, e in enumerate(d.outputs)}
        tau = Perm._from_zero([out_pos[e] for e in l_out])
        if sigma.is_identity():
            sigma = None
        if tau.is_identity():
            tau = None
        return self.T.act(x, sigma=sigma, tau=tau) if (sigma or tau) else x

    def __call__(self, d: Diagram, lower_choice: Optional[Callable] = None):
        """Evaluate ``d``; ``lower_choice(d)`` may pick ``(lower set, cut order)`` at the top split."""
        if d.n_nodes == 0:
            x = self.ids([d.colors[e] for e in d.inputs])
            return self._place(x, d.inputs, d.inputs, d)
        if d.n_nodes == 1:
            node = d.nodes[0]
            out_set = set(d.outputs)
            free = [e for e in d.inputs if e in out_set]
            x = self.T.compose_h(self.ids([d.colors[e] for e in free]), self.gen_image(node.gen))
            return self._place(x, free + list(node.ins), free + list(node.outs), d)
        comps = d.components()
        if len(comps) > 1:
            in_pos = {e: k for k, e in enumerate(d.inputs)}
            out_pos = {e: k for k, e in enumerate(d.outputs)}
            parts = []
            l_in: list = []
            l_out: list = []
            for nodes, edges in comps:
                cin = sorted((e for e in edges if e in in_pos), key=in_pos.get)
                cout = sorted((e for e in edges if e in out_pos), key=out_pos.get)
                parts.append(self(restrict(d, nodes, cin, cout)))
                l_in += cin
                l_out += cout
            return self._place(self.T.compose_h_all(parts), l_in, l_out, d)
        if lower_choice is not None:
            lower, cut = lower_choice(d)
        else:
            lower, cut = {minimal_nodes(d)[0]}, None
        upper, low = vertical_split(d, lower, cut)
        return self.T.compose_v(self(upper), self(low))


def evaluate(d: Diagram, target: Prop, color_of: Callable, gen_image: Callable, lower_choice=None):
    return Evaluator(target, color_of, gen_image)(d, lower_choice)


def random_lower_choice(rng: random.Random) -> Callable:
    """A top-level split chooser picking a random proper lower set and a random cut order."""

    def choose(d: Diagram):
        proper = [s for s in downward_closed_sets(d) if 0 < len(s) < d.n_nodes]
        lower = set(rng.choice(proper))
        cut = interface(d, lower)
        rng.shuffle(cut)
        return lower, cut

    return choose


def diagram_to_term(d: Diagram) -> Term:
    """A layered term: one generator per layer in topological order, then a final permutation."""
    layers: list[Term] = []
    wires = list(d.inputs)
    for v in d.topological_order():
        node = d.nodes[v]
        rest = [e for e in wires if e not in set(node.ins)]
        arranged = list(node.ins) + rest
        sigma = perm_from_lists(arranged, wires)
        step: Term = hcomp_terms([Gen(node.gen)] + [Id(d.colors[e]) for e in rest])
        if not sigma.is_identity():
            step = Act(sigma, None, step)
        layers.append(step)
        wires = list(node.outs) + rest
    out_pos = {e: k for k, e in enumerate(d.outputs)}
    tau = Perm._from_zero([out_pos[e] for e in wires])
    last: Term = ids([d.colors[e] for e in wires])
    if not tau.is_identity():
        last = Act(None, tau, last)
    term = last
    for step in reversed(layers):
        term = VComp(term, step)
    if layers and isinstance(last, (Id, HComp)) and tau.is_identity():
        # drop the trailing identity layer
        term = layers[-1]
        for step in reversed(layers[:-1]):
            term = VComp(term, step)
    return term


def evaluate_layered(d: Diagram, target: Prop, color_of: Callable, gen_image: Callable):
    return evaluate_term(diagram_to_term(d), target, color_of, gen_image)


# ---------------------------------------------------------------------------
# maps out of free props


class PropMap:
    """A prop map out of ``F(X)`` (or a presentation on ``X``), given on generators.

    ``gen_images[g]`` is an element of ``target`` with profile the image of
    ``g``'s profile.  Maps are compared by their color and generator data.
    """

    def __init__(self, megagraph: FreeMegagraph, target: Prop, color_map: Mapping, gen_images: Mapping):
        self.megagraph = megagraph
        self.target = target
        self.color_map = dict(color_map)
        self.gen_images = dict(gen_images)
        self._key = (
            tuple(self.color_map[c] for c in megagraph.colors),
            tuple(self.gen_images[g.name] for g in megagraph.generators),
        )
        self._hash = None

    def on_color(self, c):
        return self.color_map[c]

    def on_colors(self, cs: Sequence) -> tuple:
        return tuple(self.color_map[c] for c in cs)

    def image(self, name):
        return self.gen_images[name]

    def check(self) -> None:
        """Raise unless every generator image has the mapped profile."""
        for g in self.megagraph.generators:
            x = self.gen_images.get(g.name)
            if x is None:
                raise PropError(f"no image for generator {g.name!r}")
            want = (self.on_colors(g.source), self.on_colors(g.target))
            got = (tuple(self.target.source(x)), tuple(self.target.target(x)))
            if got != want:
                raise PropError(
                    f"image of {g.name!r} has profile {format_colors(got[0])} -> {format_colors(got[1])}, "
                    f"expected {format_colors(want[0])} -> {format_colors(want[1])}"
                )

    def __call__(self, f):
        d = f.diagram if isinstance(f, FreeMorphism) else f
        return evaluate(d, self.target, self.on_color, self.image)

    def apply_term(self, t: Term):
        return evaluate_term(t, self.target, self.on_color, self.image)

    def key(self) -> tuple:
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, PropMap) and self.megagraph == other.megagraph and self._key == other._key

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key)
        return self._hash

    def __repr__(self) -> str:
        cs = ", ".join(f"{format_color(c)}->{format_color(self.color_map[c])}" for c in self.megagraph.colors)
        return f"PropMap({cs}; {len(self.gen_images)} generators)"


def extend(f: FreeMegaMap, check: bool = True) -> PropMap:
    """The unique prop map ``F(X) -> T`` restricting to ``f`` (target must be ``U(T)``)."""
    if not isinstance(f.target, PropMegagraph):
        raise MegagraphError("extend needs a map into the underlying megagraph of a prop")
    if check and not validate_mega_map(f):
        raise MegagraphError("invalid megagraph map")
    m = PropMap(f.source, f.target.prop, f.color_map, f.gen_images)
    m.check()
    return m


def adjunction_transpose(k: PropMap, max_arity: int = 2) -> FreeMegaMap:
    """Restriction of a prop map along ``X -> U F(X)``."""
    free = FreeProp(k.megagraph)
    images = {g.name: k(free.generator(g.name)) for g in k.megagraph.generators}
    return FreeMegaMap(k.megagraph, PropMegagraph(k.target, max_arity), k.color_map, images)


def free_functor_map(g: FreeMegaMap) -> Callable[[FreeMorphism], FreeMorphism]:
    """``F(g)`` for a map of free megagraphs, acting by relabelling decorations."""
    if not isinstance(g.target, FreeMegagraph):
        raise MegagraphError("free_functor_map needs a map between free megagraphs")
    if not validate_mega_map(g):
        raise MegagraphError("invalid megagraph map")

    def apply(f: FreeMorphism) -> FreeMorphism:
        d = f.diagram
        nodes = []
        for node in d.nodes:
            x: Arrow = g.gen_images[node.gen]
            ins = tuple(node.ins[j] for j in x.sigma.inverse().zero)
            outs = tuple(node.outs[j] for j in x.tau.zero)
            nodes.append(Node(x.gen, ins, outs))
        colors = tuple(g.color_map[c] for c in d.colors)
        return FreeMorphism.of(Diagram(colors, tuple(nodes), d.inputs, d.outputs))

    return apply
