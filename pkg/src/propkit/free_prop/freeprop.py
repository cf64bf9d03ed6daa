"""The free prop ``F(X)`` on a free megagraph."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

from ..kernel import Perm, PermError, act_left, format_colors
from ..megagraph import Arrow, FreeMegagraph, Generator
from ..prop_core.prop import Prop, PropError
from . import diagram as dg
from .diagram import Diagram, DiagramError
from .terms import Term, evaluate_term, parse_term, term_profile


@dataclass(frozen=True)
class FreeMorphism:
    """A morphism of a free prop: a canonical port-normalised diagram."""

    diagram: Diagram

    @classmethod
    def of(cls, d: Diagram) -> "FreeMorphism":
        return cls(d.canonical())

    @property
    def source(self) -> tuple:
        return self.diagram.source

    @property
    def target(self) -> tuple:
        return self.diagram.target

    @property
    def n_vertices(self) -> int:
        return self.diagram.n_nodes

    def sort_key(self) -> tuple:
        return (self.diagram.n_nodes, repr(self.diagram))

    def __str__(self) -> str:
        return str(self.diagram)


def canonicalize(d: Diagram) -> FreeMorphism:
    return FreeMorphism.of(d)


class FreeProp(Prop):
    def __init__(self, megagraph: FreeMegagraph, max_vertices: int = 2):
        self.megagraph = megagraph
        self.colors = megagraph.colors
        self.max_vertices = max_vertices
        self.name = "F(X)"
        self._memo: dict = {}
        self._ops: dict = {}  # memoised compositions and actions (morphisms are canonical, hence hashable)

    def __eq__(self, other) -> bool:
        return isinstance(other, FreeProp) and other.megagraph == self.megagraph

    def __hash__(self) -> int:
        return hash(("FreeProp", self.megagraph))

    # prop operations ------------------------------------------------------
    def source(self, f: FreeMorphism) -> tuple:
        return f.source

    def target(self, f: FreeMorphism) -> tuple:
        return f.target

    def identity(self, c) -> FreeMorphism:
        if c not in self.colors:
            raise PropError(f"unknown color {c!r}")
        return FreeMorphism(dg.identity_diagram((c,)))

    def identities(self, colors: Sequence) -> FreeMorphism:
        for c in colors:
            if c not in self.colors:
                raise PropError(f"unknown color {c!r}")
        return FreeMorphism(dg.identity_diagram(tuple(colors)))

    def unit(self) -> FreeMorphism:
        return FreeMorphism(dg.identity_diagram(()))

    def _remember(self, key, build) -> FreeMorphism:
        hit = self._ops.get(key)
        if hit is None:
            if len(self._ops) > 200_000:
                self._ops.clear()
            hit = self._ops[key] = build()
        return hit

    def compose_v(self, f: FreeMorphism, g: FreeMorphism) -> FreeMorphism:
        def build():
            try:
                return FreeMorphism.of(dg.vcomp(f.diagram, g.diagram))
            except DiagramError as exc:
                raise PropError(str(exc)) from None

        return self._remember(("v", f, g), build)

    def compose_h(self, f: FreeMorphism, g: FreeMorphism) -> FreeMorphism:
        return self._remember(("h", f, g), lambda: FreeMorphism.of(dg.hcomp(f.diagram, g.diagram)))

    def act(self, f: FreeMorphism, sigma: Perm | None = None, tau: Perm | None = None) -> FreeMorphism:
        if sigma is None and tau is None:
            return f

        def build():
            try:
                return FreeMorphism.of(dg.act(f.diagram, sigma, tau))
            except DiagramError as exc:
                raise PermError(str(exc)) from None

        return self._remember(("a", f, sigma, tau), build)

    # generators -----------------------------------------------------------
    def generator(self, name) -> FreeMorphism:
        return FreeMorphism.of(dg.generator_diagram(self.megagraph.generator(name)))

    def corolla(self, x: Union[Arrow, object]) -> FreeMorphism:
        """The one-vertex morphism ``g(x)`` of an arrow ``(tau, g, sigma)`` (or a generator name)."""
        if not isinstance(x, Arrow):
            return self.generator(x)
        return self.act(self.generator(x.gen), sigma=x.sigma, tau=x.tau)

    def check_diagram(self, d: Diagram) -> FreeMorphism:
        d.validate(self.megagraph)
        return FreeMorphism.of(d)

    # terms ----------------------------------------------------------------
    def profile_of(self, t: Term) -> tuple[tuple, tuple]:
        g = self.megagraph
        return term_profile(t, set(g.colors), lambda n: (g.generator(n).source, g.generator(n).target))

    def from_term(self, t: Union[Term, str]) -> FreeMorphism:
        if isinstance(t, str):
            t = parse_term(t)
        self.profile_of(t)  # precise diagnostics before building
        return evaluate_term(t, self, lambda c: c, self.generator)

    # enumeration ----------------------------------------------------------
    def hom(self, src: Sequence, dst: Sequence) -> list[FreeMorphism]:
        return enumerate_hom(self, src, dst, self.max_vertices)

    def exact(self, src: tuple, dst: tuple, k: int) -> list[FreeMorphism]:
        """Morphisms ``src -> dst`` with exactly ``k`` vertices."""
        key = (src, dst, k)
        if key in self._memo:
            return self._memo[key]
        out: dict[Diagram, FreeMorphism] = {}
        if k == 0:
            if Counter(src) == Counter(dst):
                ident = dg.identity_diagram(src)
                for tau in Perm.all(len(src)):
                    if act_left(tau, src) == dst:
                        f = FreeMorphism.of(dg.act(ident, None, tau))
                        out[f.diagram] = f
        else:
            for gen in self.megagraph.generators:
                m = len(gen.target)
                for pos in itertools.permutations(range(len(dst)), m):
                    if any(dst[p] != c for p, c in zip(pos, gen.target)):
                        continue
                    used = set(pos)
                    rest_pos = [p for p in range(len(dst)) if p not in used]
                    rest = tuple(dst[p] for p in rest_pos)
                    # tau places (gen outputs ++ rest) onto dst positions
                    tau = Perm._from_zero(list(pos) + rest_pos)
                    top = dg.act(
                        dg.hcomp(dg.generator_diagram(gen), dg.identity_diagram(rest)), None, tau
                    )
                    for lower in self.exact(src, gen.source + rest, k - 1):
                        f = FreeMorphism.of(dg.vcomp(top, lower.diagram))
                        out[f.diagram] = f
        result = sorted(out.values(), key=FreeMorphism.sort_key)
        self._memo[key] = result
        return result


def enumerate_hom(prop: FreeProp, src: Sequence, dst: Sequence, max_vertices: int) -> list[FreeMorphism]:
    """All morphisms ``src -> dst`` with at most ``max_vertices`` vertices, deterministic order."""
    if max_vertices < 0:
        raise ValueError("vertex bound must be nonnegative")
    src, dst = tuple(src), tuple(dst)
    for c in src + dst:
        if c not in prop.colors:
            raise PropError(f"unknown color {c!r}")
    out: list[FreeMorphism] = []
    for k in range(max_vertices + 1):
        out.extend(prop.exact(src, dst, k))
    return out


def enumerate_morphisms(prop: FreeProp, max_vertices: int, max_arity: int) -> list[FreeMorphism]:
    """Every morphism with at most ``max_vertices`` vertices and both arities at most ``max_arity``."""
    out = []
    for n in range(max_arity + 1):
        for src in itertools.product(prop.colors, repeat=n):
            for m in range(max_arity + 1):
                for dst in itertools.product(prop.colors, repeat=m):
                    out.extend(enumerate_hom(prop, src, dst, max_vertices))
    return out
