"""Megagraphs: colored Sigma-bimodule spans ``MX0 <- X1 -> MX0`` and their maps.

Two realisations are provided.  :class:`FreeMegagraph` is the free bimodule
on a finite list of generators, whose arrows are formal triples
``(tau, g, sigma)``.  :class:`PropMegagraph` is the underlying megagraph of a
prop with enumerable hom sets.
"""
from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Mapping, Optional, Sequence

from .kernel import (
    Perm,
    PermError,
    act_left,
    act_right,
    format_color,
    format_colors,
    parse_color,
    parse_colors,
    perm_compose,
)


class MegagraphError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    name: Any
    source: tuple
    target: tuple

    def __str__(self) -> str:
        return f"gen {format_color(self.name)} : {format_colors(self.source)} -> {format_colors(self.target)}"


@dataclass(frozen=True)
class Arrow:
    """Element ``(tau, g, sigma)`` of a free bimodule; ``tau . g . sigma``."""

    tau: Perm
    gen: Any
    sigma: Perm


class Megagraph(ABC):
    colors: tuple

    @abstractmethod
    def source(self, x) -> tuple: ...

    @abstractmethod
    def target(self, x) -> tuple: ...

    @abstractmethod
    def act(self, x, tau: Perm | None = None, sigma: Perm | None = None):
        """``tau . x . sigma``."""

    @abstractmethod
    def arrows(self) -> Iterator: ...

    def equal(self, x, y) -> bool:
        return x == y


class FreeMegagraph(Megagraph):
    def __init__(self, colors: Iterable, generators: Iterable[Generator]):
        self.colors = tuple(colors)
        gens = tuple(generators)
        self.generators = gens
        self._by_name = {}
        cset = set(self.colors)
        if len(cset) != len(self.colors):
            raise MegagraphError("repeated color")
        for g in gens:
            if g.name in self._by_name:
                raise MegagraphError(f"repeated generator name {g.name!r}")
            if g.name in cset:
                raise MegagraphError(f"generator {g.name!r} shares a name with a color")
            for c in g.source + g.target:
                if c not in cset:
                    raise MegagraphError(f"generator {g.name!r} uses unknown color {c!r}")
            self._by_name[g.name] = g

    def __repr__(self) -> str:
        return f"FreeMegagraph(colors={self.colors!r}, generators={[g.name for g in self.generators]!r})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FreeMegagraph)
            and self.colors == other.colors
            and self.generators == other.generators
        )

    def __hash__(self) -> int:
        return hash((self.colors, self.generators))

    def generator(self, name) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise MegagraphError(f"unknown generator {name!r}") from None

    def has_generator(self, name) -> bool:
        return name in self._by_name

    def arrow(self, name, tau: Perm | None = None, sigma: Perm | None = None) -> Arrow:
        g = self.generator(name)
        tau = Perm.identity(len(g.target)) if tau is None else tau
        sigma = Perm.identity(len(g.source)) if sigma is None else sigma
        if tau.degree != len(g.target) or sigma.degree != len(g.source):
            raise PermError("arrow permutations do not match the generator arities")
        return Arrow(tau, name, sigma)

    def source(self, x: Arrow) -> tuple:
        return act_right(self.generator(x.gen).source, x.sigma)

    def target(self, x: Arrow) -> tuple:
        return act_left(x.tau, self.generator(x.gen).target)

    def act(self, x: Arrow, tau: Perm | None = None, sigma: Perm | None = None) -> Arrow:
        tau = x.tau if tau is None else perm_compose(tau, x.tau)
        sigma = x.sigma if sigma is None else perm_compose(x.sigma, sigma)
        return Arrow(tau, x.gen, sigma)

    def arrows(self) -> Iterator[Arrow]:
        for g in self.generators:
            for tau in Perm.all(len(g.target)):
                for sigma in Perm.all(len(g.source)):
                    yield Arrow(tau, g.name, sigma)

    # text format ------------------------------------------------------
    def to_text(self) -> str:
        lines = ["colors " + " ".join(format_color(c) for c in self.colors)]
        lines += [str(g) for g in self.generators]
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str) -> "FreeMegagraph":
        colors, gens, _ = parse_megagraph_lines(text.splitlines())
        return cls(colors, gens)


def parse_generator_line(line: str) -> Generator:
    body = line.strip()
    if not body.startswith("gen "):
        raise MegagraphError(f"expected 'gen <name> : <src> -> <dst>', got {line!r}")
    body = body[4:]
    if ":" not in body or "->" not in body:
        raise MegagraphError(f"malformed generator line {line!r}")
    name, profile = body.split(":", 1)
    src, dst = profile.split("->", 1)
    return Generator(parse_color(name.strip()), parse_colors(src), parse_colors(dst))


def parse_megagraph_lines(lines: Iterable[str]) -> tuple[tuple, list[Generator], list[str]]:
    """Split lines into colors, generators and the remaining (unparsed) lines."""
    colors: list = []
    gens: list[Generator] = []
    rest: list[str] = []
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("colors"):
            colors.extend(parse_color(tok) for tok in line.split()[1:])
        elif line.startswith("gen "):
            gens.append(parse_generator_line(line))
        else:
            rest.append(line)
    return tuple(colors), gens, rest


class PropMegagraph(Megagraph):
    """Underlying megagraph ``U(T)`` of a prop, truncated at ``max_arity``."""

    def __init__(self, prop, max_arity: int):
        if not hasattr(prop, "hom") or prop.colors is None:
            raise MegagraphError("prop does not have enumerable hom sets")
        self.prop = prop
        self.max_arity = max_arity
        self.colors = tuple(prop.colors)

    def source(self, x) -> tuple:
        return tuple(self.prop.source(x))

    def target(self, x) -> tuple:
        return tuple(self.prop.target(x))

    def act(self, x, tau: Perm | None = None, sigma: Perm | None = None):
        return self.prop.act(x, sigma=sigma, tau=tau)

    def profiles(self) -> Iterator[tuple[tuple, tuple]]:
        for n in range(self.max_arity + 1):
            for src in itertools.product(self.colors, repeat=n):
                for m in range(self.max_arity + 1):
                    for dst in itertools.product(self.colors, repeat=m):
                        yield src, dst

    def arrows(self) -> Iterator:
        for src, dst in self.profiles():
            yield from self.prop.hom(src, dst)

    def equal(self, x, y) -> bool:
        return self.prop.equal(x, y)


def underlying_megagraph(prop, max_arity: int = 2) -> PropMegagraph:
    return PropMegagraph(prop, max_arity)


@dataclass
class MegaMap:
    """A megagraph map given by a color map and an arrow map."""

    source: Megagraph
    target: Megagraph
    color_map: Mapping
    arrow_map: Callable

    def on_color(self, c):
        return self.color_map[c]

    def on_colors(self, cs: Sequence) -> tuple:
        return tuple(self.color_map[c] for c in cs)

    def __call__(self, x):
        return self.arrow_map(x)


class FreeMegaMap(MegaMap):
    """A map out of a free megagraph, determined by the images of the generators."""

    def __init__(self, source: FreeMegagraph, target: Megagraph, color_map: Mapping, gen_images: Mapping):
        self.gen_images = dict(gen_images)
        super().__init__(source, target, dict(color_map), self._apply)

    def _apply(self, x: Arrow):
        return self.target.act(self.gen_images[x.gen], x.tau, x.sigma)

    def key(self) -> tuple:
        return (
            tuple((c, self.color_map[c]) for c in self.source.colors),
            tuple((g.name, self.gen_images[g.name]) for g in self.source.generators),
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, FreeMegaMap) and self.source == other.source and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"FreeMegaMap({dict(self.color_map)!r}, {self.gen_images!r})"


def _sample_perms(n: int, limit: int) -> list[Perm]:
    perms = list(itertools.islice(Perm.all(n), limit))
    return perms


def validate_mega_map(f: MegaMap, perm_limit: int = 24) -> bool:
    """Check both commuting squares and equivariance on every source arrow.

    For arities above 4 only the first ``perm_limit`` permutations (in
    lexicographic order) are used for the equivariance check.
    """
    src, tgt = f.source, f.target
    if any(c not in f.color_map for c in src.colors):
        return False
    tcolors = set(tgt.colors)
    if any(f.color_map[c] not in tcolors for c in src.colors):
        return False
    for x in src.arrows():
        try:
            y = f(x)
        except (KeyError, PermError, ValueError):
            return False
        if tuple(tgt.source(y)) != f.on_colors(src.source(x)):
            return False
        if tuple(tgt.target(y)) != f.on_colors(src.target(x)):
            return False
        n, m = len(src.source(x)), len(src.target(x))
        for tau in _sample_perms(m, perm_limit):
            for sigma in _sample_perms(n, perm_limit):
                if not tgt.equal(f(src.act(x, tau, sigma)), tgt.act(y, tau, sigma)):
                    return False
    return True
