"""Finite props: the terminal prop, endomorphism props, permutations and
finite-set maps, and explicit lookup tables.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable, Mapping, Optional, Sequence

from ..kernel import (
    Perm,
    PermError,
    act_left,
    act_right,
    format_color,
    format_colors,
    parse_color,
    parse_colors,
)
from .prop import ArityError, Prop, PropError


def _check_same(a, b, what="profile"):
    if tuple(a) != tuple(b):
        raise PropError(f"{what} mismatch: {format_colors(a)} vs {format_colors(b)}")


# ---------------------------------------------------------------------------
# terminal prop


@dataclass(frozen=True)
class Star:
    n: int
    m: int


class TerminalProp(Prop):
    """One color, one morphism in every hom set."""

    def __init__(self, color="*"):
        self.color = color
        self.colors = (color,)
        self.name = "terminal"

    def _len(self, cs):
        if any(c != self.color for c in cs):
            raise PropError(f"unknown color in {cs!r}")
        return len(cs)

    def source(self, f: Star) -> tuple:
        return (self.color,) * f.n

    def target(self, f: Star) -> tuple:
        return (self.color,) * f.m

    def identity(self, c) -> Star:
        self._len((c,))
        return Star(1, 1)

    def unit(self) -> Star:
        return Star(0, 0)

    def compose_v(self, f: Star, g: Star) -> Star:
        if f.n != g.m:
            raise PropError("profile mismatch")
        return Star(g.n, f.m)

    def compose_h(self, f: Star, g: Star) -> Star:
        return Star(f.n + g.n, f.m + g.m)

    def act(self, f: Star, sigma=None, tau=None) -> Star:
        if (sigma is not None and sigma.degree != f.n) or (tau is not None and tau.degree != f.m):
            raise PermError("degree mismatch")
        return f

    def hom(self, src, dst) -> list:
        return [Star(self._len(src), self._len(dst))]


def terminal_prop() -> TerminalProp:
    return TerminalProp()


# ---------------------------------------------------------------------------
# endomorphism props


@dataclass(frozen=True)
class Fn:
    """A function ``prod X_src -> prod X_dst`` stored as a value table.

    ``table[i]`` is the output tuple for the ``i``-th input tuple in
    ``itertools.product`` order.
    """

    src: tuple
    dst: tuple
    table: tuple


class EndProp(Prop):
    def __init__(self, sets: Mapping[Any, Sequence], name: str = "End"):
        self.sets = {c: tuple(xs) for c, xs in sets.items()}
        self.colors = tuple(self.sets)
        self.name = name
        self._domains: dict = {}

    def _domain(self, cs: tuple) -> tuple[list, dict]:
        cs = tuple(cs)
        hit = self._domains.get(cs)
        if hit is None:
            try:
                elems = list(itertools.product(*(self.sets[c] for c in cs)))
            except KeyError as exc:
                raise PropError(f"unknown color {exc.args[0]!r}") from None
            hit = (elems, {x: i for i, x in enumerate(elems)})
            self._domains[cs] = hit
        return hit

    def make(self, src: Sequence, dst: Sequence, func) -> Fn:
        """Tabulate a Python callable taking and returning tuples."""
        src, dst = tuple(src), tuple(dst)
        dom, _ = self._domain(src)
        _, cod_index = self._domain(dst)
        table = []
        for x in dom:
            y = tuple(func(x))
            if y not in cod_index:
                raise PropError(f"value {y!r} is not in the codomain {format_colors(dst)}")
            table.append(y)
        return Fn(src, dst, tuple(table))

    def apply(self, f: Fn, x: Sequence) -> tuple:
        _, index = self._domain(f.src)
        return f.table[index[tuple(x)]]

    def source(self, f: Fn) -> tuple:
        return f.src

    def target(self, f: Fn) -> tuple:
        return f.dst

    def identity(self, c) -> Fn:
        return self.make((c,), (c,), lambda x: x)

    def unit(self) -> Fn:
        return Fn((), (), ((),))

    def compose_v(self, f: Fn, g: Fn) -> Fn:
        _check_same(f.src, g.dst)
        _, index = self._domain(f.src)
        return Fn(g.src, f.dst, tuple(f.table[index[y]] for y in g.table))

    def compose_h(self, f: Fn, g: Fn) -> Fn:
        # inputs are listed in product order, so the pair (x, y) sits at index(x) * |dom g| + index(y)
        return Fn(f.src + g.src, f.dst + g.dst, tuple(a + b for a in f.table for b in g.table))

    def act(self, f: Fn, sigma: Perm | None = None, tau: Perm | None = None) -> Fn:
        if sigma is None and tau is None:
            return f
        src = act_right(f.src, sigma)
        dst = act_left(tau, f.dst)
        # act_left on index lists gives the rearrangement once; apply it to every entry
        pick_in = act_left(sigma, range(len(f.src)))
        pick_out = act_left(tau, range(len(f.dst)))
        _, index = self._domain(f.src)
        table = []
        for x in self._domain(src)[0]:
            y = f.table[index[tuple(x[j] for j in pick_in)]]
            table.append(tuple(y[j] for j in pick_out))
        return Fn(src, dst, tuple(table))

    def hom(self, src, dst) -> list:
        src, dst = tuple(src), tuple(dst)
        dom, _ = self._domain(src)
        cod, _ = self._domain(dst)
        return [Fn(src, dst, table) for table in itertools.product(cod, repeat=len(dom))]

    def hom_size(self, src, dst) -> int:
        return len(self._domain(dst)[0]) ** len(self._domain(src)[0])


def endomorphism_prop(sets: Mapping[Any, Sequence]) -> EndProp:
    return EndProp(sets)


# ---------------------------------------------------------------------------
# maps of finite sets and bijections (monochrome)


@dataclass(frozen=True)
class FinMap:
    """A map ``[n] -> [m]`` (0-based images)."""

    n: int
    m: int
    images: tuple


class FinSetProp(Prop):
    """``hom(n, m)`` = all maps ``[n] -> [m]``; with ``bijective=True`` only bijections."""

    def __init__(self, color="x", bijective: bool = False):
        self.color = color
        self.colors = (color,)
        self.bijective = bijective
        self.name = "Sigma" if bijective else "FinSet"

    def _len(self, cs):
        if any(c != self.color for c in cs):
            raise PropError(f"unknown color in {cs!r}")
        return len(cs)

    def source(self, f: FinMap) -> tuple:
        return (self.color,) * f.n

    def target(self, f: FinMap) -> tuple:
        return (self.color,) * f.m

    def identity(self, c) -> FinMap:
        self._len((c,))
        return FinMap(1, 1, (0,))

    def unit(self) -> FinMap:
        return FinMap(0, 0, ())

    def compose_v(self, f: FinMap, g: FinMap) -> FinMap:
        if f.n != g.m:
            raise PropError("profile mismatch")
        return FinMap(g.n, f.m, tuple(f.images[i] for i in g.images))

    def compose_h(self, f: FinMap, g: FinMap) -> FinMap:
        return FinMap(f.n + g.n, f.m + g.m, f.images + tuple(f.m + j for j in g.images))

    def act(self, f: FinMap, sigma: Perm | None = None, tau: Perm | None = None) -> FinMap:
        imgs = f.images
        if sigma is not None:
            if sigma.degree != f.n:
                raise PermError("degree mismatch")
            imgs = tuple(imgs[j] for j in sigma.zero)
        if tau is not None:
            if tau.degree != f.m:
                raise PermError("degree mismatch")
            imgs = tuple(tau.zero[j] for j in imgs)
        return FinMap(f.n, f.m, imgs)

    def hom(self, src, dst) -> list:
        n, m = self._len(src), self._len(dst)
        if self.bijective:
            if n != m:
                return []
            return [FinMap(n, n, p) for p in itertools.permutations(range(n))]
        return [FinMap(n, m, imgs) for imgs in itertools.product(range(m), repeat=n)]


# ---------------------------------------------------------------------------
# explicit tables


class TableProp(Prop):
    """A finite prop given by explicit lookup tables up to an arity bound.

    ``max_arity`` bounds ``max(len(src), len(dst))`` of every listed
    morphism; composites beyond the bound raise :class:`ArityError`.
    """

    def __init__(
        self,
        colors: Sequence,
        max_arity: int,
        profiles: Mapping[Any, tuple],
        identities: Mapping[Any, Any],
        unit: Any,
        vcomp: Mapping[tuple, Any],
        hcomp: Mapping[tuple, Any],
        sigma: Mapping[tuple, Any],
        tau: Mapping[tuple, Any],
        name: str = "table",
    ):
        self.colors = tuple(colors)
        self.max_arity = max_arity
        self.profiles = dict(profiles)
        self.identities_table = dict(identities)
        self.unit_label = unit
        self.vcomp_table = dict(vcomp)
        self.hcomp_table = dict(hcomp)
        self.sigma_table = dict(sigma)
        self.tau_table = dict(tau)
        self.name = name
        self._homs: dict = {}
        for f, prof in self.profiles.items():
            self._homs.setdefault(prof, []).append(f)

    def _bound(self, src, dst):
        if len(src) > self.max_arity or len(dst) > self.max_arity:
            raise ArityError(
                f"profile {format_colors(src)} -> {format_colors(dst)} exceeds the arity bound {self.max_arity}"
            )

    def source(self, f) -> tuple:
        return self.profiles[f][0]

    def target(self, f) -> tuple:
        return self.profiles[f][1]

    def identity(self, c):
        return self.identities_table[c]

    def unit(self):
        return self.unit_label

    def compose_v(self, f, g):
        try:
            return self.vcomp_table[(f, g)]
        except KeyError:
            raise PropError(f"no vertical composite for ({f!r}, {g!r})") from None

    def compose_h(self, f, g):
        sf, tf = self.profiles[f]
        sg, tg = self.profiles[g]
        self._bound(sf + sg, tf + tg)
        return self.hcomp_table[(f, g)]

    def act(self, f, sigma: Perm | None = None, tau: Perm | None = None):
        src, dst = self.profiles[f]
        if sigma is not None:
            if sigma.degree != len(src):
                raise PermError("degree mismatch")
            f = self.sigma_table[(f, sigma)]
        if tau is not None:
            if tau.degree != len(dst):
                raise PermError("degree mismatch")
            f = self.tau_table[(f, tau)]
        return f

    def hom(self, src, dst) -> list:
        src, dst = tuple(src), tuple(dst)
        self._bound(src, dst)
        return list(self._homs.get((src, dst), []))

    def morphisms(self) -> list:
        return list(self.profiles)

    # corruption helper for fault-injection tests
    def corrupted(self, table: str, key, value) -> "TableProp":
        tables = {
            "vcomp": dict(self.vcomp_table),
            "hcomp": dict(self.hcomp_table),
            "sigma": dict(self.sigma_table),
            "tau": dict(self.tau_table),
        }
        if key not in tables[table]:
            raise KeyError(key)
        tables[table][key] = value
        return TableProp(
            self.colors,
            self.max_arity,
            self.profiles,
            self.identities_table,
            self.unit_label,
            tables["vcomp"],
            tables["hcomp"],
            tables["sigma"],
            tables["tau"],
            name=self.name + "-corrupted",
        )

    # text format ------------------------------------------------------
    def to_text(self) -> str:
        labels = {f: f"m{i}" for i, f in enumerate(self.profiles)}
        out = ["tableprop", f"maxarity {self.max_arity}", "colors " + " ".join(map(format_color, self.colors))]
        for f, (s, d) in self.profiles.items():
            out.append(f"morph {labels[f]} : {format_colors(s)} -> {format_colors(d)}")
        out.append(f"unit {labels[self.unit_label]}")
        for c, f in self.identities_table.items():
            out.append(f"id {format_color(c)} {labels[f]}")
        for (f, g), h in self.vcomp_table.items():
            out.append(f"vcomp {labels[f]} {labels[g]} = {labels[h]}")
        for (f, g), h in self.hcomp_table.items():
            out.append(f"hcomp {labels[f]} {labels[g]} = {labels[h]}")
        for (f, p), h in self.sigma_table.items():
            out.append(f"sigma {labels[f]} {p} = {labels[h]}")
        for (f, p), h in self.tau_table.items():
            out.append(f"tau {labels[f]} {p} = {labels[h]}")
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text: str, name: str = "table") -> "TableProp":
        colors: tuple = ()
        max_arity = None
        profiles: dict = {}
        ids: dict = {}
        unit = None
        tables: dict = {"vcomp": {}, "hcomp": {}, "sigma": {}, "tau": {}}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line or line == "tableprop":
                continue
            head, _, rest = line.partition(" ")
            if head == "maxarity":
                max_arity = int(rest)
            elif head == "colors":
                colors = tuple(parse_color(t) for t in rest.split())
            elif head == "morph":
                label, _, prof = rest.partition(":")
                s, _, d = prof.partition("->")
                profiles[label.strip()] = (parse_colors(s), parse_colors(d))
            elif head == "unit":
                unit = rest.strip()
            elif head == "id":
                c, f = rest.split()
                ids[parse_color(c)] = f
            elif head in ("vcomp", "hcomp"):
                lhs, _, h = rest.partition("=")
                f, g = lhs.split()
                tables[head][(f, g)] = h.strip()
            elif head in ("sigma", "tau"):
                lhs, _, h = rest.partition("=")
                f, _, p = lhs.strip().partition(" ")
                tables[head][(f, Perm.parse(p))] = h.strip()
            else:
                raise PropError(f"cannot parse table line {raw!r}")
        if max_arity is None or unit is None:
            raise PropError("table prop needs 'maxarity' and 'unit' lines")
        return cls(colors, max_arity, profiles, ids, unit, tables["vcomp"], tables["hcomp"],
                   tables["sigma"], tables["tau"], name=name)


def all_profiles(colors: Sequence, max_arity: int):
    for n in range(max_arity + 1):
        for src in itertools.product(colors, repeat=n):
            for m in range(max_arity + 1):
                for dst in itertools.product(colors, repeat=m):
                    yield src, dst


def tabulate(prop: Prop, max_arity: int, colors: Optional[Sequence] = None, name: Optional[str] = None) -> TableProp:
    """Freeze an enumerable prop into explicit tables up to ``max_arity``.

    Morphisms of ``prop`` are used as table labels, so equality in the
    result is equality of ``prop`` values.
    """
    colors = tuple(prop.colors if colors is None else colors)
    profiles: dict = {}
    by_profile: dict = {}
    for src, dst in all_profiles(colors, max_arity):
        homs = prop.hom(src, dst)
        by_profile[(src, dst)] = homs
        for f in homs:
            profiles[f] = (src, dst)
    by_source: dict = {}
    by_target: dict = {}
    for (src, dst), homs in by_profile.items():
        by_source.setdefault(src, []).extend(homs)
        by_target.setdefault(dst, []).extend(homs)
    vcomp = {}
    for f in profiles:
        for g in by_target.get(profiles[f][0], []):
            vcomp[(f, g)] = prop.compose_v(f, g)
    hcomp = {}
    flist = list(profiles)
    for f in flist:
        sf, tf = profiles[f]
        for g in flist:
            sg, tg = profiles[g]
            if len(sf) + len(sg) <= max_arity and len(tf) + len(tg) <= max_arity:
                hcomp[(f, g)] = prop.compose_h(f, g)
    sigma = {}
    tau = {}
    perms = {k: list(Perm.all(k)) for k in range(max_arity + 1)}
    for f, (s, d) in profiles.items():
        for p in perms[len(s)]:
            sigma[(f, p)] = prop.act(f, sigma=p)
        for p in perms[len(d)]:
            tau[(f, p)] = prop.act(f, tau=p)
    ids = {c: prop.identity(c) for c in colors}
    return TableProp(colors, max_arity, profiles, ids, prop.unit(), vcomp, hcomp, sigma, tau,
                     name=name or f"{prop.name}<={max_arity}")


# fixtures ------------------------------------------------------------------


def fixture_tables() -> dict[str, TableProp]:
    """The table-prop fixtures shipped with the library (all pass the axiom suite)."""
    return {
        "terminal": tabulate(TerminalProp(), 3, name="terminal<=3"),
        "sigma": tabulate(FinSetProp(bijective=True), 3, name="Sigma<=3"),
        "finset": tabulate(FinSetProp(), 2, name="FinSet<=2"),
        "end2": tabulate(EndProp({"x": (0, 1)}), 1, name="End{0,1}<=1"),
        "end_ab": tabulate(EndProp({"a": (0,), "b": (0, 1)}), 1, name="End{a:1,b:2}<=1"),
    }


def corrupted_finset() -> TableProp:
    """FinSet<=2 with one vertical composite changed (fails the axiom suite)."""
    t = tabulate(FinSetProp(), 2, name="FinSet<=2")
    f = FinMap(1, 2, (0,))
    g = FinMap(2, 1, (0, 0))
    return t.corrupted("vcomp", (f, g), _other(t, t.vcomp_table[(f, g)]))


def _other(t: TableProp, h):
    for cand in t.hom(*t.profiles[h]):
        if cand != h:
            return cand
    raise PropError("no alternative morphism in this hom set")
