"""Colored operads, their axioms, and the underlying operad of a prop.

An operad element ``f`` has a list of input colors ``source(f)`` and one
output color ``target(f)``.  ``compose(g, fs)`` is the operadic composition
``gamma(g; f_1, ..., f_n)`` and ``act(f, sigma)`` is the right action, with
``source(act(f, sigma)) == source(f) . sigma``.
"""
from __future__ import annotations

import itertools
import random
from abc import ABC, abstractmethod
from typing import Iterable, Optional, Sequence

from ..kernel import Perm, act_left, act_right, format_color, format_colors, parse_color, parse_colors, perm_compose, perm_from_lists
from ..prop_core.axioms import AxiomReport, AxiomResult
from ..prop_core.maps import Structure, StructureMap, Target, enumerate_structure_maps
from ..prop_core.prop import ArityError, Prop, PropError


class OperadError(PropError):
    pass


class Operad(ABC):
    colors: tuple = ()
    name: str = "operad"

    @abstractmethod
    def source(self, f) -> tuple: ...

    @abstractmethod
    def target(self, f): ...

    @abstractmethod
    def identity(self, c): ...

    @abstractmethod
    def compose(self, g, fs: Sequence): ...

    @abstractmethod
    def act(self, f, sigma: Perm): ...

    def hom(self, src: Sequence, c) -> list:
        raise OperadError(f"{self.name} does not have enumerable hom sets")

    def equal(self, f, g) -> bool:
        return f == g

    def elements(self, max_arity: int) -> list:
        out = []
        for n in range(max_arity + 1):
            for src in itertools.product(self.colors, repeat=n):
                for c in self.colors:
                    out.extend(self.hom(src, c))
        return out

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class UnderlyingOperad(Operad):
    """``U(T)``: the one-output morphisms of a prop, composed by ``g o (f_1 (x) ... (x) f_n)``."""

    def __init__(self, prop: Prop):
        self.prop = prop
        self.colors = tuple(prop.colors or ())
        self.name = f"U({prop.name})"

    def source(self, f) -> tuple:
        return tuple(self.prop.source(f))

    def target(self, f):
        (c,) = self.prop.target(f)
        return c

    def identity(self, c):
        return self.prop.identity(c)

    def compose(self, g, fs):
        return self.prop.compose_v(g, self.prop.compose_h_all(fs))

    def act(self, f, sigma):
        return self.prop.act(f, sigma=sigma)

    def hom(self, src, c) -> list:
        return self.prop.hom(tuple(src), (c,))

    def equal(self, f, g) -> bool:
        return self.prop.equal(f, g)


def prop_to_operad(T: Prop) -> UnderlyingOperad:
    return UnderlyingOperad(T)


class TableOperad(Operad):
    """A finite operad stored as explicit tables up to an arity bound."""

    def __init__(self, colors, max_arity: int, profiles: dict, identities: dict, gamma: dict, action: dict,
                 name: str = "table-operad"):
        self.colors = tuple(colors)
        self.max_arity = max_arity
        self.profiles = dict(profiles)
        self.identities = dict(identities)
        self.gamma = dict(gamma)
        self.action = dict(action)
        self.name = name
        self._homs: dict = {}
        for f, prof in self.profiles.items():
            self._homs.setdefault(prof, []).append(f)

    def source(self, f) -> tuple:
        return self.profiles[f][0]

    def target(self, f):
        return self.profiles[f][1]

    def identity(self, c):
        return self.identities[c]

    def compose(self, g, fs):
        key = (g, tuple(fs))
        if key in self.gamma:
            return self.gamma[key]
        if sum(len(self.source(f)) for f in fs) > self.max_arity:
            raise ArityError("composite exceeds the arity bound")
        raise OperadError(f"no composite for {key!r}")

    def act(self, f, sigma):
        return self.action[(f, sigma)]

    def hom(self, src, c) -> list:
        if len(src) > self.max_arity:
            raise ArityError("profile exceeds the arity bound")
        return list(self._homs.get((tuple(src), c), []))

    def elements(self, max_arity: Optional[int] = None) -> list:
        return [f for f in self.profiles if max_arity is None or len(self.profiles[f][0]) <= max_arity]

    def corrupted(self, key, value) -> "TableOperad":
        gamma = dict(self.gamma)
        if key not in gamma:
            raise KeyError(key)
        gamma[key] = value
        return TableOperad(self.colors, self.max_arity, self.profiles, self.identities, gamma, self.action,
                           self.name + "-corrupted")


    # text format ------------------------------------------------------
    def to_text(self) -> str:
        labels = {f: f"o{i}" for i, f in enumerate(self.profiles)}
        out = ["tableoperad", f"maxarity {self.max_arity}", "colors " + " ".join(map(format_color, self.colors))]
        for f, (s, c) in self.profiles.items():
            out.append(f"op {labels[f]} : {format_colors(s)} -> {format_color(c)}")
        for c, f in self.identities.items():
            out.append(f"id {format_color(c)} {labels[f]}")
        for (g, fs), h in self.gamma.items():
            out.append(f"gamma {labels[g]} {','.join(labels[f] for f in fs) or '-'} = {labels[h]}")
        for (f, p), h in self.action.items():
            out.append(f"act {labels[f]} {p} = {labels[h]}")
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text: str, name: str = "table-operad") -> "TableOperad":
        colors: tuple = ()
        max_arity = None
        profiles: dict = {}
        ids: dict = {}
        gamma: dict = {}
        action: dict = {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line or line == "tableoperad":
                continue
            head, _, rest = line.partition(" ")
            if head == "maxarity":
                max_arity = int(rest)
            elif head == "colors":
                colors = tuple(parse_color(t) for t in rest.split())
            elif head == "op":
                label, _, prof = rest.partition(":")
                s, _, c = prof.partition("->")
                profiles[label.strip()] = (parse_colors(s), parse_color(c))
            elif head == "id":
                c, f = rest.split()
                ids[parse_color(c)] = f
            elif head == "gamma":
                lhs, _, h = rest.partition("=")
                g, fs = lhs.split()
                gamma[(g, () if fs == "-" else tuple(fs.split(",")))] = h.strip()
            elif head == "act":
                lhs, _, h = rest.partition("=")
                f, _, p = lhs.strip().partition(" ")
                action[(f, Perm.parse(p))] = h.strip()
            else:
                raise OperadError(f"cannot parse table operad line {raw!r}")
        if max_arity is None:
            raise OperadError("table operad needs a 'maxarity' line")
        return cls(colors, max_arity, profiles, ids, gamma, action, name)


def tabulate_operad(O: Operad, max_arity: int, name: Optional[str] = None) -> TableOperad:
    elems = O.elements(max_arity)
    profiles = {f: (tuple(O.source(f)), O.target(f)) for f in elems}
    by_target: dict = {}
    for f, (s, c) in profiles.items():
        by_target.setdefault(c, []).append(f)
    gamma = {}
    for g, (s, c) in profiles.items():
        for fs in itertools.product(*(by_target.get(a, []) for a in s)):
            if sum(len(profiles[f][0]) for f in fs) <= max_arity:
                gamma[(g, tuple(fs))] = O.compose(g, fs)
    action = {(f, p): O.act(f, p) for f, (s, c) in profiles.items() for p in Perm.all(len(s))}
    ids = {c: O.identity(c) for c in O.colors}
    return TableOperad(O.colors, max_arity, profiles, ids, gamma, action, name or f"{O.name}<={max_arity}")


# ---------------------------------------------------------------------------
# axioms


def _labels(O: Operad, fs: Sequence) -> list:
    return [(i, r) for i, f in enumerate(fs) for r in range(len(O.source(f)))]


def check_operad_axioms(O: Operad, elements: Sequence, max_instances: int = 20000, seed: int = 0) -> AxiomReport:
    """Unit, associativity and both equivariance laws of ``gamma``, plus the action laws.

    Instances whose composites leave a table operad's arity bound are skipped.
    The permutations in the equivariance laws are computed by tracking input
    labels, so they do not depend on a block-permutation formula.
    """
    rng = random.Random(seed)
    E = list(elements)
    by_target: dict = {}
    for f in E:
        by_target.setdefault(O.target(f), []).append(f)
    report = AxiomReport(O.name)

    def run(name, instances, check):
        res = AxiomResult(name)
        report.results[name] = res
        for k, inst in enumerate(instances):
            if k >= max_instances:
                res.mode = "truncated"
                break
            try:
                ok = check(*inst)
            except ArityError:
                res.skipped += 1
                continue
            res.checked += 1
            if not ok:
                res.failed += 1
                if res.counterexample is None:
                    res.counterexample = " ; ".join(repr(x)[:100] for x in inst)

    bound = getattr(O, "max_arity", None)
    arity = lambda fs: sum(len(O.source(f)) for f in fs)

    def fillings(g):
        for fs in itertools.product(*(by_target.get(a, []) for a in O.source(g))):
            if bound is None or arity(fs) <= bound:
                yield fs

    eq = O.equal
    run(
        "identities",
        ((f,) for f in E),
        lambda f: eq(O.compose(O.identity(O.target(f)), [f]), f)
        and eq(O.compose(f, [O.identity(a) for a in O.source(f)]), f),
    )

    def assoc_instances():
        for g in E:
            for fs in fillings(g):
                for hs in itertools.product(*(list(fillings(f)) for f in fs)):
                    if bound is None or sum(arity(h) for h in hs) <= bound:
                        yield g, fs, hs

    def assoc(g, fs, hs):
        flat = [h for block in hs for h in block]
        return eq(O.compose(O.compose(g, fs), flat), O.compose(g, [O.compose(f, h) for f, h in zip(fs, hs)]))

    run("associativity", assoc_instances(), assoc)

    def equiv1_instances():
        for f in E:
            for sigma in Perm.all(len(O.source(f))):
                fs_ = O.act(f, sigma)
                for gs in fillings(fs_):
                    yield f, sigma, gs

    def equiv1(f, sigma, gs):
        lhs = O.compose(O.act(f, sigma), gs)
        # slot i of f.sigma is slot sigma(i) of f
        gs2 = act_left(sigma, gs)
        left_labels = _labels(O, gs)
        order = act_left(sigma, list(range(len(gs))))
        right_labels = [(i, r) for i in order for r in range(len(O.source(gs[i])))]
        pi = perm_from_lists(right_labels, left_labels)
        return eq(lhs, O.act(O.compose(f, gs2), pi))

    run("equivariance (outer)", equiv1_instances(), equiv1)

    def equiv2_instances():
        for f in E:
            for gs in fillings(f):
                for taus in itertools.product(*(list(Perm.all(len(O.source(g)))) for g in gs)):
                    yield f, gs, taus

    def equiv2(f, gs, taus):
        lhs = O.compose(f, [O.act(g, t) for g, t in zip(gs, taus)])
        total = Perm.identity(0)
        for t in taus:
            total = total + t
        return eq(lhs, O.act(O.compose(f, gs), total))

    run("equivariance (inner)", equiv2_instances(), equiv2)

    def act_instances():
        for f in E:
            n = len(O.source(f))
            for s, s2 in itertools.product(list(Perm.all(n)), repeat=2):
                yield f, s, s2

    run(
        "actions",
        act_instances(),
        lambda f, s, s2: eq(O.act(f, Perm.identity(len(O.source(f)))), f)
        and eq(O.act(O.act(f, s), s2), O.act(f, perm_compose(s, s2))),
    )
    return report


# ---------------------------------------------------------------------------
# maps of operads


def operad_structure(O: Operad, elements: Sequence) -> Structure:
    """The bounded structure of ``O`` on ``elements`` for map enumeration."""
    elems = list(elements)
    inset = set(elems)
    prof = {f: (tuple(O.source(f)), (O.target(f),)) for f in elems}
    by_target: dict = {}
    for f in elems:
        by_target.setdefault(O.target(f), []).append(f)
    cons = []
    for c in O.colors:
        i = O.identity(c)
        if i in inset:
            cons.append(("id", (c,), i))
    element_args = {"id": (), "act": (0,)}
    for g in elems:
        for fs in itertools.product(*(by_target.get(a, []) for a in prof[g][0])):
            try:
                r = O.compose(g, fs)
            except ArityError:
                continue
            if r in inset:
                op = ("gamma", len(fs))
                element_args[op] = tuple(range(len(fs) + 1))
                cons.append((op, (g,) + tuple(fs), r))
        for p in Perm.all(len(prof[g][0])):
            r = O.act(g, p)
            if r in inset:
                cons.append(("act", (g, p), r))
    return Structure(tuple(O.colors), elems, prof, cons, element_args)


def operad_target(O: Operad) -> Target:
    def apply(op, vals):
        if op == "id":
            return O.identity(vals[0])
        if op == "act":
            return O.act(vals[0], vals[1])
        return O.compose(vals[0], vals[1:])

    return Target(
        tuple(O.colors),
        lambda s, d: O.hom(s, d[0]) if len(d) == 1 else [],
        apply,
        O.equal,
        lambda y: (tuple(O.source(y)), (O.target(y),)),
    )


def operad_maps(O: Operad, elements: Sequence, P: Operad, color_maps=None) -> list[StructureMap]:
    """Every operad map from the bounded part of ``O`` on ``elements`` into ``P``."""
    return enumerate_structure_maps(operad_structure(O, elements), operad_target(P), color_maps)
