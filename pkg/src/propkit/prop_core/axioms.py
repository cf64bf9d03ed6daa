"""Checking the prop axioms on a finite set of morphisms.

Every axiom family is enumerated exhaustively over the supplied morphisms
and permutations until ``max_instances`` is reached; past that point the
family is completed with ``samples`` random instances and marked as sampled
in the report.  Instances whose composites leave the arity bound of a table
prop are counted as skipped.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence

from ..kernel import Perm, act_right, perm_compose, perm_direct_sum, sigma_xy
from .prop import ArityError, Prop, PropError

AXIOMS = (
    "identities",
    "unit",
    "vertical associativity",
    "horizontal associativity",
    "interchange",
    "vertical compatibility",
    "horizontal compatibility",
    "horizontal swap",
    "actions",
)


@dataclass
class AxiomResult:
    name: str
    checked: int = 0
    failed: int = 0
    skipped: int = 0
    mode: str = "exhaustive"  # or "sampled" / "truncated"
    counterexample: Optional[str] = None

    @property
    def exhaustive(self) -> bool:
        return self.mode == "exhaustive"


@dataclass
class AxiomReport:
    prop_name: str
    results: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.failed == 0 for r in self.results.values())

    @property
    def total(self) -> int:
        return sum(r.checked for r in self.results.values())

    def failures(self) -> list[AxiomResult]:
        return [r for r in self.results.values() if r.failed]

    def lines(self) -> list[str]:
        out = []
        for r in self.results.values():
            name = r.name
            status = "PASS" if r.failed == 0 else "FAIL"
            line = f"{status} {name}: {r.checked} instances ({r.mode}), {r.failed} failed, {r.skipped} skipped"
            if r.counterexample:
                line += f"; first counterexample: {r.counterexample}"
            out.append(line)
        return out

    def as_dict(self) -> dict:
        return {
            "prop": self.prop_name,
            "ok": self.ok,
            "axioms": {
                name: {
                    "checked": r.checked,
                    "failed": r.failed,
                    "skipped": r.skipped,
                    "mode": r.mode,
                    "counterexample": r.counterexample,
                }
                for name, r in self.results.items()
            },
        }


def _perms(n: int, limit_degree: int, rng: random.Random, extra: int = 4) -> list[Perm]:
    if n <= limit_degree:
        return list(Perm.all(n))
    out = [Perm.identity(n)]
    for _ in range(extra):
        imgs = list(range(1, n + 1))
        rng.shuffle(imgs)
        out.append(Perm(imgs))
    return out


def swap_sigma(n: int, p: int) -> Perm:
    """The source permutation turning ``f (x) g`` into ``g (x) f`` when ``f`` has ``n`` inputs and ``g`` has ``p``.

    Under the right action on sources this is ``sigma_xy(n, p)``, the
    inverse of the block swap that moves ``f``'s inputs behind ``g``'s.
    """
    return sigma_xy(n, p)


def swap_tau(m: int, q: int) -> Perm:
    """The target permutation for the same swap (left action on targets)."""
    return sigma_xy(q, m)


def check_prop_axioms(
    T: Prop,
    morphisms: Sequence,
    max_instances: int = 20000,
    samples: int = 2000,
    perm_degree: int = 3,
    seed: int = 0,
) -> AxiomReport:
    rng = random.Random(seed)
    M = list(morphisms)
    src = {id(f): tuple(T.source(f)) for f in M}
    tgt = {id(f): tuple(T.target(f)) for f in M}
    S = lambda f: src[id(f)] if id(f) in src else tuple(T.source(f))
    Tg = lambda f: tgt[id(f)] if id(f) in tgt else tuple(T.target(f))
    by_target: dict = {}
    for f in M:
        by_target.setdefault(Tg(f), []).append(f)
    composable = [(f, g) for f in M for g in by_target.get(S(f), [])]
    perms = lambda n: _perms(n, perm_degree, rng)
    report = AxiomReport(getattr(T, "name", "prop"))
    eq = T.equal

    def show(*xs) -> str:
        return " ; ".join(repr(x)[:120] for x in xs)

    def run(name: str, exhaustive: Iterator, sampler: Callable[[], tuple], check: Callable):
        res = AxiomResult(name)
        report.results[name] = res

        def one(inst):
            try:
                ok = check(*inst)
            except ArityError:
                res.skipped += 1
                return
            res.checked += 1
            if not ok:
                res.failed += 1
                if res.counterexample is None:
                    res.counterexample = show(*inst)

        for k, inst in enumerate(exhaustive):
            if k >= max_instances:
                res.mode = "sampled"
                break
            one(inst)
        if not res.exhaustive:
            for _ in range(samples):
                inst = sampler()
                if inst is not None:
                    one(inst)

    pick = lambda xs: xs[rng.randrange(len(xs))] if xs else None

    # identities: f o ids = f = ids o f
    run(
        "identities",
        ((f,) for f in M),
        lambda: (pick(M),),
        lambda f: eq(T.compose_v(f, T.identities(S(f))), f) and eq(T.compose_v(T.identities(Tg(f)), f), f),
    )
    run(
        "unit",
        ((f,) for f in M),
        lambda: (pick(M),),
        lambda f: eq(T.compose_h(T.unit(), f), f) and eq(T.compose_h(f, T.unit()), f),
    )

    def v_triples():
        for f, g in composable:
            for h in by_target.get(S(g), []):
                yield f, g, h

    def v_sample():
        f, g = pick(composable)
        hs = by_target.get(S(g), [])
        return (f, g, pick(hs)) if hs else None

    run(
        "vertical associativity",
        v_triples(),
        v_sample,
        lambda f, g, h: eq(T.compose_v(T.compose_v(f, g), h), T.compose_v(f, T.compose_v(g, h))),
    )
    run(
        "horizontal associativity",
        itertools.product(M, repeat=3),
        lambda: (pick(M), pick(M), pick(M)),
        lambda f, g, h: eq(T.compose_h(T.compose_h(f, g), h), T.compose_h(f, T.compose_h(g, h))),
    )
    run(
        "interchange",
        ((f, g, f2, g2) for (f, g) in composable for (f2, g2) in composable),
        lambda: pick(composable) + pick(composable),
        lambda f, g, f2, g2: eq(
            T.compose_h(T.compose_v(f, g), T.compose_v(f2, g2)),
            T.compose_v(T.compose_h(f, f2), T.compose_h(g, g2)),
        ),
    )

    # f o (s_* g) = (s^* f) o g whenever target(g) = source(f) . s
    def middle_pairs():
        for f in M:
            for s in perms(len(S(f))):
                for g in by_target.get(act_right(S(f), s), []):
                    yield f, g, s

    middle = list(itertools.islice(middle_pairs(), max_instances + 1))

    def vc_inst():
        for f, g, s in middle:
            yield "middle", f, g, s
        for f, g in composable:
            for s in perms(len(S(g))):
                yield "source", f, g, s
            for t in perms(len(Tg(f))):
                yield "target", f, g, t

    def vc_sample():
        if middle and rng.random() < 1 / 3:
            return ("middle",) + pick(middle)
        if not composable:
            return None
        f, g = pick(composable)
        if rng.random() < 0.5:
            return "source", f, g, pick(perms(len(S(g))))
        return "target", f, g, pick(perms(len(Tg(f))))

    def vc_check(kind, f, g, s):
        if kind == "middle":
            return eq(T.compose_v(f, T.act(g, tau=s)), T.compose_v(T.act(f, sigma=s), g))
        if kind == "source":
            return eq(T.act(T.compose_v(f, g), sigma=s), T.compose_v(f, T.act(g, sigma=s)))
        return eq(T.act(T.compose_v(f, g), tau=s), T.compose_v(T.act(f, tau=s), g))

    run("vertical compatibility", vc_inst(), vc_sample, vc_check)

    def hc_inst():
        for f, g in itertools.product(M, repeat=2):
            for s, s2 in itertools.product(perms(len(S(f))), perms(len(S(g)))):
                for t, t2 in itertools.product(perms(len(Tg(f))), perms(len(Tg(g)))):
                    yield f, g, s, s2, t, t2

    def hc_sample():
        f, g = pick(M), pick(M)
        return (f, g, pick(perms(len(S(f)))), pick(perms(len(S(g)))), pick(perms(len(Tg(f)))), pick(perms(len(Tg(g)))))

    run(
        "horizontal compatibility",
        hc_inst(),
        hc_sample,
        lambda f, g, s, s2, t, t2: eq(
            T.compose_h(T.act(f, sigma=s), T.act(g, sigma=s2)), T.act(T.compose_h(f, g), sigma=perm_direct_sum(s, s2))
        )
        and eq(T.compose_h(T.act(f, tau=t), T.act(g, tau=t2)), T.act(T.compose_h(f, g), tau=perm_direct_sum(t, t2))),
    )

    def swap_check(f, g):
        n, m, p, q = len(S(f)), len(Tg(f)), len(S(g)), len(Tg(g))
        lhs = T.act(T.compose_h(f, g), sigma=swap_sigma(n, p), tau=swap_tau(m, q))
        return eq(lhs, T.compose_h(g, f))

    run(
        "horizontal swap",
        itertools.product(M, repeat=2),
        lambda: (pick(M), pick(M)),
        swap_check,
    )

    def act_inst():
        for f in M:
            ps_s, ps_t = perms(len(S(f))), perms(len(Tg(f)))
            for s, s2 in itertools.product(ps_s, repeat=2):
                for t, t2 in itertools.product(ps_t, repeat=2):
                    yield f, s, s2, t, t2

    def act_sample():
        f = pick(M)
        ps_s, ps_t = perms(len(S(f))), perms(len(Tg(f)))
        return f, pick(ps_s), pick(ps_s), pick(ps_t), pick(ps_t)

    def act_check(f, s, s2, t, t2):
        n, m = len(S(f)), len(Tg(f))
        return (
            eq(T.act(f, sigma=Perm.identity(n), tau=Perm.identity(m)), f)
            and eq(T.act(T.act(f, sigma=s2), sigma=s), T.act(f, sigma=perm_compose(s2, s)))
            and eq(T.act(T.act(f, tau=t2), tau=t), T.act(f, tau=perm_compose(t, t2)))
            and eq(T.act(T.act(f, tau=t), sigma=s), T.act(T.act(f, sigma=s), tau=t))
        )

    run("actions", act_inst(), act_sample, act_check)
    return report
