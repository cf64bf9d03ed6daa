"""Bounded rewriting of diagrams modulo relations.

A relation ``lhs = rhs`` is applied to a diagram by finding a convex
sub-diagram isomorphic to ``lhs`` (ports and colors respected) and replacing
it by ``rhs``, wiring ``rhs``'s boundary to the same outside ends.  Convexity
(no path leaving the match and coming back) is what makes the replacement a
legal instance of ``C o_v sigma^* tau_* (lhs (x) ids) o_v D``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .diagram import Diagram, DiagramError, from_wires


class Verdict(enum.Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Rule:
    lhs: Diagram
    rhs: Diagram

    def reversed(self) -> "Rule":
        return Rule(self.rhs, self.lhs)


def _pattern_order(p: Diagram) -> list[int]:
    """Pattern nodes in an order where each node after the first of its component touches an earlier one."""
    src, tgt = p.ends
    order: list[int] = []
    seen: set = set()
    for start in range(p.n_nodes):
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop(0)
            order.append(v)
            for e in p.nodes[v].ins + p.nodes[v].outs:
                for end in (src[e], tgt[e]):
                    if end[0] == "n" and end[1] not in seen:
                        seen.add(end[1])
                        stack.append(end[1])
    return order


def find_matches(pattern: Diagram, d: Diagram) -> Iterator[tuple[dict, dict]]:
    """All port-respecting embeddings ``(node map, edge map)`` of ``pattern`` into ``d`` that are convex."""
    p_src, p_tgt = pattern.ends
    d_src, d_tgt = d.ends
    order = _pattern_order(pattern)
    nmap: dict = {}
    emap: dict = {}
    used_nodes: set = set()
    used_edges: set = set()
    by_gen: dict = {}
    for w, node in enumerate(d.nodes):
        by_gen.setdefault(node.gen, []).append(w)

    def candidates(pv: int) -> list[int]:
        pn = pattern.nodes[pv]
        for i, pe in enumerate(pn.ins):
            if pe in emap:
                end = d_tgt[emap[pe]]
                return [end[1]] if end[0] == "n" and end[2] == i else []
        for i, pe in enumerate(pn.outs):
            if pe in emap:
                end = d_src[emap[pe]]
                return [end[1]] if end[0] == "n" and end[2] == i else []
        return by_gen.get(pn.gen, [])

    def assign(pv: int, w: int) -> Optional[list]:
        pn, dn = pattern.nodes[pv], d.nodes[w]
        if pn.gen != dn.gen or len(pn.ins) != len(dn.ins) or len(pn.outs) != len(dn.outs):
            return None
        added = []
        for pe, de in list(zip(pn.ins, dn.ins)) + list(zip(pn.outs, dn.outs)):
            if pe in emap:
                if emap[pe] != de:
                    for x in added:
                        used_edges.discard(emap.pop(x))
                    return None
            else:
                if de in used_edges or pattern.colors[pe] != d.colors[de]:
                    for x in added:
                        used_edges.discard(emap.pop(x))
                    return None
                emap[pe] = de
                used_edges.add(de)
                added.append(pe)
        return added

    free_edges = [e for e in range(pattern.n_edges) if p_src[e][0] == "i" and p_tgt[e][0] == "o"]

    def free_assign(k: int) -> Iterator[None]:
        if k == len(free_edges):
            yield None
            return
        pe = free_edges[k]
        for de in range(d.n_edges):
            if de in used_edges or d.colors[de] != pattern.colors[pe]:
                continue
            emap[pe] = de
            used_edges.add(de)
            yield from free_assign(k + 1)
            used_edges.discard(de)
            del emap[pe]

    def node_assign(k: int) -> Iterator[None]:
        if k == len(order):
            yield from free_assign(0)
            return
        pv = order[k]
        for w in candidates(pv):
            if w in used_nodes:
                continue
            added = assign(pv, w)
            if added is None:
                continue
            nmap[pv] = w
            used_nodes.add(w)
            yield from node_assign(k + 1)
            used_nodes.discard(w)
            del nmap[pv]
            for x in added:
                used_edges.discard(emap.pop(x))

    for _ in node_assign(0):
        if _is_convex(pattern, d, nmap, emap):
            yield dict(nmap), dict(emap)


def _is_convex(pattern: Diagram, d: Diagram, nmap: dict, emap: dict) -> bool:
    d_src, d_tgt = d.ends
    matched = set(nmap.values())
    in_images = {emap[e] for e in pattern.inputs}
    stack = []
    seen: set = set()
    for pe in pattern.outputs:
        end = d_tgt[emap[pe]]
        if end[0] == "n" and end[1] not in matched and end[1] not in seen:
            seen.add(end[1])
            stack.append(end[1])
    while stack:
        w = stack.pop()
        for e in d.nodes[w].outs:
            if e in in_images:
                return False
            end = d_tgt[e]
            if end[0] == "n" and end[1] not in matched and end[1] not in seen:
                seen.add(end[1])
                stack.append(end[1])
    return True


def replace_match(d: Diagram, pattern: Diagram, rhs: Diagram, nmap: dict, emap: dict) -> Diagram:
    d_src, d_tgt = d.ends
    r_src, r_tgt = rhs.ends
    matched = set(nmap.values())
    images = set(emap.values())
    keep = [v for v in range(d.n_nodes) if v not in matched]
    new_idx = {v: i for i, v in enumerate(keep)}
    off = len(keep)

    def conv(end):
        return ("n", new_idx[end[1]], end[2]) if end[0] == "n" else end

    specs = [(d.nodes[v].gen, len(d.nodes[v].ins), len(d.nodes[v].outs)) for v in keep]
    specs += [(n.gen, len(n.ins), len(n.outs)) for n in rhs.nodes]
    wires = []
    for e in range(d.n_edges):
        if e not in images:
            wires.append((d.colors[e], conv(d_src[e]), conv(d_tgt[e])))
    for r in range(rhs.n_edges):
        s, t = r_src[r], r_tgt[r]
        s2 = conv(d_src[emap[pattern.inputs[s[1]]]]) if s[0] == "i" else ("n", off + s[1], s[2])
        t2 = conv(d_tgt[emap[pattern.outputs[t[1]]]]) if t[0] == "o" else ("n", off + t[1], t[2])
        wires.append((rhs.colors[r], s2, t2))
    return from_wires(specs, len(d.inputs), len(d.outputs), wires)


def rewrite_step(d: Diagram, rules: Sequence[Rule]) -> set[Diagram]:
    """Canonical diagrams reachable by one rule application (rules are used as given)."""
    out: set = set()
    for rule in rules:
        for nmap, emap in find_matches(rule.lhs, d):
            out.add(replace_match(d, rule.lhs, rule.rhs, nmap, emap).canonical())
    return out


def both_ways(rules: Iterable[Rule]) -> list[Rule]:
    out = []
    for r in rules:
        out.append(r)
        if r.lhs != r.rhs:
            out.append(r.reversed())
    return out


@dataclass
class SearchResult:
    verdict: Verdict
    depth: int
    states: int
    reason: str


def search_equal(
    a: Diagram,
    b: Diagram,
    rules: Sequence[Rule],
    depth: int = 6,
    max_states: int = 50000,
    separators: Sequence[Callable[[Diagram], object]] = (),
) -> SearchResult:
    """Bidirectional breadth-first search for a rewrite path between canonical diagrams."""
    a, b = a.canonical(), b.canonical()
    if a == b:
        return SearchResult(Verdict.EQUAL, 0, 1, "identical canonical forms")
    if (a.source, a.target) != (b.source, b.target):
        raise DiagramError("profiles differ")
    for sep in separators:
        if sep(a) != sep(b):
            return SearchResult(Verdict.DISTINCT, 0, 2, "separated by a registered algebra")
    if not rules:
        return SearchResult(Verdict.DISTINCT, 0, 2, "no relations and canonical forms differ")
    rules = both_ways(rules)
    seen = [{a}, {b}]
    frontier = [{a}, {b}]
    steps = 0
    while steps < depth:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        nxt: set = set()
        for d in frontier[side]:
            for e in rewrite_step(d, rules):
                if e in seen[1 - side]:
                    return SearchResult(Verdict.EQUAL, steps + 1, len(seen[0]) + len(seen[1]), "rewrite path found")
                if e not in seen[side]:
                    seen[side].add(e)
                    nxt.add(e)
        steps += 1
        frontier[side] = nxt
        if not nxt:
            return SearchResult(
                Verdict.DISTINCT, steps, len(seen[0]) + len(seen[1]), "equivalence class closed without a meeting"
            )
        if len(seen[0]) + len(seen[1]) > max_states:
            break
    return SearchResult(Verdict.UNKNOWN, steps, len(seen[0]) + len(seen[1]), "search bound reached")


def rewrite_class(d: Diagram, rules: Sequence[Rule], depth: int, max_states: int = 50000) -> tuple[set, bool]:
    """States reachable from ``d`` within ``depth`` steps, and whether the class closed."""
    rules = both_ways(rules)
    d = d.canonical()
    seen = {d}
    frontier = {d}
    for _ in range(depth):
        nxt = set()
        for x in frontier:
            for y in rewrite_step(x, rules):
                if y not in seen:
                    seen.add(y)
                    nxt.add(y)
        if not nxt:
            return seen, True
        frontier = nxt
        if len(seen) > max_states:
            break
    return seen, False
