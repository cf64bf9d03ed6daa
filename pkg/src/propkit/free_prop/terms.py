"""The morphism term language.

Grammar::

    term  := "id(" color ")" | "gen(" name ")"
           | "vcomp(" term "," term ")"          # left after right
           | "hcomp(" [term {"," term}] ")"      # n-ary, hcomp() is the empty unit
           | "act(" perm "," perm "," term ")"   # sigma^* tau_* term
    perm  := "(" {int} ")" | "_"                  # "_" is the identity
    color := name | "<" color {"." color} ">"     # product colors

Terms are evaluated in any object offering the prop operations
(``identity``, ``unit``, ``compose_v``, ``compose_h``, ``act``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence

from ..kernel import Perm, PermError, act_left, act_right, format_color, format_colors, parse_color


class TermSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        pointer = text + "\n" + " " * pos + "^"
        super().__init__(f"{message} at position {pos}:\n{pointer}")


class TermTypeError(ValueError):
    def __init__(self, message: str, subterm: "Term"):
        self.subterm = subterm
        super().__init__(f"{message} in subterm {format_term(subterm)}")


@dataclass(frozen=True)
class Id:
    color: Any


@dataclass(frozen=True)
class Gen:
    name: Any


@dataclass(frozen=True)
class VComp:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class HComp:
    parts: tuple


@dataclass(frozen=True)
class Act:
    sigma: Optional[Perm]
    tau: Optional[Perm]
    body: "Term"


Term = Any  # one of Id, Gen, VComp, HComp, Act


def ids(colors: Sequence) -> Term:
    """Horizontal composite of identities (``hcomp()`` when empty)."""
    if len(colors) == 1:
        return Id(colors[0])
    return HComp(tuple(Id(c) for c in colors))


def hcomp_terms(parts: Sequence[Term]) -> Term:
    parts = tuple(parts)
    return parts[0] if len(parts) == 1 else HComp(parts)


# ---------------------------------------------------------------------------
# printing


def _format_perm(p: Optional[Perm]) -> str:
    return "_" if p is None else str(p)


def format_term(t: Term) -> str:
    if isinstance(t, Id):
        return f"id({format_color(t.color)})"
    if isinstance(t, Gen):
        return f"gen({format_color(t.name)})"
    if isinstance(t, VComp):
        return f"vcomp({format_term(t.left)},{format_term(t.right)})"
    if isinstance(t, HComp):
        return "hcomp(" + ",".join(format_term(p) for p in t.parts) + ")"
    if isinstance(t, Act):
        return f"act({_format_perm(t.sigma)},{_format_perm(t.tau)},{format_term(t.body)})"
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# parsing

_NAME_STOP = set("(),<> \t\n")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise TermSyntaxError(msg, self.text, self.pos)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch: str):
        self.ws()
        if not self.text.startswith(ch, self.pos):
            self.error(f"expected {ch!r}")
        self.pos += len(ch)

    def peek(self) -> str:
        self.ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def keyword(self) -> str:
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        if start == self.pos:
            self.error("expected a term")
        return self.text[start : self.pos]

    def name(self):
        self.ws()
        start = self.pos
        if self.peek() == "<":
            depth = 0
            while self.pos < len(self.text):
                ch = self.text[self.pos]
                depth += ch == "<"
                depth -= ch == ">"
                self.pos += 1
                if depth == 0:
                    break
            if depth != 0:
                self.error("unbalanced '<'")
            return parse_color(self.text[start : self.pos])
        while self.pos < len(self.text) and self.text[self.pos] not in _NAME_STOP:
            self.pos += 1
        if start == self.pos:
            self.error("expected a name")
        return self.text[start : self.pos]

    def perm(self) -> Optional[Perm]:
        self.ws()
        if self.peek() == "_":
            self.pos += 1
            return None
        start = self.pos
        self.expect("(")
        end = self.text.find(")", self.pos)
        if end < 0:
            self.error("unterminated permutation")
        body = self.text[start : end + 1]
        try:
            p = Perm.parse(body)
        except (PermError, ValueError) as exc:
            self.pos = start
            self.error(f"bad permutation {body!r}: {exc}")
        self.pos = end + 1
        return p

    def term(self) -> Term:
        start = self.pos
        kw = self.keyword()
        self.expect("(")
        if kw == "id":
            c = self.name()
            self.expect(")")
            return Id(c)
        if kw == "gen":
            n = self.name()
            self.expect(")")
            return Gen(n)
        if kw == "vcomp":
            a = self.term()
            self.expect(",")
            b = self.term()
            self.expect(")")
            return VComp(a, b)
        if kw == "hcomp":
            parts = []
            if self.peek() != ")":
                parts.append(self.term())
                while self.peek() == ",":
                    self.pos += 1
                    parts.append(self.term())
            self.expect(")")
            return HComp(tuple(parts))
        if kw == "act":
            s = self.perm()
            self.expect(",")
            t = self.perm()
            self.expect(",")
            body = self.term()
            self.expect(")")
            return Act(s, t, body)
        self.pos = start
        self.error(f"unknown constructor {kw!r}")


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.ws()
    if p.pos != len(text):
        p.error("trailing characters")
    return t


# ---------------------------------------------------------------------------
# typing and evaluation


def term_profile(t: Term, colors, gen_profile: Callable) -> tuple[tuple, tuple]:
    """``(source, target)`` of a term; ``gen_profile(name)`` gives generator profiles."""
    if isinstance(t, Id):
        if t.color not in colors:
            raise TermTypeError(f"unknown color {t.color!r}", t)
        return (t.color,), (t.color,)
    if isinstance(t, Gen):
        try:
            return gen_profile(t.name)
        except (KeyError, ValueError):
            raise TermTypeError(f"unknown generator {t.name!r}", t) from None
    if isinstance(t, VComp):
        s1, t1 = term_profile(t.left, colors, gen_profile)
        s2, t2 = term_profile(t.right, colors, gen_profile)
        if s1 != t2:
            raise TermTypeError(
                f"profile mismatch: source {format_colors(s1)} of the left factor != "
                f"target {format_colors(t2)} of the right factor",
                t,
            )
        return s2, t1
    if isinstance(t, HComp):
        src: tuple = ()
        dst: tuple = ()
        for p in t.parts:
            s, d = term_profile(p, colors, gen_profile)
            src += s
            dst += d
        return src, dst
    if isinstance(t, Act):
        s, d = term_profile(t.body, colors, gen_profile)
        try:
            return act_right(s, t.sigma), act_left(t.tau, d)
        except PermError as exc:
            raise TermTypeError(str(exc), t) from None
    raise TypeError(f"not a term: {t!r}")


def evaluate_term(t: Term, prop, color_of: Callable, gen_image: Callable):
    """Interpret a term in ``prop`` with colors mapped by ``color_of`` and generators by ``gen_image``."""
    if isinstance(t, Id):
        return prop.identity(color_of(t.color))
    if isinstance(t, Gen):
        return gen_image(t.name)
    if isinstance(t, VComp):
        return prop.compose_v(
            evaluate_term(t.left, prop, color_of, gen_image),
            evaluate_term(t.right, prop, color_of, gen_image),
        )
    if isinstance(t, HComp):
        if not t.parts:
            return prop.unit()
        acc = evaluate_term(t.parts[0], prop, color_of, gen_image)
        for p in t.parts[1:]:
            acc = prop.compose_h(acc, evaluate_term(p, prop, color_of, gen_image))
        return acc
    if isinstance(t, Act):
        return prop.act(evaluate_term(t.body, prop, color_of, gen_image), sigma=t.sigma, tau=t.tau)
    raise TypeError(f"not a term: {t!r}")


def rename_term(t: Term, color_of: Callable, gen_of: Callable) -> Term:
    """Rename colors and generators (used to transport relations)."""
    if isinstance(t, Id):
        return Id(color_of(t.color))
    if isinstance(t, Gen):
        return gen_of(t.name)
    if isinstance(t, VComp):
        return VComp(rename_term(t.left, color_of, gen_of), rename_term(t.right, color_of, gen_of))
    if isinstance(t, HComp):
        return HComp(tuple(rename_term(p, color_of, gen_of) for p in t.parts))
    if isinstance(t, Act):
        return Act(t.sigma, t.tau, rename_term(t.body, color_of, gen_of))
    raise TypeError(f"not a term: {t!r}")


def generators_in(t: Term) -> set:
    if isinstance(t, Gen):
        return {t.name}
    if isinstance(t, VComp):
        return generators_in(t.left) | generators_in(t.right)
    if isinstance(t, HComp):
        return set().union(*(generators_in(p) for p in t.parts)) if t.parts else set()
    if isinstance(t, Act):
        return generators_in(t.body)
    return set()
