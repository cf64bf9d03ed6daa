"""Loading named artifacts from structured-text files.

A file's kind is read from its first meaningful line:

* ``tableprop`` / ``tableoperad``: finite tables;
* ``natfixture``: a natural-transformation candidate;
* ``bilinear``: a bilinear-map candidate;
* ``diagram``: a diagram of presentations for colimits;
* anything else is a presentation (a megagraph block plus ``rel`` lines).

Paths inside fixture files are relative to the fixture file.  Every artifact
is validated when it is loaded.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from .bridges.operad import TableOperad
from .free_prop.extend import PropMap
from .free_prop.terms import Term, evaluate_term, parse_term
from .hom_tensor.bilinear import BilinearMap
from .hom_tensor.nat import NatTrans
from .kernel import parse_color
from .prop_core.finite import TableProp, corrupted_finset, fixture_tables
from .prop_core.presentation import Presentation, PresentationMap
from .prop_core.prop import Prop


class LoadError(ValueError):
    pass


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def file_kind(text: str) -> str:
    lines = _lines(text)
    head = lines[0].split()[0] if lines else ""
    return head if head in ("tableprop", "tableoperad", "natfixture", "bilinear", "diagram") else "presentation"


def builtin_props() -> dict[str, TableProp]:
    """Builtin fixtures, relabelled through the text format so elements are named ``m0``, ``m1``, ..."""
    out = dict(fixture_tables())
    out["corrupted-finset"] = corrupted_finset()
    return {k: TableProp.from_text(T.to_text(), name=k) for k, T in out.items()}


def eval_in_table(T: Prop, text: str):
    """A table element given by its label or by a term over labels (``gen(m3)``, ``id(x)``, ...)."""
    text = text.strip()
    if "(" not in text:
        if text not in T.profiles:
            raise LoadError(f"unknown table element {text!r}")
        return text
    t = parse_term(text)

    def gen(name):
        name = str(name)
        if name not in T.profiles:
            raise LoadError(f"unknown table element {name!r}")
        return name

    return evaluate_term(t, T, lambda c: c, gen)


@dataclass
class NatFixture:
    R: Presentation
    T: TableProp
    maps: dict
    xi: NatTrans


@dataclass
class DiagramFile:
    objects: dict
    arrows: list
    name: str


@dataclass
class Workspace:
    """Artifacts by name; names must be unique."""

    items: dict = field(default_factory=dict)

    def add(self, name: str, obj: Any) -> Any:
        if name in self.items and self.items[name] is not obj:
            raise LoadError(f"name {name!r} is already loaded")
        self.items[name] = obj
        return obj

    def load(self, path: str | Path, name: Optional[str] = None) -> Any:
        p = Path(path)
        if not p.exists():
            raise LoadError(f"no such file: {p}")
        name = name or p.stem
        if name in self.items:
            return self.items[name]
        text = p.read_text()
        kind = file_kind(text)
        if kind == "tableprop":
            obj = TableProp.from_text(text, name=name)
        elif kind == "tableoperad":
            obj = TableOperad.from_text(text, name=name)
        elif kind == "natfixture":
            obj = self._nat(text, p.parent)
        elif kind == "bilinear":
            obj = self._bilinear(text, p.parent)
        elif kind == "diagram":
            obj = self._diagram(text, p.parent, name)
        else:
            obj = Presentation.from_text(text, name=name)
        return self.add(name, obj)

    def prop(self, spec: str) -> Prop:
        """A table prop from a file, or a builtin fixture by name."""
        builtins = builtin_props()
        if spec in builtins:
            return self.add(spec, builtins[spec])
        obj = self.load(spec)
        if not isinstance(obj, TableProp):
            raise LoadError(f"{spec} is not a table prop")
        return obj

    def presentation(self, spec: str) -> Presentation:
        obj = self.load(spec)
        if not isinstance(obj, Presentation):
            raise LoadError(f"{spec} is not a presentation")
        return obj

    # fixture formats ------------------------------------------------------
    def _nat(self, text: str, base: Path) -> NatFixture:
        R = T = None
        colors: dict = {}
        gens: dict = {}
        sources: list = []
        targets: list = []
        comps: dict = {}
        for line in _lines(text)[1:]:
            head, _, rest = line.partition(" ")
            if head == "presentation":
                R = self.presentation(str(base / rest.strip()))
            elif head == "target":
                T = self.prop(rest.strip() if rest.strip() in builtin_props() else str(base / rest.strip()))
            elif head == "map":
                parts = rest.split(None, 2)
                if len(parts) < 3:
                    raise LoadError(f"bad map line {line!r}")
                mname, kind, body = parts
                if kind == "color":
                    c, x = body.split()
                    colors.setdefault(mname, {})[parse_color(c)] = parse_color(x)
                elif kind == "gen":
                    g, _, val = body.partition("=")
                    gens.setdefault(mname, {})[parse_color(g.strip())] = val.strip()
                else:
                    raise LoadError(f"bad map line {line!r}")
            elif head == "sources":
                sources = rest.split()
            elif head == "targets":
                targets = rest.split()
            elif head == "xi":
                c, _, val = rest.partition("=")
                comps[parse_color(c.strip())] = val.strip()
            else:
                raise LoadError(f"cannot parse nat fixture line {line!r}")
        if R is None or T is None:
            raise LoadError("nat fixture needs 'presentation' and 'target' lines")
        maps = {}
        for mname in set(colors) | set(gens):
            images = {g: eval_in_table(T, v) for g, v in gens.get(mname, {}).items()}
            m = PropMap(R.megagraph, T, colors.get(mname, {}), images)
            m.check()
            maps[mname] = m
        missing = [c for c in R.colors if c not in comps]
        if missing:
            raise LoadError(f"no component for colors {missing}")
        try:
            xi = NatTrans(
                tuple(maps[n] for n in sources),
                tuple(maps[n] for n in targets),
                tuple(R.colors),
                tuple(eval_in_table(T, comps[c]) for c in R.colors),
            )
        except KeyError as exc:
            raise LoadError(f"unknown map {exc}") from None
        return NatFixture(R, T, maps, xi)

    def _bilinear(self, text: str, base: Path) -> BilinearMap:
        R = S = T = None
        colors: dict = {}
        left: dict = {}
        right: dict = {}
        for line in _lines(text)[1:]:
            head, _, rest = line.partition(" ")
            if head == "left":
                R = self.presentation(str(base / rest.strip()))
            elif head == "right":
                S = self.presentation(str(base / rest.strip()))
            elif head == "target":
                T = self.prop(rest.strip() if rest.strip() in builtin_props() else str(base / rest.strip()))
            elif head == "color":
                a, c, x = rest.split()
                colors[(parse_color(a), parse_color(c))] = parse_color(x)
            elif head in ("phi", "psi"):
                lhs, _, val = rest.partition("=")
                x, y = lhs.split()
                key = (parse_color(x), parse_color(y))
                (left if head == "phi" else right)[key] = val.strip()
            else:
                raise LoadError(f"cannot parse bilinear line {line!r}")
        if R is None or S is None or T is None:
            raise LoadError("bilinear fixture needs 'left', 'right' and 'target' lines")
        return BilinearMap(
            R,
            S,
            T,
            colors,
            {k: eval_in_table(T, v) for k, v in left.items()},
            {k: eval_in_table(T, v) for k, v in right.items()},
        )

    def _diagram(self, text: str, base: Path, name: str) -> DiagramFile:
        objects: dict = {}
        arrows: dict = {}
        order: list = []
        for line in _lines(text)[1:]:
            head, _, rest = line.partition(" ")
            if head == "object":
                oname, path = rest.split(None, 1)
                objects[oname] = self.presentation(str(base / path.strip()))
            elif head == "arrow":
                aid, s, t = rest.split()
                arrows[aid] = (s, t, {}, {})
                order.append(aid)
            elif head == "color":
                aid, c, d = rest.split()
                arrows[aid][2][parse_color(c)] = parse_color(d)
            elif head == "gen":
                lhs, _, term = rest.partition("=")
                aid, g = lhs.split()
                arrows[aid][3][parse_color(g)] = parse_term(term.strip())
            else:
                raise LoadError(f"cannot parse diagram line {line!r}")
        out = []
        for aid in order:
            s, t, cm, gm = arrows[aid]
            if s not in objects or t not in objects:
                raise LoadError(f"arrow {aid} refers to an unknown object")
            out.append((s, t, PresentationMap(objects[s], objects[t], cm, gm)))
        return DiagramFile(objects, out, name)


def parse_map_lines(R: Presentation, T: Prop, text: str) -> PropMap:
    """``color <c> <x>`` and ``gen <g> = <element or term>`` lines."""
    colors: dict = {}
    images: dict = {}
    for line in _lines(text):
        head, _, rest = line.partition(" ")
        if head == "color":
            c, x = rest.split()
            colors[parse_color(c)] = parse_color(x)
        elif head == "gen":
            g, _, val = rest.partition("=")
            images[parse_color(g.strip())] = eval_in_table(T, val)
        else:
            raise LoadError(f"cannot parse map line {line!r}")
    m = PropMap(R.megagraph, T, colors, images)
    m.check()
    return m


def parse_term_arg(text: str) -> Term:
    """A term given inline or as ``@path``."""
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    return parse_term(text.strip())
