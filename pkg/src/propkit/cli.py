"""Command-line front end.

Exit codes: 0 on success, 1 when a check fails, 2 on input errors.  Search
bounds default to the ``PROPKIT_MAX_VERTICES`` and ``PROPKIT_DEPTH``
environment variables; flags override them.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bridges.operad import TableOperad, check_operad_axioms
from .free_prop.decoration import Decoration
from .free_prop.freeprop import FreeProp, enumerate_hom
from .free_prop.rewrite import Verdict
from .free_prop.terms import TermSyntaxError, TermTypeError, format_term
from .hom_tensor.bilinear import BilinearMap
from .hom_tensor.nat import HomProp, check_octagon, generator_set
from .hom_tensor.tensor import sharp_presentation, tensor_presentation
from .kernel import PermError, format_color, format_colors, parse_colors
from .megagraph import MegagraphError
from .prop_core.axioms import check_prop_axioms
from .prop_core.colimits import colimit_presentation
from .prop_core.finite import TableProp
from .prop_core.presentation import PresentationError, is_prop_map
from .prop_core.prop import PropError
from .workspace import DiagramFile, LoadError, NatFixture, Workspace, parse_map_lines, parse_term_arg

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
INPUT_ERRORS = (
    LoadError,
    PresentationError,
    TermSyntaxError,
    TermTypeError,
    PermError,
    MegagraphError,
    PropError,
    KeyError,
    OSError,
    ValueError,
)


class Output:
    """Collects text lines and the matching JSON report."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: list[str] = []
        self.report: dict = {}

    def line(self, text: str) -> None:
        self.lines.append(text)

    def flush(self) -> None:
        if self.as_json:
            print(json.dumps(self.report, indent=2, sort_keys=True, default=str))
        else:
            print("\n".join(self.lines))


def _bound(flag: Optional[int], env: str, default: int) -> int:
    if flag is not None:
        return flag
    raw = os.environ.get(env)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise LoadError(f"{env} must be an integer, got {raw!r}") from None


# ---------------------------------------------------------------------------
# commands


def cmd_normalize(args, out: Output) -> int:
    ws = Workspace()
    P = ws.presentation(args.megagraph)
    t = parse_term_arg(args.term)
    f = P.morphism(t)
    dump = Decoration.from_diagram(f.diagram).dump()
    out.line(f"profile {format_colors(f.source)} -> {format_colors(f.target)}")
    out.lines.extend(dump.splitlines())
    out.report = {
        "term": format_term(t),
        "source": [format_color(c) for c in f.source],
        "target": [format_color(c) for c in f.target],
        "vertices": f.n_vertices,
        "decoration": dump.splitlines(),
    }
    return EXIT_OK


def cmd_enumerate(args, out: Output) -> int:
    ws = Workspace()
    P = ws.presentation(args.megagraph)
    bound = _bound(args.max_vertices, "PROPKIT_MAX_VERTICES", 2)
    src, dst = parse_colors(args.src), parse_colors(args.dst)
    elems = enumerate_hom(FreeProp(P.megagraph), src, dst, bound)
    out.line(f"hom({format_colors(src)}; {format_colors(dst)}) with at most {bound} vertices: {len(elems)}")
    if args.list:
        for k, f in enumerate(elems):
            out.line(f"[{k}] {f.n_vertices} vertices: {f}")
    out.report = {
        "source": [format_color(c) for c in src],
        "target": [format_color(c) for c in dst],
        "max_vertices": bound,
        "count": len(elems),
        "elements": [str(f) for f in elems] if args.list else None,
    }
    return EXIT_OK


def _check_prop(T: TableProp, out: Output) -> bool:
    rep = check_prop_axioms(T, T.morphisms())
    out.line(f"prop axioms for {T.name}: {'PASS' if rep.ok else 'FAIL'}")
    out.lines.extend(rep.lines())
    out.report = {"kind": "prop", **rep.as_dict()}
    return rep.ok


def _check_operad(O: TableOperad, out: Output) -> bool:
    rep = check_operad_axioms(O, O.elements())
    out.line(f"operad axioms for {O.name}: {'PASS' if rep.ok else 'FAIL'}")
    out.lines.extend(rep.lines())
    out.report = {"kind": "operad", **rep.as_dict()}
    return rep.ok


def _check_nat(fx: NatFixture, out: Output) -> bool:
    rows = []
    for phi, s, d in generator_set(fx.R):
        ok = check_octagon(fx.T, fx.xi, phi, s, d)
        rows.append({"generator": format_color(phi.name), "ok": ok})
        out.line(f"{'PASS' if ok else 'FAIL'} octagon for {format_color(phi.name)}")
    ok = all(r["ok"] for r in rows)
    out.lines.insert(0, f"naturality ({len(fx.xi.sources)},{len(fx.xi.targets)}): {'PASS' if ok else 'FAIL'}")
    out.report = {"kind": "nat", "ok": ok, "generators": rows}
    return ok


def _check_bilinear(chi: BilinearMap, out: Output) -> bool:
    rows = []
    for c in chi.S.colors:
        ok = is_prop_map(chi.R, chi.left_map(c))
        rows.append({"check": f"partial map (-, {format_color(c)})", "ok": ok})
    for a in chi.R.colors:
        ok = is_prop_map(chi.S, chi.right_map(a))
        rows.append({"check": f"partial map ({format_color(a)}, -)", "ok": ok})
    for phi in chi.R.generators:
        for psi in chi.S.generators:
            ok = chi.T.equal(*chi.paths(phi, psi))
            rows.append({"check": f"octagon ({format_color(phi.name)}, {format_color(psi.name)})", "ok": ok})
    ok = all(r["ok"] for r in rows)
    out.line(f"bilinear map: {'PASS' if ok else 'FAIL'}")
    for r in rows:
        out.line(f"{'PASS' if r['ok'] else 'FAIL'} {r['check']}")
    out.report = {"kind": "bilinear", "ok": ok, "checks": rows}
    return ok


def cmd_check(args, out: Output) -> int:
    ws = Workspace()
    if args.builtin:
        obj = ws.prop(args.builtin)
    elif args.file:
        obj = ws.load(args.file)
    else:
        raise LoadError("check needs a file or --builtin NAME")
    kinds = {TableProp: "prop", TableOperad: "operad", NatFixture: "nat", BilinearMap: "bilinear"}
    kind = next((k for cls, k in kinds.items() if isinstance(obj, cls)), None)
    if kind is None:
        raise LoadError("check expects a table prop, table operad, nat fixture or bilinear fixture")
    if args.suite and args.suite != kind:
        raise LoadError(f"--suite {args.suite} does not match the {kind} fixture")
    runner = {"prop": _check_prop, "operad": _check_operad, "nat": _check_nat, "bilinear": _check_bilinear}[kind]
    return EXIT_OK if runner(obj, out) else EXIT_FAIL


def _write_presentation(P, args, out: Output, what: str) -> int:
    text = P.to_text()
    if args.out:
        Path(args.out).write_text(text)
    out.line(f"{what}: {len(P.colors)} colors, {len(P.generators)} generators, {len(P.relations)} relations")
    if not args.out:
        out.lines.extend(text.rstrip("\n").splitlines())
    out.report = {
        "colors": len(P.colors),
        "generators": len(P.generators),
        "relations": len(P.relations),
        "out": args.out,
        "presentation": None if args.out else text.splitlines(),
    }
    return EXIT_OK


def cmd_tensor(args, out: Output) -> int:
    ws = Workspace()
    R, S = ws.presentation(args.left), ws.presentation(args.right)
    return _write_presentation(tensor_presentation(R, S), args, out, "tensor product")


def cmd_sharp(args, out: Output) -> int:
    ws = Workspace()
    R, S = ws.presentation(args.left), ws.presentation(args.right)
    return _write_presentation(sharp_presentation(R, S), args, out, "sharp product")


def cmd_colimit(args, out: Output) -> int:
    ws = Workspace()
    d = ws.load(args.diagram)
    if not isinstance(d, DiagramFile):
        raise LoadError(f"{args.diagram} is not a diagram file")
    depth = _bound(args.depth, "PROPKIT_DEPTH", 6)
    for s, t, f in d.arrows:
        bad = [v for _, v in f.well_defined(depth) if v is not Verdict.EQUAL]
        if bad:
            raise LoadError(f"arrow {s} -> {t} does not respect relations (verdicts {[str(v) for v in bad]})")
    colim = colimit_presentation(d.objects, d.arrows, name=d.name)
    return _write_presentation(colim.presentation, args, out, "colimit")


def cmd_evaluate(args, out: Output) -> int:
    ws = Workspace()
    P = ws.presentation(args.presentation)
    T = ws.prop(args.target)
    m = parse_map_lines(P, T, Path(args.map).read_text())
    respects = is_prop_map(P, m)
    t = parse_term_arg(args.term)
    f = P.morphism(t)
    value = m(f)
    via_term = m.apply_term(t)
    agree = T.equal(value, via_term)
    out.line(f"value {value} : {format_colors(T.source(value))} -> {format_colors(T.target(value))}")
    out.line(f"term evaluation agrees: {agree}")
    out.line(f"map respects relations: {respects}")
    out.report = {"value": str(value), "agrees": agree, "respects_relations": respects}
    return EXIT_OK if agree and respects else EXIT_FAIL


def cmd_homprop(args, out: Output) -> int:
    ws = Workspace()
    R = ws.presentation(args.presentation)
    T = ws.prop(args.target)
    H = HomProp(R, T)
    out.line(f"{len(H.colors)} prop maps {R.name} -> {T.name}")
    for k, m in enumerate(H.colors):
        out.line(f"[{k}] {m!r}")
    out.report = {"maps": [repr(m) for m in H.colors]}
    if args.sources is not None or args.targets is not None:
        def pick(spec):
            idx = [int(x) for x in spec.split(",") if x.strip()] if spec else []
            for i in idx:
                if not 0 <= i < len(H.colors):
                    raise LoadError(f"map index {i} out of range")
            return tuple(H.colors[i] for i in idx)

        src, dst = pick(args.sources), pick(args.targets)
        nats = H.hom(src, dst)
        out.line(f"natural transformations {args.sources or '-'} => {args.targets or '-'}: {len(nats)}")
        for xi in nats:
            out.line("  " + " ".join(f"{format_color(a)}:{c}" for a, c in zip(xi.colors, xi.components)))
        out.report["natural_transformations"] = [
            {format_color(a): str(c) for a, c in zip(xi.colors, xi.components)} for xi in nats
        ]
        out.report["count"] = len(nats)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="propkit", description="Colored props: free props, checks and tensor products.")
    p.add_argument("--json", action="store_true", help="emit a machine-readable report")
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit a machine-readable report")

    s = sub.add_parser("normalize", parents=[common], help="canonical decoration of a term")
    s.add_argument("term", help="term text, or @file")
    s.add_argument("--megagraph", required=True, help="megagraph or presentation file")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("enumerate", parents=[common], help="enumerate a hom set of a free prop")
    s.add_argument("--megagraph", required=True)
    s.add_argument("--src", required=True, help="comma-separated colors ('-' for none)")
    s.add_argument("--dst", required=True)
    s.add_argument("--max-vertices", type=int)
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("check", parents=[common], help="check a table prop, table operad, nat or bilinear fixture")
    s.add_argument("file", nargs="?")
    s.add_argument("--builtin", help="builtin table prop (terminal, sigma, finset, end2, end_ab, corrupted-finset)")
    s.add_argument("--suite", choices=["prop", "operad", "nat", "bilinear"])
    s.set_defaults(func=cmd_check)

    for name, func, text in (("tensor", cmd_tensor, "tensor product"), ("sharp", cmd_sharp, "sharp product")):
        s = sub.add_parser(name, parents=[common], help=f"{text} of two presentations")
        s.add_argument("left")
        s.add_argument("right")
        s.add_argument("--out")
        s.set_defaults(func=func)

    s = sub.add_parser("colimit", parents=[common], help="colimit of a diagram of presentations")
    s.add_argument("diagram")
    s.add_argument("--out")
    s.add_argument("--depth", type=int)
    s.set_defaults(func=cmd_colimit)

    s = sub.add_parser("evaluate", parents=[common], help="evaluate a free-prop term in a table prop")
    s.add_argument("term", help="term text, or @file")
    s.add_argument("--presentation", required=True)
    s.add_argument("--target", required=True, help="table prop file or builtin name")
    s.add_argument("--map", required=True, help="file of 'color c x' and 'gen g = element' lines")
    s.set_defaults(func=cmd_evaluate)

    s = sub.add_parser("homprop", parents=[common], help="prop maps and natural transformations")
    s.add_argument("presentation")
    s.add_argument("target")
    s.add_argument("--sources", help="comma-separated map indices")
    s.add_argument("--targets", help="comma-separated map indices")
    s.set_defaults(func=cmd_homprop)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    out = Output(args.json)
    try:
        code = args.func(args, out)
    except INPUT_ERRORS as exc:
        msg = str(exc) if not isinstance(exc, KeyError) else f"missing entry {exc}"
        if args.json:
            print(json.dumps({"error": msg, "type": type(exc).__name__}))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    out.flush()
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
