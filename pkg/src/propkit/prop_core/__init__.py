"""The prop interface, finite props, presentations, axiom checking, sub-props and colimits.

Submodules depend on :mod:`propkit.free_prop`, which in turn needs the prop
interface, so names other than those of :mod:`.prop` are loaded on first use.
"""
from importlib import import_module

from .prop import ArityError, Prop, PropError

_LAZY = {
    "AXIOMS": "axioms", "AxiomReport": "axioms", "AxiomResult": "axioms", "check_prop_axioms": "axioms",
    "Colimit": "colimits", "check_universal": "colimits", "coequalizer": "colimits",
    "colimit_presentation": "colimits", "coproduct": "colimits", "pushout": "colimits",
    "EndProp": "finite", "FinSetProp": "finite", "TableProp": "finite", "TerminalProp": "finite",
    "fixture_tables": "finite", "tabulate": "finite", "terminal_prop": "finite",
    "Presentation": "presentation", "PresentationError": "presentation", "PresentationMap": "presentation",
    "PresentedProp": "presentation", "prop_maps": "presentation", "word_equal": "presentation",
    "Closure": "subprop", "subprop_generated": "subprop",
}

__all__ = ["ArityError", "Prop", "PropError", *_LAZY]


def __getattr__(name):
    if name in _LAZY:
        return getattr(import_module(f".{_LAZY[name]}", __name__), name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
