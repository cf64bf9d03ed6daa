"""Free props on megagraphs: decorated graphs, terms, canonical forms, evaluation and rewriting."""
from .decoration import Decoration, DecorationError, parse_decoration
from .diagram import Diagram, DiagramError
from .extend import PropMap, adjunction_transpose, evaluate, extend, free_functor_map
from .freeprop import FreeMorphism, FreeProp, canonicalize, enumerate_hom, enumerate_morphisms
from .rewrite import Verdict, search_equal
from .terms import Act, Gen, HComp, Id, VComp, format_term, parse_term

__all__ = [
    "Act", "Decoration", "DecorationError", "Diagram", "DiagramError", "FreeMorphism", "FreeProp", "Gen",
    "HComp", "Id", "PropMap", "VComp", "Verdict", "adjunction_transpose", "canonicalize", "enumerate_hom",
    "enumerate_morphisms", "evaluate", "extend", "format_term", "free_functor_map", "parse_decoration",
    "parse_term", "search_equal",
]
