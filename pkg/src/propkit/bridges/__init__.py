"""Operads, categories and permutative categories, with their comparison functors to props."""
from .category import Category, F0, U0, check_category_adjunction, monoid_category
from .fop import FOpProp, check_operad_adjunction, operad_to_prop, uf_identity_check
from .operad import Operad, TableOperad, UnderlyingOperad, check_operad_axioms, prop_to_operad
from .perm import LCategory, UProp, check_permutative, perm_to_prop, prop_to_perm

__all__ = [
    "Category", "F0", "FOpProp", "LCategory", "Operad", "TableOperad", "U0", "UProp", "UnderlyingOperad",
    "check_category_adjunction", "check_operad_adjunction", "check_operad_axioms", "check_permutative",
    "monoid_category", "operad_to_prop", "perm_to_prop", "prop_to_operad", "prop_to_perm", "uf_identity_check",
]
