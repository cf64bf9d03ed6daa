"""Colored props: free props on megagraphs, presentations, internal homs and tensor products."""
from .kernel import Perm, act_left, act_right, block_transpose, perm_compose, sigma_xy

__version__ = "0.1.0"
__all__ = ["Perm", "act_left", "act_right", "block_transpose", "perm_compose", "sigma_xy"]
