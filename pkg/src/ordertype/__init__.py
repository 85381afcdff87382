"""Element-order statistics and Sylow counting for small permutation groups."""

__version__ = "0.1.0"
