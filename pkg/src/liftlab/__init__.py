"""Exact character theory for small p-solvable permutation groups."""

__version__ = "0.1.0"
