"""Minimum-deletion Boolean CSPs: classification, solvers and reductions."""

__version__ = "0.1.0"
