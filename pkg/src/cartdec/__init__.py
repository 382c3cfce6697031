"""Cartesian decompositions preserved by finite permutation groups."""

__version__ = "0.1.0"
