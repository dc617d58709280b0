"""Koszul duality workbench for algebras over quadratic operads."""

__version__ = "0.1.0"
