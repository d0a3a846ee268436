"""Executable compendium of subset-search-problem reductions."""

__version__ = "0.1.0"
