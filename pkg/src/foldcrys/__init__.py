"""Exact combinatorics of folded Cartan data, even monomial crystals,
and symbolic difference-operator presentations."""

__version__ = "0.1.0"
