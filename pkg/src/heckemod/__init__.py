"""Gram matrices, decomposition numbers and blocks for Iwahori-Hecke algebras of Weyl groups."""

__version__ = "0.1.0"
