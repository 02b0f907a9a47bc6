"""Finite double categories, companions and the lifting of monoidal structure
to loose bicategories, checked exhaustively on desk-scale instances."""

__version__ = "0.1.0"
