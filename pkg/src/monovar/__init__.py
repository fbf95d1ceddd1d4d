"""Combinatorics of words and word-problem deciders for monoid varieties."""

__version__ = "0.1.0"
