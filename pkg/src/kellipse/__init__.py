"""Singularities, genus and dual degree of algebraic k-ellipses."""

__version__ = "0.1.0"
