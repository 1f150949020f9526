"""Exact computations with finite-dimensional DG algebras, DG modules and semidualizing modules."""

__version__ = "0.1.0"
