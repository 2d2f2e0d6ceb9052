"""Finite effect algebras, their logics and their partially ordered groups."""
__version__ = "0.1.0"
