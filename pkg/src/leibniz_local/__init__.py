"""Exact toolkit for Leibniz algebras R0..R3 and their local / 2-local automorphisms."""

__version__ = "0.1.0"
