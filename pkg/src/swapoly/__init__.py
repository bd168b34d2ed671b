"""Exact construction and verification of swap polynomials over matrix algebras."""

__version__ = "0.1.0"
