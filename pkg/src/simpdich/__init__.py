"""Simplicial complexes, polymorphisms and the CSP dichotomy."""
