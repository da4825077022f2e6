"""Exact verification of ABC-type theorems for multivariate polynomials
over fields with a non-Archimedean valuation."""

__version__ = "0.1.0"
