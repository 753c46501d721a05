"""Exact Brauer-category calculus and orthosymplectic invariant theory."""

__version__ = "0.1.0"
