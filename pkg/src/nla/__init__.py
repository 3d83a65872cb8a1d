"""Exact toolkit for polynomial-system invariants, tensor eigenvectors and
polynomial ODE stability analysis."""

__version__ = "0.1.0"
