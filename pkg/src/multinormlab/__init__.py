"""Numerical toolkit for multi-norms on finite-dimensional l^r spaces."""

__version__ = "0.1.0"
