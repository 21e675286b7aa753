"""Exact decision procedures for Riesz interpolation in ordered groups on R^n."""

__version__ = "0.1.0"
