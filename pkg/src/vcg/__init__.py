"""Finite groups, Schur multipliers, varietal covers and their limits."""

__version__ = "0.1.0"
