"""Explicit kernel calculus and desk-scale verification for the
dbar-Neumann problem on model domains with boundary Morse singularities."""

__version__ = "0.1.0"
