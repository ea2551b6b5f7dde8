"""Exact-arithmetic workbench for the link complements M_n and their mutants."""

__version__ = "0.1.0"
