"""Exact verification tools for C4 densities in K_{r+1}-free graphs."""

__version__ = "0.1.0"
