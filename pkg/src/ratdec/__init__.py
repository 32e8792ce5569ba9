"""Exact subfield lattices and complete decompositions of rational functions."""

__version__ = "0.1.0"
