"""Exact Turán and Ramsey computations for small 3-uniform hypergraphs."""

__version__ = "0.1.0"
