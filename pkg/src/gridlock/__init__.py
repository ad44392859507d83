"""Locally-optimal and strict-gridlock polynomials of graphs."""

from .engine import lo_polynomial, sg_polynomial
from .graph import Graph, GraphError, Role
from .polynomial import IntPolynomial

__all__ = ["Graph", "GraphError", "IntPolynomial", "Role", "lo_polynomial", "sg_polynomial"]
