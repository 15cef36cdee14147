"""Exact computations in Weyl-type algebras with hyperbolic generators."""

__version__ = "0.1.0"
