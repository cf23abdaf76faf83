"""Sequent-calculus workbench: rule classification, proof search and uniform interpolation."""

__version__ = "0.1.0"
