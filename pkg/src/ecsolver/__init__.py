"""Exact solving and interactive play for eternal vertex coloring games."""

__version__ = "0.1.0"
