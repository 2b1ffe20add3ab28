"""Deduction modulo workbench."""

__version__ = "0.1.0"
