"""Exact workbench for partition categories and strongly symmetric
reflection groups."""

__version__ = "0.1.0"
