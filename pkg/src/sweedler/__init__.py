"""Exact symbolic engine for the Sweedler semantics of differential linear logic."""

__version__ = "0.1.0"
