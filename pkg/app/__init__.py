"""Equidecomposition toolkit for finitely generated group actions."""

__version__ = "1.0.0"
