"""Exact relative homological algebra for representations of bound quiver algebras."""

__version__ = "0.1.0"
