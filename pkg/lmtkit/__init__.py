"""Finite checkers, provers and converters for layered monoidal theories."""

__version__ = "0.1.0"
