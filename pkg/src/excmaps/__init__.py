"""Exceptional maps over finite fields and exceptional local extensions."""

__version__ = "0.1.0"
