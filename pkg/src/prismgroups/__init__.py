"""Prism groups, the morphing construction and shearing dynamics in SL(3, R)."""

__version__ = "0.1.0"
