"""Exact construction and certification of periodic points of polynomial maps on P^N."""
__version__ = "0.1.0"
