"""Exact computations in free Frobenius towers."""
__version__ = "0.1.0"
