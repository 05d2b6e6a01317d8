"""Exact computations with twisted Zhu-type algebras of vertex algebras."""
__version__ = "0.1.0"
