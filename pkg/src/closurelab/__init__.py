"""Exact laboratory for closure/interior duality over finite local algebras."""

__version__ = "0.1.0"
