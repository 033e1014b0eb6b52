"""Tropical points of configuration spaces, Dynkin folding and tensor invariants."""

__version__ = "0.1.0"
