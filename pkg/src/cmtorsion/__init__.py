"""Torsion of CM elliptic curves over number fields of small degree."""

__version__ = "0.1.0"
