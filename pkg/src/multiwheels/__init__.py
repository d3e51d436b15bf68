"""Odd-wheel multiwheels: constructions and machine-checked certificates."""

__version__ = "0.1.0"
