"""Cutwidth-parameterized exact solvers for connectivity problems and their hardness gadgets."""

__version__ = "0.1.0"
