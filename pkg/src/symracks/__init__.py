"""Racks, quandles and their good involutions, built from finite groups."""

__version__ = "0.1.0"
