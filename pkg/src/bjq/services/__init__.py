"""Numerical services behind the library operations."""
