"""Core utilities: logging and errors."""
