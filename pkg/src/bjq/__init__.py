"""Born-Jordan quantization and time-frequency numerics."""

__version__ = "0.1.0"
