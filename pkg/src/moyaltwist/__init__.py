"""Moyal star products, Drinfel'd twists and twisted second quantization."""

__version__ = "0.1.0"
