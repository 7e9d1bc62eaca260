"""Command-line surface of the engine."""

from .main import cli, main

__all__ = ["cli", "main"]
