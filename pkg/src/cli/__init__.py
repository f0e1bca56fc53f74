"""Command-line interface."""

from .app import EXIT_CONFIG, EXIT_ERROR, EXIT_INVARIANT, EXIT_OK, CommandLineApp

__all__ = ["CommandLineApp", "EXIT_CONFIG", "EXIT_ERROR", "EXIT_INVARIANT", "EXIT_OK"]
