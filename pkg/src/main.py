"""CrowdClusterSim - Main application entry point."""

import sys

from .algorithms import register_builtin_algorithms
from .cli import CommandLineApp
from .core.registry import get_global_registry


def main(argv=None) -> int:
    """
    Main entry point for CrowdClusterSim.

    Registers the built-in algorithms with the global registry and runs
    the command line.
    """
    registry = get_global_registry()
    register_builtin_algorithms(registry)

    app = CommandLineApp(registry)
    return app.run(argv)


if __name__ == "__main__":
    sys.exit(main())
