"""CrowdClusterSim - query-efficient clustering with simulated oracles."""

__version__ = "0.4.0"
