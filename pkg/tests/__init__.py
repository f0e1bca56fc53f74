"""Test suite for CrowdClusterSim."""
