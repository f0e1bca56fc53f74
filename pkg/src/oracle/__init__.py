"""Simulated pairwise oracles."""

from .session import OracleSession, default_round_cap
from .spec import ORACLE_MODES, OracleSpec

__all__ = ["ORACLE_MODES", "OracleSession", "OracleSpec", "default_round_cap"]
