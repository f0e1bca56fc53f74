"""Experiment configuration files."""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from ..core.errors import ConfigError
from ..oracle.spec import OracleSpec
from ..synth.presets import SideInfoModel, resolve_side_info
from ..synth.profiles import SizeProfile

# Keyword arguments the runner offers every algorithm besides its declared parameters.
MODEL_KNOWLEDGE = ("f_plus", "f_minus", "mu_plus", "mu_minus", "delta", "eps", "lam", "seed")

_KEYS = {
    "algorithm", "n", "k", "profile", "oracle", "side_info", "params", "round_cap",
    "recall_threshold", "seeds", "workers", "record_timing", "output",
}


@dataclass(frozen=True)
class ExperimentConfig:
    """
    One algorithm run over a list of seeds.

    Attributes:
        algorithm: Registered algorithm name
        n: Number of vertices
        k: Number of clusters
        profile: Size profile descriptor
        oracle: Oracle mode and error rate; the seed is replaced per run
        side_info: Side-information model, or None
        params: Algorithm parameters
        round_cap: Batch cap for batched algorithms; None for ceil(n log2 n)
        recall_threshold: Smallest truth cluster counted in the recall
        seeds: Seeds, one run each
        workers: Processes running seeds in parallel
        record_timing: Record wall time instead of 0.0
        output: CSV path, or None
    """

    algorithm: str
    n: int
    k: int
    profile: str = "balanced"
    oracle: OracleSpec = field(default_factory=OracleSpec)
    side_info: Optional[SideInfoModel] = None
    params: Dict[str, Any] = field(default_factory=dict)
    round_cap: Optional[int] = None
    recall_threshold: int = 1
    seeds: List[int] = field(default_factory=lambda: [0])
    workers: int = 1
    record_timing: bool = False
    output: Optional[str] = None

    def __post_init__(self):
        if self.n < 1:
            raise ConfigError(f"n must be at least 1, got {self.n}")
        if not 1 <= self.k <= self.n:
            raise ConfigError(f"k must satisfy 1 <= k <= n, got k={self.k}, n={self.n}")
        try:
            SizeProfile.parse(self.profile).sizes(self.n, self.k)
        except ValueError as e:
            raise ConfigError(f"profile: {e}") from e
        if not self.seeds:
            raise ConfigError("seeds must not be empty")
        if any(s < 0 for s in self.seeds):
            raise ConfigError(f"seeds must be non-negative, got {self.seeds}")
        if self.workers < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}")
        if self.round_cap is not None and self.round_cap < 1:
            raise ConfigError(f"round_cap must be at least 1, got {self.round_cap}")
        if self.recall_threshold < 1:
            raise ConfigError(f"recall_threshold must be at least 1, got {self.recall_threshold}")
        lam = self.params.get("lam")
        if lam is not None and not 0 < lam <= 0.5:
            raise ConfigError(f"params.lam must lie in (0, 1/2], got {lam}")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        """
        Raises:
            ConfigError: On unknown keys, missing keys or invalid values
        """
        unknown = sorted(set(data) - _KEYS)
        if unknown:
            raise ConfigError(f"Unknown config keys: {', '.join(unknown)}")
        for key in ("algorithm", "n", "k"):
            if key not in data:
                raise ConfigError(f"Config is missing required key '{key}'")

        try:
            oracle = OracleSpec.from_dict(data.get("oracle") or {})
        except (TypeError, ValueError) as e:
            raise ConfigError(f"oracle: {e}") from e
        try:
            side_info = resolve_side_info(data.get("side_info"))
        except KeyError as e:
            raise ConfigError(f"side_info: {e.args[0]}") from e
        except (TypeError, ValueError) as e:
            raise ConfigError(f"side_info: {e}") from e

        seeds = data.get("seeds", [0])
        if isinstance(seeds, int):
            seeds = list(range(seeds))
        params = data.get("params") or {}
        if not isinstance(params, dict):
            raise ConfigError("params must be an object")
        try:
            return cls(
                algorithm=str(data["algorithm"]),
                n=int(data["n"]),
                k=int(data["k"]),
                profile=str(data.get("profile", "balanced")),
                oracle=oracle,
                side_info=side_info,
                params=dict(params),
                round_cap=None if data.get("round_cap") is None else int(data["round_cap"]),
                recall_threshold=int(data.get("recall_threshold", 1)),
                seeds=[int(s) for s in seeds],
                workers=int(data.get("workers", 1)),
                record_timing=bool(data.get("record_timing", False)),
                output=data.get("output"),
            )
        except (TypeError, ValueError) as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError(f"Invalid config value: {e}") from e

    @classmethod
    def load(cls, path: Union[str, Path]) -> "ExperimentConfig":
        """
        Raises:
            ConfigError: If the file is unreadable or invalid
        """
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as e:
            raise ConfigError(f"Cannot read config {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"Config {path} is not valid JSON: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"Config {path} must hold a JSON object")
        return cls.from_dict(data)

    def validate(self, registry, side_info_loaded: bool = False) -> None:
        """
        Check the config against the registered algorithm.

        Args:
            registry: Registry holding the algorithm
            side_info_loaded: A side-information matrix is supplied from a
                file, so no model is needed to generate one

        Raises:
            ConfigError: If the algorithm is unknown, the oracle mode or side
                information does not fit it, or a parameter is undeclared
        """
        if not registry.has_algorithm(self.algorithm):
            raise ConfigError(
                f"Unknown algorithm '{self.algorithm}'. Available: {', '.join(registry.get_algorithm_names())}"
            )
        algorithm = registry.get_algorithm(self.algorithm)
        if algorithm.oracle_mode != self.oracle.mode:
            raise ConfigError(
                f"Algorithm '{self.algorithm}' needs a {algorithm.oracle_mode} oracle, config has '{self.oracle.mode}'"
            )
        if algorithm.requires_side_info and self.side_info is None and not side_info_loaded:
            raise ConfigError(f"Algorithm '{self.algorithm}' needs side_info")
        declared = set((getattr(algorithm, "parameters", None) or {}).keys())
        undeclared = sorted(set(self.params) - declared - set(MODEL_KNOWLEDGE))
        if undeclared:
            raise ConfigError(f"Unknown params for '{self.algorithm}': {', '.join(undeclared)}")
