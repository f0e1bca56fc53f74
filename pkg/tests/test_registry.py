"""Unit tests for the algorithm registry and the parameter table."""

import pytest

from src.algorithms import BUILTIN_ALGORITHMS, register_builtin_algorithms
from src.algorithms.baseline import BaselineAlgorithm
from src.algorithms.faulty_side import FaultySideAlgorithm
from src.algorithms.two_phase import MeanRuleMonteCarlo
from src.core.clustering import Clustering
from src.core.errors import ConfigError, DuplicateAlgorithmError
from src.core.parameterized_algorithm import ParameterizedAlgorithm
from src.core.registry import AlgorithmRegistry, builtin_names, get_global_registry


class RenamedAlgorithm(ParameterizedAlgorithm):
    """Puts every vertex in one cluster under a caller-chosen name."""

    def __init__(self, name: str):
        self._name = name

    @property
    def name(self) -> str:
        return self._name

    @property
    def oracle_mode(self) -> str:
        return "perfect"

    def _cluster_with_params(self, session, side_info, **kwargs) -> Clustering:
        return Clustering.from_blocks([list(range(session.n))], session.n)


class TestAlgorithmRegistry:
    """Test suite for AlgorithmRegistry."""

    @pytest.fixture
    def registry(self):
        return AlgorithmRegistry()

    def test_register_and_get(self, registry):
        algorithm = BaselineAlgorithm()
        registry.register(algorithm)
        assert registry.get_algorithm("baseline") is algorithm
        assert registry.has_algorithm("baseline")
        assert registry.get_algorithm_names() == ["baseline"]

    def test_duplicate(self, registry):
        registry.register(BaselineAlgorithm())
        with pytest.raises(DuplicateAlgorithmError, match="already registered"):
            registry.register(BaselineAlgorithm())
        assert registry.get_algorithm_names() == ["baseline"]

    def test_duplicate_is_config_error(self, registry):
        registry.register(RenamedAlgorithm("custom"))
        with pytest.raises(ConfigError):
            registry.register(RenamedAlgorithm("custom"))

    def test_reserved_name(self, registry):
        with pytest.raises(ConfigError, match="reserved for MeanRuleMonteCarlo"):
            registry.register(RenamedAlgorithm("alg1a-mc"))
        assert not registry.has_algorithm("alg1a-mc")

    def test_builtin_subclass_may_take_its_name(self, registry):
        class PatchedBaseline(BaselineAlgorithm):
            pass

        registry.register(PatchedBaseline())
        assert registry.has_algorithm("baseline")

    @pytest.mark.parametrize("name", ["", "Alg9", "alg 9", "9alg", "alg_9"])
    def test_malformed_name(self, registry, name):
        with pytest.raises(ConfigError, match="lowercase"):
            registry.register(RenamedAlgorithm(name))

    def test_unknown(self, registry):
        with pytest.raises(KeyError, match="alg9"):
            registry.get_algorithm("alg9")

    def test_register_builtins_twice(self, registry):
        register_builtin_algorithms(registry)
        register_builtin_algorithms(registry)
        assert registry.get_algorithm_names() == [cls().name for cls in BUILTIN_ALGORITHMS]

    def test_builtin_name_table(self):
        assert builtin_names()["alg3"] is FaultySideAlgorithm
        assert len(builtin_names()) == len(BUILTIN_ALGORITHMS)

    def test_builtin_names(self, registry):
        register_builtin_algorithms(registry)
        assert set(registry.get_algorithm_names()) == {
            "baseline", "alg1", "alg1a-mc", "alg1a-lv", "alg-div", "alg2", "alg2-poly", "alg3",
            "rounds-noside", "rounds-side", "rounds-faulty",
        }

    def test_bound_kinds(self, registry):
        register_builtin_algorithms(registry)
        kinds = {a.name: a.bound_kind for a in registry.get_all_algorithms()}
        assert kinds["baseline"] == "faulty"
        assert kinds["alg1"] == "lasvegas"
        assert kinds["alg1a-lv"] == "lasvegas"
        assert kinds["rounds-side"] == "lasvegas"
        assert kinds["alg1a-mc"] == "perfect_side"
        assert kinds["alg-div"] == "perfect_side"
        assert kinds["rounds-faulty"] == "faulty"

    def test_global_registry_is_shared(self):
        assert get_global_registry() is get_global_registry()


class TestParameterResolution:
    """Test suite for ParameterizedAlgorithm.resolve_parameters."""

    def test_defaults_filled(self):
        resolved = MeanRuleMonteCarlo().resolve_parameters(mu_plus=0.7, mu_minus=0.3)
        assert resolved["desk_scale"] == 1.0

    def test_extra_keys_forwarded(self):
        resolved = MeanRuleMonteCarlo().resolve_parameters(mu_plus=0.7, mu_minus=0.3, seed=4)
        assert resolved["seed"] == 4

    def test_required_missing(self):
        with pytest.raises(ValueError, match="mu_minus"):
            MeanRuleMonteCarlo().resolve_parameters(mu_plus=0.7)

    def test_no_parameters(self):
        assert BaselineAlgorithm().parameters is None
        assert BaselineAlgorithm().resolve_parameters(seed=1) == {"seed": 1}
