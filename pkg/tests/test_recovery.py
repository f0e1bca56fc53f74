"""Seeded recovery-rate checks at reduced constants."""

import math

import pytest

from src.algorithms.config import FaultyConfig
from src.harness.config import ExperimentConfig
from src.harness.runner import default_registry, run_experiment
from src.oracle.session import default_round_cap
from src.stats.thresholds import threshold_M_div, threshold_M_mean
from src.synth.presets import example2_pmfs


@pytest.fixture(scope="module")
def registry():
    return default_registry()


def run(registry, **data):
    return run_experiment(ExperimentConfig.from_dict(data), registry)


def exact_count(reports):
    return sum(r.exact_recovery for r in reports)


class TestLasVegasRecovery:
    """Always-exact algorithms on larger instances."""

    @pytest.mark.parametrize("profile", ["balanced", "powerlaw:1.5"])
    @pytest.mark.parametrize(
        "algorithm, params, side",
        [
            ("baseline", {}, False),
            ("alg1", {"scorer": "average"}, True),
            ("alg1", {"scorer": "neg_tv"}, True),
            ("alg1a-lv", {"desk_scale": 0.1}, True),
            ("rounds-noside", {}, False),
            ("rounds-side", {}, True),
        ],
    )
    def test_exact_on_every_seed(self, registry, algorithm, params, side, profile):
        data = {"algorithm": algorithm, "n": 500, "k": 8, "profile": profile, "params": params, "seeds": [0, 1]}
        if side:
            data["side_info"] = {"preset": "example2", "eps": 0.6}
        reports = run(registry, **data)
        assert all(r.exact_recovery for r in reports)

    def test_rounds_noside_uses_k_rounds(self, registry):
        reports = run(registry, algorithm="rounds-noside", n=100, k=5, profile="powerlaw:1.5", seeds=50)
        assert [r.round_count for r in reports] == [5] * 50

    def test_mean_rule_estimation_near_linear(self, registry):
        n = 400
        assert threshold_M_mean(n, 0.3, desk_scale=0.1) == 40
        reports = run(
            registry, algorithm="alg1a-lv", n=n, k=4, seeds=10, params={"desk_scale": 0.1},
            side_info={"preset": "example2", "eps": 0.6},
        )
        assert all(r.exact_recovery for r in reports)
        mean_estimation = sum(r.per_phase_counts.get("estimation", 0) for r in reports) / len(reports)
        assert mean_estimation <= 1.5 * (n + 2)


class TestDivergenceRule:
    """Monte Carlo divergence rule on well-separated side information."""

    def test_recovers_within_budget(self, registry):
        n, k = 300, 3
        f_plus, f_minus = example2_pmfs(0.8)
        m_div = threshold_M_div(n, f_plus, f_minus, desk_scale=0.5)
        assert m_div == 45
        reports = run(
            registry, algorithm="alg-div", n=n, k=k, seeds=10, params={"desk_scale": 0.5},
            side_info={"preset": "example2", "eps": 0.8},
        )
        assert exact_count(reports) == 10
        assert all(r.query_count <= k * k * m_div for r in reports)


class TestFaultyRecovery:
    """Recovery rates through the noisy oracle at a reduced panel constant."""

    def test_alg2_rate(self, registry):
        assert FaultyConfig(lam=0.3, desk_scale=0.075).panel(400) == 30
        reports = run(
            registry, algorithm="alg2", n=400, k=4, seeds=30, params={"desk_scale": 0.075},
            oracle={"mode": "faulty", "p": 0.2},
        )
        assert exact_count(reports) >= 24

    def test_side_info_saves_queries(self, registry):
        assert FaultyConfig(lam=0.35, desk_scale=0.1).panel(400) == 30
        common = {
            "n": 400, "k": 8, "seeds": 6, "params": {"desk_scale": 0.1},
            "oracle": {"mode": "faulty", "p": 0.15},
            "side_info": {"preset": "example2", "eps": 0.4},
        }
        with_side = run(registry, algorithm="alg3", **common)
        without = run(registry, algorithm="alg2", **common)
        assert exact_count(with_side) >= 5
        cheaper = sum(a.query_count < b.query_count for a, b in zip(with_side, without))
        assert cheaper >= 5

    def test_rounds_faulty_rate_and_cap(self, registry):
        n = 400
        cap = default_round_cap(n)
        assert cap == math.ceil(n * math.log2(n))
        reports = run(
            registry, algorithm="rounds-faulty", n=n, k=4, seeds=6, params={"desk_scale": 0.075},
            oracle={"mode": "faulty", "p": 0.2},
        )
        assert exact_count(reports) >= 5
        assert all(size <= cap for r in reports for size in r.per_round_sizes)
        assert all(r.round_count > 0 for r in reports)
