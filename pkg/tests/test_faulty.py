"""Unit tests for the faulty-oracle clustering algorithms."""

import logging

import numpy as np
import pytest

from src.algorithms.config import FaultyConfig
from src.algorithms.faulty_noside import FaultyNoSideAlgorithm, FaultyNoSidePolyAlgorithm, alg2
from src.algorithms.faulty_side import FaultySideAlgorithm, warn_if_side_info_stronger
from src.algorithms.faulty_state import FaultyState, majority
from src.core.clustering import compare_clusterings
from src.core.errors import InvariantViolation
from src.core.instance import Instance
from src.oracle.session import OracleSession
from src.oracle.spec import OracleSpec
from src.synth.generator import gen_instance, gen_sideinfo
from src.synth.presets import example2_pmfs, pointmass_pmfs


def with_small_cluster(seed=0):
    """40 vertices in clusters of 20, 17 and 3, shuffled."""
    labels = np.array([0] * 20 + [1] * 17 + [2] * 3)
    np.random.default_rng(seed).shuffle(labels)
    return Instance(n=40, k=3, labels=tuple(int(x) for x in labels))


def noiseless(instance):
    return OracleSession(OracleSpec("faulty", 0.0), instance)


def pair_agreement(found, instance):
    a = np.asarray(found.assignment)
    b = np.asarray(instance.labels)
    same_found = a[:, None] == a[None, :]
    same_truth = b[:, None] == b[None, :]
    upper = np.triu_indices(instance.n, k=1)
    return float((same_found == same_truth)[upper].mean())


class TestFaultyConfig:
    """Test suite for FaultyConfig."""

    def test_constants(self):
        cfg = FaultyConfig(lam=0.25)
        assert abs(cfg.c - 96.0) < 1e-9
        assert abs(cfg.c_prime - 576.0) < 1e-9

    def test_desk_scale(self):
        cfg = FaultyConfig(lam=0.5, desk_scale=0.05)
        assert abs(cfg.c - 1.2) < 1e-12
        assert cfg.panel(40) == 5

    def test_noiseless_margin_accepted(self):
        assert FaultyConfig(lam=0.5).lam == 0.5

    @pytest.mark.parametrize("lam", [0.0, -0.1, 0.6])
    def test_rejects_bad_lam(self, lam):
        with pytest.raises(ValueError, match="lambda"):
            FaultyConfig(lam=lam)

    def test_rejects_bad_limits(self):
        with pytest.raises(ValueError, match="exact_subgraph_limit"):
            FaultyConfig(lam=0.3, exact_subgraph_limit=1)
        with pytest.raises(ValueError, match="restarts"):
            FaultyConfig(lam=0.3, restarts=0)

    def test_from_params_ignores_unrelated(self):
        cfg = FaultyConfig.from_params(0.3, desk_scale=0.5, restarts=None, mu_plus=0.7, seed=3)
        assert cfg == FaultyConfig(lam=0.3, desk_scale=0.5)


class TestMajority:
    """Test suite for majority votes."""

    def test_strict_majority(self):
        assert majority([1, 1, -1]) is True
        assert majority([1, -1]) is False
        assert majority([-1, -1, 1]) is False

    def test_vote_twice_rejected(self):
        instance = with_small_cluster()
        session = noiseless(instance)
        state = FaultyState(session, FaultyConfig(lam=0.5, desk_scale=0.05), 1)
        state.open_cluster([0])
        state.vote(1, 0)
        with pytest.raises(InvariantViolation, match="twice"):
            state.vote(1, 0)


class TestAlg2:
    """Test suite for the faulty-oracle algorithm without side information."""

    @pytest.fixture
    def instance(self):
        return with_small_cluster()

    def test_noiseless_answers_give_exact_recovery(self, instance):
        session = noiseless(instance)
        found = FaultyNoSideAlgorithm().cluster(session, lam=0.5, desk_scale=0.05)
        assert compare_clusterings(found, instance)[0]
        assert "ml:exact" in found.solver_flags
        assert "subgraph:exact" in found.solver_flags
        counts = session.ledger.per_phase_counts
        assert counts["panel"] > 0 and counts["residual"] > 0

    def test_requires_lam(self, instance):
        with pytest.raises(ValueError, match="lam"):
            FaultyNoSideAlgorithm().cluster(noiseless(instance))

    def test_rejects_perfect_oracle(self, instance):
        with pytest.raises(ValueError, match="faulty oracle"):
            FaultyNoSideAlgorithm().cluster(OracleSession(OracleSpec(), instance), lam=0.5)

    def test_noisy_answers_mostly_right(self):
        instance = gen_instance(200, 2, seed=6)
        session = OracleSession(OracleSpec("faulty", 0.1, 6), instance)
        found = alg2(session, FaultyConfig(lam=0.4, desk_scale=0.08))
        assert pair_agreement(found, instance) >= 0.8
        assert session.query_count < 200 * 199 // 2


class TestAlg2Poly:
    """Test suite for the polynomial-time variant."""

    def test_small_cluster_left_unresolved(self):
        instance = with_small_cluster()
        session = noiseless(instance)
        found = FaultyNoSidePolyAlgorithm().cluster(session, lam=0.5, desk_scale=0.05)
        small = {v for v in range(instance.n) if instance.labels[v] == 2}
        assert found.unresolved == frozenset(small)
        assert "subgraph:heuristic" in found.solver_flags
        exact, recall = compare_clusterings(found, instance, size_threshold=5)
        assert not exact
        assert recall == 1.0

    def test_k_hint_raises_acceptance_size(self):
        instance = with_small_cluster()
        found = FaultyNoSidePolyAlgorithm().cluster(noiseless(instance), lam=0.5, desk_scale=0.05, k_hint=18)
        # only the cluster of 20 reaches the acceptance size
        assert len(found.unresolved) == 20


class TestAlg3:
    """Test suite for the faulty-oracle algorithm with side information."""

    @pytest.fixture
    def instance(self):
        return with_small_cluster(seed=1)

    @pytest.mark.parametrize("scorer", ["average", "neg_tv", "div_test"])
    def test_noiseless_answers_give_exact_recovery(self, instance, scorer):
        f_plus, f_minus = example2_pmfs(0.4, grid_size=4)
        w = gen_sideinfo(instance, f_plus, f_minus, seed=1)
        found = FaultySideAlgorithm().cluster(
            noiseless(instance), w, lam=0.5, desk_scale=0.05, scorer=scorer, f_plus=f_plus, f_minus=f_minus
        )
        assert compare_clusterings(found, instance)[0]

    def test_vertices_never_voted_twice(self, instance):
        f_plus, f_minus = pointmass_pmfs()
        w = gen_sideinfo(instance, f_plus, f_minus)
        session = noiseless(instance)
        found = FaultySideAlgorithm().cluster(session, w, lam=0.5, desk_scale=0.05)
        assert compare_clusterings(found, instance)[0]
        assert session.query_count <= instance.n * (instance.n - 1) // 2

    def test_requires_side_info(self, instance):
        with pytest.raises(ValueError, match="side information"):
            FaultySideAlgorithm().cluster(noiseless(instance), lam=0.5)

    def test_strong_side_info_warning(self, caplog):
        with caplog.at_level(logging.WARNING):
            assert warn_if_side_info_stronger(10.0, 0.1) is True
        assert "at least as informative" in caplog.text
        assert warn_if_side_info_stronger(0.01, 0.1) is False
        assert warn_if_side_info_stronger(None, 0.1) is False
