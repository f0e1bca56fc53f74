"""Unit tests for oracle specs and sessions."""

import pytest

from src.core.errors import BatchCapExceeded
from src.core.instance import Instance
from src.oracle.session import OracleSession, default_round_cap
from src.oracle.spec import OracleSpec
from src.synth.generator import gen_instance


class TestOracleSpec:
    """Test suite for OracleSpec."""

    def test_defaults(self):
        spec = OracleSpec()
        assert spec.mode == "perfect"
        assert spec.lam == 0.5

    def test_lam(self):
        assert abs(OracleSpec("faulty", 0.2).lam - 0.3) < 1e-12

    def test_rejects_half(self):
        with pytest.raises(ValueError, match="error rate"):
            OracleSpec("faulty", 0.5)

    def test_rejects_noisy_perfect(self):
        with pytest.raises(ValueError, match="perfect"):
            OracleSpec("perfect", 0.1)

    def test_rejects_unknown_mode(self):
        with pytest.raises(ValueError, match="Unsupported"):
            OracleSpec("noisy")

    def test_with_seed(self):
        spec = OracleSpec("faulty", 0.1, 0).with_seed(9)
        assert spec == OracleSpec("faulty", 0.1, 9)

    def test_dict_round_trip(self):
        spec = OracleSpec("faulty", 0.25, 4)
        assert OracleSpec.from_dict(spec.to_dict()) == spec


class TestPerfectSession:
    """Test suite for a perfect-oracle session."""

    @pytest.fixture
    def truth(self):
        return Instance(n=5, k=2, labels=(0, 0, 1, 1, 0))

    @pytest.fixture
    def session(self, truth):
        return OracleSession(OracleSpec(), truth, round_cap=4)

    def test_answers(self, session):
        assert session.query(0, 1) == 1
        assert session.query(0, 2) == -1
        assert session.query(4, 0) == 1

    def test_repeat_is_free(self, session):
        session.query(0, 1)
        session.query(1, 0)
        assert session.query_count == 1
        assert session.has_asked(0, 1)

    def test_self_query(self, session):
        with pytest.raises(ValueError, match="itself"):
            session.query(2, 2)

    def test_out_of_range(self, session):
        with pytest.raises(ValueError, match="out of range"):
            session.query(0, 5)

    def test_sequential_queries_use_no_rounds(self, session):
        session.query(0, 1)
        assert session.round_count == 0

    def test_batch(self, session):
        answers = session.batch_query([(0, 1), (2, 3), (1, 2)])
        assert answers == [1, 1, -1]
        assert session.round_count == 1
        assert session.ledger.per_round_sizes == [3]

    def test_batch_over_cap(self, session):
        with pytest.raises(BatchCapExceeded, match="exceeds"):
            session.batch_query([(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)])
        assert session.query_count == 0
        assert session.round_count == 0

    def test_empty_batch(self, session):
        assert session.batch_query([]) == []
        assert session.round_count == 0
        session.batch_query([], force_round=True)
        assert session.ledger.per_round_sizes == [0]

    def test_batch_without_cap(self, truth):
        session = OracleSession(OracleSpec(), truth)
        with pytest.raises(ValueError, match="round cap"):
            session.batch_query([(0, 1)])

    def test_phase_accounting(self, session):
        with session.phase("warmup"):
            session.query(0, 1)
            session.query(0, 2)
        session.query(0, 1)
        session.query(0, 3)
        assert session.ledger.per_phase_counts == {"warmup": 2, "default": 1}

    def test_nested_phase_restored(self, session):
        with session.phase("outer"):
            with session.phase("inner"):
                session.query(0, 1)
            session.query(0, 2)
        assert session.ledger.per_phase_counts == {"inner": 1, "outer": 1}

    def test_default_round_cap(self):
        assert default_round_cap(1) == 1
        assert default_round_cap(2) == 2
        assert default_round_cap(8) == 24


class TestFaultySession:
    """Test suite for a faulty-oracle session."""

    @pytest.fixture
    def truth(self):
        return gen_instance(200, 4, seed=1)

    def test_persistent_noise(self, truth):
        session = OracleSession(OracleSpec("faulty", 0.3, 7), truth)
        first = [session.query(0, v) for v in range(1, 200)]
        again = [session.query(v, 0) for v in range(1, 200)]
        assert first == again
        assert session.query_count == 199

    def test_same_seed_same_answers(self, truth):
        a = OracleSession(OracleSpec("faulty", 0.3, 7), truth)
        b = OracleSession(OracleSpec("faulty", 0.3, 7), truth)
        assert [a.query(1, v) for v in range(2, 200)] == [b.query(v, 1) for v in range(2, 200)]

    def test_error_rate(self, truth):
        session = OracleSession(OracleSpec("faulty", 0.2, 3), truth)
        labels = truth.labels
        flips = total = 0
        for u in range(0, 200, 2):
            for v in range(u + 1, 200, 3):
                correct = 1 if labels[u] == labels[v] else -1
                flips += session.query(u, v) != correct
                total += 1
        assert abs(flips / total - 0.2) < 0.03

    def test_zero_error_rate_is_exact(self, truth):
        session = OracleSession(OracleSpec("faulty", 0.0, 3), truth)
        labels = truth.labels
        assert all(
            session.query(0, v) == (1 if labels[0] == labels[v] else -1) for v in range(1, 200)
        )
