"""Unit tests for experiment configs, the runner, summaries and exports."""

import json
import math
from pathlib import Path

import pytest

from src.algorithms import register_builtin_algorithms
from src.algorithms.baseline import BaselineAlgorithm
from src.core.clustering import Clustering
from src.core.errors import ConfigError, InvariantViolation
from src.core.instance import Instance
from src.core.parameterized_algorithm import ParameterizedAlgorithm
from src.core.registry import AlgorithmRegistry
from src.core.report import CSV_COLUMNS, RunReport
from src.harness.config import ExperimentConfig
from src.harness.export import (
    INSTANCE_FILE,
    SIDE_INFO_CSV_FILE,
    SIDE_INFO_FILE,
    read_instance,
    reports_to_json,
    write_csv,
    write_generated,
    write_json,
    write_summary_csv,
)
from src.harness.runner import algorithm_kwargs, bound_ratio, reference_bound, run_experiment, run_single
from src.harness.summary import SUMMARY_COLUMNS, summarize, summarize_by_config
from src.synth.generator import gen_instance, gen_sideinfo
from src.synth.presets import resolve_side_info
from src.synth.sideinfo import SideInfoMatrix

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


class SingletonAlgorithm(ParameterizedAlgorithm):
    """Claims exactness but returns every vertex alone."""

    @property
    def name(self) -> str:
        return "singletons"

    @property
    def oracle_mode(self) -> str:
        return "perfect"

    @property
    def las_vegas(self) -> bool:
        return True

    def _cluster_with_params(self, session, side_info, **kwargs) -> Clustering:
        return Clustering.from_blocks([[v] for v in range(session.n)], session.n)


class TightBudgetBaseline(BaselineAlgorithm):
    """Baseline with a query budget it cannot meet."""

    @property
    def name(self) -> str:
        return "tight-baseline"

    def query_budget(self, n: int, k: int, **kwargs) -> float:
        return 1.0


@pytest.fixture
def registry():
    registry = AlgorithmRegistry()
    register_builtin_algorithms(registry)
    registry.register(SingletonAlgorithm())
    registry.register(TightBudgetBaseline())
    return registry


def make_report(**overrides):
    fields = dict(
        algorithm="baseline", n=20, k=2, p=0.0, query_count=30, round_count=0,
        exact_recovery=True, big_cluster_recall=1.0, bound_ratio=0.75, wall_time=0.0, seed=0,
    )
    fields.update(overrides)
    return RunReport(**fields)


class TestExperimentConfig:
    """Test suite for ExperimentConfig parsing and validation."""

    def test_minimal(self):
        cfg = ExperimentConfig.from_dict({"algorithm": "baseline", "n": 20, "k": 2})
        assert cfg.seeds == [0]
        assert cfg.oracle.mode == "perfect"
        assert cfg.side_info is None

    def test_seed_count(self):
        cfg = ExperimentConfig.from_dict({"algorithm": "baseline", "n": 20, "k": 2, "seeds": 3})
        assert cfg.seeds == [0, 1, 2]

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="Unknown config keys: colour"):
            ExperimentConfig.from_dict({"algorithm": "baseline", "n": 20, "k": 2, "colour": "red"})

    def test_missing_key(self):
        with pytest.raises(ConfigError, match="'k'"):
            ExperimentConfig.from_dict({"algorithm": "baseline", "n": 20})

    def test_bad_oracle(self):
        with pytest.raises(ConfigError, match="oracle"):
            ExperimentConfig.from_dict({"algorithm": "alg2", "n": 20, "k": 2, "oracle": {"mode": "faulty", "p": 0.7}})

    def test_unknown_preset(self):
        with pytest.raises(ConfigError, match="side_info"):
            ExperimentConfig.from_dict({"algorithm": "alg1", "n": 20, "k": 2, "side_info": {"preset": "laplace"}})

    @pytest.mark.parametrize(
        "overrides",
        [{"k": 30}, {"n": 0}, {"profile": "zipf"}, {"seeds": [-1]}, {"workers": 0}, {"params": {"lam": 0.7}}],
    )
    def test_invalid_values(self, overrides):
        data = {"algorithm": "baseline", "n": 20, "k": 2}
        data.update(overrides)
        with pytest.raises(ConfigError):
            ExperimentConfig.from_dict(data)

    def test_load_example(self):
        cfg = ExperimentConfig.load(CONFIG_DIR / "alg1a.json")
        assert cfg.algorithm == "alg1a-mc"
        assert cfg.seeds == list(range(10))
        assert cfg.side_info.name == "example2"
        assert cfg.params == {"desk_scale": 0.1}

    def test_load_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ConfigError, match="not valid JSON"):
            ExperimentConfig.load(path)

    def test_load_non_object(self, tmp_path):
        path = tmp_path / "list.json"
        path.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(ConfigError, match="JSON object"):
            ExperimentConfig.load(path)

    def test_load_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="Cannot read"):
            ExperimentConfig.load(tmp_path / "missing.json")

    def test_validate_unknown_algorithm(self, registry):
        with pytest.raises(ConfigError, match="Unknown algorithm 'alg9'"):
            ExperimentConfig("alg9", 20, 2).validate(registry)

    def test_validate_oracle_mode(self, registry):
        with pytest.raises(ConfigError, match="faulty oracle"):
            ExperimentConfig("alg2", 20, 2).validate(registry)

    def test_validate_side_info(self, registry):
        with pytest.raises(ConfigError, match="needs side_info"):
            ExperimentConfig("alg1", 20, 2).validate(registry)

    @pytest.mark.parametrize("param", ["foo", "desk_scale"])
    def test_validate_undeclared_param(self, registry, param):
        with pytest.raises(ConfigError, match=param):
            ExperimentConfig("baseline", 20, 2, params={param: 1}).validate(registry)

    def test_validate_accepts_model_knowledge(self, registry):
        ExperimentConfig("baseline", 20, 2, params={"mu_plus": 0.7}).validate(registry)


class TestRunner:
    """Test suite for run_single and run_experiment."""

    def test_baseline_seeds(self, registry):
        cfg = ExperimentConfig("baseline", 40, 4, seeds=list(range(10)))
        reports = run_experiment(cfg, registry)
        assert [r.seed for r in reports] == list(range(10))
        assert all(r.exact_recovery for r in reports)
        assert all(0 < r.bound_ratio <= 1 for r in reports)
        assert all(r.wall_time == 0.0 for r in reports)

    def test_reproducible_csv(self, registry, tmp_path):
        cfg = ExperimentConfig.from_dict({
            "algorithm": "alg1", "n": 60, "k": 3, "seeds": 3,
            "side_info": {"preset": "example2", "eps": 0.4, "grid_size": 4},
        })
        write_csv(run_experiment(cfg, registry), tmp_path / "a.csv")
        write_csv(run_experiment(cfg, registry), tmp_path / "b.csv")
        assert (tmp_path / "a.csv").read_text() == (tmp_path / "b.csv").read_text()

    def test_side_info_reads_reported(self, registry):
        cfg = ExperimentConfig.from_dict({
            "algorithm": "alg1", "n": 50, "k": 2, "side_info": {"preset": "pointmass"},
        })
        report = run_single(cfg, 0, registry)
        assert report.exact_recovery
        assert report.side_info_reads > 0
        assert "verify" in report.per_phase_counts

    def test_batched_rounds(self, registry):
        cfg = ExperimentConfig("rounds-noside", 30, 3)
        report = run_single(cfg, 1, registry)
        assert report.round_count == 3
        assert len(report.per_round_sizes) == 3

    def test_faulty_run_gets_lam(self, registry):
        cfg = ExperimentConfig.from_dict({
            "algorithm": "alg2", "n": 40, "k": 2, "oracle": {"mode": "faulty", "p": 0.0},
            "params": {"desk_scale": 0.05},
        })
        report = run_single(cfg, 2, registry)
        assert report.exact_recovery
        assert "subgraph:exact" in report.solver_flags

    def test_wrong_las_vegas_output(self, registry):
        with pytest.raises(InvariantViolation, match="wrong clustering"):
            run_single(ExperimentConfig("singletons", 10, 2), 0, registry)

    def test_budget_exceeded(self, registry):
        with pytest.raises(InvariantViolation, match="over its budget"):
            run_single(ExperimentConfig("tight-baseline", 10, 2), 0, registry)

    def test_given_instance(self, registry):
        instance = Instance(n=6, k=2, labels=(0, 1, 0, 1, 0, 1))
        report = run_single(ExperimentConfig("baseline", 6, 2), 0, registry, instance=instance)
        assert report.query_count == 7
        assert report.exact_recovery

    def test_given_instance_mismatch(self, registry):
        with pytest.raises(ConfigError, match="Instance has n=6"):
            run_single(ExperimentConfig("baseline", 8, 2), 0, registry, instance=Instance(n=6, k=2, labels=(0, 1) * 3))

    def test_given_side_info_mismatch(self, registry):
        model = resolve_side_info({"preset": "pointmass"})
        cfg = ExperimentConfig("alg1", 20, 2, side_info=model)
        side_info = gen_sideinfo(gen_instance(10, 2), model.f_plus, model.f_minus)
        with pytest.raises(ConfigError, match="Side information covers 10"):
            run_single(cfg, 0, registry, side_info=side_info)

    def test_parallel_matches_sequential(self, registry):
        sequential = run_experiment(ExperimentConfig("baseline", 30, 3, seeds=[0, 1, 2]), registry)
        parallel = run_experiment(ExperimentConfig("baseline", 30, 3, seeds=[0, 1, 2], workers=2))
        assert [r.csv_row() for r in parallel] == [r.csv_row() for r in sequential]

    def test_algorithm_kwargs(self):
        cfg = ExperimentConfig.from_dict({
            "algorithm": "alg2", "n": 20, "k": 2, "oracle": {"mode": "faulty", "p": 0.1},
            "params": {"lam": 0.3},
        })
        kwargs = algorithm_kwargs(cfg, 5)
        assert kwargs["lam"] == 0.3
        assert kwargs["seed"] == 5
        assert "f_plus" not in kwargs


class TestBounds:
    """Test suite for reference bounds and ratios."""

    def test_reference_bound(self):
        assert reference_bound("faulty", 20, 2, 0.0, None) == 40.0
        assert reference_bound("lasvegas", 20, 2, 0.0, None) is None
        assert reference_bound(None, 20, 2, 0.0, None) is None
        pointmass = resolve_side_info({"preset": "pointmass"})
        assert reference_bound("perfect_side", 20, 2, 0.0, pointmass) == 0.0

    def test_bound_ratio(self):
        assert bound_ratio(5, 10.0) == 0.5
        assert bound_ratio(5, math.inf) == 0.0
        assert math.isnan(bound_ratio(5, None))
        assert math.isnan(bound_ratio(5, 0.0))


class TestSummary:
    """Test suite for run summaries."""

    def test_statistics(self):
        reports = [
            make_report(query_count=30, exact_recovery=True, bound_ratio=0.5, seed=0),
            make_report(query_count=34, exact_recovery=False, bound_ratio=math.nan, seed=1, big_cluster_recall=0.5),
        ]
        summary = summarize(reports)
        assert summary.runs == 2
        assert summary.recovery_rate == 0.5
        assert summary.queries_mean == 32.0
        assert summary.queries_std == 2.0
        assert summary.bound_ratio_mean == 0.5
        assert summary.recall_mean == 0.75

    def test_all_nan_ratios(self):
        summary = summarize([make_report(bound_ratio=math.nan)])
        assert math.isnan(summary.bound_ratio_mean)
        assert summary.to_dict()["bound_ratio_mean"] is None
        assert summary.queries_std == 0.0

    def test_mixed_configs(self):
        with pytest.raises(ValueError, match="mix"):
            summarize([make_report(), make_report(n=40)])

    def test_empty(self):
        with pytest.raises(ValueError, match="empty"):
            summarize([])

    def test_by_config_order(self):
        reports = [make_report(n=40), make_report(), make_report(n=40, seed=1)]
        summaries = summarize_by_config(reports)
        assert [(s.n, s.runs) for s in summaries] == [(40, 2), (20, 1)]

    def test_csv_row(self):
        row = summarize([make_report()]).csv_row()
        assert len(row) == len(SUMMARY_COLUMNS)
        assert row[:6] == ["baseline", "20", "2", "0", "1", "1.000000"]


class TestExport:
    """Test suite for CSV and JSON output."""

    def test_write_csv(self, tmp_path):
        path = tmp_path / "out" / "runs.csv"
        write_csv([make_report(), make_report(seed=1)], path)
        lines = path.read_text().splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 3

    def test_write_summary_csv(self, tmp_path):
        path = tmp_path / "summary.csv"
        write_summary_csv([summarize([make_report()])], path)
        assert path.read_text().splitlines()[0] == ",".join(SUMMARY_COLUMNS)

    def test_json(self, tmp_path):
        reports = [make_report(bound_ratio=math.nan, per_phase_counts={"panel": 3})]
        data = json.loads(reports_to_json(reports, summarize_by_config(reports)))
        assert data["reports"][0]["bound_ratio"] is None
        assert data["reports"][0]["per_phase_counts"] == {"panel": 3}
        assert data["summaries"][0]["runs"] == 1
        path = tmp_path / "runs.json"
        write_json(reports, path)
        assert "summaries" not in json.loads(path.read_text())

    def test_write_generated(self, tmp_path):
        instance = gen_instance(12, 3, seed=1)
        model = resolve_side_info({"preset": "example2", "eps": 0.2})
        side_info = gen_sideinfo(instance, model.f_plus, model.f_minus, seed=1)
        written = write_generated(tmp_path / "gen", instance, side_info, with_csv=True)
        assert [p.name for p in written] == [INSTANCE_FILE, SIDE_INFO_FILE, SIDE_INFO_CSV_FILE]
        assert read_instance(written[0]) == instance
        assert (SideInfoMatrix.load(written[1]).indices == side_info.indices).all()

    def test_write_generated_without_side_info(self, tmp_path):
        written = write_generated(tmp_path, gen_instance(5, 2))
        assert [p.name for p in written] == [INSTANCE_FILE]

    def test_read_instance_bad_json(self, tmp_path):
        path = tmp_path / INSTANCE_FILE
        path.write_text("nope", encoding="utf-8")
        with pytest.raises(ValueError, match="not valid JSON"):
            read_instance(path)
