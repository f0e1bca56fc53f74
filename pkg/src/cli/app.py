"""Command-line front end: generate inputs, run algorithms, benchmark configs, print bounds."""

import argparse
import json
import logging
import math
import sys
from typing import Any, Dict, List, Optional, Sequence, TextIO

from ..core.errors import ConfigError, InvariantViolation
from ..core.registry import AlgorithmRegistry
from ..harness.config import ExperimentConfig
from ..harness.export import read_instance, write_csv, write_generated, write_json, write_summary_csv
from ..harness.runner import run_experiment, run_single
from ..harness.summary import RunSummary, summarize_by_config
from ..stats.bounds import lower_bound_faulty, lower_bound_lasvegas, lower_bound_perfect_side, oracle_delta
from ..stats.divergence import chernoff_exponent
from ..stats.thresholds import faulty_constants, panel_size, threshold_M_div, threshold_M_mean, threshold_M_tv
from ..synth.generator import gen_instance, gen_sideinfo
from ..synth.presets import PRESETS, SideInfoModel, resolve_side_info
from ..synth.sideinfo import SideInfoMatrix

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_INVARIANT = 3

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# Flag name -> preset argument, for every preset argument any preset takes.
_PRESET_ARGS = ("eps", "grid_size", "p_plus", "p_minus", "mu_plus", "mu_minus", "sigma")


def parse_param(text: str) -> Any:
    """Parse a ``key=value`` parameter value as JSON, falling back to the raw string."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def parse_params(items: Optional[Sequence[str]]) -> Dict[str, Any]:
    """
    Raises:
        ConfigError: If an item is not of the form key=value
    """
    params: Dict[str, Any] = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ConfigError(f"--param expects key=value, got '{item}'")
        params[key.strip()] = parse_param(value.strip())
    return params


def side_info_spec(args: argparse.Namespace) -> Optional[Dict[str, Any]]:
    """Side-information config entry from the preset flags, or None."""
    if not args.side_info_preset:
        return None
    spec: Dict[str, Any] = {"preset": args.side_info_preset}
    for name in _PRESET_ARGS:
        value = getattr(args, name)
        if value is not None:
            spec[name] = value
    return spec


def _resolve_model(args: argparse.Namespace) -> Optional[SideInfoModel]:
    try:
        return resolve_side_info(side_info_spec(args))
    except KeyError as e:
        raise ConfigError(f"side_info: {e.args[0]}") from e
    except (TypeError, ValueError) as e:
        raise ConfigError(f"side_info: {e}") from e


def configure_logging(verbose: bool, log_file: Optional[str] = None) -> None:
    """Configure the root logger once: DEBUG with ``-v``, WARNING otherwise."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format=LOG_FORMAT,
        filename=log_file,
    )


class CommandLineApp:
    """
    The ``gen``, ``run``, ``bench``, ``bounds`` and ``list`` commands.

    ``run(argv)`` returns the exit code: 0 on success, 2 for configuration
    errors, 3 when a run breaks an algorithm's guarantee and 1 otherwise.
    """

    def __init__(self, registry: AlgorithmRegistry, stdout: Optional[TextIO] = None):
        self.registry = registry
        self.out = stdout or sys.stdout
        self.parser = self._build_parser()

    def _add_preset_flags(self, parser: argparse.ArgumentParser) -> None:
        group = parser.add_argument_group("side information")
        group.add_argument("--side-info-preset", choices=sorted(PRESETS), help="Named pmf pair")
        group.add_argument("--eps", type=float, help="example2: distance parameter")
        group.add_argument("--grid-size", type=int, help="example2/gaussian: grid cells")
        group.add_argument("--p-plus", type=float, help="bernoulli-grid: intra-cluster mass at 1")
        group.add_argument("--p-minus", type=float, help="bernoulli-grid: inter-cluster mass at 1")
        group.add_argument("--mu-plus", type=float, help="gaussian: intra-cluster mean")
        group.add_argument("--mu-minus", type=float, help="gaussian: inter-cluster mean")
        group.add_argument("--sigma", type=float, help="gaussian: standard deviation")

    def _add_instance_flags(self, parser: argparse.ArgumentParser, required: bool) -> None:
        parser.add_argument("-n", "--n", type=int, required=required, help="Number of vertices")
        parser.add_argument("-k", "--k", type=int, required=required, help="Number of clusters")
        parser.add_argument("--profile", default="balanced", help="balanced, skewed:R or powerlaw:A")

    def _build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="crowdclustersim",
            description="Recover a hidden clustering with a simulated pairwise oracle.",
        )
        parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
        parser.add_argument("--log-file", help="Write the log to a file instead of stderr")
        commands = parser.add_subparsers(dest="command", required=True)

        gen = commands.add_parser("gen", help="Write an instance and its side information")
        self._add_instance_flags(gen, required=True)
        gen.add_argument("--seed", type=int, default=0)
        gen.add_argument("--out", required=True, help="Output directory")
        gen.add_argument("--csv", action="store_true", help="Also write the side information as CSV")
        self._add_preset_flags(gen)

        run = commands.add_parser("run", help="Run one algorithm over a list of seeds")
        run.add_argument("-a", "--algorithm", required=True)
        self._add_instance_flags(run, required=False)
        run.add_argument("--oracle", choices=("perfect", "faulty"), default="perfect")
        run.add_argument("-p", "--p", type=float, default=0.0, help="Faulty-oracle error rate")
        run.add_argument("--param", action="append", metavar="KEY=VALUE", help="Algorithm parameter")
        run.add_argument("--seeds", type=int, nargs="+", default=[0], help="Seed list")
        run.add_argument("--round-cap", type=int)
        run.add_argument("--recall-threshold", type=int, default=1)
        run.add_argument("--workers", type=int, default=1)
        run.add_argument("--record-timing", action="store_true")
        run.add_argument("--instance", help="instance.json written by gen")
        run.add_argument("--side-info", help="sideinfo.bin written by gen")
        run.add_argument("--output", help="CSV output path")
        run.add_argument("--json", help="JSON report path")
        self._add_preset_flags(run)

        bench = commands.add_parser("bench", help="Run experiment config files")
        bench.add_argument("configs", nargs="+", help="JSON experiment configs")
        bench.add_argument("--summary", help="Summary CSV path")
        bench.add_argument("--json", help="JSON report path")

        bounds = commands.add_parser("bounds", help="Print lower-bound reference values and thresholds")
        bounds.add_argument("-n", "--n", type=int, required=True)
        bounds.add_argument("-k", "--k", type=int, required=True)
        bounds.add_argument("-p", "--p", type=float, help="Faulty-oracle error rate")
        bounds.add_argument("--desk-scale", type=float, default=1.0)
        self._add_preset_flags(bounds)

        commands.add_parser("list", help="List registered algorithms")
        return parser

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            return EXIT_OK if e.code in (0, None) else EXIT_CONFIG
        configure_logging(args.verbose, args.log_file)
        handler = getattr(self, f"_cmd_{args.command}")
        try:
            handler(args)
        except ConfigError as e:
            print(f"Configuration error: {e}", file=sys.stderr)
            return EXIT_CONFIG
        except InvariantViolation as e:
            logger.error("Invariant violated: %s", e)
            print(f"Invariant violated: {e}", file=sys.stderr)
            return EXIT_INVARIANT
        except (KeyError, ValueError, OSError) as e:
            print(f"Error: {e}", file=sys.stderr)
            return EXIT_ERROR
        return EXIT_OK

    def _print(self, text: str = "") -> None:
        print(text, file=self.out)

    def _print_summaries(self, summaries: List[RunSummary]) -> None:
        self._print(f"{'algorithm':<14}{'n':>7}{'k':>5}{'p':>7}{'runs':>6}{'exact':>8}{'queries':>14}{'rounds':>10}{'ratio':>9}")
        for s in summaries:
            ratio = "-" if math.isnan(s.bound_ratio_mean) else f"{s.bound_ratio_mean:.3f}"
            self._print(
                f"{s.algorithm:<14}{s.n:>7}{s.k:>5}{s.p:>7.3g}{s.runs:>6}{s.recovery_rate:>8.2f}"
                f"{s.queries_mean:>14.1f}{s.rounds_mean:>10.1f}{ratio:>9}"
            )

    def _cmd_gen(self, args: argparse.Namespace) -> None:
        model = _resolve_model(args)
        try:
            instance = gen_instance(args.n, args.k, args.profile, args.seed)
        except ValueError as e:
            raise ConfigError(str(e)) from e
        side_info = None
        if model is not None:
            side_info = gen_sideinfo(instance, model.f_plus, model.f_minus, args.seed)
        for path in write_generated(args.out, instance, side_info, with_csv=args.csv):
            self._print(str(path))

    def _cmd_run(self, args: argparse.Namespace) -> None:
        instance = read_instance(args.instance) if args.instance else None
        side_info = SideInfoMatrix.load(args.side_info) if args.side_info else None
        n = args.n if args.n is not None else (instance.n if instance else None)
        k = args.k if args.k is not None else (instance.k if instance else None)
        if n is None or k is None:
            raise ConfigError("run needs --n and --k, or an --instance file")
        data: Dict[str, Any] = {
            "algorithm": args.algorithm,
            "n": n,
            "k": k,
            "profile": instance.size_profile if instance else args.profile,
            "oracle": {"mode": args.oracle, "p": args.p},
            "side_info": side_info_spec(args),
            "params": parse_params(args.param),
            "round_cap": args.round_cap,
            "recall_threshold": args.recall_threshold,
            "seeds": args.seeds,
            "workers": args.workers,
            "record_timing": args.record_timing,
            "output": args.output,
        }
        cfg = ExperimentConfig.from_dict(data)
        if instance is None and side_info is None:
            reports = run_experiment(cfg, self.registry)
        else:
            cfg.validate(self.registry, side_info_loaded=side_info is not None)
            reports = [run_single(cfg, seed, self.registry, instance, side_info) for seed in cfg.seeds]
        summaries = summarize_by_config(reports)
        self._print_summaries(summaries)
        if cfg.output:
            write_csv(reports, cfg.output)
        if args.json:
            write_json(reports, args.json, summaries)

    def _cmd_bench(self, args: argparse.Namespace) -> None:
        all_reports = []
        for path in args.configs:
            cfg = ExperimentConfig.load(path)
            logger.info("Benchmark config %s", path)
            reports = run_experiment(cfg, self.registry)
            if cfg.output:
                write_csv(reports, cfg.output)
            all_reports.extend(reports)
        summaries = summarize_by_config(all_reports)
        self._print_summaries(summaries)
        if args.summary:
            write_summary_csv(summaries, args.summary)
        if args.json:
            write_json(all_reports, args.json, summaries)

    def _cmd_bounds(self, args: argparse.Namespace) -> None:
        if args.n < 1 or not 1 <= args.k <= args.n:
            raise ConfigError(f"Need 1 <= k <= n, got n={args.n}, k={args.k}")
        model = _resolve_model(args)
        rows = []
        if args.p is not None:
            if not 0 <= args.p < 0.5:
                raise ConfigError(f"p must lie in [0, 1/2), got {args.p}")
            lam = 0.5 - args.p
            c, _ = faulty_constants(lam, args.desk_scale)
            rows += [
                ("oracle_delta", oracle_delta(args.p)),
                ("lower_bound_faulty", lower_bound_faulty(args.n, args.k, args.p)),
                ("panel_size", panel_size(args.n, c)),
            ]
        if model is not None:
            gap = model.gap
            rows += [
                ("delta", model.delta),
                ("theta_gap", gap.theta_gap),
                ("lower_bound_perfect_side", lower_bound_perfect_side(args.k, model.delta)),
                ("lower_bound_lasvegas", lower_bound_lasvegas(args.n, args.k, model.delta)),
            ]
            if gap.theta_gap > 0:
                rows.append(("threshold_M_mean", threshold_M_mean(args.n, gap.theta_gap, args.desk_scale)))
            if model.eps > 0 and model.delta > 0 and math.isfinite(model.delta):
                rows.append(("threshold_M_tv", threshold_M_tv(args.n, model.eps, model.delta, args.desk_scale)))
            try:
                exponent = chernoff_exponent(model.f_plus, model.f_minus)
                rows.append(("chernoff_exponent", exponent))
                rows.append(("threshold_M_div", threshold_M_div(args.n, model.f_plus, model.f_minus, args.desk_scale)))
            except ValueError as e:
                logger.warning("Divergence threshold not available: %s", e)
        if not rows:
            raise ConfigError("bounds needs -p or a side-information preset")
        for name, value in rows:
            self._print(f"{name:<26}{value:.6g}" if isinstance(value, float) else f"{name:<26}{value}")

    def _cmd_list(self, args: argparse.Namespace) -> None:
        for algorithm in self.registry.get_all_algorithms():
            traits = [algorithm.oracle_mode]
            if algorithm.requires_side_info:
                traits.append("side-info")
            if algorithm.batched:
                traits.append("batched")
            if algorithm.las_vegas:
                traits.append("las-vegas")
            self._print(f"{algorithm.name:<14}{', '.join(traits)}")
