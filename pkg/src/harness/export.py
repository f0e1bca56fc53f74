"""CSV and JSON output of run reports and generated inputs."""

import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from ..core.instance import Instance
from ..core.report import CSV_COLUMNS, RunReport
from ..synth.sideinfo import SideInfoMatrix
from .summary import SUMMARY_COLUMNS, RunSummary

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

INSTANCE_FILE = "instance.json"
SIDE_INFO_FILE = "sideinfo.bin"
SIDE_INFO_CSV_FILE = "sideinfo.csv"


def _ensure_parent(path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_csv(reports: Sequence[RunReport], path: PathLike) -> None:
    """Write reports in the fixed ``CSV_COLUMNS`` layout."""
    path = _ensure_parent(path)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for report in reports:
            writer.writerow(report.csv_row())
    logger.info("Wrote %d rows to %s", len(reports), path)


def write_summary_csv(summaries: Sequence[RunSummary], path: PathLike) -> None:
    path = _ensure_parent(path)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(SUMMARY_COLUMNS)
        for summary in summaries:
            writer.writerow(summary.csv_row())


def reports_to_json(reports: Sequence[RunReport], summaries: Optional[Sequence[RunSummary]] = None) -> str:
    """
    JSON document with every report, including its phase counts, round
    sizes and solver flags, and optionally the summaries.
    """
    data: Dict[str, Any] = {"reports": [r.to_dict() for r in reports]}
    if summaries is not None:
        data["summaries"] = [s.to_dict() for s in summaries]
    return json.dumps(data, indent=2, sort_keys=True)


def write_json(reports: Sequence[RunReport], path: PathLike, summaries: Optional[Sequence[RunSummary]] = None) -> None:
    path = _ensure_parent(path)
    path.write_text(reports_to_json(reports, summaries) + "\n", encoding="utf-8")
    logger.info("Wrote %d reports to %s", len(reports), path)


def write_generated(
    directory: PathLike,
    instance: Instance,
    side_info: Optional[SideInfoMatrix] = None,
    with_csv: bool = False,
) -> List[Path]:
    """
    Write an instance and, if given, its side information into ``directory``.

    Returns:
        List[Path]: The files written
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = [directory / INSTANCE_FILE]
    written[0].write_text(instance.to_json() + "\n", encoding="utf-8")
    if side_info is not None:
        side_info.save(directory / SIDE_INFO_FILE)
        written.append(directory / SIDE_INFO_FILE)
        if with_csv:
            side_info.save_csv(directory / SIDE_INFO_CSV_FILE)
            written.append(directory / SIDE_INFO_CSV_FILE)
    logger.info("Wrote %s", ", ".join(str(p) for p in written))
    return written


def read_instance(path: PathLike) -> Instance:
    """
    Raises:
        ValueError: If the file is not a valid instance
    """
    try:
        return Instance.from_json(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ValueError(f"Instance file {path} is not valid JSON: {e}") from e
