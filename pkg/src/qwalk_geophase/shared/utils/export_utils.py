"""
Deterministic CSV and JSON manifest export.
"""

import csv
import json
import platform
import time
from importlib import metadata
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy
from pydantic import BaseModel, Field

from ...core.config import get_settings

Column = Tuple[str, str]


class RunManifest(BaseModel):
    """JSON manifest written next to every exported CSV."""

    command: str = Field(..., description="Subcommand that produced the output")
    inputs: Dict[str, Any] = Field(..., description="Resolved run inputs")
    outputs: List[str] = Field(default_factory=list, description="Files written")
    versions: Dict[str, str] = Field(..., description="Package versions")
    wall_time_s: float = Field(..., description="Wall time in seconds")
    result: Dict[str, Any] = Field(default_factory=dict, description="Headline values")


def package_versions() -> Dict[str, str]:
    """Collect versions of the packages that determine numerical output."""
    try:
        own = metadata.version("qwalk-geophase")
    except metadata.PackageNotFoundError:
        own = get_settings().APP_VERSION
    return {
        "qwalk-geophase": own,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "python": platform.python_version(),
    }


def format_value(value: Any, digits: Optional[int] = None) -> str:
    """Format a scalar for CSV output."""
    digits = digits or get_settings().CSV_DIGITS
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if v == 0.0:
            v = 0.0  # no "-0"
        return f"{v:.{digits}g}"
    return str(value)


def write_csv(
    path: Path,
    columns: Sequence[Column],
    rows: Iterable[Sequence[Any]],
    digits: Optional[int] = None,
) -> Path:
    """Write a header-documented CSV file.

    The first line is a comment naming every column with its unit, the
    second line holds bare column names.

    Args:
        path: Output file path
        columns: (name, unit) pairs
        rows: Row sequences matching ``columns``
        digits: Significant digits for floats (defaults to settings)

    Returns:
        The written path
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    described = ", ".join(f"{name} [{unit}]" if unit else name for name, unit in columns)
    with path.open("w", encoding="utf-8", newline="") as handle:
        handle.write(f"# {described}\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow([name for name, _ in columns])
        for row in rows:
            if len(row) != len(columns):
                raise ValueError(
                    f"Row has {len(row)} values, expected {len(columns)}"
                )
            writer.writerow([format_value(v, digits) for v in row])
    return path


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": float(np.real(value)), "im": float(np.imag(value))}
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    return value


def write_manifest(
    path: Path,
    command: str,
    inputs: Dict[str, Any],
    outputs: Sequence[Path],
    started: float,
    result: Optional[Dict[str, Any]] = None,
) -> Path:
    """Write the JSON run manifest.

    Args:
        path: Manifest path
        command: Subcommand name
        inputs: Resolved inputs of the run
        outputs: Files written by the run
        started: ``time.perf_counter()`` value taken at run start
        result: Headline values

    Returns:
        The written path
    """
    manifest = RunManifest(
        command=command,
        inputs=_jsonable(inputs),
        outputs=[str(p) for p in outputs],
        versions=package_versions(),
        wall_time_s=time.perf_counter() - started,
        result=_jsonable(result or {}),
    )
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(manifest.model_dump(), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    return path


class RunOutcome(BaseModel):
    """Table and headline produced by one CLI run."""

    headline: str = Field(..., description="One-line result printed on stdout")
    columns: List[Column] = Field(..., description="(name, unit) pairs of the CSV")
    rows: List[List[Any]] = Field(default_factory=list, description="CSV rows")
    result: Dict[str, Any] = Field(default_factory=dict, description="Headline values")


def export_run(
    outcome: RunOutcome,
    command: str,
    inputs: Dict[str, Any],
    output_dir: Path,
    started: float,
) -> Tuple[Path, Path]:
    """Write ``<command>.csv`` and ``<command>.manifest.json`` into ``output_dir``.

    Returns:
        (csv path, manifest path)
    """
    output_dir = Path(output_dir)
    table = write_csv(output_dir / f"{command}.csv", outcome.columns, outcome.rows)
    manifest = write_manifest(
        output_dir / f"{command}.manifest.json",
        command,
        inputs,
        [table],
        started,
        outcome.result,
    )
    return table, manifest
