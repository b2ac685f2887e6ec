"""
Unit tests for CSV and manifest export and the sweep service.
"""

import json
import time

import numpy as np
import pytest

from qwalk_geophase.shared.services import SweepService
from qwalk_geophase.shared.utils import (
    RunOutcome,
    export_run,
    format_value,
    write_csv,
    write_manifest,
)


@pytest.mark.unit
class TestFormatValue:
    """Tests for CSV scalar formatting."""

    def test_bools_are_digits(self):
        """Booleans are written as 1 and 0."""
        assert format_value(True) == "1"
        assert format_value(np.bool_(False)) == "0"

    def test_integers(self):
        """Integers keep their exact value."""
        assert format_value(np.int64(42)) == "42"

    def test_negative_zero(self):
        """-0.0 is written without a sign."""
        assert format_value(-0.0) == "0"

    def test_significant_digits(self):
        """Floats use the requested significant digits."""
        assert format_value(1.0 / 3.0, digits=4) == "0.3333"


@pytest.mark.unit
class TestWriteCsv:
    """Tests for write_csv."""

    def test_header_lines(self, output_dir):
        """The comment line carries units, the second line bare names."""
        path = write_csv(output_dir / "t.csv", [("k", "rad"), ("W", "")], [[0.5, 1.0]])

        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "# k [rad], W"
        assert lines[1] == "k,W"
        assert lines[2] == "0.5,1"

    def test_ragged_row_rejected(self, output_dir):
        """Every row must match the columns."""
        with pytest.raises(ValueError):
            write_csv(output_dir / "t.csv", [("a", "")], [[1, 2]])

    def test_creates_parent_directory(self, tmp_path):
        """Missing output directories are created."""
        path = write_csv(tmp_path / "new" / "t.csv", [("a", "")], [])

        assert path.exists()


@pytest.mark.unit
class TestManifest:
    """Tests for write_manifest and export_run."""

    def test_manifest_contents(self, output_dir):
        """Inputs, outputs, versions and results are recorded as JSON."""
        path = write_manifest(
            output_dir / "m.json",
            "gp",
            {"theta": np.float64(1.0)},
            [output_dir / "gp.csv"],
            time.perf_counter(),
            {"value": 1 + 2j, "grid": np.arange(3)},
        )

        data = json.loads(path.read_text(encoding="utf-8"))
        assert data["command"] == "gp"
        assert data["inputs"] == {"theta": 1.0}
        assert data["result"] == {"value": {"re": 1.0, "im": 2.0}, "grid": [0, 1, 2]}
        assert {"numpy", "scipy", "python", "qwalk-geophase"} <= set(data["versions"])
        assert data["wall_time_s"] >= 0.0

    def test_export_run_names_files_after_command(self, output_dir):
        """export_run writes <command>.csv and <command>.manifest.json."""
        outcome = RunOutcome(headline="1", columns=[("x", "")], rows=[[1]], result={"x": 1})

        table, manifest = export_run(outcome, "chern", {}, output_dir, time.perf_counter())

        assert table == output_dir / "chern.csv"
        assert manifest == output_dir / "chern.manifest.json"
        assert json.loads(manifest.read_text())["outputs"] == [str(table)]


@pytest.mark.unit
class TestSweepService:
    """Tests for the ordered worker pool."""

    def test_results_sorted_by_key(self):
        """Results come back in ascending key order."""
        pairs = SweepService(workers=1).run(lambda k: k * k, [3, 1, 2])

        assert pairs == [(1, 1), (2, 4), (3, 9)]

    def test_worker_count_does_not_change_results(self):
        """Serial and threaded sweeps agree exactly."""
        keys = [0.5, 0.1, 0.3, 0.2]

        serial = SweepService(workers=1).run(np.sin, keys)
        threaded = SweepService(workers=3).run(np.sin, keys)

        assert serial == threaded

    def test_default_workers_from_settings(self, monkeypatch):
        """QWGP_WORKERS sets the default pool size."""
        monkeypatch.setenv("QWGP_WORKERS", "4")

        assert SweepService().workers == 4
