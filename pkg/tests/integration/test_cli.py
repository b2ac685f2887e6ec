"""
Integration tests for the qwgp command line.
"""

import json

import pytest
from typer.testing import CliRunner

from qwalk_geophase.cli.main import app
from qwalk_geophase.modules.walks.services import WalkService
from qwalk_geophase.shared.exceptions import TrackingException


@pytest.fixture
def runner():
    """Typer CLI runner."""
    return CliRunner()


def _write_config(tmp_path, data, name="run.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


@pytest.mark.integration
class TestRunCommands:
    """End-to-end runs through the CLI."""

    def test_gamma_c(self, runner, output_dir):
        """gamma-c prints the critical gain/loss to four places."""
        result = runner.invoke(
            app,
            ["gamma-c", "--theta1", "-3pi/8", "--theta2", "pi/4", "-o", str(output_dir)],
        )

        assert result.exit_code == 0
        assert "0.2110" in result.stdout

    def test_chern_topological_point(self, runner, output_dir):
        """chern at 7pi/6 reports C = +1."""
        result = runner.invoke(
            app,
            [
                "chern",
                "--theta1", "7pi/6",
                "--theta2", "7pi/6",
                "--grid", "48",
                "-o", str(output_dir),
            ],
        )

        assert result.exit_code == 0
        assert "C = +1" in result.stdout

    def test_geodesic_phase_vanishes(self, runner, output_dir):
        """The geodesic reference curve carries no phase."""
        result = runner.invoke(
            app,
            [
                "gp",
                "--curve", "geodesic",
                "--dim", "5",
                "--theta", "1.0472",
                "-o", str(output_dir),
            ],
        )

        assert result.exit_code == 0
        assert abs(float(result.stdout.strip().splitlines()[0])) < 1e-8

    def test_files_written(self, runner, output_dir):
        """Each run writes a CSV table and a JSON manifest."""
        runner.invoke(app, ["gamma-c", "-o", str(output_dir)])

        table = (output_dir / "gamma-c.csv").read_text(encoding="utf-8").splitlines()
        manifest = json.loads((output_dir / "gamma-c.manifest.json").read_text())
        assert table[0].startswith("# theta1 [rad]")
        assert table[1] == "theta1,theta2,gamma_c,gamma_c_imag,is_complex"
        assert manifest["command"] == "gamma-c"
        assert manifest["inputs"]["workers"] == 1


@pytest.mark.integration
class TestRunConfig:
    """Tests for --config handling."""

    def test_flags_override_file(self, runner, tmp_path, output_dir):
        """Command-line flags win over the file's parameters."""
        config = _write_config(
            tmp_path,
            {"command": "gamma-c", "params": {"theta1": "-3pi/8", "theta2": "pi/2"}},
        )

        result = runner.invoke(
            app, ["gamma-c", "-c", str(config), "--theta2", "5pi/8", "-o", str(output_dir)]
        )

        manifest = json.loads((output_dir / "gamma-c.manifest.json").read_text())
        assert result.exit_code == 0
        assert "0.2832" in result.stdout
        assert manifest["inputs"]["params"]["theta1"] == pytest.approx(-1.1780972450961724)

    def test_unknown_key_rejected(self, runner, tmp_path, output_dir):
        """Unknown top-level keys exit with code 2."""
        config = _write_config(tmp_path, {"command": "gamma-c", "colour": "blue"})

        result = runner.invoke(app, ["gamma-c", "-c", str(config), "-o", str(output_dir)])

        assert result.exit_code == 2

    def test_unknown_parameter_rejected(self, runner, tmp_path, output_dir):
        """Parameters the command does not know exit with code 2."""
        config = _write_config(tmp_path, {"params": {"theta3": 1.0}})

        result = runner.invoke(app, ["gamma-c", "-c", str(config), "-o", str(output_dir)])

        assert result.exit_code == 2

    def test_bad_json_rejected(self, runner, tmp_path, output_dir):
        """A file that is not JSON exits with code 2."""
        config = tmp_path / "broken.json"
        config.write_text("{not json", encoding="utf-8")

        result = runner.invoke(app, ["gamma-c", "-c", str(config), "-o", str(output_dir)])

        assert result.exit_code == 2

    def test_config_for_other_command_rejected(self, runner, tmp_path, output_dir):
        """A file naming another command exits with code 2."""
        config = _write_config(tmp_path, {"command": "chern"})

        result = runner.invoke(app, ["gamma-c", "-c", str(config), "-o", str(output_dir)])

        assert result.exit_code == 2

    def test_bad_angle_rejected(self, runner, output_dir):
        """Unparsable angles exit with code 2."""
        result = runner.invoke(app, ["gamma-c", "--theta1", "pie", "-o", str(output_dir)])

        assert result.exit_code == 2


@pytest.mark.integration
class TestFailures:
    """Numerical failures map to exit code 3."""

    def test_service_failure(self, runner, output_dir, mocker):
        """A tracking failure inside the service exits with code 3."""
        mocker.patch.object(
            WalkService, "gamma_critical", side_effect=TrackingException("branch lost")
        )

        result = runner.invoke(app, ["gamma-c", "-o", str(output_dir)])

        assert result.exit_code == 3
        assert not (output_dir / "gamma-c.csv").exists()


@pytest.mark.integration
class TestRecipes:
    """Tests for the shipped recipes and auxiliary commands."""

    def test_recipes_listed(self, runner):
        """recipes lists every shipped fig-* file."""
        result = runner.invoke(app, ["recipes"])

        assert result.exit_code == 0
        assert "fig-ssh" in result.stdout
        assert "fig-chern" in result.stdout

    def test_run_recipe(self, runner, output_dir):
        """run executes a shipped recipe by name."""
        result = runner.invoke(app, ["run", "fig-ssh", "-o", str(output_dir)])

        assert result.exit_code == 0
        assert "2 zero modes" in result.stdout
        assert (output_dir / "ssh.csv").exists()

    def test_unknown_recipe(self, runner):
        """An unknown recipe name exits with code 2."""
        result = runner.invoke(app, ["run", "fig-nothing"])

        assert result.exit_code == 2

    def test_version(self, runner):
        """version prints the application name."""
        result = runner.invoke(app, ["version"])

        assert result.exit_code == 0
        assert "qwalk-geophase" in result.stdout
