"""
Geometric phase CLI commands.
"""

from pathlib import Path
from typing import Optional

import typer

from ....cli.base import ConfigOption, OutputOption, WorkersOption, run_command

# Create geometric phase subcommand group
geophase_app = typer.Typer(help="Pure, mixed, Uhlmann and weak-value geometric phases")


@geophase_app.command("gp")
def gp(
    curve: Optional[str] = typer.Option(None, "--curve", help="geodesic, circle or pauli"),
    dim: Optional[int] = typer.Option(None, "--dim", help="Geodesic dimension"),
    theta: Optional[str] = typer.Option(None, "--theta", help="Length or colatitude"),
    samples: Optional[int] = typer.Option(None, "--samples", help="Samples along the curve"),
    method: Optional[str] = typer.Option(None, "--method", help="overlap or trapezoid"),
    config: Optional[Path] = ConfigOption,
    output: Optional[Path] = OutputOption,
    workers: Optional[int] = WorkersOption,
):
    """Geometric phase of a pure-state reference curve."""
    run_command("gp", locals())


@geophase_app.command("gp-mixed")
def gp_mixed(
    kind: Optional[str] = typer.Option(None, "--kind", help="unitary or dephasing"),
    r: Optional[float] = typer.Option(None, "--r", help="Bloch radius"),
    theta: Optional[str] = typer.Option(None, "--theta", help="Bloch polar angle"),
    eta: Optional[float] = typer.Option(None, "--eta", help="Precession frequency"),
    lam: Optional[float] = typer.Option(None, "--lam", help="Dephasing rate"),
    samples: Optional[int] = typer.Option(None, "--samples", help="Samples per period"),
    config: Optional[Path] = ConfigOption,
    output: Optional[Path] = OutputOption,
    workers: Optional[int] = WorkersOption,
):
    """Mixed-state geometric phase of a qubit."""
    run_command("gp-mixed", locals())


@geophase_app.command("uhlmann")
def uhlmann(
    r: Optional[float] = typer.Option(None, "--r", help="Bloch radius"),
    theta: Optional[str] = typer.Option(None, "--theta", help="Polar angle of n"),
    tau: Optional[str] = typer.Option(None, "--tau", help="Evolution parameter"),
    taus: Optional[str] = typer.Option(None, "--taus", help="Sweep values of tau"),
    config: Optional[Path] = ConfigOption,
    output: Optional[Path] = OutputOption,
    workers: Optional[int] = WorkersOption,
):
    """Uhlmann phase of a qubit."""
    run_command("uhlmann", locals())


@geophase_app.command("weakvalue")
def weakvalue(
    pre_theta: Optional[str] = typer.Option(None, "--pre-theta", help="Pre-selected polar"),
    pre_phi: Optional[str] = typer.Option(None, "--pre-phi", help="Pre-selected azimuth"),
    post_theta: Optional[str] = typer.Option(None, "--post-theta", help="Post-selected polar"),
    post_phi: Optional[str] = typer.Option(None, "--post-phi", help="Post-selected azimuth"),
    obs_theta: Optional[str] = typer.Option(None, "--obs-theta", help="Observable polar"),
    obs_phi: Optional[str] = typer.Option(None, "--obs-phi", help="Observable azimuth"),
    kappa: Optional[float] = typer.Option(None, "--kappa", help="Coupling strength"),
    sigma: Optional[float] = typer.Option(None, "--sigma", help="Pointer width"),
    config: Optional[Path] = ConfigOption,
    output: Optional[Path] = OutputOption,
    workers: Optional[int] = WorkersOption,
):
    """Weak value of a Pauli observable and its pointer readout."""
    run_command("weakvalue", locals())


def get_geophase_app() -> typer.Typer:
    """Get the geometric phase Typer app for registration in main CLI."""
    return geophase_app
