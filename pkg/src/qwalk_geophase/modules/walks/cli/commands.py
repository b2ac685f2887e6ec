"""
Walks CLI commands.

Angles are given in radians or as multiples of pi such as "-3pi/8".
"""

from pathlib import Path
from typing import Optional

import typer

from ....cli.base import ConfigOption, OutputOption, WorkersOption, run_command

# Create walks subcommand group
walks_app = typer.Typer(help="Quantum-walk evolution, bands and PT symmetry")


@walks_app.command("walk")
def walk(
    variant: Optional[str] = typer.Option(
        None, "--variant", help="dtqw1d, ssqw1d, electric1d, dtqw2d or coin4d2d"
    ),
    theta1: Optional[str] = typer.Option(None, "--theta1", help="First coin angle"),
    theta2: Optional[str] = typer.Option(None, "--theta2", help="Second coin angle"),
    gamma: Optional[float] = typer.Option(None, "--gamma", help="Gain/loss"),
    gamma_x: Optional[float] = typer.Option(None, "--gamma-x", help="Gain/loss along x"),
    gamma_y: Optional[float] = typer.Option(None, "--gamma-y", help="Gain/loss along y"),
    phi: Optional[str] = typer.Option(None, "--phi", help="Electric phase per site"),
    coin4d: Optional[str] = typer.Option(
        None, "--coin4d", help="hadamard, grover or fourier"
    ),
    size: Optional[int] = typer.Option(None, "--size", help="Lattice size"),
    size_y: Optional[int] = typer.Option(None, "--size-y", help="Lattice size along y"),
    steps: Optional[int] = typer.Option(None, "--steps", help="Number of steps"),
    stride: Optional[int] = typer.Option(None, "--stride", help="Partial shift stride"),
    frame: Optional[str] = typer.Option(None, "--frame", help="natural or symmetric"),
    full_angle: Optional[bool] = typer.Option(
        None, "--full-angle/--half-angle", help="Coin exp(-i theta sigma_y)"
    ),
    table: Optional[str] = typer.Option(None, "--table", help="distribution or spread"),
    config: Optional[Path] = ConfigOption,
    output: Optional[Path] = OutputOption,
    workers: Optional[int] = WorkersOption,
):
    """Evolve a walker from the origin."""
    run_command("walk", locals())


@walks_app.command("bands")
def bands(
    variant: Optional[str] = typer.Option(None, "--variant", help="Walk protocol"),
    theta1: Optional[str] = typer.Option(None, "--theta1", help="First coin angle"),
    theta2: Optional[str] = typer.Option(None, "--theta2", help="Second coin angle"),
    gamma: Optional[float] = typer.Option(None, "--gamma", help="Gain/loss"),
    gamma_x: Optional[float] = typer.Option(None, "--gamma-x", help="Gain/loss along x"),
    gamma_y: Optional[float] = typer.Option(None, "--gamma-y", help="Gain/loss along y"),
    coin_phase: Optional[str] = typer.Option(None, "--coin-phase", help="Phase operator"),
    stride: Optional[int] = typer.Option(None, "--stride", help="Partial shift stride"),
    frame: Optional[str] = typer.Option(None, "--frame", help="natural or symmetric"),
    full_angle: Optional[bool] = typer.Option(
        None, "--full-angle/--half-angle", help="Coin exp(-i theta sigma_y)"
    ),
    kcount: Optional[int] = typer.Option(None, "--kcount", help="k-grid size per axis"),
    config: Optional[Path] = ConfigOption,
    output: Optional[Path] = OutputOption,
    workers: Optional[int] = WorkersOption,
):
    """Quasi-energy bands over the Brillouin zone."""
    run_command("bands", locals())


@walks_app.command("gamma-c")
def gamma_c(
    theta1: Optional[str] = typer.Option(None, "--theta1", help="First coin angle"),
    theta2: Optional[str] = typer.Option(None, "--theta2", help="Second coin angle"),
    config: Optional[Path] = ConfigOption,
    output: Optional[Path] = OutputOption,
    workers: Optional[int] = WorkersOption,
):
    """Critical gain/loss of the split-step walk."""
    run_command("gamma-c", locals())


@walks_app.command("pt-check")
def pt_check(
    theta1: Optional[str] = typer.Option(None, "--theta1", help="First coin angle"),
    theta2: Optional[str] = typer.Option(None, "--theta2", help="Second coin angle"),
    gamma: Optional[float] = typer.Option(None, "--gamma", help="Gain/loss"),
    symmetry: Optional[str] = typer.Option(None, "--symmetry", help="pt or chiral"),
    kcount: Optional[int] = typer.Option(None, "--kcount", help="k-grid size"),
    config: Optional[Path] = ConfigOption,
    output: Optional[Path] = OutputOption,
    workers: Optional[int] = WorkersOption,
):
    """PT or chiral symmetry of the split-step walk."""
    run_command("pt-check", locals())


def get_walks_app() -> typer.Typer:
    """Get the walks Typer app for registration in main CLI."""
    return walks_app
