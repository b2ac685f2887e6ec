"""
Topology CLI commands.

Sweep options take comma-separated values; angles accept "7pi/6".
"""

from pathlib import Path
from typing import Optional

import typer

from ....cli.base import ConfigOption, OutputOption, WorkersOption, run_command

# Create topology subcommand group
topo_app = typer.Typer(help="Winding and Chern numbers, edge states, SSH chain")


@topo_app.command("winding")
def winding(
    theta1: Optional[str] = typer.Option(None, "--theta1", help="First coin angle"),
    theta2: Optional[str] = typer.Option(None, "--theta2", help="Second coin angle"),
    gamma: Optional[float] = typer.Option(None, "--gamma", help="Gain/loss"),
    kcount: Optional[int] = typer.Option(None, "--kcount", help="k-grid size"),
    biorthogonal: Optional[bool] = typer.Option(
        None, "--biorthogonal/--right", help="Use left eigenvectors as bra"
    ),
    theta1s: Optional[str] = typer.Option(None, "--theta1s", help="Sweep values of theta1"),
    theta2s: Optional[str] = typer.Option(None, "--theta2s", help="Sweep values of theta2"),
    gammas: Optional[str] = typer.Option(None, "--gammas", help="Sweep values of gamma"),
    config: Optional[Path] = ConfigOption,
    output: Optional[Path] = OutputOption,
    workers: Optional[int] = WorkersOption,
):
    """Winding number of the split-step walk, or its phase diagram."""
    run_command("winding", locals())


@topo_app.command("chern")
def chern(
    theta1: Optional[str] = typer.Option(None, "--theta1", help="First coin angle"),
    theta2: Optional[str] = typer.Option(None, "--theta2", help="Second coin angle"),
    gamma_x: Optional[float] = typer.Option(None, "--gamma-x", help="Gain/loss along x"),
    gamma_y: Optional[float] = typer.Option(None, "--gamma-y", help="Gain/loss along y"),
    grid: Optional[int] = typer.Option(None, "--grid", help="k-grid size per axis"),
    full_angle: Optional[bool] = typer.Option(
        None, "--full-angle/--half-angle", help="Coin exp(-i theta sigma_y)"
    ),
    theta1s: Optional[str] = typer.Option(None, "--theta1s", help="Sweep values of theta1"),
    theta2s: Optional[str] = typer.Option(None, "--theta2s", help="Sweep values of theta2"),
    gamma_xs: Optional[str] = typer.Option(None, "--gamma-xs", help="Sweep values of gamma_x"),
    config: Optional[Path] = ConfigOption,
    output: Optional[Path] = OutputOption,
    workers: Optional[int] = WorkersOption,
):
    """Chern number of the two-dimensional walk, or its phase diagram."""
    run_command("chern", locals())


@topo_app.command("realspace-winding")
def realspace_winding(
    theta1: Optional[str] = typer.Option(None, "--theta1", help="First coin angle"),
    theta2: Optional[str] = typer.Option(None, "--theta2", help="Second coin angle"),
    p_measure: Optional[float] = typer.Option(
        None, "--p-measure", help="Measurement strength"
    ),
    steps: Optional[int] = typer.Option(None, "--steps", help="Number of steps"),
    size: Optional[int] = typer.Option(None, "--size", help="Lattice size"),
    theta1s: Optional[str] = typer.Option(None, "--theta1s", help="Sweep values of theta1"),
    config: Optional[Path] = ConfigOption,
    output: Optional[Path] = OutputOption,
    workers: Optional[int] = WorkersOption,
):
    """Winding number from the mean displacement under repeated detection."""
    run_command("realspace-winding", locals())


@topo_app.command("edge1d")
def edge1d(
    inner_theta1: Optional[str] = typer.Option(None, "--inner-theta1", help="Inner theta1"),
    inner_theta2: Optional[str] = typer.Option(None, "--inner-theta2", help="Inner theta2"),
    outer_theta1: Optional[str] = typer.Option(None, "--outer-theta1", help="Outer theta1"),
    outer_theta2: Optional[str] = typer.Option(None, "--outer-theta2", help="Outer theta2"),
    gamma: Optional[float] = typer.Option(None, "--gamma", help="Gain/loss"),
    size: Optional[int] = typer.Option(None, "--size", help="Lattice size"),
    half_width: Optional[int] = typer.Option(None, "--half-width", help="Wall position"),
    config: Optional[Path] = ConfigOption,
    output: Optional[Path] = OutputOption,
    workers: Optional[int] = WorkersOption,
):
    """Edge states of the two-domain split-step chain."""
    run_command("edge1d", locals())


@topo_app.command("edge2d")
def edge2d(
    inner_theta1: Optional[str] = typer.Option(None, "--inner-theta1", help="Inner theta1"),
    inner_theta2: Optional[str] = typer.Option(None, "--inner-theta2", help="Inner theta2"),
    outer_theta1: Optional[str] = typer.Option(None, "--outer-theta1", help="Outer theta1"),
    outer_theta2: Optional[str] = typer.Option(None, "--outer-theta2", help="Outer theta2"),
    gamma_x: Optional[float] = typer.Option(None, "--gamma-x", help="Gain/loss along x"),
    gamma_y: Optional[float] = typer.Option(None, "--gamma-y", help="Gain/loss along y"),
    size_y: Optional[int] = typer.Option(None, "--size-y", help="Strip width"),
    kx_count: Optional[int] = typer.Option(None, "--kx-count", help="Strip momenta"),
    half_width: Optional[int] = typer.Option(None, "--half-width", help="Wall position"),
    full_angle: Optional[bool] = typer.Option(
        None, "--full-angle/--half-angle", help="Coin exp(-i theta sigma_y)"
    ),
    config: Optional[Path] = ConfigOption,
    output: Optional[Path] = OutputOption,
    workers: Optional[int] = WorkersOption,
):
    """Strip bands and edge states of the two-domain 2D walk."""
    run_command("edge2d", locals())


@topo_app.command("ssh")
def ssh(
    v: Optional[float] = typer.Option(None, "--v", help="Intracell hopping"),
    w: Optional[float] = typer.Option(None, "--w", help="Intercell hopping"),
    cells: Optional[int] = typer.Option(None, "--cells", help="Unit cells"),
    open_chain: Optional[bool] = typer.Option(
        None, "--open/--bulk-only", help="Diagonalize the open chain"
    ),
    kcount: Optional[int] = typer.Option(None, "--kcount", help="Bulk k-grid size"),
    config: Optional[Path] = ConfigOption,
    output: Optional[Path] = OutputOption,
    workers: Optional[int] = WorkersOption,
):
    """SSH chain spectrum, zero modes and winding."""
    run_command("ssh", locals())


@topo_app.command("ep")
def ep(
    beta_min: Optional[float] = typer.Option(None, "--beta-min", help="First beta"),
    beta_max: Optional[float] = typer.Option(None, "--beta-max", help="Last beta"),
    points: Optional[int] = typer.Option(None, "--points", help="Number of beta values"),
    config: Optional[Path] = ConfigOption,
    output: Optional[Path] = OutputOption,
    workers: Optional[int] = WorkersOption,
):
    """Exceptional point of the three-level PT-symmetric matrix."""
    run_command("ep", locals())


def get_topo_app() -> typer.Typer:
    """Get the topology Typer app for registration in main CLI."""
    return topo_app
