"""
Cavity CLI commands.

Frequencies are angular (rad/s); lengths in metres.
"""

from pathlib import Path
from typing import Optional

import typer

from ....cli.base import ConfigOption, OutputOption, WorkersOption, run_command

# Create cavity subcommand group
cavity_app = typer.Typer(help="Geometric phase of an atom rotating in a cavity")


@cavity_app.command("cavity")
def cavity(
    Omega0: Optional[float] = typer.Option(None, "--omega0", help="Atomic gap"),
    omega: Optional[float] = typer.Option(None, "--omega", help="Rotation frequency"),
    R: Optional[float] = typer.Option(None, "--radius", help="Orbit radius"),
    V: Optional[float] = typer.Option(None, "--volume", help="Cavity volume"),
    omega_c: Optional[float] = typer.Option(None, "--omega-c", help="Cavity frequency"),
    Q: Optional[float] = typer.Option(None, "--q", help="Quality factor"),
    eta: Optional[float] = typer.Option(None, "--eta", help="Coupling constant"),
    dipole: Optional[float] = typer.Option(None, "--dipole", help="Dipole moment (C m)"),
    theta: Optional[str] = typer.Option(None, "--theta", help="Initial polar angle"),
    n: Optional[float] = typer.Option(None, "--n", help="Quasi-cycle count"),
    omega_cs: Optional[str] = typer.Option(None, "--omega-cs", help="Cavity frequency sweep"),
    ns: Optional[str] = typer.Option(None, "--ns", help="Cycle counts for the slope fit"),
    exact: Optional[bool] = typer.Option(
        None, "--exact/--first-order", help="Also evaluate the quadrature phase"
    ),
    config: Optional[Path] = ConfigOption,
    output: Optional[Path] = OutputOption,
    workers: Optional[int] = WorkersOption,
):
    """Decay rates and inertial/non-inertial geometric phase of the orbiting atom."""
    run_command("cavity", locals())


def get_cavity_app() -> typer.Typer:
    """Get the cavity Typer app for registration in main CLI."""
    return cavity_app
