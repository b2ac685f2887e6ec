"""
Star geometry CLI commands.
"""

from pathlib import Path
from typing import Optional

import typer

from ....cli.base import ConfigOption, OutputOption, WorkersOption, run_command

# Create star geometry subcommand group
stargeo_app = typer.Typer(help="Majorana stars of geodesics and null phase curves")


@stargeo_app.command("geodesic")
def geodesic(
    dim: Optional[int] = typer.Option(None, "--dim", help="Hilbert-space dimension"),
    theta: Optional[str] = typer.Option(None, "--theta", help="Fubini-Study distance"),
    samples: Optional[int] = typer.Option(None, "--samples", help="Samples along the curve"),
    jump_ratio: Optional[float] = typer.Option(
        None, "--jump-ratio", help="Star tracking tolerance"
    ),
    config: Optional[Path] = ConfigOption,
    output: Optional[Path] = OutputOption,
    workers: Optional[int] = WorkersOption,
):
    """Star circles traced by the geodesic between degenerate-star states."""
    run_command("geodesic", locals())


@stargeo_app.command("stars")
def stars(
    re: Optional[str] = typer.Option(None, "--re", help="Real parts, comma-separated"),
    im: Optional[str] = typer.Option(None, "--im", help="Imaginary parts, comma-separated"),
    config: Optional[Path] = ConfigOption,
    output: Optional[Path] = OutputOption,
    workers: Optional[int] = WorkersOption,
):
    """Majorana stars of a state given by its amplitudes."""
    run_command("stars", locals())


@stargeo_app.command("npc")
def npc(
    family: Optional[str] = typer.Option(None, "--family", help="one, two or dual"),
    theta: Optional[str] = typer.Option(None, "--theta", help="Endpoint distance"),
    chi: Optional[str] = typer.Option(None, "--chi", help="Third-amplitude phase"),
    samples: Optional[int] = typer.Option(None, "--samples", help="Samples along the curve"),
    triples: Optional[int] = typer.Option(None, "--triples", help="Bargmann test samples"),
    config: Optional[Path] = ConfigOption,
    output: Optional[Path] = OutputOption,
    workers: Optional[int] = WorkersOption,
):
    """Null phase curve of a qutrit and its star trajectories."""
    run_command("npc", locals())


def get_stargeo_app() -> typer.Typer:
    """Get the star geometry Typer app for registration in main CLI."""
    return stargeo_app
