"""
Main CLI entry point using Typer.

Every module provides its own Typer app in ``cli/commands.py``; their
commands are registered at the top level so that ``qwgp chern`` and
``qwgp gp`` sit side by side.
"""

from pathlib import Path
from typing import Optional

import typer
from rich.table import Table

from ..core.config import get_settings
from ..shared.exceptions import BaseException
from .base import OutputOption, WorkersOption, console, execute, print_error
from .runconfig import list_recipes, load_run_config, recipe_path

# Initialize Typer app (disable Rich help to avoid compatibility issues)
app = typer.Typer(
    name="qwgp",
    help="Quantum walks, topological invariants and geometric phases",
    add_completion=False,
    no_args_is_help=True,
    rich_markup_mode="none",
    context_settings={"help_option_names": ["-h", "--help"]},
)


def _register(module_app: typer.Typer) -> None:
    app.registered_commands.extend(module_app.registered_commands)


@app.command()
def version():
    """Show application version."""
    settings = get_settings()
    console.print(f"[bold green]{settings.APP_NAME}[/bold green] v{settings.APP_VERSION}")


@app.command("run")
def run(
    recipe: str = typer.Argument(..., help="Recipe name or path to a JSON run config"),
    output: Optional[Path] = OutputOption,
    workers: Optional[int] = WorkersOption,
):
    """Execute a run config or a shipped figure recipe."""
    try:
        path = recipe_path(recipe)
        config = load_run_config(path)
    except BaseException as e:
        print_error(e.message)
        raise typer.Exit(code=e.exit_code)
    if config.command is None:
        print_error(f"{path} names no command")
        raise typer.Exit(code=2)
    execute(config.command, {}, path, output, workers)


@app.command("recipes")
def recipes():
    """List the shipped figure-reproduction recipes."""
    table = Table(title="Recipes", show_header=True, header_style="bold magenta")
    table.add_column("Name", style="cyan")
    table.add_column("Command", style="green")
    for name in list_recipes():
        table.add_row(name, load_run_config(recipe_path(name)).command or "")
    console.print(table)


# Register module commands
try:
    from ..modules.walks.cli.commands import get_walks_app

    _register(get_walks_app())
except ImportError:
    pass

try:
    from ..modules.topo.cli.commands import get_topo_app

    _register(get_topo_app())
except ImportError:
    pass

try:
    from ..modules.stargeo.cli.commands import get_stargeo_app

    _register(get_stargeo_app())
except ImportError:
    pass

try:
    from ..modules.geophase.cli.commands import get_geophase_app

    _register(get_geophase_app())
except ImportError:
    pass

try:
    from ..modules.cavity.cli.commands import get_cavity_app

    _register(get_cavity_app())
except ImportError:
    pass


def main():
    """Main CLI entry point."""
    app()


if __name__ == "__main__":
    main()
