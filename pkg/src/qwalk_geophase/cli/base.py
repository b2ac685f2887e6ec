"""
Base CLI utilities and shared functionality.

This module provides common utilities for CLI commands across all modules.
The headline of a run goes to stdout; diagnostics and tables go to stderr.
"""

import time
from pathlib import Path
from typing import Any, Dict, Optional

import typer
from rich.console import Console
from rich.table import Table

from ..core.config import get_settings
from ..core.logging import bind_run_context, get_logger, log_run_summary, setup_logging
from ..shared.exceptions import BaseException
from ..shared.utils.export_utils import RunOutcome, export_run
from .runconfig import RunConfig, load_run_config, resolve_command, resolve_request

logger = get_logger(__name__)

# Initialize consoles for rich output
console = Console(highlight=False)
err_console = Console(stderr=True)

ConfigOption = typer.Option(None, "--config", "-c", help="JSON run config, flags override it")
OutputOption = typer.Option(None, "--output", "-o", help="Output directory")
WorkersOption = typer.Option(None, "--workers", "-w", min=1, help="Worker count")


def print_success(message: str) -> None:
    """Print a success message."""
    err_console.print(f"[bold green]✓[/bold green] {message}")


def print_error(message: str) -> None:
    """Print an error message."""
    err_console.print(f"[bold red]✗[/bold red] {message}")


def print_info(message: str) -> None:
    """Print an info message."""
    err_console.print(f"[bold blue]ℹ[/bold blue] {message}")


def print_warning(message: str) -> None:
    """Print a warning message."""
    err_console.print(f"[bold yellow]⚠[/bold yellow] {message}")


def _summary_table(command: str, outcome: RunOutcome) -> Table:
    table = Table(title=command, show_header=True, header_style="bold magenta")
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", style="green")
    for key, value in outcome.result.items():
        if isinstance(value, float):
            value = f"{value:.10g}"
        elif not isinstance(value, str) and hasattr(value, "__len__") and len(value) > 8:
            value = f"[{len(value)} entries]"
        table.add_row(key, str(value))
    return table


def execute(
    command: str,
    flags: Dict[str, Any],
    config: Optional[Path] = None,
    output: Optional[Path] = None,
    workers: Optional[int] = None,
) -> RunOutcome:
    """Validate, run and export one command.

    Flags override the config file; the worker count falls back to the
    file, then to QWGP_WORKERS. Library exceptions become their exit code.

    Raises:
        typer.Exit: With code 2 for invalid input and 3 for numerical failure
    """
    setup_logging()
    started = time.perf_counter()
    settings = get_settings()
    try:
        run_config = load_run_config(config) if config else RunConfig()
        model, handler = resolve_command(command)
        request = resolve_request(model, command, run_config, flags)
        n_workers = workers or run_config.workers or settings.QWGP_WORKERS
        bind_run_context(command, n_workers)
        logger.info("Running command")

        outcome = handler(request, n_workers)
        out_dir = Path(output or run_config.output or settings.OUTPUT_DIR)
        csv_path, manifest_path = export_run(
            outcome,
            command,
            {"params": request.model_dump(mode="json"), "workers": n_workers},
            out_dir,
            started,
        )
        log_run_summary(time.perf_counter() - started, [csv_path, manifest_path])
    except BaseException as e:
        logger.error("Command failed", command=command, error=e.message, details=e.details)
        print_error(e.message)
        raise typer.Exit(code=e.exit_code)

    console.print(outcome.headline, markup=False)
    err_console.print(_summary_table(command, outcome))
    print_success(f"Wrote {csv_path} and {manifest_path}")
    return outcome


def run_command(command: str, params: Dict[str, Any]) -> RunOutcome:
    """Execute ``command`` from a Typer callback's parameters.

    ``params`` is the callback's ``locals()``; the shared ``config``,
    ``output`` and ``workers`` options are split off, the rest are flags.
    """
    flags = dict(params)
    config = flags.pop("config", None)
    output = flags.pop("output", None)
    workers = flags.pop("workers", None)
    return execute(command, flags, config, output, workers)
