"""
Run configurations and the command registry.

A RunConfig is a JSON file naming a command, its parameter block, grid
sizes, an output directory and a worker count. Flags given on the command
line override values from the file.
"""

import importlib
import json
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Type

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..shared.exceptions import ValidationException
from ..shared.utils.export_utils import RunOutcome

RECIPES_DIR = Path(__file__).parent / "recipes"

Handler = Callable[[BaseModel, Optional[int]], RunOutcome]

# command -> (module, request model, use case class, use case method)
COMMANDS: Dict[str, Tuple[str, str, str, str]] = {
    "walk": ("walks", "WalkRequest", "WalksUseCase", "walk"),
    "bands": ("walks", "BandsRequest", "WalksUseCase", "bands"),
    "gamma-c": ("walks", "GammaCRequest", "WalksUseCase", "gamma_c"),
    "pt-check": ("walks", "SymmetryRequest", "WalksUseCase", "symmetry"),
    "winding": ("topo", "WindingRequest", "TopoUseCase", "winding"),
    "chern": ("topo", "ChernRequest", "TopoUseCase", "chern"),
    "realspace-winding": ("topo", "RealspaceRequest", "TopoUseCase", "realspace"),
    "edge1d": ("topo", "Edge1dRequest", "TopoUseCase", "edge1d"),
    "edge2d": ("topo", "Edge2dRequest", "TopoUseCase", "edge2d"),
    "ssh": ("topo", "SshRequest", "TopoUseCase", "ssh"),
    "ep": ("topo", "ExceptionalPointRequest", "TopoUseCase", "exceptional_point"),
    "geodesic": ("stargeo", "GeodesicRequest", "StarGeometryUseCase", "geodesic"),
    "stars": ("stargeo", "StarsRequest", "StarGeometryUseCase", "stars"),
    "npc": ("stargeo", "NpcRequest", "StarGeometryUseCase", "npc"),
    "gp": ("geophase", "GpRequest", "GeometricPhaseUseCase", "gp"),
    "gp-mixed": ("geophase", "GpMixedRequest", "GeometricPhaseUseCase", "gp_mixed"),
    "uhlmann": ("geophase", "UhlmannRequest", "GeometricPhaseUseCase", "uhlmann"),
    "weakvalue": ("geophase", "WeakValueRequest", "GeometricPhaseUseCase", "weakvalue"),
    "cavity": ("cavity", "CavityRequest", "CavityUseCase", "cavity"),
}


class RunConfig(BaseModel):
    """Validated contents of a run-configuration file."""

    model_config = ConfigDict(extra="forbid")

    command: Optional[str] = Field(None, description="Subcommand the file is meant for")
    params: Dict[str, Any] = Field(default_factory=dict, description="Request parameters")
    grids: Dict[str, int] = Field(default_factory=dict, description="Grid and sample sizes")
    output: Optional[str] = Field(None, description="Output directory")
    workers: Optional[int] = Field(None, ge=1, description="Worker count")


def _errors(error: ValidationError) -> List[str]:
    return [f"{'.'.join(map(str, e['loc'])) or 'config'}: {e['msg']}" for e in error.errors()]


def load_run_config(path: Path) -> RunConfig:
    """Read and validate a JSON run configuration.

    Raises:
        ValidationException: If the file is unreadable, not JSON or has
            unknown keys
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ValidationException(f"Cannot read run config {path}: {e}")
    except json.JSONDecodeError as e:
        raise ValidationException(f"Run config {path} is not valid JSON: {e}")
    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        raise ValidationException(f"Invalid run config {path}", details={"errors": _errors(e)})


def resolve_command(command: str) -> Tuple[Type[BaseModel], Handler]:
    """Request model and bound use-case method of a command.

    Raises:
        ValidationException: If the command is unknown
    """
    if command not in COMMANDS:
        raise ValidationException(
            f"Unknown command '{command}'", details={"known": sorted(COMMANDS)}
        )
    module, request, usecase, method = COMMANDS[command]
    schemas = importlib.import_module(f"qwalk_geophase.modules.{module}.schemas")
    usecases = importlib.import_module(f"qwalk_geophase.modules.{module}.usecase")
    return getattr(schemas, request), getattr(getattr(usecases, usecase)(), method)


def resolve_request(
    model: Type[BaseModel], command: str, config: RunConfig, flags: Dict[str, Any]
) -> BaseModel:
    """Merge file parameters, grid sizes and non-empty flags into a request.

    Raises:
        ValidationException: If the file targets another command or the
            merged parameters do not validate
    """
    if config.command is not None and config.command != command:
        raise ValidationException(
            f"Run config is for '{config.command}', not '{command}'"
        )
    merged = {**config.params, **config.grids}
    merged.update({k: v for k, v in flags.items() if v is not None})
    try:
        return model.model_validate(merged)
    except ValidationError as e:
        raise ValidationException(
            f"Invalid parameters for '{command}': " + "; ".join(_errors(e)),
            details={"errors": _errors(e)},
        )


def list_recipes() -> List[str]:
    """Names of the shipped figure-reproduction recipes."""
    return sorted(p.stem for p in RECIPES_DIR.glob("*.json"))


def recipe_path(name: str) -> Path:
    """Path of a shipped recipe, or ``name`` itself if it is an existing file.

    Raises:
        ValidationException: If neither exists
    """
    candidate = Path(name)
    if candidate.is_file():
        return candidate
    shipped = RECIPES_DIR / f"{name}.json"
    if shipped.is_file():
        return shipped
    raise ValidationException(
        f"No recipe or config file named '{name}'", details={"recipes": list_recipes()}
    )
