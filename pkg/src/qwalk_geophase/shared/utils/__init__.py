"""
Shared utility functions.
"""

from .angle_utils import (
    Angle,
    AngleList,
    FloatList,
    parse_angle,
    parse_angles,
    phase_distance,
    split_list,
    wrap_phase,
)
from .export_utils import (
    RunManifest,
    RunOutcome,
    export_run,
    format_value,
    write_csv,
    write_manifest,
)

__all__ = [
    "Angle",
    "AngleList",
    "FloatList",
    "RunManifest",
    "RunOutcome",
    "export_run",
    "format_value",
    "parse_angle",
    "parse_angles",
    "phase_distance",
    "split_list",
    "wrap_phase",
    "write_csv",
    "write_manifest",
]
