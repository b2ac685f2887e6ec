"""
Angle utility functions.
"""

import math
import re
from typing import Annotated, Any, List, Union

from pydantic import BeforeValidator

from ..exceptions import ValidationException

# "7pi/6", "-3pi/8", "pi", "2*pi/3", "pi/4", "-pi"
_PI_PATTERN = re.compile(
    r"^\s*(?P<sign>[+-]?)\s*(?P<num>\d+(?:\.\d*)?)?\s*\*?\s*pi"
    r"\s*(?:/\s*(?P<den>\d+(?:\.\d*)?))?\s*$",
    re.IGNORECASE,
)


def parse_angle(value: Union[str, float, int]) -> float:
    """Parse an angle given in radians or as a rational multiple of pi.

    Args:
        value: Number, numeric string, or string such as "7pi/6"

    Returns:
        Angle in radians

    Raises:
        ValidationException: If the value cannot be parsed
    """
    if isinstance(value, (int, float)):
        return float(value)

    text = str(value).strip().replace("π", "pi")
    match = _PI_PATTERN.match(text)
    if match:
        num = float(match.group("num")) if match.group("num") else 1.0
        den = float(match.group("den")) if match.group("den") else 1.0
        if den == 0.0:
            raise ValidationException(f"Zero denominator in angle '{value}'")
        sign = -1.0 if match.group("sign") == "-" else 1.0
        return sign * num * math.pi / den

    try:
        return float(text)
    except ValueError:
        raise ValidationException(f"Cannot parse angle '{value}'")


def wrap_phase(phase: float) -> float:
    """Map a phase onto the principal branch (-pi, pi]."""
    wrapped = math.remainder(phase, 2.0 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2.0 * math.pi
    return wrapped


def phase_distance(a: float, b: float, period: float = 2.0 * math.pi) -> float:
    """Distance between two phases modulo ``period``."""
    d = math.remainder(a - b, period)
    return abs(d)


def parse_angles(value: Union[str, float, int, List]) -> List[float]:
    """Parse a list of angles, or a comma-separated string of angles."""
    if isinstance(value, str):
        value = [v for v in value.split(",") if v.strip()]
    elif not isinstance(value, (list, tuple)):
        value = [value]
    return [parse_angle(v) for v in value]


# Angle field accepting radians or "7pi/6"
Angle = Annotated[float, BeforeValidator(parse_angle)]
AngleList = Annotated[List[float], BeforeValidator(parse_angles)]


def split_list(value: Any) -> Any:
    """Split a comma-separated string into items; other values pass through."""
    if isinstance(value, str):
        return [v.strip() for v in value.split(",") if v.strip()]
    return value


FloatList = Annotated[List[float], BeforeValidator(split_list)]
