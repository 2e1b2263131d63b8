"""Parsing of sweep grids given on the command line.

Accepted forms, for integers and reals alike::

    0.5                 a single value
    0.5,0.7,0.9         a comma separated list
    2:16384:x2          geometric, start times 2 until stop
    0.5:0.99:0.05       arithmetic, stop always included
"""

import math

import click

# decimal digits kept when generating arithmetic grids
GRID_DIGITS = 12


def _parse_number(text: str, integer: bool) -> float | int:
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f"grid values must be finite, got {text!r}")
    if integer:
        if value != int(value):
            raise ValueError(f"expected an integer, got {text!r}")
        return int(value)
    return value


def expand_grid(spec: str, integer: bool = False) -> list[float] | list[int]:
    """Expand a grid specification into its values.

    Parameters
    ----------
    spec : str
        Grid string; see the module docstring.
    integer : bool
        Whether every value must be an integer.

    Returns
    -------
    list
        Values in increasing order of generation, duplicates removed.

    Raises
    ------
    ValueError
        If the specification is malformed or empty.
    """
    spec = spec.strip()
    if not spec:
        raise ValueError("empty grid")
    if ":" not in spec:
        values = [_parse_number(part, integer) for part in spec.split(",") if part.strip()]
    else:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"range grids need start:stop:step, got {spec!r}")
        start, stop = _parse_number(parts[0], integer), _parse_number(parts[1], integer)
        if stop < start:
            raise ValueError(f"grid stop {stop} is below its start {start}")
        step = parts[2].strip()
        if step.startswith("x"):
            values = _geometric(start, stop, float(step[1:]), integer)
        else:
            values = _arithmetic(start, stop, _parse_number(step, integer), integer)
    if not values:
        raise ValueError(f"grid {spec!r} is empty")
    return list(dict.fromkeys(values))


def _geometric(start, stop, factor: float, integer: bool) -> list:
    if start <= 0 or factor <= 1:
        raise ValueError("geometric grids need a positive start and a factor above 1")
    values = []
    value = start
    while value <= stop * (1 + 1e-12):
        values.append(int(round(value)) if integer else round(value, GRID_DIGITS))
        value *= factor
    return values


def _arithmetic(start, stop, step, integer: bool) -> list:
    if step <= 0:
        raise ValueError("arithmetic grids need a positive step")
    count = math.floor((stop - start) / step + 1e-9)
    values = [start + i * step if integer else round(start + i * step, GRID_DIGITS) for i in range(count + 1)]
    if values[-1] < stop:
        values.append(stop)
    return values


class GridType(click.ParamType):
    """Click parameter type turning a grid specification into a list of values."""

    name = "grid"

    def __init__(self, integer: bool = False, minimum: float | None = None):
        self.integer = integer
        self.minimum = minimum

    def convert(self, value, param, ctx):
        if isinstance(value, list):
            return value
        try:
            values = expand_grid(str(value), integer=self.integer)
        except ValueError as e:
            self.fail(str(e), param, ctx)
        if self.minimum is not None and min(values) < self.minimum:
            self.fail(f"grid values must be at least {self.minimum}, got {min(values)}", param, ctx)
        return values


P_GRID = GridType()
INT_GRID = GridType(integer=True, minimum=1)

DEFAULT_P_GRID = "0.5:0.99:0.05"
DEFAULT_N_GRID = "2:16384:x2"
DEFAULT_M_GRID = "1:4096:x2"
DEFAULT_BUMP_P_GRID = "0.5:1.0:0.1"
