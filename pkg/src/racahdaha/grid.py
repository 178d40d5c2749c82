"""Parameter grids for sweeps."""

from __future__ import annotations

import itertools
import json
from pathlib import Path
from typing import Iterator

from .catalog import ModuleSpec
from .errors import DomainError
from .rational import rat

# includes values landing on every criterion set at small d
BUILTIN_VALUES = ("0", "1/4", "-1/4", "1/2", "-1/2", "1", "-1", "3/2", "5/2")


def builtin_points() -> list:
    vals = [rat(v) for v in BUILTIN_VALUES]
    return list(itertools.product(vals, repeat=3))


def load_points(source: str) -> list:
    """``builtin`` or a JSON file holding ``{"values": [...]}`` (all
    triples over those values) or ``{"points": [[a, b, c], ...]}``."""
    if source == "builtin":
        return builtin_points()
    try:
        data = json.loads(Path(source).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read grid {source}: {exc}") from None
    if "points" in data:
        pts = []
        for p in data["points"]:
            if len(p) != 3:
                raise DomainError(f"grid point {p!r} does not have three coordinates")
            pts.append(tuple(rat(str(x)) for x in p))
        return pts
    if "values" in data:
        vals = [rat(str(v)) for v in data["values"]]
        return list(itertools.product(vals, repeat=3))
    raise DomainError("grid file needs a 'values' or 'points' key")


def _d_range(family: str, d_max: int) -> range:
    if family == "E":
        return range(1, d_max + 1, 2)
    if family == "O":
        return range(0, d_max + 1, 2)
    return range(0, d_max + 1)


def grid_specs(families, d_max: int, points) -> Iterator[ModuleSpec]:
    for fam in families:
        if fam not in ("R", "E", "O"):
            raise DomainError(f"unknown family {fam!r}")
        for d in _d_range(fam, d_max):
            for a, b, c in points:
                yield ModuleSpec(fam, d, a, b, c)
