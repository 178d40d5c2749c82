"""JSON representation files.

::

    {"kind": "racah" | "daha", "dim": n, "convention": "column-action",
     "matrices": {"A": [["3/4", "0"], ["1", "-1/4"]], ...},
     "meta": {"family": "R", "d": 1, "a": "0", ...}}

Racah files carry ``A, B, C`` and optionally ``D``; DAHA files carry
``t0..t3``.  Every entry is a rational literal ``[-]p/q``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .catalog import ModuleSpec
from .daha import GENERATORS, DahaRep
from .errors import DimensionError, DomainError
from .linalg import MatQ
from .racah import RacahRep
from .rational import parse_rat

CONVENTION = "column-action"

Rep = Union[RacahRep, DahaRep]


def rep_to_dict(rep: Rep) -> dict:
    if isinstance(rep, RacahRep):
        kind, mats = "racah", {k: getattr(rep, k) for k in "ABCD"}
    elif isinstance(rep, DahaRep):
        kind, mats = "daha", rep.generators()
    else:
        raise TypeError(f"cannot serialize {type(rep).__name__}")
    out = {
        "kind": kind,
        "dim": rep.dim,
        "convention": CONVENTION,
        "matrices": {k: m.to_strings() for k, m in mats.items()},
    }
    if rep.meta is not None:
        out["meta"] = rep.meta.to_dict()
    return out


def _matrix(name: str, rows, dim: int) -> MatQ:
    if not isinstance(rows, list) or len(rows) != dim or any(
        not isinstance(r, list) or len(r) != dim for r in rows
    ):
        raise DimensionError(f"matrix {name} is not {dim}x{dim}")
    for r in rows:
        for x in r:
            if not isinstance(x, str):
                raise DomainError(f"matrix {name} has a non-string entry {x!r}")
    return MatQ([[parse_rat(x) for x in r] for r in rows])


def rep_from_dict(data: dict) -> Rep:
    try:
        kind, dim, mats = data["kind"], int(data["dim"]), data["matrices"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed representation file: {exc}") from None
    if data.get("convention", CONVENTION) != CONVENTION:
        raise DomainError(f"unsupported convention {data['convention']!r}")
    meta = ModuleSpec.from_dict(data["meta"]) if data.get("meta") else None
    if kind == "racah":
        missing = [k for k in "ABC" if k not in mats]
        if missing:
            raise DomainError(f"racah file lacks matrices {missing}")
        A, B, C = (_matrix(k, mats[k], dim) for k in "ABC")
        if "D" in mats:
            return RacahRep(dim, A, B, C, _matrix("D", mats["D"], dim), meta)
        return RacahRep.from_abc(A, B, C, meta)
    if kind == "daha":
        missing = [k for k in GENERATORS if k not in mats]
        if missing:
            raise DomainError(f"daha file lacks matrices {missing}")
        return DahaRep(dim, *(_matrix(k, mats[k], dim) for k in GENERATORS), meta=meta)
    raise DomainError(f"unknown representation kind {kind!r}")


def write_rep(rep: Rep, path) -> None:
    Path(path).write_text(json.dumps(rep_to_dict(rep), indent=1, sort_keys=True) + "\n")


def read_rep(path) -> Rep:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: not JSON ({exc})") from None
    return rep_from_dict(data)
