"""Names for the catalog modules R_d(a,b,c), E_d(a,b,c)^eps and O_d(a,b,c)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError
from .rational import Rat, format_rat, rat

TWISTS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def parse_twist(text: str) -> tuple[int, int]:
    try:
        e1, e2 = (int(s) for s in text.split(","))
    except ValueError:
        raise DomainError(f"twist must look like '1,-1', got {text!r}") from None
    if (e1, e2) not in TWISTS:
        raise DomainError(f"twist entries must be +-1, got {text!r}")
    return e1, e2


@dataclass(frozen=True)
class ModuleSpec:
    family: str
    d: int
    a: Rat
    b: Rat
    c: Rat
    twist: tuple = field(default=(1, 1))

    def __post_init__(self):
        if self.family not in ("R", "E", "O"):
            raise DomainError(f"unknown family {self.family!r}")
        if not isinstance(self.d, int) or self.d < 0:
            raise DomainError("d must be a nonnegative integer")
        if self.family == "E" and self.d % 2 == 0:
            raise DomainError(f"E_d needs odd d, got {self.d}")
        if self.family == "O" and self.d % 2 == 1:
            raise DomainError(f"O_d needs even d, got {self.d}")
        tw = tuple(self.twist)
        if tw not in TWISTS:
            raise DomainError(f"bad twist {self.twist!r}")
        if self.family != "E" and tw != (1, 1):
            raise DomainError("twists only label E_d modules")
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        object.__setattr__(self, "twist", tw)

    @property
    def dim(self) -> int:
        return self.d + 1

    @property
    def params(self) -> tuple:
        return self.a, self.b, self.c

    def untwisted(self) -> "ModuleSpec":
        return ModuleSpec(self.family, self.d, self.a, self.b, self.c)

    def key(self) -> str:
        body = f"{self.family}{self.d}({format_rat(self.a)},{format_rat(self.b)},{format_rat(self.c)})"
        if self.twist != (1, 1):
            body += "^({},{})".format(*self.twist)
        return body

    __str__ = key

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "d": self.d,
            "a": format_rat(self.a),
            "b": format_rat(self.b),
            "c": format_rat(self.c),
            "twist": list(self.twist),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ModuleSpec":
        return cls(
            data["family"],
            int(data["d"]),
            rat(str(data["a"])),
            rat(str(data["b"])),
            rat(str(data["c"])),
            tuple(data.get("twist", (1, 1))),
        )


def descending(upper, lower) -> set:
    """``{upper, upper-2, ..., lower}``; empty when ``upper < lower``."""
    upper, lower = rat(upper), rat(lower)
    out = set()
    x = upper
    while x >= lower:
        out.add(x)
        x -= 2
    return out
