"""The universal additive DAHA of type (C1v, C1) on concrete matrices.

Generators ``t0..t3`` satisfy ``t0 + t1 + t2 + t3 = -1`` and each ``ti^2``
is central.  The homomorphism from the Racah algebra sends

    A -> ((t0+t1)^2 - 1)/4,  B -> ((t0+t2)^2 - 1)/4,  C -> ((t0+t3)^2 - 1)/4.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

from .catalog import TWISTS, ModuleSpec
from .errors import DimensionError, DomainError
from .linalg import MatQ, commutator
from .racah import RacahRep, verify_racah_relations

GENERATORS = ("t0", "t1", "t2", "t3")

# index permutation induced by each element of {+-1}^2
_TWIST_PERM = {
    (1, 1): (0, 1, 2, 3),
    (1, -1): (1, 0, 3, 2),
    (-1, 1): (2, 3, 0, 1),
    (-1, -1): (3, 2, 1, 0),
}


@dataclass(frozen=True)
class DahaRep:
    dim: int
    t0: MatQ
    t1: MatQ
    t2: MatQ
    t3: MatQ
    meta: Optional[ModuleSpec] = None

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionError("a DAHA representation needs dim >= 1")
        for name in GENERATORS:
            m = getattr(self, name)
            if m.shape != (self.dim, self.dim):
                raise DimensionError(f"{name} has shape {m.shape}, expected {self.dim}x{self.dim}")

    @classmethod
    def of(cls, t0: MatQ, t1: MatQ, t2: MatQ, t3: MatQ, meta=None) -> "DahaRep":
        return cls(t0.rows, t0, t1, t2, t3, meta)

    def ts(self) -> tuple:
        return self.t0, self.t1, self.t2, self.t3

    def generators(self) -> dict:
        return dict(zip(GENERATORS, self.ts()))

    def matrix(self, name: str) -> MatQ:
        return getattr(self, name)


class DahaReport(NamedTuple):
    ok: bool
    failures: list
    central_scalars: Optional[tuple]


def verify_daha_relations(rep: DahaRep) -> DahaReport:
    ts = rep.ts()
    failures = []
    total = ts[0] + ts[1] + ts[2] + ts[3]
    if total != MatQ.scalar(rep.dim, -1):
        failures.append("sum=-1")
    squares = [t @ t for t in ts]
    for i, sq in enumerate(squares):
        for j, t in enumerate(ts):
            if not commutator(sq, t).is_zero():
                failures.append(f"t{i}^2-central-t{j}")
    scalars = tuple(sq.scalar_value() for sq in squares)
    if any(s is None for s in scalars):
        scalars = None
    return DahaReport(not failures, failures, scalars)


def twist(rep: DahaRep, eps) -> DahaRep:
    """Relabel the generators by the permutation attached to ``eps``."""
    eps = tuple(eps)
    if eps not in TWISTS:
        raise DomainError(f"bad twist {eps!r}")
    ts = rep.ts()
    perm = _TWIST_PERM[eps]
    meta = rep.meta
    if meta is not None and meta.family == "E":
        composed = (meta.twist[0] * eps[0], meta.twist[1] * eps[1])
        meta = replace(meta, twist=composed)
    elif eps != (1, 1):
        meta = None
    return DahaRep(rep.dim, *(ts[k] for k in perm), meta=meta)


def pullback_abc(rep: DahaRep) -> tuple[MatQ, MatQ, MatQ]:
    t0, t1, t2, t3 = rep.ts()
    one = MatQ.identity(rep.dim)

    def image(s: MatQ) -> MatQ:
        return (s @ s - one) / 4

    return image(t0 + t1), image(t0 + t2), image(t0 + t3)


def zeta_pullback(rep: DahaRep) -> RacahRep:
    """Restrict a DAHA module to the Racah algebra.

    Asserts the image of ``delta`` and the Racah relations exactly; either
    failing means the input was not a DAHA module or something upstream is
    broken.
    """
    A, B, C = pullback_abc(rep)
    t0 = rep.t0
    squares = sum((t @ t for t in rep.ts()[1:]), t0 @ t0)
    expected_delta = squares / 4 - t0 / 2 - MatQ.scalar(rep.dim, 3) / 4
    if A + B + C != expected_delta:
        raise AssertionError("image of delta does not match the pulled-back A+B+C")
    out = RacahRep.from_abc(A, B, C, meta=rep.meta)
    report = verify_racah_relations(out)
    if not report.ok:
        raise AssertionError(f"pullback violates Racah relations: {report.failures}")
    return out
