"""The universal Racah algebra, checked on concrete representations.

A representation is four square matrices ``A, B, C, D``.  The defining
relations are ``[A,B] = [B,C] = [C,A] = 2D`` together with centrality of

    alpha = [A,D] + AC - BA,   beta = [B,D] + BA - CB,   gamma = [C,D] + CB - AC.

``delta = A + B + C`` is then central as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .catalog import ModuleSpec
from .errors import DimensionError, NotARepresentation
from .linalg import MatQ, commutator
from .rational import Rat

LETTERS = ("A", "B", "C")


@dataclass(frozen=True)
class RacahRep:
    dim: int
    A: MatQ
    B: MatQ
    C: MatQ
    D: MatQ
    meta: Optional[ModuleSpec] = None

    def __post_init__(self):
        for name in ("A", "B", "C", "D"):
            m = getattr(self, name)
            if m.shape != (self.dim, self.dim):
                raise DimensionError(f"{name} has shape {m.shape}, expected {self.dim}x{self.dim}")

    @classmethod
    def from_abc(cls, A: MatQ, B: MatQ, C: MatQ, meta=None) -> "RacahRep":
        """Fill in ``D = [A,B]/2``."""
        return cls(A.rows, A, B, C, commutator(A, B) / 2, meta)

    def generators(self) -> dict:
        return {"A": self.A, "B": self.B, "C": self.C}

    def matrix(self, letter: str) -> MatQ:
        return getattr(self, letter)


class RelationReport(NamedTuple):
    ok: bool
    failures: list


def _central_elements(A, B, C, D):
    alpha = commutator(A, D) + A @ C - B @ A
    beta = commutator(B, D) + B @ A - C @ B
    gamma = commutator(C, D) + C @ B - A @ C
    return alpha, beta, gamma


def verify_racah_relations(rep: RacahRep) -> RelationReport:
    A, B, C, D = rep.A, rep.B, rep.C, rep.D
    twoD = D * 2
    failures = []
    for name, X, Y in (("[A,B]=2D", A, B), ("[B,C]=2D", B, C), ("[C,A]=2D", C, A)):
        if commutator(X, Y) != twoD:
            failures.append(name)
    gens = {"A": A, "B": B, "C": C, "D": D}
    for zname, Z in zip(("alpha", "beta", "gamma"), _central_elements(A, B, C, D)):
        for gname, G in gens.items():
            if not commutator(Z, G).is_zero():
                failures.append(f"{zname}-central-{gname}")
    return RelationReport(not failures, failures)


@dataclass(frozen=True)
class CentralData:
    alpha: MatQ
    beta: MatQ
    gamma: MatQ
    delta: MatQ
    alpha_scalar: Optional[Rat] = None
    beta_scalar: Optional[Rat] = None
    gamma_scalar: Optional[Rat] = None
    delta_scalar: Optional[Rat] = None


def derived_relations(rep: RacahRep) -> dict:
    """The six cubic identities obtained by eliminating one generator and
    ``D`` from the definitions of alpha, beta, gamma.

    Returns ``{identifier: holds}``.
    """
    A, B, C, D = rep.A, rep.B, rep.C, rep.D
    alpha, beta, gamma = _central_elements(A, B, C, D)
    delta = A + B + C

    def lhs(X, Y):
        # X^2 Y - 2 XYX + Y X^2 - 2 XY - 2 YX
        XY, YX = X @ Y, Y @ X
        return X @ XY - (X @ YX) * 2 + YX @ X - XY * 2 - YX * 2

    def rhs(X, Z, sign):
        return (X @ X) * 2 - (X @ delta) * 2 + Z * (2 * sign)

    checks = {
        "derived-(AB)": (A, B, alpha, 1),
        "derived-(BA)": (B, A, beta, -1),
        "derived-(AC)": (A, C, alpha, -1),
        "derived-(CA)": (C, A, gamma, 1),
        "derived-(BC)": (B, C, beta, 1),
        "derived-(CB)": (C, B, gamma, -1),
    }
    out = {}
    for name, (X, Y, Z, sign) in checks.items():
        out[name] = lhs(X, Y) == rhs(X, Z, sign)
    return out


def central_data(rep: RacahRep) -> CentralData:
    """alpha, beta, gamma, delta as matrices, plus their scalar values when
    they are multiples of the identity.

    Raises :class:`NotARepresentation` if one of the six identities from
    :func:`derived_relations` fails.
    """
    bad = [name for name, ok in derived_relations(rep).items() if not ok]
    if bad:
        raise NotARepresentation("not a Racah-algebra representation", bad)
    alpha, beta, gamma = _central_elements(rep.A, rep.B, rep.C, rep.D)
    delta = rep.A + rep.B + rep.C
    return CentralData(
        alpha, beta, gamma, delta,
        alpha.scalar_value(), beta.scalar_value(), gamma.scalar_value(), delta.scalar_value(),
    )
