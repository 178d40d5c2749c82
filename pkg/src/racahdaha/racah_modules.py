"""The (d+1)-dimensional Racah-algebra modules R_d(a, b, c)."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .catalog import ModuleSpec
from .errors import DomainError, PreconditionError
from .linalg import MatQ, unit_vector, vec_add, vec_scale, vec_sub
from .racah import RacahRep
from .rational import ZERO, Rat, pochhammer, rat


def _theta(p: Rat, d: int, i: int) -> Rat:
    h = rat(d, 2)
    return (p + h - i) * (p + h - i + 1)


def delta_scalar_R(d: int, a, b, c) -> Rat:
    """The scalar by which delta = A+B+C acts on R_d(a,b,c)."""
    a, b, c = rat(a), rat(b), rat(c)
    h = rat(d, 2)
    return h * (h + 1) + a * (a + 1) + b * (b + 1) + c * (c + 1)


def phi(d: int, a, b, c, i: int) -> Rat:
    h = rat(d, 2)
    return i * (i - d - 1) * (a + b + c + h - i + 2) * (a + b - c + h - i + 1)


@dataclass(frozen=True)
class SpectrumTriple:
    thetaA: tuple
    thetaB: tuple
    thetaC: tuple

    def of(self, letter: str) -> tuple:
        return {"A": self.thetaA, "B": self.thetaB, "C": self.thetaC}[letter]


def _as_spec(spec_or_d, a=None, b=None, c=None) -> ModuleSpec:
    if isinstance(spec_or_d, ModuleSpec):
        spec = spec_or_d
    else:
        spec = ModuleSpec("R", spec_or_d, a, b, c)
    if spec.family != "R":
        raise DomainError(f"expected an R_d spec, got {spec.key()}")
    return spec


def build_R(d, a=None, b=None, c=None) -> RacahRep:
    """R_d(a,b,c) in the basis where A is lower bidiagonal and B upper
    bidiagonal.  Accepts either a :class:`ModuleSpec` or ``(d, a, b, c)``."""
    spec = _as_spec(d, a, b, c)
    d, (a, b, c) = spec.d, spec.params
    n = d + 1
    A = [[ZERO] * n for _ in range(n)]
    B = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = _theta(a, d, i)
        B[i][i] = _theta(b, d, i)
        if i + 1 < n:
            A[i + 1][i] = rat(1)
        if i >= 1:
            B[i - 1][i] = phi(d, a, b, c, i)
    A, B = MatQ(A), MatQ(B)
    C = MatQ.scalar(n, delta_scalar_R(d, a, b, c)) - A - B
    return RacahRep.from_abc(A, B, C, meta=spec)


def spectrum_R(spec: ModuleSpec) -> SpectrumTriple:
    spec = _as_spec(spec)
    d = spec.d
    return SpectrumTriple(*(tuple(_theta(p, d, i) for i in range(d + 1)) for p in spec.params))


def irr_criterion_R(spec: ModuleSpec) -> bool:
    spec = _as_spec(spec)
    d, (a, b, c) = spec.d, spec.params
    forbidden = {rat(d, 2) - i for i in range(1, d + 1)}
    return not ({a + b + c + 1, -a + b + c, a - b + c, a + b - c} & forbidden)


def diag_criterion_R(letter: str, spec: ModuleSpec) -> bool:
    """Closed-form test for diagonalizability of A, B or C on an irreducible R_d."""
    spec = _as_spec(spec)
    if not irr_criterion_R(spec):
        raise PreconditionError(f"{spec.key()} is reducible; the criterion does not apply")
    p = dict(zip("ABC", spec.params))[letter]
    d = spec.d
    return 2 * p not in {rat(i - d - 1) for i in range(1, 2 * d)}


@dataclass(frozen=True)
class Witness:
    basis: tuple
    verified: bool


def c_basis_witness(spec: ModuleSpec) -> Witness:
    """Basis ``w_i`` on which ``C`` acts lower bidiagonally with diagonal
    ``(c + d/2 - i)(c + d/2 - i + 1)`` and subdiagonal 1, checked exactly."""
    spec = _as_spec(spec)
    d, (a, b, c) = spec.d, spec.params
    n = d + 1
    h = rat(d, 2)
    basis = []
    for i in range(n):
        w = (ZERO,) * n
        for k in range(i + 1):
            coef = comb(i, k) * pochhammer(d - i + 1, k) * pochhammer(a + b + c + h - i + 2, k)
            w = vec_add(w, vec_scale(coef, unit_vector(n, i - k)))
        basis.append(vec_scale((-1) ** i, w))
    C = build_R(spec).C
    ok = True
    for i, w in enumerate(basis):
        lhs = vec_sub(C.apply(w), vec_scale(_theta(c, d, i), w))
        target = basis[i + 1] if i < d else (ZERO,) * n
        ok = ok and lhs == tuple(target)
    return Witness(tuple(basis), ok)

