"""The even-dimensional modules E_d(a,b,c) (d odd), the odd-dimensional
modules O_d(a,b,c) (d even), and closed-form facts about them."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

import gmpy2

from .catalog import ModuleSpec, descending
from .daha import DahaRep, twist, verify_daha_relations
from .errors import (
    DomainError,
    NonRationalParameters,
    NotInCatalog,
    PreconditionError,
    WitnessConstructionFailed,
)
from .linalg import Echelon, MatQ, is_zero_vector, unit_vector, vec_add, vec_scale
from .racah_modules import Witness
from .rational import ZERO, Rat, rat

PAIRS = ("01", "02", "03")


@dataclass(frozen=True)
class DerivedParams:
    sigma: Rat
    tau: Rat
    lam: Optional[Rat] = None
    mu: Optional[Rat] = None
    nu: Optional[Rat] = None


def derived_params(spec: ModuleSpec) -> DerivedParams:
    a, b, c = spec.params
    h = rat(spec.d + 1, 2)
    sigma, tau = a + b + c - h, a + b - c - h
    if spec.family == "E":
        return DerivedParams(sigma, tau)
    if spec.family == "O":
        return DerivedParams(sigma, tau, a - b - c - h, c - a - b - h, b - a - c - h)
    raise DomainError("derived parameters exist only for E and O")


def _require(spec: ModuleSpec, family: str) -> None:
    if spec.family != family:
        raise DomainError(f"expected family {family}, got {spec.key()}")


def _spec(family, d, a, b, c) -> ModuleSpec:
    if isinstance(d, ModuleSpec):
        return d
    return ModuleSpec(family, d, a, b, c)


class _Cols:
    """Column-by-column builder: ``put(j, i, x)`` sets the coefficient of
    ``v_i`` in the image of ``v_j``; indices outside ``0..d`` are dropped."""

    def __init__(self, n: int):
        self.n = n
        self.e = [[ZERO] * n for _ in range(n)]

    def put(self, j: int, i: int, x) -> None:
        if 0 <= i < self.n:
            self.e[i][j] = rat(x)

    def mat(self) -> MatQ:
        return MatQ(self.e)


def _finish(ts, spec: ModuleSpec, expected_squares) -> DahaRep:
    rep = DahaRep.of(*(t.mat() for t in ts), meta=spec)
    report = verify_daha_relations(rep)
    if not report.ok:
        raise AssertionError(f"{spec.key()} violates DAHA relations: {report.failures}")
    if report.central_scalars != tuple(expected_squares):
        raise AssertionError(f"{spec.key()} has unexpected central scalars {report.central_scalars}")
    if spec.twist != (1, 1):
        rep = twist(DahaRep.of(*rep.ts(), meta=spec.untwisted()), spec.twist)
    return rep


def build_E(d, a=None, b=None, c=None) -> DahaRep:
    """E_d(a,b,c), optionally twisted when given a spec with a twist."""
    spec = _spec("E", d, a, b, c)
    _require(spec, "E")
    d, (a, b, c) = spec.d, spec.params
    p = derived_params(spec)
    s, t = p.sigma, p.tau
    n = d + 1
    h = rat(d + 1, 2)
    t0, t1, t2, t3 = (_Cols(n) for _ in range(4))
    for i in range(n):
        st = (s + i) * (t + i)
        if i % 2 == 0:
            if i == 0:
                t0.put(0, 0, -h)
                t1.put(0, 1, 1)
            else:
                t0.put(i, i - 1, i * (d - i + 1))
                t0.put(i, i, -rat(d - 2 * i + 1, 2))
                t1.put(i, i - 1, i * (i - d - 1))
                t1.put(i, i + 1, 1)
            t1.put(i, i, a)
            t2.put(i, i, b)
            t3.put(i, i, -(s + t + 2 * i + 2) / 2)
            t3.put(i, i + 1, -1)
        else:
            if i == d:
                t0.put(i, i, -h)
            else:
                t0.put(i, i, rat(d - 2 * i - 1, 2))
                t0.put(i, i + 1, 1)
                t2.put(i, i + 1, -1)
            t1.put(i, i, -a)
            t2.put(i, i - 1, -st)
            t2.put(i, i, -b)
            t3.put(i, i - 1, st)
            t3.put(i, i, (s + t + 2 * i) / 2)
    return _finish((t0, t1, t2, t3), spec, (h * h, a * a, b * b, c * c))


def build_O(d, a=None, b=None, c=None) -> DahaRep:
    spec = _spec("O", d, a, b, c)
    _require(spec, "O")
    d = spec.d
    p = derived_params(spec)
    s, t, lam, mu, nu = p.sigma, p.tau, p.lam, p.mu, p.nu
    n = d + 1
    t0, t1, t2, t3 = (_Cols(n) for _ in range(4))
    for i in range(n):
        if i % 2 == 0:
            if i == 0:
                t0.put(0, 0, s / 2)
            else:
                t0.put(i, i - 1, -i * (s + i))
                t0.put(i, i, (s + 2 * i) / 2)
                t1.put(i, i - 1, i * (s + i))
            t1.put(i, i, lam / 2)
            t1.put(i, i + 1, 1)
            t2.put(i, i, nu / 2)
            if i == d:
                t3.put(i, i, mu / 2)
            else:
                t3.put(i, i, (2 * d + mu - 2 * i) / 2)
                t3.put(i, i + 1, -1)
        else:
            t0.put(i, i, -(s + 2 * i + 2) / 2)
            t0.put(i, i + 1, 1)
            t1.put(i, i, -lam / 2)
            t2.put(i, i - 1, (d - i + 1) * (t + i))
            t2.put(i, i, -nu / 2)
            t2.put(i, i + 1, -1)
            t3.put(i, i - 1, (i - d - 1) * (t + i))
            t3.put(i, i, -(2 * d + mu - 2 * i + 2) / 2)
    squares = tuple(x * x / 4 for x in (s, lam, nu, mu))
    return _finish((t0, t1, t2, t3), spec, squares)


def build_H(spec: ModuleSpec) -> DahaRep:
    if spec.family == "E":
        return build_E(spec)
    if spec.family == "O":
        return build_O(spec)
    raise DomainError(f"{spec.key()} is not a DAHA module")


def irr_criterion_H(spec: ModuleSpec) -> bool:
    d, (a, b, c) = spec.d, spec.params
    if spec.family == "E":
        sums = {a + b + c, -a + b + c, a - b + c, a + b - c}
        forbidden = {rat(d - 1, 2) - i for i in range(0, d, 2)}
    elif spec.family == "O":
        sums = {a + b + c, a - b - c, -a + b - c, -a - b + c}
        forbidden = {rat(d + 1, 2) - i for i in range(2, d + 1, 2)}
    else:
        raise DomainError(f"{spec.key()} is not a DAHA module")
    return not (sums & forbidden)


def _require_irreducible(spec: ModuleSpec) -> None:
    if not irr_criterion_H(spec):
        raise PreconditionError(f"{spec.key()} is reducible; the criterion does not apply")


def _pair_param(pair: str, spec: ModuleSpec) -> Rat:
    if pair not in PAIRS:
        raise DomainError(f"pair must be one of {PAIRS}, got {pair!r}")
    return spec.params[PAIRS.index(pair)]


def pm_diag_criterion(pair: str, spec: ModuleSpec) -> bool:
    """Whether ``t0 + t_k`` (k given by ``pair``) is diagonalizable on the
    untwisted module; the twist label of ``spec`` is ignored."""
    _require_irreducible(spec)
    d = spec.d
    return 2 * _pair_param(pair, spec) not in descending(d - 1, 1 - d)


def _sqrt_nonneg(x: Rat) -> Rat:
    num, den = gmpy2.mpz(x.numerator), gmpy2.mpz(x.denominator)
    if x < 0 or not (gmpy2.is_square(num) and gmpy2.is_square(den)):
        raise NonRationalParameters(f"{x} has no rational square root")
    return gmpy2.mpq(gmpy2.isqrt(num), gmpy2.isqrt(den))


def classify_H(rep: DahaRep) -> ModuleSpec:
    """Identify an irreducible DAHA module with a catalog entry.

    Even dimension: the twist is the unique ``eps`` for which ``t0`` has
    trace ``-dim`` on the twisted module, and ``a, b, c`` are the
    nonnegative square roots of the ``t1^2, t2^2, t3^2`` scalars there.
    Odd dimension: ``a, b, c`` are the traces of ``t0 + t_k + 1/2``.
    """
    from .engine import brute_irreducible

    if not brute_irreducible(rep):
        raise PreconditionError("classify_H needs an irreducible module")
    n = rep.dim
    d = n - 1
    if n % 2 == 0:
        from .catalog import TWISTS

        hits = [eps for eps in TWISTS if twist(rep, eps).t0.trace() == -n]
        if len(hits) != 1:
            raise NotInCatalog(f"{len(hits)} twists give t0 trace {-n}")
        eps = hits[0]
        scalars = verify_daha_relations(twist(rep, eps)).central_scalars
        if scalars is None:
            raise NotInCatalog("the squares of the generators are not scalar")
        a, b, c = (_sqrt_nonneg(x) for x in scalars[1:])
        return ModuleSpec("E", d, a, b, c, eps)
    half = MatQ.scalar(n, rat(1, 2))
    a, b, c = ((rep.t0 + tk + half).trace() for tk in (rep.t1, rep.t2, rep.t3))
    return ModuleSpec("O", d, a, b, c)


def _shift(pair_param: Rat, d: int, i: int) -> Rat:
    return (-1) ** i * (rat(d, 2) - pair_param - i) + rat(1, 2)


def _chain(X: MatQ, w0, p: Rat, d: int) -> list:
    ws = [tuple(w0)]
    for i in range(d + 1):
        w = ws[-1]
        ws.append(vec_add(X.apply(w), vec_scale(_shift(p, d, i), w)))
    return ws


def _candidates(n: int):
    for i in range(n):
        yield unit_vector(n, i)
    rng = random.Random(n)
    for _ in range(32):
        yield tuple(rat(rng.randint(-5, 5)) for _ in range(n))


def special_basis_witness(pair: str, spec: ModuleSpec) -> Witness:
    """A basis ``w_0..w_d`` with ``(t0 + t_k + c_i) w_i = w_{i+1}`` and
    ``w_{d+1} = 0`` for the untwisted module; ``c_i`` is the affine shift
    attached to the pair parameter."""
    p = _pair_param(pair, spec)
    if pair != "01":
        _require_irreducible(spec)
    spec = spec.untwisted()
    rep = build_H(spec)
    d, n = spec.d, spec.dim
    k = int(pair[1])
    X = rep.t0 + rep.ts()[k]
    cands = [unit_vector(n, 0)] if pair == "01" else _candidates(n)
    for w0 in cands:
        ws = _chain(X, w0, p, d)
        ech = Echelon(n)
        if all(ech.add(w) is not None for w in ws[:n]):
            return Witness(tuple(ws[:n]), is_zero_vector(ws[n]))
    raise WitnessConstructionFailed(f"no cyclic start vector found for pair {pair} on {spec.key()}")


@dataclass(frozen=True)
class AnnihilatorReport:
    full_product_kills: bool
    partial_products_nonzero: bool


def annihilator_check(spec: ModuleSpec) -> AnnihilatorReport:
    """On the untwisted module: the product of all ``d+1`` affine factors of
    ``t0 + t1`` kills ``v_0``; omitting any one factor does not."""
    spec = spec.untwisted()
    rep = build_H(spec)
    d, n = spec.d, spec.dim
    X = rep.t0 + rep.t1
    a = spec.a

    def product(skip: Optional[int]):
        w = unit_vector(n, 0)
        for i in range(d + 1):
            if i != skip:
                w = vec_add(X.apply(w), vec_scale(_shift(a, d, i), w))
        return w

    full = is_zero_vector(product(None))
    partial = all(not is_zero_vector(product(j)) for j in range(d + 1))
    return AnnihilatorReport(full, partial)


@dataclass(frozen=True)
class FactorPrediction:
    factors: tuple  # ModuleSpec entries of family R
    completeness: str  # "exact" or "classes-only"

    @property
    def dims(self) -> tuple:
        return tuple(f.dim for f in self.factors)


def _R(d: int, a, b, c) -> ModuleSpec:
    return ModuleSpec("R", d, a, b, c)


def predicted_factors(spec: ModuleSpec) -> FactorPrediction:
    """Composition factors of the restriction to the Racah algebra."""
    _require_irreducible(spec)
    d, (a, b, c) = spec.d, spec.params
    if spec.family == "E":
        base = [-(a + 1) / 2, -(b + 1) / 2, -(c + 1) / 2]
        if spec.twist == (1, 1):
            if d == 1:
                return FactorPrediction((_R(1, *base),), "exact")
            fs = (_R((d + 1) // 2, *base), _R((d - 3) // 2, *base))
            return FactorPrediction(fs, "exact")
        k = {(1, -1): 0, (-1, 1): 1, (-1, -1): 2}[spec.twist]
        lo, hi = list(base), list(base)
        lo[k] = -spec.params[k] / 2
        hi[k] = -spec.params[k] / 2 - 1
        m = (d - 1) // 2
        return FactorPrediction((_R(m, *lo), _R(m, *hi)), "exact")
    quarter = [-x / 2 - rat(1, 4) for x in (a, b, c)]
    three_q = [-x / 2 - rat(3, 4) for x in (a, b, c)]
    if d == 0:
        return FactorPrediction((_R(0, *quarter),), "exact")
    if a + b + c == rat(d + 1, 2):
        edge = _R(0, -(b + c + 1) / 2, -(a + c + 1) / 2, -(a + b + 1) / 2)
        return FactorPrediction((_R(d // 2 - 1, *three_q), edge), "classes-only")
    return FactorPrediction((_R(d // 2, *quarter), _R(d // 2 - 1, *three_q)), "exact")


def factor_forbidden_set(letter: str, spec: ModuleSpec) -> set:
    d = spec.d
    full, short = descending(d - 1, 1 - d), descending(d - 3, 3 - d)
    if spec.family == "E":
        keep = {(1, 1): "ABC", (1, -1): "A", (-1, 1): "B", (-1, -1): "C"}[spec.twist]
        return full if letter in keep else short
    a, b, c = spec.params
    if a + b + c == rat(d + 1, 2):
        return descending(d - 5, 3 - d)
    return descending(d - 1, 3 - d)


def factor_mf_criterion(letter: str, spec: ModuleSpec) -> bool:
    """Whether ``letter`` is multiplicity-free on every composition factor
    of the restriction of ``spec`` to the Racah algebra."""
    _require_irreducible(spec)
    if letter not in "ABC" or len(letter) != 1:
        raise DomainError(f"letter must be A, B or C, got {letter!r}")
    p = spec.params["ABC".index(letter)]
    return 2 * p not in factor_forbidden_set(letter, spec)
