"""Module theory over Q for matrix representations: spinning, submodule
search, irreducibility, composition series and Leonard pair/triple tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .daha import DahaRep
from .errors import DimensionError, DomainError, Inconclusive, NonRationalSpectrum
from .linalg import (
    Echelon,
    MatQ,
    SubspaceBasis,
    change_of_basis,
    diagonalizability,
    eigenspace,
    is_irreducible_tridiagonal,
    kernel,
    unit_vector,
    vec_add,
    vec_scale,
)
from .parametric import parametric_spin
from .racah import RacahRep
from .racah_modules import delta_scalar_R, spectrum_R
from .rational import Rat, rat, rational_roots

RACAH_PIVOTS = ("A", "B", "C", "A+B", "B+C", "A+C")
DAHA_PIVOTS = ("t0+t1", "t0+t2", "t0+t3", "t1+t2", "t1+t3", "t2+t3", "t0", "t1", "t2", "t3")


@dataclass(frozen=True)
class GeneratorSet:
    dim: int
    generators: tuple  # ((name, MatQ), ...)
    kind: str = "generic"  # "racah", "daha" or "generic"

    def __post_init__(self):
        for name, m in self.generators:
            if m.shape != (self.dim, self.dim):
                raise DimensionError(f"generator {name} has shape {m.shape}, expected {self.dim}x{self.dim}")

    @classmethod
    def of(cls, source: Union["GeneratorSet", RacahRep, DahaRep]) -> "GeneratorSet":
        if isinstance(source, GeneratorSet):
            return source
        if isinstance(source, RacahRep):
            return cls(source.dim, tuple(source.generators().items()), "racah")
        if isinstance(source, DahaRep):
            return cls(source.dim, tuple(source.generators().items()), "daha")
        raise TypeError(f"cannot take generators of {type(source).__name__}")

    @property
    def names(self) -> tuple:
        return tuple(name for name, _ in self.generators)

    def matrices(self) -> list:
        return [m for _, m in self.generators]

    def element(self, name: str) -> MatQ:
        """A generator, or a ``+``-joined sum of generators such as ``t0+t1``."""
        table = dict(self.generators)
        parts = name.split("+")
        try:
            out = table[parts[0]]
            for p in parts[1:]:
                out = out + table[p]
        except KeyError:
            raise DomainError(f"unknown generator in {name!r}") from None
        return out

    def transposed(self) -> "GeneratorSet":
        return GeneratorSet(self.dim, tuple((k, m.T) for k, m in self.generators), self.kind)

    def default_pivots(self) -> tuple:
        if self.kind == "racah":
            return RACAH_PIVOTS
        if self.kind == "daha":
            return DAHA_PIVOTS
        return self.names


def spin(seed: Iterable[Sequence], gens) -> SubspaceBasis:
    """Smallest subspace containing ``seed`` and invariant under ``gens``."""
    gens = GeneratorSet.of(gens)
    mats = gens.matrices()
    ech = Echelon(gens.dim)
    queue = []
    for v in seed:
        if len(v) != gens.dim:
            raise DimensionError("seed vector has the wrong length")
        w = ech.add(v)
        if w is not None:
            queue.append(w)
    while queue and len(ech) < gens.dim:
        w = queue.pop()
        for M in mats:
            x = ech.add(M.apply(w))
            if x is not None:
                queue.append(x)
    if len(ech) == gens.dim:
        return SubspaceBasis.full(gens.dim)
    return ech.basis()


def annihilator(space: SubspaceBasis) -> SubspaceBasis:
    """``{v : s . v = 0 for every s in space}``."""
    n = space.ambient_dim
    if not space.dim:
        return SubspaceBasis.full(n)
    return kernel(MatQ(space.vectors))


def _rational_eigen(M: MatQ) -> list:
    """``[(eigenvalue, eigenspace)]`` for the rational eigenvalues of ``M``,
    smallest geometric multiplicity first."""
    roots = rational_roots_of(M)
    out = [(lam, eigenspace(M, lam)) for lam in sorted(set(roots))]
    out.sort(key=lambda pair: pair[1].dim)
    return out


def rational_roots_of(M: MatQ) -> tuple:
    return diagonalizability(M).spectrum


# -- eigenvector probes -----------------------------------------------------


@dataclass(frozen=True)
class _Probe:
    proper: tuple  # proper submodules found, as SubspaceBasis
    locus: Optional[object]  # PolyQ from a two-dimensional eigenspace
    extension_only: bool  # some eigenvector over an extension spins properly


def _probe_eigenspace(E: SubspaceBasis, gens: GeneratorSet) -> _Probe:
    """Spin every eigenvector in ``E`` (dimension one or two), exactly."""
    n = gens.dim
    if E.dim == 1:
        S = spin(E.vectors, gens)
        return _Probe((S,) if S.dim < n else (), None, False)
    if E.dim != 2:
        raise ValueError("exact probing covers eigenspaces of dimension one or two")
    u, v = E.vectors
    found = []
    Sv = spin([v], gens)
    if Sv.dim < n:
        found.append(Sv)
    par = parametric_spin(u, v, gens.matrices())
    if par.locus is None:
        found.append(spin([u], gens))
        return _Probe(tuple(found), None, False)
    locus = par.locus
    extension = False
    if locus.degree >= 1:
        roots = rational_roots(locus)
        for t in sorted(set(roots.roots)):
            S = spin([vec_add(u, vec_scale(t, v))], gens)
            found.append(S)
        extension = not roots.splits
    return _Probe(tuple(found), locus, extension)


def _dual_probe(X: MatQ, lam: Rat, gens: GeneratorSet) -> Optional[SubspaceBasis]:
    """A proper submodule obtained from one eigenvector of the transposed
    pivot, or ``None`` when that eigenvector spins to the whole dual."""
    Et = eigenspace(X.T, lam)
    S = spin(Et.vectors[:1], gens.transposed())
    if S.dim == gens.dim:
        return None
    return annihilator(S)


class _Verdict:
    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"
    EXTENSION = "extension"  # reducible, but no rational submodule seen
    UNKNOWN = "unknown"


def _norton(gens: GeneratorSet, pivot: str) -> tuple[str, Optional[SubspaceBasis]]:
    """Decide irreducibility over the algebraic closure from one rational
    eigenvalue of ``pivot`` whose eigenspace has dimension at most two.

    A proper submodule either meets the eigenspace, so one of its
    eigenvectors spins properly, or lies in the image of ``pivot - lam``,
    so its annihilator contains the whole transposed eigenspace.
    """
    X = gens.element(pivot)
    eig = _rational_eigen(X)
    if not eig or eig[0][1].dim > 2:
        return _Verdict.UNKNOWN, None
    lam, E = eig[0]
    probe = _probe_eigenspace(E, gens)
    if probe.proper:
        return _Verdict.REDUCIBLE, min(probe.proper, key=lambda s: s.dim)
    W = _dual_probe(X, lam, gens)
    if W is not None:
        return _Verdict.REDUCIBLE, W
    if probe.extension_only:
        return _Verdict.EXTENSION, None
    return _Verdict.IRREDUCIBLE, None


def _pivot_order(gens: GeneratorSet, pivot: Optional[str]) -> list:
    order = list(gens.default_pivots())
    if pivot is not None:
        if pivot in order:
            order.remove(pivot)
        order.insert(0, pivot)
    return order


def find_submodule(gens, pivot: Optional[str] = None) -> Optional[SubspaceBasis]:
    """Some proper nonzero invariant subspace defined over Q, or ``None``
    when the module is irreducible.  Raises :class:`Inconclusive` if no
    pivot decides, or if the only submodules need a field extension."""
    gens = GeneratorSet.of(gens)
    if gens.dim == 1:
        return None
    extension = False
    for name in _pivot_order(gens, pivot):
        verdict, W = _norton(gens, name)
        if verdict == _Verdict.REDUCIBLE:
            return W
        if verdict == _Verdict.IRREDUCIBLE:
            return None
        extension = extension or verdict == _Verdict.EXTENSION
    if extension:
        raise Inconclusive("reducible only over an extension of Q")
    raise Inconclusive("no pivot has a rational eigenvalue with an eigenspace of dimension <= 2")


def brute_irreducible(gens, pivot: Optional[str] = None) -> bool:
    """Irreducibility over the algebraic closure, decided by exact search.

    Pivots default to ``t0+t1`` first for DAHA modules and ``A`` first for
    Racah modules; the others are tried in turn when a pivot has no
    rational eigenvalue with a small eigenspace.
    """
    gens = GeneratorSet.of(gens)
    if gens.dim == 1:
        return True
    for name in _pivot_order(gens, pivot):
        verdict, _ = _norton(gens, name)
        if verdict == _Verdict.IRREDUCIBLE:
            return True
        if verdict in (_Verdict.REDUCIBLE, _Verdict.EXTENSION):
            return False
    raise Inconclusive("no pivot decides irreducibility")


@dataclass(frozen=True)
class MinimalSubmodules:
    submodules: tuple
    soundness: str  # "complete" or "sound-only"
    loci: tuple  # ((eigenvalue, PolyQ), ...) from two-dimensional eigenspaces

    @property
    def locus(self):
        return self.loci[0][1] if len(self.loci) == 1 else None


def _inclusion_minimal(spaces: Iterable[SubspaceBasis]) -> tuple:
    uniq = []
    for s in sorted(set(spaces), key=lambda s: (s.dim, s.vectors)):
        if not any(t.dim < s.dim and s.contains_space(t) for t in uniq):
            uniq.append(s)
    return tuple(uniq)


def minimal_submodules(gens, pivot: str) -> MinimalSubmodules:
    """Spin eigenvectors of ``pivot`` in every eigenspace.

    Eigenspaces of dimension one and two are searched exhaustively (the
    latter over Q[t]); larger ones are sampled, and the result is then only
    sound.
    """
    gens = GeneratorSet.of(gens)
    n = gens.dim
    X = gens.element(pivot)
    info = diagonalizability(X)
    if not info.splits:
        raise NonRationalSpectrum(f"pivot {pivot} has a non-rational spectrum")
    found = []
    loci = []
    soundness = "complete"
    rng = random.Random(20240917)
    for lam in sorted(set(info.spectrum)):
        E = eigenspace(X, lam)
        if E.dim <= 2:
            probe = _probe_eigenspace(E, gens)
            found.extend(probe.proper)
            if probe.locus is not None:
                loci.append((lam, probe.locus))
            continue
        soundness = "sound-only"
        seeds = list(E.vectors) + [_random_combination(E.vectors, rng) for _ in range(8)]
        for s in seeds:
            S = spin([s], gens)
            if 0 < S.dim < n:
                found.append(S)
    return MinimalSubmodules(_inclusion_minimal(found), soundness, tuple(loci))


def _random_combination(vectors: Sequence, rng: random.Random) -> tuple:
    out = tuple(rat(0) for _ in vectors[0])
    for v in vectors:
        out = vec_add(out, vec_scale(rng.randint(-9, 9), v))
    return out


# -- composition series -------------------------------------------------------


@dataclass(frozen=True)
class FactorFingerprint:
    dim: int
    delta_scalar: Rat
    specA: tuple
    specB: tuple
    specC: tuple

    @classmethod
    def of_spec(cls, rspec) -> "FactorFingerprint":
        sp = spectrum_R(rspec)
        return cls(
            rspec.dim,
            delta_scalar_R(rspec.d, *rspec.params),
            tuple(sorted(sp.thetaA)),
            tuple(sorted(sp.thetaB)),
            tuple(sorted(sp.thetaC)),
        )

    def sort_key(self) -> tuple:
        return (self.dim, self.delta_scalar, self.specA, self.specB, self.specC)


def fingerprint(gens: GeneratorSet) -> FactorFingerprint:
    A, B, C = (gens.element(k) for k in "ABC")
    delta = (A + B + C).scalar_value()
    if delta is None:
        raise AssertionError("A+B+C is not scalar on a composition factor")
    return FactorFingerprint(gens.dim, delta, *(rational_roots_of(X) for X in (A, B, C)))


def fingerprint_match(fp: FactorFingerprint, rspec) -> bool:
    if rspec.family != "R":
        raise DomainError("fingerprints are matched against R_d specs")
    return fp == FactorFingerprint.of_spec(rspec)


@dataclass(frozen=True)
class Factor:
    gens: GeneratorSet
    fingerprint: Optional[FactorFingerprint]


def _complete_basis(sub: SubspaceBasis) -> list:
    n = sub.ambient_dim
    ech = Echelon(n)
    basis = []
    for v in sub.vectors:
        ech.add(v)
        basis.append(v)
    for i in range(n):
        e = unit_vector(n, i)
        if ech.add(e) is not None:
            basis.append(e)
    return basis


def split_module(gens: GeneratorSet, sub: SubspaceBasis) -> tuple[GeneratorSet, GeneratorSet]:
    """Generator matrices on ``sub`` and on the quotient by ``sub``."""
    k, n = sub.dim, gens.dim
    basis = _complete_basis(sub)
    lower, upper = [], []
    for name, M in gens.generators:
        N = change_of_basis(M, basis)
        if not N.block(k, n, 0, k).is_zero():
            raise AssertionError("subspace is not invariant")
        lower.append((name, N.block(0, k, 0, k)))
        upper.append((name, N.block(k, n, k, n)))
    return GeneratorSet(k, tuple(lower), gens.kind), GeneratorSet(n - k, tuple(upper), gens.kind)


def composition_series(gens, pivot: Optional[str] = None) -> list:
    """Composition factors, bottom-up.  Each factor has been certified
    irreducible; Racah factors carry a fingerprint."""
    gens = GeneratorSet.of(gens)
    W = find_submodule(gens, pivot)
    if W is None:
        fp = fingerprint(gens) if gens.kind == "racah" else None
        return [Factor(gens, fp)]
    sub, quo = split_module(gens, W)
    return composition_series(sub, pivot) + composition_series(quo, pivot)


# -- Leonard pairs and triples --------------------------------------------------


@dataclass(frozen=True)
class OperatorInfo:
    diagonalizable: bool
    multiplicity_free: bool


@dataclass(frozen=True)
class LeonardReport:
    kind: str  # "pair" or "triple"
    operators: tuple  # OperatorInfo per input operator
    orderings: tuple  # per operator: eigenvector order witnessing the clause, or None
    verdict: bool


def _eigenbasis(X: MatQ) -> list:
    info = diagonalizability(X)
    return [eigenspace(X, lam).vectors[0] for lam in info.spectrum]


def _path_order(supports: Sequence[MatQ]) -> Optional[list]:
    """An ordering of indices along which every matrix in ``supports`` is
    irreducible tridiagonal, if their common coupling graph is a path."""
    n = supports[0].rows
    if n == 1:
        return [0]
    edges = None
    for M in supports:
        mine = set()
        for i in range(n):
            for j in range(i + 1, n):
                fwd, bwd = bool(M[i, j]), bool(M[j, i])
                if fwd != bwd:
                    return None
                if fwd:
                    mine.add((i, j))
        if edges is None:
            edges = mine
        elif edges != mine:
            return None
    if len(edges) != n - 1:
        return None
    nbrs = {i: [] for i in range(n)}
    for i, j in edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    if any(len(v) > 2 for v in nbrs.values()):
        return None
    ends = [i for i, v in nbrs.items() if len(v) == 1]
    if len(ends) != 2:
        return None
    order, prev = [min(ends)], None
    while len(order) < n:
        nxt = [j for j in nbrs[order[-1]] if j != prev]
        if not nxt:
            return None
        prev = order[-1]
        order.append(nxt[0])
    return order


def _clause(diag: MatQ, others: Sequence[MatQ]) -> Optional[list]:
    P = _eigenbasis(diag)
    conj = [change_of_basis(Y, P) for Y in others]
    order = _path_order(conj)
    if order is None:
        return None
    Q = [P[k] for k in order]
    if not all(is_irreducible_tridiagonal(change_of_basis(Y, Q)) for Y in others):
        return None
    return order


def _leonard(ops: Sequence[MatQ], kind: str) -> LeonardReport:
    n = ops[0].rows
    if any(M.shape != (n, n) for M in ops):
        raise DimensionError("Leonard checks need square matrices of one size")
    infos = []
    for M in ops:
        d = diagonalizability(M)
        if not d.splits:
            raise NonRationalSpectrum("operator has a non-rational spectrum")
        infos.append(OperatorInfo(d.diagonalizable, d.multiplicity_free))
    orderings = []
    for k, X in enumerate(ops):
        if not all(i.multiplicity_free for i in infos):
            orderings.append(None)
            continue
        others = [Y for j, Y in enumerate(ops) if j != k]
        orderings.append(_clause(X, others))
    verdict = all(o is not None for o in orderings)
    return LeonardReport(kind, tuple(infos), tuple(orderings), verdict)


def leonard_pair_check(X: MatQ, Y: MatQ) -> LeonardReport:
    return _leonard((X, Y), "pair")


def leonard_triple_check(X: MatQ, Y: MatQ, Z: MatQ) -> LeonardReport:
    return _leonard((X, Y, Z), "triple")
