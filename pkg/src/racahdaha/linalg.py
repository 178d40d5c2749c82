"""Dense exact linear algebra over Q.

Matrices follow the column-action convention: for an operator ``M`` and a
basis ``v_0, ..., v_{n-1}``, ``M v_j = sum_i M[i, j] v_i``.  Vectors are
plain tuples of ``mpq``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionError, SingularMatrixError
from .rational import ONE, ZERO, PolyQ, Rat, format_rat, rat, rational_roots

Vector = tuple


class MatQ:
    """Immutable dense rational matrix."""

    __slots__ = ("rows", "cols", "_e", "_hash")

    def __init__(self, entries: Iterable[Iterable]):
        e = tuple(tuple(rat(x) for x in row) for row in entries)
        if not e or not e[0]:
            raise DimensionError("matrices must have at least one row and column")
        width = len(e[0])
        if any(len(r) != width for r in e):
            raise DimensionError("ragged matrix literal")
        self._e = e
        self.rows = len(e)
        self.cols = width
        self._hash = None

    @classmethod
    def _raw(cls, e: tuple) -> "MatQ":
        m = object.__new__(cls)
        m._e = e
        m.rows = len(e)
        m.cols = len(e[0])
        m._hash = None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "MatQ":
        cols = rows if cols is None else cols
        return cls._raw(tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def scalar(cls, n: int, s) -> "MatQ":
        s = rat(s)
        return cls._raw(tuple(tuple(s if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def identity(cls, n: int) -> "MatQ":
        return cls.scalar(n, ONE)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "MatQ":
        return cls(zip(*columns))

    @property
    def entries(self) -> tuple:
        return self._e

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij) -> Rat:
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> Vector:
        return self._e[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._e)

    def columns(self) -> list[Vector]:
        return [tuple(c) for c in zip(*self._e)]

    @property
    def T(self) -> "MatQ":
        return MatQ._raw(tuple(zip(*self._e)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatQ):
            return NotImplemented
        return self._e == other._e

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._e)
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rat(x) for x in r) for r in self._e)
        return f"MatQ[{body}]"

    def _check_same(self, other: "MatQ") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other) -> "MatQ":
        if not isinstance(other, MatQ):
            return self + MatQ.scalar(self.rows, other)
        self._check_same(other)
        return MatQ._raw(tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self._e, other._e)))

    __radd__ = __add__

    def __sub__(self, other) -> "MatQ":
        if not isinstance(other, MatQ):
            return self - MatQ.scalar(self.rows, other)
        self._check_same(other)
        return MatQ._raw(tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self._e, other._e)))

    def __rsub__(self, other) -> "MatQ":
        return (-self) + other

    def __neg__(self) -> "MatQ":
        return MatQ._raw(tuple(tuple(-x for x in r) for r in self._e))

    def __mul__(self, s) -> "MatQ":
        if isinstance(s, MatQ):
            raise TypeError("use @ for matrix products")
        s = rat(s)
        return MatQ._raw(tuple(tuple(x * s for x in r) for r in self._e))

    __rmul__ = __mul__

    def __truediv__(self, s) -> "MatQ":
        return self * (ONE / rat(s))

    def __matmul__(self, other):
        if isinstance(other, MatQ):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            b = other._e
            m = other.cols
            out = []
            for row in self._e:
                acc = [ZERO] * m
                for k, x in enumerate(row):
                    if x:
                        for j, y in enumerate(b[k]):
                            if y:
                                acc[j] += x * y
                out.append(tuple(acc))
            return MatQ._raw(tuple(out))
        return self.apply(other)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionError("vector length does not match matrix")
        out = []
        for row in self._e:
            acc = ZERO
            for x, y in zip(row, v):
                if x and y:
                    acc += x * y
            out.append(acc)
        return tuple(out)

    def __pow__(self, k: int) -> "MatQ":
        out = MatQ.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def trace(self) -> Rat:
        return sum((self._e[i][i] for i in range(min(self.rows, self.cols))), ZERO)

    def is_zero(self) -> bool:
        return not any(x for r in self._e for x in r)

    def scalar_value(self) -> Rat | None:
        """``s`` if the matrix equals ``s * I``, else ``None``."""
        if not self.is_square():
            return None
        s = self._e[0][0]
        for i, r in enumerate(self._e):
            for j, x in enumerate(r):
                if x != (s if i == j else ZERO):
                    return None
        return s

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "MatQ":
        return MatQ._raw(tuple(r[c0:c1] for r in self._e[r0:r1]))

    def to_strings(self) -> list[list[str]]:
        return [[format_rat(x) for x in r] for r in self._e]


# -- vectors --------------------------------------------------------------

def vec_add(u: Sequence, v: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(s, v: Sequence) -> Vector:
    s = rat(s)
    return tuple(s * x for x in v)


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


# -- elimination ----------------------------------------------------------

def rref_rows(rows: Iterable[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; pivot = first nonzero entry by column order."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = ONE / m[r][c]
        pr = [x * inv for x in m[r]]
        m[r] = pr
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(M: MatQ) -> int:
    return len(rref_rows(M.entries)[1])


class Echelon:
    """Incrementally grown reduced basis; used for spinning."""

    def __init__(self, n: int):
        self.n = n
        self.rows: dict[int, list] = {}  # pivot column -> row with 1 at pivot

    def reduce(self, v: Sequence) -> list:
        w = list(v)
        for c, row in self.rows.items():
            f = w[c]
            if f:
                w = [x - f * y for x, y in zip(w, row)]
        return w

    def add(self, v: Sequence) -> Vector | None:
        """Insert ``v``; returns its reduced nonzero form or ``None`` if dependent."""
        w = self.reduce(v)
        c = next((i for i, x in enumerate(w) if x), None)
        if c is None:
            return None
        inv = ONE / w[c]
        w = [x * inv for x in w]
        for k, row in self.rows.items():
            f = row[c]
            if f:
                self.rows[k] = [x - f * y for x, y in zip(row, w)]
        self.rows[c] = w
        return tuple(w)

    def __len__(self) -> int:
        return len(self.rows)

    def basis(self) -> "SubspaceBasis":
        vecs = tuple(tuple(self.rows[c]) for c in sorted(self.rows))
        return SubspaceBasis(self.n, vecs)


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of Q^n held as its RREF basis, so equal spaces compare equal."""

    ambient_dim: int
    vectors: tuple = ()

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "SubspaceBasis":
        vs = [tuple(rat(x) for x in v) for v in vectors]
        if any(len(v) != ambient_dim for v in vs):
            raise DimensionError("vector length does not match ambient dimension")
        rows, _ = rref_rows(vs)
        return cls(ambient_dim, tuple(tuple(r) for r in rows))

    @classmethod
    def full(cls, n: int) -> "SubspaceBasis":
        return cls(n, tuple(unit_vector(n, i) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(v) if x) for v in self.vectors]

    def contains(self, v: Sequence) -> bool:
        w = list(v)
        for c, row in zip(self.pivots, self.vectors):
            f = w[c]
            if f:
                w = [x - f * y for x, y in zip(w, row)]
        return not any(w)

    def contains_space(self, other: "SubspaceBasis") -> bool:
        return all(self.contains(v) for v in other.vectors)

    def is_invariant(self, M: MatQ) -> bool:
        return all(self.contains(M.apply(v)) for v in self.vectors)

    def __len__(self) -> int:
        return self.dim


# -- operations -----------------------------------------------------------

def _square(M: MatQ) -> None:
    if not M.is_square():
        raise DimensionError(f"expected a square matrix, got {M.shape}")


def commutator(X: MatQ, Y: MatQ) -> MatQ:
    _square(X)
    X._check_same(Y)
    return X @ Y - Y @ X


def kernel(M: MatQ) -> SubspaceBasis:
    rows, pivots = rref_rows(M.entries)
    n = M.cols
    free = [c for c in range(n) if c not in pivots]
    vecs = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for r, p in zip(rows, pivots):
            v[p] = -r[f]
        vecs.append(v)
    return SubspaceBasis.span(vecs, n)


@lru_cache(maxsize=8192)
def char_poly(M: MatQ) -> PolyQ:
    """det(xI - M) by the Faddeev-LeVerrier recurrence."""
    _square(M)
    n = M.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    N = MatQ.zeros(n)
    for k in range(1, n + 1):
        N = M @ N + MatQ.scalar(n, coeffs[n - k + 1])
        coeffs[n - k] = -(M @ N).trace() / k
    return PolyQ(coeffs)


def eigenspace(M: MatQ, lam) -> SubspaceBasis:
    _square(M)
    return kernel(M - MatQ.scalar(M.rows, lam))


@dataclass(frozen=True)
class Diagonalizability:
    diagonalizable: bool
    multiplicity_free: bool
    spectrum: tuple  # sorted rational roots with algebraic multiplicity
    splits: bool

    def multiplicities(self) -> dict:
        out: dict = {}
        for r in self.spectrum:
            out[r] = out.get(r, 0) + 1
        return out


@lru_cache(maxsize=8192)
def diagonalizability(M: MatQ) -> Diagonalizability:
    _square(M)
    roots = rational_roots(char_poly(M))
    mult: dict = {}
    for r in roots.roots:
        mult[r] = mult.get(r, 0) + 1
    mf = roots.splits and all(k == 1 for k in mult.values())
    if not roots.splits:
        diag = False
    elif mf:
        diag = True
    else:
        diag = sum(eigenspace(M, lam).dim for lam in mult) == M.rows
    return Diagonalizability(diag, mf, roots.roots, roots.splits)


def inverse(P: MatQ) -> MatQ:
    _square(P)
    n = P.rows
    aug = [list(r) + list(unit_vector(n, i)) for i, r in enumerate(P.entries)]
    rows, pivots = rref_rows(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return MatQ._raw(tuple(tuple(r[n:]) for r in rows))


def change_of_basis(M: MatQ, basis: Sequence[Sequence]) -> MatQ:
    """``P^-1 M P`` where ``P`` has the basis vectors as columns."""
    _square(M)
    if len(basis) != M.rows:
        raise SingularMatrixError("basis has the wrong number of vectors")
    P = MatQ.from_columns(basis)
    return inverse(P) @ M @ P


def is_irreducible_tridiagonal(M: MatQ) -> bool:
    _square(M)
    for i, r in enumerate(M.entries):
        for j, x in enumerate(r):
            off = abs(i - j)
            if off >= 2 and x:
                return False
            if off == 1 and not x:
                return False
    return True


__all__ = [
    "MatQ", "Vector", "SubspaceBasis", "Echelon", "Diagonalizability", "commutator",
    "kernel", "char_poly", "eigenspace", "diagonalizability", "change_of_basis",
    "is_irreducible_tridiagonal", "inverse", "rank", "rref_rows", "vec_add", "vec_sub",
    "vec_scale", "unit_vector", "is_zero_vector",
]
