"""Spinning a one-parameter family of vectors ``u + t v`` over Q[t].

The closure of ``u + t v`` under constant generator matrices is a Q[t]-
submodule ``L`` of ``Q[t]^n``.  Specialising ``t`` to any value ``t*`` of
the algebraic closure gives the spin of ``u + t* v``, so the spin is
proper exactly at the roots of the product of the pivots of a triangular
basis of ``L`` (or everywhere, when ``L`` has rank below ``n``).
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Sequence

from .linalg import MatQ
from .rational import PolyQ, poly_xgcd

_ZERO_POLY = PolyQ()


class PolyLattice:
    """Q[t]-submodule of Q[t]^n held in upper-triangular form.

    ``rows[c]`` has zeros before column ``c`` and a monic entry at ``c``.
    """

    def __init__(self, n: int):
        self.n = n
        self.rows: dict[int, list] = {}

    def insert(self, w: Sequence[PolyQ]) -> bool:
        """Add ``w`` to the generating set; returns whether the module grew."""
        w = list(w)
        grew = False
        for c in range(self.n):
            e = w[c]
            if not e:
                continue
            r = self.rows.get(c)
            if r is None:
                inv = 1 / e.lead
                self.rows[c] = [x * inv for x in w]
                self._reduce_above(c)
                return True
            p = r[c]
            q, rem = divmod(e, p)
            if not rem:
                w = [x - q * y for x, y in zip(w, r)]
                continue
            g, s, t = poly_xgcd(p, e)
            new_r = [s * x + t * y for x, y in zip(r, w)]
            fp, fe = p // g, e // g
            w = [fe * x - fp * y for x, y in zip(r, w)]
            self.rows[c] = new_r
            self._reduce_above(c)
            grew = True
        return grew

    def _reduce_above(self, c: int) -> None:
        # keep entries above a pivot reduced modulo it, bounding degree growth
        pivot_row = self.rows[c]
        p = pivot_row[c]
        for k, row in self.rows.items():
            if k < c and row[c] and row[c].degree >= p.degree:
                q = row[c] // p
                self.rows[k] = [x - q * y for x, y in zip(row, pivot_row)]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def determinant(self) -> Optional[PolyQ]:
        if self.rank < self.n:
            return None
        out = PolyQ([1])
        for c in range(self.n):
            out = out * self.rows[c][c]
        return out


def _apply(G: MatQ, w: Sequence[PolyQ]) -> list:
    out = []
    for row in G.entries:
        acc = _ZERO_POLY
        for g, x in zip(row, w):
            if g and x:
                acc = acc + x * g
        out.append(acc)
    return out


class ParametricSpin(NamedTuple):
    generic_rank: int
    locus: Optional[PolyQ]  # None when generic_rank < n


def parametric_spin(u: Sequence, v: Sequence, gens: Sequence[MatQ]) -> ParametricSpin:
    n = len(u)
    lattice = PolyLattice(n)
    lattice.insert([PolyQ([x, y]) for x, y in zip(u, v)])
    done: set = set()
    while True:
        pending = [(c, tuple(r)) for c, r in lattice.rows.items() if (c, tuple(r)) not in done]
        if not pending:
            break
        for key in pending:
            done.add(key)
            for G in gens:
                lattice.insert(_apply(G, key[1]))
    return ParametricSpin(lattice.rank, lattice.determinant())
