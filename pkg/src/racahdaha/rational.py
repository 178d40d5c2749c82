"""Exact rational scalars, univariate polynomials over Q, and rational roots.

Scalars are ``gmpy2.mpq`` values: arbitrary precision, always stored in
lowest terms with a positive denominator.  Everything that crosses a file
or command-line boundary uses the ``[-]p/q`` text form (``q`` omitted when
it equals 1).
"""

from __future__ import annotations

import math
from typing import Iterable, NamedTuple, Sequence, Union

from gmpy2 import mpq

from .errors import DomainError

Rat = type(mpq())
RatLike = Union[int, str, "mpq"]

NEG_INF = float("-inf")

ZERO = mpq(0)
ONE = mpq(1)


def rat(x: RatLike, den: int | None = None) -> Rat:
    """Coerce ``x`` (int, mpq, Fraction, or ``"p/q"`` string) to an mpq."""
    if den is not None:
        return mpq(x, den)
    if isinstance(x, Rat):
        return x
    if isinstance(x, str):
        return parse_rat(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact rationals")
    return mpq(x)


def parse_rat(text: str) -> Rat:
    """Parse ``[-]p/q`` or ``[-]p``; raises :class:`DomainError` on junk."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num, 10)
        q = int(den, 10) if sep else 1
    except ValueError:
        raise DomainError(f"malformed rational literal {text!r}") from None
    if q == 0:
        raise DomainError(f"zero denominator in {text!r}")
    return mpq(p, q)


def format_rat(x: RatLike) -> str:
    x = rat(x)
    if x.denominator == 1:
        return str(int(x.numerator))
    return f"{int(x.numerator)}/{int(x.denominator)}"


def pochhammer(x: RatLike, n: int) -> Rat:
    """Rising factorial ``x (x+1) ... (x+n-1)``; equal to 1 for ``n == 0``."""
    if n < 0:
        raise DomainError("pochhammer needs n >= 0")
    x = rat(x)
    out = ONE
    for i in range(n):
        out *= x + i
    return out


class PolyQ:
    """Immutable polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RatLike] = ()):
        cs = [rat(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    @classmethod
    def x(cls) -> "PolyQ":
        return cls([0, 1])

    @classmethod
    def const(cls, c: RatLike) -> "PolyQ":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable[RatLike]) -> "PolyQ":
        p = cls([1])
        for r in roots:
            p = p * cls([-rat(r), 1])
        return p

    @property
    def degree(self):
        """Degree, or ``NEG_INF`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self) -> Rat:
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyQ):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Rat)):
            return self.coeffs == PolyQ([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"PolyQ({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and c == 1:
                body = mono
            elif mono and c == -1:
                body = "-" + mono
            else:
                body = format_rat(c) + (("*" + mono) if mono else "")
            terms.append(body)
        return " + ".join(terms).replace("+ -", "- ")

    def __neg__(self) -> "PolyQ":
        return PolyQ(-c for c in self.coeffs)

    def __add__(self, other) -> "PolyQ":
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyQ(out)

    __radd__ = __add__

    def __sub__(self, other) -> "PolyQ":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "PolyQ":
        return _as_poly(other) - self

    def __mul__(self, other) -> "PolyQ":
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyQ()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return PolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PolyQ":
        out = PolyQ([1])
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other) -> tuple["PolyQ", "PolyQ"]:
        other = _as_poly(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv = 1 / other.lead
        if len(rem) - 1 < db:
            return PolyQ(), self
        quo = [ZERO] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            q = rem[k + db] * inv
            quo[k] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= q * c
        return PolyQ(quo), PolyQ(rem[:db])

    def __floordiv__(self, other) -> "PolyQ":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "PolyQ":
        return divmod(self, other)[1]

    def __call__(self, x):
        """Horner evaluation; ``x`` may be any ring element supporting + and *."""
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "PolyQ":
        if not self.coeffs:
            return self
        inv = 1 / self.lead
        return PolyQ(c * inv for c in self.coeffs)

    def derivative(self) -> "PolyQ":
        return PolyQ(c * k for k, c in enumerate(self.coeffs) if k)

    def to_strings(self) -> list[str]:
        return [format_rat(c) for c in self.coeffs]


def _as_poly(p) -> PolyQ:
    return p if isinstance(p, PolyQ) else PolyQ([p])


def poly_gcd(p: PolyQ, q: PolyQ) -> PolyQ:
    """Monic gcd by the Euclidean remainder sequence."""
    if not p and not q:
        raise DomainError("gcd(0, 0) is undefined")
    while q:
        p, q = q, p % q
    return p.monic()


def poly_xgcd(p: PolyQ, q: PolyQ) -> tuple[PolyQ, PolyQ, PolyQ]:
    """``(g, s, t)`` with ``s p + t q = g`` and ``g`` the monic gcd."""
    if not p and not q:
        raise DomainError("gcd(0, 0) is undefined")
    r0, r1 = p, q
    s0, s1 = PolyQ([1]), PolyQ()
    t0, t1 = PolyQ(), PolyQ([1])
    while r1:
        k, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - k * s1
        t0, t1 = t1, t0 - k * t1
    inv = 1 / r0.lead
    return r0 * inv, s0 * inv, t0 * inv


class Roots(NamedTuple):
    roots: tuple  # sorted, repeated according to multiplicity
    splits: bool


def _primitive_int(p: PolyQ) -> list[int]:
    den = 1
    for c in p.coeffs:
        den = den * int(c.denominator) // math.gcd(den, int(c.denominator))
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _eval_mod(cs: Sequence[int], x: int, m: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = (acc * x + c) % m
    return acc


def _primes():
    p = 3
    while True:
        if all(p % k for k in range(3, math.isqrt(p) + 1, 2)):
            yield p
        p += 2


def _rational_reconstruct(r: int, m: int, bound: int) -> tuple[int, int] | None:
    # smallest p/q with p = q r (mod m), |p| <= bound, 0 < q <= bound
    r0, r1 = m, r % m
    s0, s1 = 0, 1
    while r1 > bound:
        k = r0 // r1
        r0, r1 = r1, r0 - k * r1
        s0, s1 = s1, s0 - k * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return r1, s1


def _simple_rational_roots(cs: list[int]) -> list[Rat]:
    """Rational roots of a square-free primitive integer polynomial with
    nonzero constant term, via p-adic lifting and rational reconstruction."""
    n = len(cs) - 1
    if n == 0:
        return []
    if n == 1:
        return [mpq(-cs[0], cs[1])]
    lead, const = cs[-1], cs[0]
    bound = max(abs(lead), abs(const))
    target = 2 * bound * bound
    dcs = [k * c for k, c in enumerate(cs) if k]
    for ell in _primes():
        if lead % ell == 0:
            continue
        residues = [r for r in range(ell) if _eval_mod(cs, r, ell) == 0]
        if any(_eval_mod(dcs, r, ell) == 0 for r in residues):
            continue  # ell divides the discriminant
        break
    out = []
    for r in residues:
        m = ell
        while m <= target:
            m2 = m * m
            inv = pow(_eval_mod(dcs, r, m2), -1, m2)
            r = (r - _eval_mod(cs, r, m2) * inv) % m2
            m = m2
        pq = _rational_reconstruct(r, m, math.isqrt(m // 2))
        if pq is None:
            continue
        p, q = pq
        if sum(c * p**k * q ** (n - k) for k, c in enumerate(cs)) == 0:
            out.append(mpq(p, q))
    return out


def rational_roots(p: PolyQ) -> Roots:
    """All rational roots of ``p`` with multiplicity.

    ``splits`` is true iff the multiplicities add up to ``deg p``.
    """
    if not p:
        raise DomainError("the zero polynomial has no root multiset")
    cs = list(p.coeffs)
    zeros = 0
    while not cs[0]:
        cs.pop(0)
        zeros += 1
    core = PolyQ(cs)
    roots = [ZERO] * zeros
    if core.degree >= 1:
        sqfree = core // poly_gcd(core, core.derivative())
        for r in _simple_rational_roots(_primitive_int(sqfree)):
            lin = PolyQ([-r, 1])
            rest = core
            while True:
                quo, rem = divmod(rest, lin)
                if rem:
                    break
                roots.append(r)
                rest = quo
    roots.sort()
    return Roots(tuple(roots), len(roots) == p.degree)


def rational_roots_bruteforce(p: PolyQ) -> Roots:
    """Candidate-enumeration root finder (+-divisors of the constant term over
    divisors of the leading coefficient).  Slow; kept as a test oracle."""
    if not p:
        raise DomainError("the zero polynomial has no root multiset")
    cs = list(p.coeffs)
    zeros = 0
    while not cs[0]:
        cs.pop(0)
        zeros += 1
    roots = [ZERO] * zeros
    ints = _primitive_int(PolyQ(cs))
    divs = lambda n: [k for k in range(1, abs(n) + 1) if n % k == 0]
    cands = {mpq(s * a, b) for a in divs(ints[0]) for b in divs(ints[-1]) for s in (1, -1)}
    rest = PolyQ(cs)
    for r in sorted(cands):
        lin = PolyQ([-r, 1])
        while rest.degree >= 1:
            quo, rem = divmod(rest, lin)
            if rem:
                break
            roots.append(r)
            rest = quo
    roots.sort()
    return Roots(tuple(roots), len(roots) == p.degree)


__all__ = [
    "Rat", "rat", "parse_rat", "format_rat", "pochhammer", "PolyQ", "poly_gcd",
    "poly_xgcd", "rational_roots", "rational_roots_bruteforce", "Roots", "NEG_INF", "ZERO", "ONE",
]
