from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from racahdaha import (
    GeneratorSet,
    ModuleSpec,
    brute_irreducible,
    build_R,
    composition_series,
    fingerprint_match,
    leonard_pair_check,
    leonard_triple_check,
    minimal_submodules,
    spin,
    zeta_pullback,
)
from racahdaha.daha import twist
from racahdaha.daha_modules import build_E, build_H, build_O
from racahdaha.engine import FactorFingerprint, annihilator, find_submodule, split_module
from racahdaha.errors import Inconclusive, NonRationalSpectrum
from racahdaha.linalg import MatQ, SubspaceBasis, inverse, unit_vector
from racahdaha.parametric import parametric_spin
from racahdaha.racah_modules import irr_criterion_R
from racahdaha.rational import PolyQ, rat
from oracles import burnside_irreducible, leonard_by_permutations, maximal_minor_gcd
from strategies import matrices, rationals, specs_E, specs_O, specs_R

q = rat
E1 = build_E(1, 0, 0, 0)


def generic(*mats):
    return GeneratorSet(mats[0].rows, tuple((f"X{i}", M) for i, M in enumerate(mats)))


def test_spin_examples():
    v0, v1 = unit_vector(2, 0), unit_vector(2, 1)
    assert spin([v1], E1) == SubspaceBasis.span([v1], 2)
    assert spin([v0], E1) == SubspaceBasis.full(2)
    assert spin([(0, 0)], build_R(1, 0, 0, 0)).dim == 0


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(*(matrices(n, rationals(2, 1)) for _ in range(3)))))
def test_spin_is_the_smallest_invariant_subspace(mats):
    gens = generic(*mats[:2])
    seed = mats[2].columns()[:1]
    S = spin(seed, gens)
    assert all(S.contains(v) for v in seed)
    assert all(S.is_invariant(M) for M in gens.matrices())
    # every vector of S is reached by a word of length < dim
    words = list(seed)
    layer = list(seed)
    for _ in range(gens.dim):
        layer = [M.apply(w) for w in layer for M in gens.matrices()]
        words.extend(layer)
    assert SubspaceBasis.span(words, gens.dim) == S


def test_annihilator_of_a_line():
    A = annihilator(SubspaceBasis.span([(1, 2, 0)], 3))
    assert A == SubspaceBasis.span([(-2, 1, 0), (0, 0, 1)], 3)


def test_minimal_submodule_examples():
    m = minimal_submodules(E1, "t0")
    assert m.submodules == (SubspaceBasis.span([(0, 1)], 2),)
    assert m.soundness == "complete"
    assert minimal_submodules(build_R(1, 0, 0, 0), "A").submodules == ()
    assert minimal_submodules(build_R(0, 1, 2, 3), "A").submodules == ()


def test_minimal_submodules_needs_a_split_pivot():
    J = MatQ([[0, -1], [1, 0]])
    with pytest.raises(NonRationalSpectrum):
        minimal_submodules(generic(J), "X0")


def test_brute_irreducible_examples():
    assert brute_irreducible(build_E(3, 1, 5, "1/4"))
    assert not brute_irreducible(E1)
    assert not brute_irreducible(build_R(2, 0, 0, -1))
    assert not irr_criterion_R(ModuleSpec("R", 2, 0, 0, -1))


def test_reducible_only_over_an_extension():
    # I and a rotation generate Q(i): irreducible over Q, not over its closure
    gens = generic(MatQ.identity(2), MatQ([[0, -1], [1, 0]]))
    assert not burnside_irreducible(gens.matrices())
    assert not brute_irreducible(gens)
    with pytest.raises(Inconclusive):
        find_submodule(gens)


def _split_generators(n, k, draw):
    """Two generators, the first with split simple spectrum; block upper
    triangular with a k-dimensional invariant corner when k > 0."""
    diag = draw(st.lists(st.integers(-6, 6), min_size=n, max_size=n, unique=True))
    X = MatQ([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])
    Y = draw(matrices(n, rationals(3, 2)))
    if k:
        X = MatQ([[X[i, j] if not (i >= k and j < k) else 0 for j in range(n)] for i in range(n)])
        Y = MatQ([[Y[i, j] if not (i >= k and j < k) else 0 for j in range(n)] for i in range(n)])
        X = X + MatQ([[1 if (i < k <= j) else 0 for j in range(n)] for i in range(n)])
    L = draw(matrices(n, rationals(2, 1)))
    P = MatQ([[L[i, j] if j < i else (1 if i == j else 0) for j in range(n)] for i in range(n)])
    Pi = inverse(P)
    return P @ X @ Pi, P @ Y @ Pi


@st.composite
def split_reps(draw):
    n = draw(st.integers(1, 4))
    k = draw(st.integers(0, n - 1))
    return generic(*_split_generators(n, k, draw))


@settings(max_examples=80, deadline=None)
@given(split_reps())
def test_brute_irreducible_agrees_with_burnside(gens):
    assert brute_irreducible(gens) == burnside_irreducible(gens.matrices())


@settings(max_examples=80, deadline=None)
@given(split_reps())
def test_minimal_submodules_agree_with_the_oracle(gens):
    m = minimal_submodules(gens, "X0")
    assert m.soundness == "complete"
    for S in m.submodules:
        assert 0 < S.dim < gens.dim
        assert all(S.is_invariant(M) for M in gens.matrices())
    assert (not m.submodules) == brute_irreducible(gens)


def _pairs(n):
    return st.tuples(matrices(n, rationals(2, 1)), matrices(n, rationals(2, 1)))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 3).flatmap(lambda n: st.tuples(_pairs(n), matrices(n, rationals(2, 1)))))
def test_parametric_locus_is_the_minor_gcd(data):
    (u_mat, v_mat), G = data
    u, v = u_mat.col(0), v_mat.col(0)
    mats = [G, u_mat]
    got = parametric_spin(u, v, mats)
    want = maximal_minor_gcd(u, v, mats)
    if want is None:
        assert got.generic_rank < len(u) and got.locus is None
    else:
        assert got.generic_rank == len(u)
        assert got.locus.monic() == want


def test_parametric_spin_with_an_irrational_locus():
    u, v = (1, 0), (0, 1)
    got = parametric_spin(u, v, [MatQ([[0, -1], [1, 0]])])
    assert got.generic_rank == 2 and got.locus.monic() == PolyQ([1, 0, 1])


def test_composition_examples():
    dims = lambda rep: sorted(f.gens.dim for f in composition_series(zeta_pullback(rep)))
    rep = build_E(3, 1, 5, "1/4")
    assert dims(rep) == [1, 3]
    assert dims(build_O(0, 1, 1, 1)) == [1]
    assert dims(twist(rep, (1, -1))) == [2, 2]


def test_fingerprint_examples():
    (factor,) = composition_series(zeta_pullback(build_E(1, 1, 5, "1/4")))
    assert fingerprint_match(factor.fingerprint, ModuleSpec("R", 1, -1, -3, "-5/8"))
    # a and -a-1 give the same A-spectrum and delta, so R1(0,...) matches too
    assert fingerprint_match(factor.fingerprint, ModuleSpec("R", 1, 0, -3, "-5/8"))
    assert not fingerprint_match(factor.fingerprint, ModuleSpec("R", 1, 1, -3, "-5/8"))
    zero = FactorFingerprint(1, q(0), (0,), (0,), (0,))
    assert fingerprint_match(zero, ModuleSpec("R", 0, 0, 0, 0))


def test_split_module_blocks():
    rep = zeta_pullback(build_E(3, 1, 5, "1/4"))
    gens = GeneratorSet.of(rep)
    W = find_submodule(gens)
    sub, quo = split_module(gens, W)
    assert sub.dim + quo.dim == 4
    assert all(M.shape == (sub.dim, sub.dim) for M in sub.matrices())


@st.composite
def pulled_back(draw):
    spec = draw(st.one_of(specs_E(5), specs_O(4)))
    return spec, zeta_pullback(build_H(spec))


@settings(max_examples=30, deadline=None)
@given(pulled_back())
def test_composition_factors_are_irreducible_and_fill_the_module(data):
    spec, rep = data
    factors = composition_series(rep)
    assert sum(f.gens.dim for f in factors) == rep.dim
    for f in factors:
        assert burnside_irreducible(f.gens.matrices())
        assert f.fingerprint.dim == f.gens.dim


@settings(max_examples=20, deadline=None)
@given(pulled_back())
def test_composition_factors_do_not_depend_on_the_pivot(data):
    _, rep = data
    fa = Counter(f.fingerprint for f in composition_series(rep, "A"))
    fb = Counter(f.fingerprint for f in composition_series(rep, "B"))
    assert fa == fb


def test_leonard_examples():
    rep = build_R(1, 0, 0, 0)
    assert leonard_pair_check(rep.A, rep.B).verdict
    assert not leonard_pair_check(MatQ.identity(2), rep.B).verdict
    one = MatQ([[5]])
    assert leonard_pair_check(one, one).verdict
    assert leonard_triple_check(rep.A, rep.B, rep.C).verdict
    bad = build_R(1, "-1/2", 0, 0)
    report = leonard_triple_check(bad.A, bad.B, bad.C)
    assert not report.verdict and not report.operators[0].multiplicity_free
    assert leonard_triple_check(one, one, one).verdict


def test_leonard_needs_a_split_spectrum():
    J = MatQ([[0, -1], [1, 0]])
    with pytest.raises(NonRationalSpectrum):
        leonard_pair_check(J, J)


@settings(max_examples=60, deadline=None)
@given(specs_R(3))
def test_leonard_path_search_matches_permutation_search(spec):
    rep = build_R(spec)
    for X, Y in (("A", "B"), ("B", "C"), ("C", "A")):
        ops = (rep.matrix(X), rep.matrix(Y))
        assert leonard_pair_check(*ops).verdict == leonard_by_permutations(ops)
    ops = (rep.A, rep.B, rep.C)
    assert leonard_triple_check(*ops).verdict == leonard_by_permutations(ops)


@settings(max_examples=30, deadline=None)
@given(pulled_back())
def test_leonard_on_factors_matches_permutation_search(data):
    _, rep = data
    for f in composition_series(rep):
        ops = tuple(f.gens.element(X) for X in "ABC")
        if f.gens.dim <= 4:
            assert leonard_triple_check(*ops).verdict == leonard_by_permutations(ops)
