import pytest
from hypothesis import given, settings, strategies as st

from racahdaha import ModuleSpec, twist, verify_daha_relations, zeta_pullback
from racahdaha.catalog import TWISTS, descending
from racahdaha.daha import DahaRep, pullback_abc
from racahdaha.daha_modules import (
    annihilator_check,
    build_E,
    build_H,
    build_O,
    classify_H,
    derived_params,
    factor_forbidden_set,
    factor_mf_criterion,
    irr_criterion_H,
    pm_diag_criterion,
    predicted_factors,
    special_basis_witness,
)
from racahdaha.errors import DimensionError, DomainError, PreconditionError
from racahdaha.linalg import MatQ, char_poly, diagonalizability
from racahdaha.rational import rat, rational_roots
from strategies import small_rationals, specs_E, specs_O

q = rat
I2 = MatQ.identity(2)


def E(d, a, b, c, eps=(1, 1)):
    return ModuleSpec("E", d, a, b, c, eps)


def O(d, a, b, c):
    return ModuleSpec("O", d, a, b, c)


def daha_specs():
    return st.one_of(specs_E(5, twisted=False), specs_O(4))


def test_E1_at_zero_matrices():
    rep = build_E(1, 0, 0, 0)
    assert rep.t0 == -I2
    assert rep.t1 == MatQ([[0, 0], [1, 0]])
    assert rep.t2.is_zero()
    assert rep.t3 == MatQ([[0, 0], [-1, 0]])
    report = verify_daha_relations(rep)
    assert report.ok and report.central_scalars == (1, 0, 0, 0)


def test_E3_scalars():
    report = verify_daha_relations(build_E(3, 1, 5, "1/4"))
    assert report.central_scalars == (4, 1, 25, q(1, 16))


def test_O0_matrices_and_scalars():
    rep = build_O(0, 1, 1, 1)
    assert [t[0, 0] for t in rep.ts()] == [q(5, 4), q(-3, 4), q(-3, 4), q(-3, 4)]
    report = verify_daha_relations(rep)
    assert report.ok and report.central_scalars[0] == q(25, 16)
    assert (rep.t0 + rep.t1).trace() + q(1, 2) == 1


def test_tampered_sum_is_reported():
    rep = build_E(1, 0, 0, 0)
    bad = DahaRep(2, rep.t0 + I2, rep.t1, rep.t2, rep.t3)
    report = verify_daha_relations(bad)
    assert not report.ok and "sum=-1" in report.failures


def test_non_central_square_is_reported():
    N = MatQ([[0, 1], [0, 0]])
    D = MatQ([[1, 0], [0, 2]])
    rep = DahaRep(2, D, N, -D - N - I2, MatQ.zeros(2))
    report = verify_daha_relations(rep)
    assert "t0^2-central-t1" in report.failures and report.central_scalars is None


def test_shape_mismatch():
    with pytest.raises(DimensionError):
        DahaRep(2, I2, I2, I2, MatQ.identity(3))


def test_parity_is_enforced():
    with pytest.raises(DomainError):
        E(2, 0, 0, 0)
    with pytest.raises(DomainError):
        O(1, 0, 0, 0)
    with pytest.raises(DomainError):
        ModuleSpec("O", 0, 0, 0, 0, (1, -1))


def test_derived_params():
    p = derived_params(O(0, 1, 1, 1))
    assert (p.sigma, p.tau, p.lam, p.mu, p.nu) == (q(5, 2), q(1, 2), q(-3, 2), q(-3, 2), q(-3, 2))
    p = derived_params(E(1, 0, 0, 0))
    assert (p.sigma, p.tau, p.lam) == (-1, -1, None)


@settings(max_examples=60)
@given(daha_specs())
def test_catalog_modules_satisfy_relations_with_expected_squares(spec):
    rep = build_H(spec)
    report = verify_daha_relations(rep)
    assert report.ok
    a, b, c = spec.params
    if spec.family == "E":
        assert report.central_scalars == (q(spec.dim**2, 4), a * a, b * b, c * c)
        assert tuple(t.trace() for t in rep.ts()) == (-spec.dim, 0, 0, 0)
    else:
        p = derived_params(spec)
        assert report.central_scalars == tuple(x * x / 4 for x in (p.sigma, p.lam, p.nu, p.mu))
        half = MatQ.scalar(spec.dim, q(1, 2))
        assert tuple((rep.t0 + t + half).trace() for t in rep.ts()[1:]) == spec.params


def test_twist_examples():
    rep = build_E(3, 1, 5, "1/4")
    assert twist(rep, (1, 1)) == rep
    assert twist(rep, (1, -1)).t0 == rep.t1
    assert twist(rep, (-1, 1)).ts() == (rep.t2, rep.t3, rep.t0, rep.t1)
    assert twist(rep, (-1, -1)).ts() == (rep.t3, rep.t2, rep.t1, rep.t0)
    assert twist(rep, (-1, 1)).meta == E(3, 1, 5, "1/4", (-1, 1))


@settings(max_examples=30)
@given(specs_E(3), st.sampled_from(TWISTS), st.sampled_from(TWISTS))
def test_twists_form_a_group_action(spec, e1, e2):
    rep = build_H(spec)
    assert twist(twist(rep, e1), e1) == rep
    assert twist(twist(rep, e1), e2) == twist(rep, (e1[0] * e2[0], e1[1] * e2[1]))
    assert verify_daha_relations(twist(rep, e1)).ok


def test_pullback_examples():
    A, B, C = pullback_abc(build_E(1, 0, 0, 0))
    assert A == MatQ([[0, 0], [q(-1, 2), 0]])
    assert B.is_zero()
    assert C == MatQ([[0, 0], [q(1, 2), 0]])
    A, _, _ = pullback_abc(build_O(0, 1, 1, 1))
    assert A[0, 0] == q(-3, 16)


@given(small_rationals(), small_rationals(), small_rationals())
def test_pullback_spectrum_of_A_on_E1(a, b, c):
    A = zeta_pullback(build_E(1, a, b, c)).A
    roots = rational_roots(char_poly(A))
    assert roots.roots == tuple(sorted([a * (a - 2) / 4, a * (a + 2) / 4]))


@settings(max_examples=40)
@given(daha_specs())
def test_pullback_delta_identity_and_twist_naturality(spec):
    rep = build_H(spec)
    zeta_pullback(rep)  # asserts the delta identity and the relations
    t0, t1, t2, t3 = rep.ts()
    one = MatQ.identity(rep.dim)
    swapped = zeta_pullback(twist(rep, (1, -1)))
    assert swapped.A == zeta_pullback(rep).A
    assert swapped.B == ((t1 + t3) @ (t1 + t3) - one) / 4
    assert swapped.C == ((t1 + t2) @ (t1 + t2) - one) / 4


def test_irr_criterion_examples():
    assert irr_criterion_H(E(3, 1, 5, "1/4"))
    assert not irr_criterion_H(E(1, 0, 0, 0))
    assert irr_criterion_H(O(0, "1/2", "1/2", "1/2"))
    with pytest.raises(DomainError):
        irr_criterion_H(ModuleSpec("R", 1, 0, 0, 0))


def test_classify_examples():
    rep = twist(build_E(3, 1, 5, "1/4"), (-1, 1))
    assert classify_H(DahaRep(rep.dim, *rep.ts())) == E(3, 1, 5, "1/4", (-1, 1))
    assert classify_H(build_O(0, 1, 1, 1)) == O(0, 1, 1, 1)
    with pytest.raises(PreconditionError):
        classify_H(build_E(1, 0, 0, 0))


@settings(max_examples=25, deadline=None)
@given(specs_E(3, twisted=False), st.sampled_from(TWISTS))
def test_classify_recovers_absolute_parameters(spec, eps):
    if not irr_criterion_H(spec):
        return
    rep = twist(build_H(spec), eps)
    got = classify_H(DahaRep(rep.dim, *rep.ts()))
    assert got == E(spec.d, *(abs(x) for x in spec.params), eps)


def test_pm_diag_examples():
    assert not pm_diag_criterion("01", E(3, 1, 5, "1/4"))
    assert pm_diag_criterion("01", E(3, "1/2", 5, "1/4"))
    assert not pm_diag_criterion("03", O(2, 0, "1/3", "1/2"))
    with pytest.raises(PreconditionError):
        pm_diag_criterion("01", E(1, 0, 0, 0))


@settings(max_examples=40, deadline=None)
@given(daha_specs())
def test_pm_diag_criterion_matches_matrix_test(spec):
    if not irr_criterion_H(spec):
        return
    rep = build_H(spec)
    for k, pair in enumerate(("01", "02", "03"), start=1):
        info = diagonalizability(rep.t0 + rep.ts()[k])
        assert pm_diag_criterion(pair, spec) == info.diagonalizable == info.multiplicity_free


def test_special_basis_examples():
    a = q(2, 3)
    w = special_basis_witness("01", E(1, a, 0, 0))
    rep = build_E(1, a, 0, 0)
    X = rep.t0 + rep.t1
    v0, v1 = w.basis
    assert w.verified and v0 == (1, 0)
    assert tuple(x + (1 - a) * y for x, y in zip(X.apply(v0), v0)) == v1
    assert not any(x + (a + 1) * y for x, y in zip(X.apply(v1), v1))
    w = special_basis_witness("01", O(0, 1, 2, 3))
    assert w.verified and w.basis == ((1,),)
    assert annihilator_check(E(3, "1/2", 0, 0)).full_product_kills


@settings(max_examples=40, deadline=None)
@given(daha_specs())
def test_special_bases_verify(spec):
    assert special_basis_witness("01", spec).verified
    if irr_criterion_H(spec):
        assert special_basis_witness("02", spec).verified
        assert special_basis_witness("03", spec).verified


@settings(max_examples=40)
@given(specs_E(5, twisted=False))
def test_annihilator_property(spec):
    report = annihilator_check(spec)
    assert report.full_product_kills and report.partial_products_nonzero


def test_predicted_factor_examples():
    a, b, c = q(1), q(5), q(1, 4)
    base = (-(a + 1) / 2, -(b + 1) / 2, -(c + 1) / 2)
    pred = predicted_factors(E(3, a, b, c))
    assert pred.factors == (ModuleSpec("R", 2, *base), ModuleSpec("R", 0, *base))
    assert pred.dims == (3, 1) and pred.completeness == "exact"
    pred = predicted_factors(E(3, a, b, c, (1, -1)))
    assert pred.factors == (
        ModuleSpec("R", 1, -a / 2, *base[1:]),
        ModuleSpec("R", 1, -a / 2 - 1, *base[1:]),
    )
    pred = predicted_factors(O(0, a, b, c))
    assert pred.factors == (ModuleSpec("R", 0, *(-x / 2 - q(1, 4) for x in (a, b, c))),)


@settings(max_examples=60)
@given(st.one_of(specs_E(7), specs_O(6)))
def test_exact_predictions_have_total_dimension(spec):
    if not irr_criterion_H(spec):
        return
    pred = predicted_factors(spec)
    if pred.completeness == "exact":
        assert sum(pred.dims) == spec.dim


def test_factor_criterion_examples():
    assert not factor_mf_criterion("A", E(3, 1, 5, "1/4"))
    assert factor_mf_criterion("A", E(3, 1, 5, "1/4", (-1, 1)))
    # a = 1/2 with a+b+c = 3/2 forces a-b-c = -1/2, so O_2 is reducible there;
    # only the forbidden set itself can be checked at this point
    boundary = O(2, "1/2", "1/2", "1/2")
    assert not irr_criterion_H(boundary)
    assert factor_forbidden_set("A", boundary) == set()
    assert factor_mf_criterion("A", O(2, "1/3", "1/3", "5/6"))


def test_descending_sets():
    assert descending(2, -2) == {2, 0, -2}
    assert descending(-1, 1) == set()
