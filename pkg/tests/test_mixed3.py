import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import random_invertible, smatrix, sym_admissible, sym_mixed_normal, sym_nijenhuis_table, to_fractions

from fpknormal import linalg as la
from fpknormal.catalog import get_entry, list_entries
from fpknormal.errors import DimensionMismatch, NotAHomomorphism, NotSubalgebraSpan, WrongCorank
from fpknormal.fpk import EndoTensor, is_almost_complex, is_integrable, transport, validate_fpk
from fpknormal.lie_core import lie_algebra, validate_lie_algebra
from fpknormal.mixed3 import (
    ComplexEigen,
    NotAdmissible,
    RealEigen,
    build_J_hat,
    build_script_J,
    check_admissibility,
    codim_one_structure,
    condition_double_star,
    equivalence_harness,
    phi_hat,
    psi,
    reduced_integrability,
    script_J_matrix,
)

F = Fraction
LISTA = [f"bianchi_lista_{i}" for i in range(1, 8)]


def entry_par(name, theta=None):
    e = get_entry(name, theta)
    return e.algebra, e.parallelism


# -- admissibility ------------------------------------------------------------

# values checked against the eigenvector form of the criterion in oracles.sym_admissible
EXPECTED_ADMISSIBILITY = {
    "bianchi_lista_1": RealEigen(F(0)),
    "bianchi_lista_2": RealEigen(F(0)),
    "bianchi_lista_3": RealEigen(F(0)),
    "bianchi_lista_4": RealEigen(F(-1)),
    "bianchi_lista_5": ComplexEigen(F(-1), F(1), -1),
    "bianchi_lista_6": ComplexEigen(F(0), F(1), 1),
    "bianchi_lista_7": ComplexEigen(F(0), F(1), -1),
    "example2_5d": RealEigen(F(0)),
    "nonexample_5d": RealEigen(F(0)),
}


@pytest.mark.parametrize("name", sorted(EXPECTED_ADMISSIBILITY))
def test_canonical_bases_are_admissible(name):
    g, par = entry_par(name)
    result = check_admissibility(g, par)
    assert result == EXPECTED_ADMISSIBILITY[name]
    assert sym_admissible(g.dim, g.constants, par)
    assert result.kind == get_entry(name).expected.admissible


@pytest.mark.parametrize("theta, alpha", [("1", -1), ("-2", 2), ("1/3", F(-1, 3))])
def test_lista5_parameter(theta, alpha):
    g, par = entry_par("bianchi_lista_5", theta)
    assert check_admissibility(g, par) == ComplexEigen(F(alpha), F(1), -1)


def test_complex_eigenvector_convention():
    # lista_6: [xi3*, xi1*] = -xi2*, [xi3*, xi2*] = xi1*, so xi1* + i xi2* has eigenvalue i
    g, par = entry_par("bianchi_lista_6")
    result = check_admissibility(g, par)
    assert (result.alpha, result.beta, result.orientation) == (0, 1, 1)


@pytest.mark.parametrize(
    "name, order, code",
    [
        ("bianchi_lista_2", (1, 2, 0), "span_not_invariant"),
        ("bianchi_lista_3", (0, 2, 1), "jordan_block"),
        ("bianchi_lista_2", (0, 2, 1), "eigenvalue_mismatch"),
    ],
)
def test_not_admissible_codes(name, order, code):
    g, par = entry_par(name)
    result = check_admissibility(g, [par[i] for i in order])
    assert isinstance(result, NotAdmissible) and result.code == code
    assert not sym_admissible(g.dim, g.constants, [par[i] for i in order])


def test_misaligned_complex_pair():
    g, (x1, x2, x3) = entry_par("bianchi_lista_6")
    par = [x1, la.scale(F(2), x2), x3]
    result = check_admissibility(g, par)
    assert result.code == "eigenvector_misalignment"
    assert not sym_admissible(3, g.constants, par)


def test_non_subalgebra_span_rejected():
    g = get_entry("example2_5d").algebra
    with pytest.raises(NotSubalgebraSpan):
        check_admissibility(g, [g.basis(0), g.basis(1), g.basis(2)])
    with pytest.raises(DimensionMismatch):
        check_admissibility(g, [g.basis(2), g.basis(3)])


rotations = st.tuples(
    st.fractions(min_value=-3, max_value=3, max_denominator=4), st.fractions(min_value=-3, max_value=3, max_denominator=4)
).filter(lambda ab: ab != (0, 0))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(LISTA), rotations, st.fractions(min_value=-3, max_value=3, max_denominator=4).filter(bool))
def test_orientation_flips_under_reflection(name, ab, c):
    g, (x1, x2, x3) = entry_par(name)
    a, b = ab
    # a rotation-dilation of (xi1*, xi2*) and rescaling xi3* keep the kind and orientation sign
    y1 = la.add(la.scale(a, x1), la.scale(b, x2))
    y2 = la.sub(la.scale(a, x2), la.scale(b, x1))
    y3 = la.scale(c, x3)
    base = check_admissibility(g, [y1, y2, y3])
    negated = check_admissibility(g, [y1, la.neg(y2), y3])
    swapped = check_admissibility(g, [y2, y1, y3])
    assert base.kind == negated.kind == swapped.kind == get_entry(name).expected.admissible
    if isinstance(base, ComplexEigen):
        assert negated.orientation == swapped.orientation == -base.orientation
        assert (negated.alpha, negated.beta) == (base.alpha, base.beta)
        assert base.orientation == EXPECTED_ADMISSIBILITY[name].orientation * (1 if c > 0 else -1)
    else:
        assert base == negated == swapped


# -- the mixing structure -----------------------------------------------------


def test_script_J_squares_to_minus_identity():
    J = script_J_matrix()
    assert is_almost_complex(J)
    assert J(la.unit(6, 0)) == la.unit(6, 1)
    assert J(la.unit(6, 2)) == la.unit(6, 5)
    assert J(la.unit(6, 3)) == la.unit(6, 4)


def test_admissibility_matches_script_J_oracle():
    rng = random.Random(7)
    for name in LISTA:
        g, par = entry_par(name)
        for _ in range(4):
            P = random_invertible(rng, 3)
            new = [la.mat_vec(la.transpose(P), v) for v in par] if rng.random() < 0.5 else [la.column(P, j) for j in range(3)]
            product, J = build_script_J(g, new)
            table = sym_nijenhuis_table(6, product.constants, smatrix(J.matrix))
            integrable = all(v.is_zero_matrix for v in table.values())
            assert integrable == check_admissibility(g, new).admissible == sym_admissible(3, g.constants, new)
            assert integrable == is_integrable(product, J).verdict == reduced_integrability(g, new)


# -- mixed normality ----------------------------------------------------------


def test_example2_intermediate_terms():
    fpk = get_entry("example2_5d").structure()
    report = condition_double_star(fpk)
    assert report.verdict and len(report.residuals) == 10
    tensor, d_term = report.terms[(0, 1)]
    r = fpk.ambient.vector(**{"r*": 1})
    assert tensor == r
    assert d_term == la.neg(r)


def test_nonexample_residuals():
    fpk = get_entry("nonexample_5d").structure()
    report = condition_double_star(fpk)
    assert not report.verdict
    assert report.residual("s", "r*") == (0, 0, 0, 0, -1)
    # full table, frozen from oracles.sym_mixed_normal
    assert report.nonzero() == {
        (0, 2): (0, 0, -1, -1, 0),
        (0, 3): (0, 0, -1, 1, 0),
        (0, 4): (0, 0, 0, 0, -1),
        (1, 2): (0, 0, -1, 1, 0),
        (1, 3): (0, 0, 1, 1, 0),
        (1, 4): (0, 0, 0, 0, 1),
    }


@pytest.mark.parametrize("name", list_entries())
def test_condition_double_star_matches_oracle(name):
    e = get_entry(name)
    fpk = e.structure()
    expected = sym_mixed_normal(e.algebra.dim, e.algebra.constants, e.phi, e.parallelism)
    report = condition_double_star(fpk)
    assert report.residuals == {k: to_fractions(v) for k, v in expected.items()}
    assert report.verdict is e.expected.mixed_normal


def test_phi_hat_and_codim_one_structure():
    fpk = get_entry("example2_5d").structure()
    ph = phi_hat(fpk)
    x1, x2, x3 = fpk.parallelism
    assert ph(x1) == x2 and ph(x2) == la.neg(x1) and la.is_zero(ph(x3))
    codim = codim_one_structure(fpk)
    assert codim.p == 1 and codim.n == 2
    assert psi().matrix == la.mat([[0, -1, 0], [1, 0, 0], [0, 0, 0]])


def test_wrong_corank():
    g = validate_lie_algebra([], 3)
    phi = la.mat([[0, -1, 0], [1, 0, 0], [0, 0, 0]])
    fpk = validate_fpk(g, phi, [g.basis(2)])
    with pytest.raises(WrongCorank):
        condition_double_star(fpk)
    with pytest.raises(WrongCorank):
        build_J_hat(fpk)


def test_J_hat_group_factor_checks():
    fpk = get_entry("example2_5d").structure()
    product, J = build_J_hat(fpk, get_entry("heisenberg3").algebra)
    assert is_almost_complex(J) and product.dim == 8
    with pytest.raises(NotAHomomorphism):
        build_J_hat(fpk, lie_algebra([], 3))


@pytest.mark.parametrize("name", list_entries())
def test_equivalence_harness_on_catalog(name):
    record = equivalence_harness(get_entry(name).structure())
    assert record.all_equal
    assert record.mixed_normal is get_entry(name).expected.mixed_normal


def test_equivalence_harness_after_transport():
    rng = random.Random(2)
    fpk = get_entry("nonexample_5d").structure()
    for _ in range(5):
        record = equivalence_harness(transport(fpk, random_invertible(rng, 5)))
        assert record.verdicts == (False,) * 4


def test_endo_conjugate_round_trip():
    rng = random.Random(4)
    T = EndoTensor(random_invertible(rng, 4))
    P = random_invertible(rng, 4)
    assert T.conjugate(P).conjugate(la.inverse(P)) == T


def test_permuted_lista4_is_rejected_everywhere():
    # distinguished direction moved to xi1: [xi1, xi3] = xi1 leaves span{xi3, xi2}
    g, (x1, x2, x3) = entry_par("bianchi_lista_4")
    par = [x3, x2, x1]
    assert check_admissibility(g, par).code == "span_not_invariant"
    assert reduced_integrability(g, par) is False


def test_reduced_check_on_lista5():
    g, par = entry_par("bianchi_lista_5")
    assert reduced_integrability(g, par) is True
    assert reduced_integrability(*entry_par("bianchi_lista_1")) is True


def test_phi_hat_on_example2():
    fpk = get_entry("example2_5d").structure()
    ph = phi_hat(fpk)
    s, t, p, q, r = (fpk.ambient.basis(i) for i in range(5))
    assert (ph(s), ph(t), ph(p), ph(q)) == (t, la.neg(s), q, la.neg(p))
    assert la.is_zero(ph(r))
    assert (ph @ ph @ ph + ph).is_zero()


def test_phi_hat_with_empty_D():
    fpk = get_entry("heisenberg3").structure()
    assert phi_hat(fpk).matrix == la.mat([[0, -1, 0], [1, 0, 0], [0, 0, 0]])


def test_J_hat_restricts_to_script_J_and_is_integrable_on_example2():
    fpk = get_entry("example2_5d").structure()
    product, J = build_J_hat(fpk)
    x1, x2, x3 = (tuple(v) + (0, 0, 0) for v in fpk.parallelism)
    assert J(x3) == la.unit(8, 7)
    assert J(x1) == x2
    report = is_integrable(product, J)
    assert report.verdict and len(report.residuals) == 28
