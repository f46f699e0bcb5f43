import random
from fractions import Fraction

import pytest

from oracles import random_invertible, smatrix, sym_nijenhuis_table, sym_normal_verdict, to_fractions

from fpknormal import linalg as la
from fpknormal.catalog import get_entry, list_entries
from fpknormal.errors import (
    DependentParallelism,
    DimensionMismatch,
    KernelMismatch,
    NotAHomomorphism,
    NotAlmostComplex,
    NotASubalgebra,
    PhiCubicFails,
)
from fpknormal.fpk import (
    EndoTensor,
    build_product_J,
    condition_star,
    is_almost_complex,
    is_integrable,
    nijenhuis,
    nijenhuis_residuals,
    transport,
    validate_fpk,
)
from fpknormal.lie_core import lie_algebra, validate_lie_algebra

F = Fraction


def rotation_plus(n_extra, constants=()):
    """``R^2 + R^n_extra`` with phi rotating the first plane."""
    dim = 2 + n_extra
    g = validate_lie_algebra(constants, dim)
    phi = [[0] * dim for _ in range(dim)]
    phi[0][1], phi[1][0] = -1, 1
    return g, la.mat(phi), [g.basis(i) for i in range(2, dim)]


# -- validation ---------------------------------------------------------------


def test_validate_computes_dual_forms():
    fpk = get_entry("example2_5d").structure()
    for i, eta in enumerate(fpk.eta):
        assert [la.dot(eta, xi) for xi in fpk.parallelism] == [int(i == j) for j in range(3)]
        assert all(la.dot(eta, d) == 0 for d in fpk.d_basis)
    assert fpk.p == 3 and fpk.n == 1


def test_almost_contact_on_r3():
    g, phi, par = rotation_plus(1)
    fpk = validate_fpk(g, phi, par)
    assert fpk.eta == ((0, 0, 1),)
    assert condition_star(fpk).verdict


def test_failure_order_cubic_first():
    g = lie_algebra([], 3)
    # phi^2 = 0 but phi != 0: cubic identity fails before anything else is looked at
    with pytest.raises(PhiCubicFails):
        validate_fpk(g, [[0, 1, 0], [0, 0, 0], [0, 0, 0]], [])


def test_cubic_checked_before_kernel():
    g = lie_algebra([], 3)
    with pytest.raises(PhiCubicFails):
        validate_fpk(g, [[1, 0, 0], [0, 0, 0], [0, 0, 0]], [g.basis(0)])


def test_kernel_mismatch():
    g, phi, _ = rotation_plus(1)
    with pytest.raises(KernelMismatch):
        validate_fpk(g, phi, [g.basis(0)])
    with pytest.raises(KernelMismatch):
        validate_fpk(g, phi, [])


def test_dependent_parallelism():
    g, phi, _ = rotation_plus(2)
    v = g.basis(2)
    with pytest.raises(DependentParallelism):
        validate_fpk(g, phi, [v, la.scale(F(2), v)])


def test_parallelism_must_span_subalgebra():
    # [e3, e4] = e1 leaves span{e3, e4}
    g, phi, par = rotation_plus(2, [(2, 3, 0, 1)])
    with pytest.raises(NotASubalgebra):
        validate_fpk(g, phi, par)


def test_dimension_mismatch():
    g, phi, par = rotation_plus(1)
    with pytest.raises(DimensionMismatch):
        validate_fpk(g, la.identity(2), par)


@pytest.mark.parametrize("name", list_entries())
def test_structural_identities(name):
    fpk = get_entry(name).structure()
    n = fpk.ambient.dim
    phi = fpk.phi
    assert (phi @ phi @ phi + phi).is_zero()
    assert (phi @ phi).matrix == la.mat_add(la.mat_scale(F(-1), la.identity(n)), fpk.eta_projector())


# -- Nijenhuis ----------------------------------------------------------------


def test_fast_kernel_matches_sympy_oracle():
    rng = random.Random(11)
    for name in ("example2_5d", "nonexample_5d", "bianchi_lista_5", "bianchi_lista_7"):
        g = get_entry(name).algebra
        for _ in range(5):
            T = EndoTensor(random_invertible(rng, g.dim, (1, 2, 3)))
            expected = sym_nijenhuis_table(g.dim, g.constants, smatrix(T.matrix))
            got = nijenhuis_residuals(g, T)
            assert got == {k: to_fractions(v) for k, v in expected.items()}
            for (i, j), v in got.items():
                assert nijenhuis(g, T, g.basis(i), g.basis(j)) == v


def test_nijenhuis_of_zero_and_identity_vanish():
    g = get_entry("nonexample_5d").algebra
    for T in (EndoTensor.zero(5), EndoTensor.identity(5)):
        assert all(not any(v) for v in nijenhuis_residuals(g, T).values())


# -- normality ----------------------------------------------------------------


@pytest.mark.parametrize("name", list_entries())
def test_condition_star_matches_oracle(name):
    e = get_entry(name)
    g = e.algebra
    expected = sym_normal_verdict(g.dim, g.constants, e.phi, e.parallelism)
    assert condition_star(e.structure()).verdict is expected is e.expected.normal


def test_heisenberg_zero_phi_fails_on_parallelism_pair():
    report = condition_star(get_entry("heisenberg3").structure())
    assert not report.verdict
    assert report.parallelism_witness == (0, 1)
    # the residual reduces to -[xi1*, xi2*] = -xi3*
    assert report.parallelism_residuals[(0, 1)] == (0, 0, -1)
    assert report.residual("xi2", "xi1") == (0, 0, 1)


def test_report_terms_split_residuals():
    report = condition_star(get_entry("example2_5d").structure())
    for k, (tensor, d_term) in report.terms.items():
        assert la.add(tensor, d_term) == report.residuals[k]


def test_product_J_is_complex_and_matches_condition_star():
    for name in list_entries():
        fpk = get_entry(name).structure()
        product, J = build_product_J(fpk)
        assert is_almost_complex(J)
        assert product.dim == fpk.ambient.dim + fpk.p
        assert is_integrable(product, J).verdict == condition_star(fpk).verdict


def test_product_J_rejects_wrong_group_factor():
    fpk = get_entry("example2_5d").structure()
    with pytest.raises(NotAHomomorphism):
        build_product_J(fpk, lie_algebra([], 3))
    with pytest.raises(DimensionMismatch):
        build_product_J(fpk, lie_algebra([], 2))


def test_is_integrable_requires_almost_complex():
    g = lie_algebra([], 2)
    with pytest.raises(NotAlmostComplex):
        is_integrable(g, EndoTensor.identity(2))


def test_transport_preserves_verdicts():
    rng = random.Random(5)
    for name in ("example2_5d", "bianchi_lista_1", "bianchi_lista_4"):
        fpk = get_entry(name).structure()
        base = condition_star(fpk).verdict
        for _ in range(5):
            assert condition_star(transport(fpk, random_invertible(rng, fpk.ambient.dim))).verdict == base


def test_heisenberg_contact_structure_is_normal():
    # phi rotates (x, y), xi = z with [x, y] = z: the tensor part z cancels d eta = -z
    g = validate_lie_algebra([(0, 1, 2, 1)], 3)
    phi = la.mat([[0, -1, 0], [1, 0, 0], [0, 0, 0]])
    fpk = validate_fpk(g, phi, [g.basis(2)])
    report = condition_star(fpk)
    assert report.verdict
    assert report.terms[(0, 1)] == ((0, 0, 1), (0, 0, -1))
    assert sym_normal_verdict(3, g.constants, phi, [g.basis(2)])


def test_tilted_contact_structure_is_not_normal():
    # same phi on the algebra [x, z] = x: d eta vanishes but [phi, phi] does not
    g = validate_lie_algebra([(0, 2, 0, 1)], 3)
    phi = la.mat([[0, -1, 0], [1, 0, 0], [0, 0, 0]])
    fpk = validate_fpk(g, phi, [g.basis(2)])
    assert not condition_star(fpk).verdict
    assert not sym_normal_verdict(3, g.constants, phi, [g.basis(2)])
