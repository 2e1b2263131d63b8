import numpy as np
import pytest

from sptri.core import (
    DimensionError,
    DomainError,
    MaskKind,
    TrigPoly,
    besov_quasinorm,
    check_multbound,
    check_polybound,
    dirichlet_kernel,
    dyadic_band,
    hadamard_convolve,
    hankel_of,
    hankel_sp_norm,
    littlewood_paley_pieces,
    mask,
    random_trigpoly,
    schur_product,
    special_form_check,
    witness_polys,
)


def test_hankel_of_constant():
    block = hankel_of(TrigPoly.monomial(0))
    assert block.size == 1
    np.testing.assert_array_equal(block.matrix, [[1.0]])


def test_hankel_of_z_is_the_swap():
    np.testing.assert_array_equal(hankel_of(TrigPoly.monomial(1)).matrix, [[0.0, 1.0], [1.0, 0.0]])


def test_hankel_of_dirichlet_kernel_is_anti_triangular():
    block = hankel_of(dirichlet_kernel(3))
    np.testing.assert_array_equal(block.matrix, mask(MaskKind.DELTA, 3).entries)


@pytest.mark.parametrize("d", [0, 1, 4, 15])
@pytest.mark.parametrize("p", [0.5, 1.0])
def test_monomial_hankel_norm(d, p):
    assert hankel_sp_norm(TrigPoly.monomial(d), p) == pytest.approx((d + 1) ** (1.0 / p), rel=1e-10)


def test_hankel_structure(rng):
    phi = random_trigpoly(0, 9, rng)
    block = hankel_of(phi, size=12)
    assert block.matrix.shape == (12, 12)
    for j in range(12):
        for k in range(12):
            assert block.matrix[j, k] == phi.coefficient(j + k)


def test_hankel_rejects_bad_symbols():
    with pytest.raises(DomainError):
        hankel_of(TrigPoly.from_mapping({-1: 1.0, 2: 1.0}))
    with pytest.raises(DomainError):
        hankel_of(TrigPoly(np.zeros(0)))
    with pytest.raises(DimensionError):
        hankel_of(dirichlet_kernel(5), size=3)


@pytest.mark.parametrize("degree", [1, 5, 16])
@pytest.mark.parametrize("p", [0.5, 0.75, 1.0])
def test_polynomial_bound(degree, p, rng):
    check = check_polybound(random_trigpoly(0, degree, rng), p)
    assert check.passed
    assert check.lhs <= check.rhs * (1 + 1e-5)


def test_polynomial_bound_exponent_domain():
    with pytest.raises(DomainError):
        check_polybound(dirichlet_kernel(3), 1.5)


def test_multiplier_bound_with_identity_witness():
    check = check_multbound(TrigPoly.monomial(1), np.eye(2), 0.5)
    assert check.lhs == pytest.approx(0.0, abs=1e-12)
    assert check.passed


@pytest.mark.parametrize("p", [0.5, 0.9])
def test_multiplier_bound_with_all_ones_witness(p, rng):
    phi = random_trigpoly(0, 7, rng)
    check = check_multbound(phi, np.ones((8, 8)), p)
    assert check.lhs == pytest.approx(hankel_sp_norm(phi, p), rel=1e-10)
    assert check.passed


def test_multiplier_bound_errors():
    with pytest.raises(DimensionError):
        check_multbound(dirichlet_kernel(3), np.ones((2, 2)), 0.5)
    with pytest.raises(DomainError):
        check_multbound(dirichlet_kernel(3), np.ones((3, 3)), 2.0)


def test_besov_of_z():
    assert besov_quasinorm(TrigPoly.monomial(1), 0.5) == pytest.approx(1.0, rel=1e-12)


def test_besov_homogeneity(rng):
    phi = random_trigpoly(1, 40, rng)
    assert besov_quasinorm(2.5 * phi, 0.7) == pytest.approx(2.5 * besov_quasinorm(phi, 0.7), rel=1e-6)


def test_besov_rejects_constant_term():
    with pytest.raises(DomainError, match="constant term outside Besov decomposition"):
        besov_quasinorm(dirichlet_kernel(4), 0.5)
    with pytest.raises(DomainError):
        littlewood_paley_pieces(TrigPoly.monomial(-1))


def test_littlewood_paley_pieces(rng):
    phi = random_trigpoly(1, 20, rng)
    pieces = littlewood_paley_pieces(phi)
    assert sorted(pieces) == [0, 1, 2, 3, 4, 5]
    total = sum(pieces.values(), TrigPoly(np.zeros(0)))
    np.testing.assert_allclose(total.dense(1, 20), phi.dense(1, 20), atol=1e-12)


def test_dyadic_band():
    assert dyadic_band(1) == (2, 3)
    assert dyadic_band(3) == (5, 15)
    with pytest.raises(DomainError):
        dyadic_band(0)


@pytest.mark.parametrize("n", [1, 3, 5])
def test_special_form_for_monomial(n):
    check = special_form_check(TrigPoly.monomial(2**n), n, 0.5)
    assert check.sp_norm == pytest.approx((2**n + 1) ** 2, rel=1e-10)
    assert check.passed
    assert check.lower_env is None
    assert check.ratio == pytest.approx(check.sp_norm / check.upper_env)


def test_special_form_for_witness_symbol():
    P_k, _, _ = witness_polys(4)
    check = special_form_check(P_k, 4, 0.75, d=0.01)
    assert check.passed
    assert check.lower_env == pytest.approx(0.01 * check.upper_env)


def test_special_form_outside_band():
    with pytest.raises(DomainError, match="outside the band"):
        special_form_check(TrigPoly.monomial(16), 2, 0.5)


@pytest.mark.parametrize("degree", [3, 12])
def test_mask_is_truncation_by_dirichlet_kernel(degree, rng):
    phi = random_trigpoly(0, degree, rng)
    block = hankel_of(phi)
    for n in range(1, degree + 2):
        masked = schur_product(block.matrix, mask(MaskKind.DELTA, n).padded(block.size))
        truncated = hankel_of(hadamard_convolve(phi, dirichlet_kernel(n)), size=block.size)
        np.testing.assert_array_equal(masked, truncated.matrix)
