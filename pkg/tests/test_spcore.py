"""Tests for Schatten quasi-norms, singular spectra and multiplier masks."""

import numpy as np
import pytest

from sptri.core import (
    DegenerateWitnessError,
    DimensionError,
    DomainError,
    MaskKind,
    apply_multiplier_witness,
    column_reverse,
    mask,
    random_matrix,
    schatten_quasinorm,
    schur_product,
    singular_spectrum,
    spectrum_quasinorm,
)


def test_swap_matrix_norm():
    """Both singular values of the swap matrix are 1."""
    swap = np.array([[0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_allclose(singular_spectrum(swap), [1.0, 1.0], rtol=1e-14)
    assert schatten_quasinorm(swap, 0.5) == pytest.approx(4.0, rel=1e-12)
    assert schatten_quasinorm(swap, 1.0) == pytest.approx(2.0, rel=1e-12)


@pytest.mark.parametrize(("p", "expected"), [(1.0, 7.0), (2.0, 5.0), (0.5, (np.sqrt(3.0) + 2.0) ** 2)])
def test_diagonal_norm(p, expected):
    assert schatten_quasinorm(np.diag([3.0, 4.0]), p) == pytest.approx(expected, rel=1e-12)


def test_spectrum_is_sorted_and_sized():
    A = random_matrix(7, 4, seed=0)
    s = singular_spectrum(A)
    assert s.shape == (4,)
    assert np.all(np.diff(s) <= 0)


def test_zero_matrix_has_zero_norm():
    assert schatten_quasinorm(np.zeros((3, 3)), 0.5) == 0.0


def test_clamp_discards_noise_floor():
    assert spectrum_quasinorm(np.array([1.0, 1e-14]), 0.5) == 1.0
    assert spectrum_quasinorm(np.array([1.0, 1e-10]), 0.5) == pytest.approx((1.0 + 1e-5) ** 2, rel=1e-12)


def test_p_triangle_inequality():
    """||A + B||_p^p <= ||A||_p^p + ||B||_p^p for p <= 1."""
    rng = np.random.default_rng(2024)
    for pair in range(200):
        rows, cols = (int(d) for d in rng.integers(1, 17, size=2))
        A, B = random_matrix(rows, cols, [pair, 0]), random_matrix(rows, cols, [pair, 1])
        for p in (0.5, 0.75, 0.9):
            lhs = schatten_quasinorm(A + B, p) ** p
            assert lhs <= (schatten_quasinorm(A, p) ** p + schatten_quasinorm(B, p) ** p) * (1 + 1e-12)


@pytest.mark.parametrize("p", [0.5, 0.7, 1.0, 2.0])
def test_unitary_invariance(rng, p):
    A = random_matrix(9, 6, seed=11, distribution="gaussian-complex")
    U = np.eye(9)[rng.permutation(9)]
    V = np.eye(6)[rng.permutation(6)]
    assert schatten_quasinorm(U @ A @ V, p) == pytest.approx(schatten_quasinorm(A, p), rel=1e-9)
    Q, _ = np.linalg.qr(rng.standard_normal((9, 9)))
    assert schatten_quasinorm(Q @ A, p) == pytest.approx(schatten_quasinorm(A, p), rel=1e-9)


def test_norm_is_non_increasing_in_p():
    A = random_matrix(8, 8, seed=5)
    norms = [schatten_quasinorm(A, p) for p in (0.25, 0.5, 0.7, 0.9, 1.0, 1.5, 2.0, 4.0)]
    assert all(later <= earlier * (1 + 1e-12) for earlier, later in zip(norms, norms[1:], strict=False))


def test_two_norm_is_frobenius():
    A = random_matrix(7, 5, seed=8, distribution="gaussian-complex")
    assert schatten_quasinorm(A, 2.0) == pytest.approx(np.linalg.norm(A, "fro"), rel=1e-12)


@pytest.mark.parametrize("n", [1, 4, 9, 16])
@pytest.mark.parametrize("p", [0.5, 0.75, 1.0])
def test_triangular_and_hankel_masks_have_the_same_witness_ratio(n, p):
    """Reversing the columns of the witness turns the triangle into the anti-triangle."""
    B = random_matrix(n, n, seed=[n, 17])
    chi = apply_multiplier_witness(mask(MaskKind.CHI, n), B, p)
    delta = apply_multiplier_witness(mask(MaskKind.DELTA, n), column_reverse(B), p)
    assert chi == pytest.approx(delta, rel=1e-10)



def test_invalid_inputs():
    with pytest.raises(DomainError):
        schatten_quasinorm(np.eye(2), 0.0)
    with pytest.raises(DimensionError):
        schatten_quasinorm(np.zeros((0, 3)), 1.0)
    with pytest.raises(DimensionError):
        singular_spectrum(np.ones(3))
    with pytest.raises(DomainError):
        singular_spectrum(np.array([[1.0, np.nan]]))


def test_masks():
    np.testing.assert_array_equal(mask("chi", 3).entries, [[1, 1, 1], [0, 1, 1], [0, 0, 1]])
    np.testing.assert_array_equal(mask(MaskKind.DELTA, 3).entries, [[1, 1, 1], [1, 1, 0], [1, 0, 0]])
    with pytest.raises(DomainError):
        mask("chi", 0)
    with pytest.raises(ValueError):
        mask("diagonal", 3)


@pytest.mark.parametrize("n", [1, 2, 5, 16, 33])
def test_column_reversal_maps_chi_to_delta(n):
    np.testing.assert_array_equal(column_reverse(mask(MaskKind.CHI, n)), mask(MaskKind.DELTA, n).entries)


def test_padded_mask():
    padded = mask(MaskKind.DELTA, 2).padded(3)
    np.testing.assert_array_equal(padded, [[1, 1, 0], [1, 0, 0], [0, 0, 0]])
    with pytest.raises(DimensionError):
        mask(MaskKind.DELTA, 4).padded(3)


def test_schur_product():
    A = np.arange(9.0).reshape(3, 3)
    np.testing.assert_array_equal(schur_product(A, mask("chi", 3)), np.triu(A))
    with pytest.raises(DimensionError):
        schur_product(A, np.ones((2, 3)))


def test_multiplier_witness():
    B = random_matrix(5, 5, seed=3)
    assert apply_multiplier_witness(np.ones((5, 5)), B, 0.5) == pytest.approx(1.0, rel=1e-12)
    assert 0.0 < apply_multiplier_witness(mask("chi", 5), B, 0.75)
    with pytest.raises(DegenerateWitnessError):
        apply_multiplier_witness(mask("chi", 5), np.zeros((5, 5)), 0.5)


def test_random_matrix():
    np.testing.assert_array_equal(random_matrix(3, 4, 7), random_matrix(3, 4, 7))
    signs = random_matrix(10, 10, 1, "sign")
    assert set(np.unique(signs)) <= {-1.0, 1.0}
    assert np.iscomplexobj(random_matrix(2, 2, 1, "gaussian-complex"))
    with pytest.raises(DomainError):
        random_matrix(2, 2, 1, "cauchy")
    with pytest.raises(DimensionError):
        random_matrix(0, 2, 1)
