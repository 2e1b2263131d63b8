"""Tests for trigonometric polynomials, L^p quadrature and Dirichlet kernels."""

import math

import numpy as np
import pytest

from sptri.core import (
    AliasingError,
    ConfigError,
    DomainError,
    QuadratureConfig,
    QuadratureError,
    TrigPoly,
    dirichlet_envelopes,
    dirichlet_kernel,
    dirichlet_refined_envelopes,
    eval_on_grid,
    hadamard_convolve,
    lp_norm,
    lp_quadrature,
    random_trigpoly,
    riesz_minus,
    riesz_plus,
    riesz_strict_plus,
    shift,
)


def test_trimming_on_construction():
    f = TrigPoly(np.array([0.0, 0.0, 1.0, 2.0, 0.0]), offset=-1)
    assert (f.min_freq, f.max_freq, f.span) == (1, 2, 2)
    assert f.coeffs == {1: 1.0, 2: 2.0}
    assert f.coefficient(0) == 0.0
    np.testing.assert_array_equal(f.dense(0, 3), [0.0, 1.0, 2.0, 0.0])


def test_zero_polynomial():
    zero = TrigPoly(np.zeros(4))
    assert zero.is_zero and zero.span == 0
    assert lp_norm(zero, 0.5) == 0.0
    assert zero + dirichlet_kernel(2) == dirichlet_kernel(2)


def test_from_mapping_and_arithmetic():
    f = TrigPoly.from_mapping({-2: 1.0, 3: 2.0})
    g = TrigPoly.monomial(3, -2.0)
    assert f + g == TrigPoly.monomial(-2)
    assert f - f == TrigPoly(np.zeros(0))
    assert (2 * f).coeffs == {-2: 2.0, 3: 4.0}
    assert shift(f, 2).coeffs == {0: 1.0, 5: 2.0}


def test_invalid_coefficients():
    with pytest.raises(DomainError):
        TrigPoly(np.array([1.0, np.inf]))
    with pytest.raises(DomainError):
        TrigPoly(np.ones((2, 2)))


def test_eval_on_grid_matches_direct_summation():
    f = TrigPoly.from_mapping({-2: 1.0, 0: 0.5, 3: 2j})
    z = np.exp(2j * np.pi * np.arange(8) / 8)
    np.testing.assert_allclose(eval_on_grid(f, 8), f(z), atol=1e-12)
    with pytest.raises(AliasingError):
        eval_on_grid(f, 4)


@pytest.mark.parametrize("p", [0.5, 1.0, 2.0])
def test_monomial_has_unit_norm(p):
    assert lp_norm(TrigPoly.monomial(7), p) == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("n", [1, 2, 9, 64])
def test_parseval(n):
    assert lp_norm(dirichlet_kernel(n), 2.0) == pytest.approx(math.sqrt(n), rel=1e-6)


def test_known_value_of_two_term_kernel():
    """|1 + e^{it}| = 2|cos(t/2)|, whose L^(1/2) quasi-norm has a closed form."""
    mean_cos = math.gamma(0.75) / (math.sqrt(math.pi) * math.gamma(1.25))
    expected = (math.sqrt(2.0) * mean_cos) ** 2
    assert lp_norm(dirichlet_kernel(2), 0.5) == pytest.approx(expected, rel=1e-5)
    assert lp_norm(dirichlet_kernel(2), 1.0) == pytest.approx(4.0 / math.pi, rel=1e-6)


def test_homogeneity():
    f = random_trigpoly(-5, 20, np.random.default_rng(0))
    assert lp_norm(3.0 * f, 0.6) == pytest.approx(3.0 * lp_norm(f, 0.6), rel=1e-6)


def test_quadrature_metadata():
    result = lp_quadrature(dirichlet_kernel(300), 0.75)
    assert result.grid >= 8 * 300
    assert result.grid & (result.grid - 1) == 0
    assert result.points > 0


def test_quadrature_error_when_grid_is_capped():
    cfg = QuadratureConfig(initial_grid=1024, max_grid=1024)
    with pytest.raises(QuadratureError) as excinfo:
        lp_quadrature(dirichlet_kernel(16), 0.5, cfg)
    assert excinfo.value.grid == 1024
    assert len(excinfo.value.iterates) == 1


def test_nonpositive_exponent():
    with pytest.raises(DomainError):
        lp_norm(dirichlet_kernel(3), 0.0)


def test_quadrature_config_validation():
    with pytest.raises(ConfigError):
        QuadratureConfig(initial_grid=1000)
    with pytest.raises(ConfigError):
        QuadratureConfig(initial_grid=4096, max_grid=2048)
    with pytest.raises(ConfigError):
        QuadratureConfig(rel_tol=0.0)


def test_quadrature_config_from_env():
    assert QuadratureConfig.from_env({"SPTRI_MAX_GRID": "4096"}).max_grid == 4096
    assert QuadratureConfig.from_env({}).max_grid == 2**22
    assert QuadratureConfig.from_env({"SPTRI_MAX_GRID": "4096"}, max_grid=8192).max_grid == 8192
    with pytest.raises(ConfigError):
        QuadratureConfig.from_env({"SPTRI_MAX_GRID": "lots"})


def test_riesz_projections_split_exactly():
    f = random_trigpoly(-6, 6, np.random.default_rng(2))
    assert riesz_plus(f) + riesz_minus(f) == f
    assert riesz_strict_plus(f) + TrigPoly.monomial(0, f.coefficient(0)) == riesz_plus(f)
    assert riesz_minus(f).max_freq == -1
    assert riesz_strict_plus(f).min_freq == 1


def test_hadamard_convolution_with_dirichlet_kernel():
    f = random_trigpoly(-3, 10, np.random.default_rng(3))
    assert hadamard_convolve(f, dirichlet_kernel(5)) == f.restrict(0, 4)
    assert hadamard_convolve(f, TrigPoly.monomial(20)).is_zero


def test_dirichlet_kernel():
    assert dirichlet_kernel(4).coeffs == {0: 1.0, 1: 1.0, 2: 1.0, 3: 1.0}
    with pytest.raises(DomainError):
        dirichlet_kernel(0)


def test_dirichlet_kernel_of_order_one():
    assert lp_norm(dirichlet_kernel(1), 0.5) == pytest.approx(1.0, rel=1e-12)
    assert dirichlet_envelopes(1, 0.5).lower == 1.0


@pytest.mark.parametrize("n", [2, 16, 256])
@pytest.mark.parametrize("p", [0.5, 0.75, 0.95])
def test_dirichlet_envelopes_bracket_the_norm(n, p):
    value = lp_norm(dirichlet_kernel(n), p)
    envelope = dirichlet_envelopes(n, p)
    assert envelope.lower <= value <= envelope.upper * (1 + 1e-5)


@pytest.mark.parametrize("n", [2, 8, 64])
@pytest.mark.parametrize("p", [0.5, 0.9, 1.0])
def test_refined_envelopes_bracket_the_norm(n, p):
    value = lp_norm(dirichlet_kernel(n), p)
    refined = dirichlet_refined_envelopes(n, p)
    assert refined.lower * (1 - 1e-5) <= value <= refined.upper * (1 + 1e-5)


def test_refined_upper_envelope_is_no_looser():
    for n in (2, 16, 1024):
        for p in (0.5, 0.7, 0.9, 0.99):
            assert dirichlet_refined_envelopes(n, p).upper <= dirichlet_envelopes(n, p).upper


def test_envelope_domains():
    with pytest.raises(DomainError):
        dirichlet_envelopes(4, 1.0)
    with pytest.raises(DomainError):
        dirichlet_envelopes(4, 0.4)
    with pytest.raises(DomainError):
        dirichlet_refined_envelopes(4, 1.5)
    with pytest.raises(DomainError):
        dirichlet_envelopes(0, 0.5)


def test_random_trigpoly():
    f = random_trigpoly(2, 9, np.random.default_rng(5))
    g = random_trigpoly(2, 9, np.random.default_rng(5))
    assert f == g
    assert (f.min_freq, f.max_freq) == (2, 9)
    assert not np.iscomplexobj(random_trigpoly(0, 3, np.random.default_rng(5), complex_coefficients=False).coef)
    with pytest.raises(DomainError):
        random_trigpoly(3, 2, np.random.default_rng(5))


@pytest.mark.parametrize("n", [1, 5, 64])
def test_dirichlet_kernel_modulus(n):
    N = 1024
    t = 2.0 * np.pi * np.arange(1, N) / N
    values = eval_on_grid(dirichlet_kernel(n), N)
    np.testing.assert_allclose(np.abs(values[1:]), np.abs(np.sin(n * t / 2.0) / np.sin(t / 2.0)), atol=1e-10)
    assert abs(values[0]) == pytest.approx(n, rel=1e-14)


@pytest.mark.parametrize("p", [0.5, 0.75, 1.0])
def test_end_coefficients_are_bounded_by_the_norm(rng, p):
    for _ in range(10):
        lo = int(rng.integers(-8, 4))
        f = random_trigpoly(lo, lo + int(rng.integers(0, 24)), rng)
        norm = lp_norm(f, p)
        assert abs(f.coefficient(f.min_freq)) <= norm * (1 + 1e-6)
        assert abs(f.coefficient(f.max_freq)) <= norm * (1 + 1e-6)
