import math

import numpy as np
import pytest

from sptri.core import (
    BUMP,
    DomainError,
    bump_q,
    dyadic_v,
    fourier_q,
    fq_lp_norm,
    lattice_samples,
    lp_norm,
    periodized_fourier_q,
    q_sampled_poly,
    riesz_plus,
    smoothstep,
    v_poly,
)


def test_smoothstep_values():
    assert smoothstep(0.0) == 0.0
    assert smoothstep(1.0) == 1.0
    assert smoothstep(0.5) == 0.5
    assert smoothstep(-1.0) == 0.0
    assert smoothstep(2.0) == 1.0
    s = np.linspace(0.0, 1.0, 101)
    assert np.all(np.diff(smoothstep(s)) >= 0)


def test_bump_is_even_and_supported_on_unit_interval():
    t = np.linspace(-1.5, 1.5, 301)
    np.testing.assert_array_equal(bump_q(t), bump_q(-t))
    assert bump_q(0.0) == 1.0
    assert bump_q(1.0) == 0.0 and bump_q(-1.0) == 0.0
    assert np.all(bump_q(t[np.abs(t) >= 1.0]) == 0.0)
    np.testing.assert_array_equal(BUMP(t), bump_q(t))


def test_bump_partition_of_unity():
    t = np.linspace(0.0, 1.0, 1001)
    np.testing.assert_allclose(bump_q(t) + bump_q(t - 1.0), 1.0, atol=1e-12)


@pytest.mark.parametrize("m", [1, 2, 3, 8, 101, 1024])
def test_lattice_partition_is_exact(m):
    samples = lattice_samples(m)
    i = np.arange(1, m)
    assert samples[0] == 1.0
    assert np.all(samples[i] + samples[m - i] == 1.0)


def test_lattice_samples_match_bump():
    np.testing.assert_allclose(lattice_samples(16), bump_q(np.arange(16) / 16), atol=1e-14)
    with pytest.raises(DomainError):
        lattice_samples(0)


@pytest.mark.parametrize("m", [1, 2, 5, 64])
def test_sampled_polynomial(m):
    Q = q_sampled_poly(m)
    assert Q.coefficient(0) == 1.0
    assert Q.min_freq >= -(m - 1) and Q.max_freq <= m - 1
    assert all(Q.coefficient(j) == Q.coefficient(-j) for j in range(m))
    assert Q(np.array([1.0 + 0j]))[0].real == pytest.approx(m, rel=1e-12)


def test_sampled_polynomial_of_order_one_is_constant():
    assert q_sampled_poly(1).coeffs == {0: 1.0}


def test_fourier_transform_vanishes_at_nonzero_integers():
    assert fourier_q(0.0) == pytest.approx(1.0, abs=1e-10)
    np.testing.assert_allclose(fourier_q(np.array([1.0, -2.0, 3.0, 7.0])), 0.0, atol=1e-10)
    t = np.linspace(-3.0, 3.0, 61)
    np.testing.assert_allclose(fourier_q(t), fourier_q(-t), atol=1e-13)


def test_fourier_norm():
    # |int Fq| = q(0) = 1
    assert fq_lp_norm(1.0) >= 1.0
    assert fq_lp_norm(0.5) >= fq_lp_norm(1.0)
    with pytest.raises(DomainError):
        fq_lp_norm(1.5)
    with pytest.raises(DomainError):
        fq_lp_norm(0.0)


def test_fourier_norm_on_the_exponent_grid():
    """|Fq| <= 1, so the norm is finite, at least 1 and non-increasing in p."""
    norms = [fq_lp_norm(p) for p in (0.5, 0.6, 0.7, 0.8, 0.9, 1.0)]
    assert all(math.isfinite(v) and v >= 1.0 for v in norms)
    assert all(later <= earlier * (1 + 1e-6) for earlier, later in zip(norms, norms[1:], strict=False))


@pytest.mark.parametrize("m", [1, 2, 8, 64])
@pytest.mark.parametrize("p", [0.5, 0.75, 1.0])
def test_analytic_part_dominates_its_constant_term(m, p):
    plus = riesz_plus(q_sampled_poly(m))
    assert plus.coefficient(0) == 1.0
    assert lp_norm(plus, p) >= 1.0 - 1e-6



@pytest.mark.parametrize("m", [1, 2, 4, 16])
@pytest.mark.parametrize("p", [0.5, 1.0])
def test_sampled_polynomial_obeys_the_sampling_bound(m, p):
    bound = m ** (1.0 - 1.0 / p) * fq_lp_norm(p)
    assert lp_norm(q_sampled_poly(m), p) <= bound * (1 + 1e-5)


def test_periodized_transform_recovers_the_samples():
    m = 4
    t = np.linspace(-0.5, 0.5, 41)
    expected = 1.0 + 2.0 * sum(bump_q(j / m) * np.cos(2.0 * np.pi * j * t) for j in range(1, m))
    np.testing.assert_allclose(periodized_fourier_q(m, t), expected, atol=1e-6)


def test_dyadic_window():
    assert dyadic_v(1.0) == 1.0
    assert dyadic_v(2.0) == 0.0 and dyadic_v(0.5) == 0.0
    assert dyadic_v(4.0) == 0.0
    with pytest.raises(DomainError):
        dyadic_v(0.0)


def test_v_poly():
    assert v_poly(0).coeffs == {1: 1.0}
    for n in range(1, 8):
        V = v_poly(n)
        assert V.min_freq > 2 ** (n - 1) and V.max_freq < 2 ** (n + 1)
        assert V.coefficient(2**n) == 1.0
    with pytest.raises(DomainError):
        v_poly(-1)


def test_dyadic_windows_sum_to_one():
    total = sum(v_poly(n).dense(1, 256) for n in range(10))
    np.testing.assert_allclose(total, 1.0, atol=1e-12)


def test_bump_tag():
    assert BUMP.tag and BUMP.support == (-1.0, 1.0)
    assert not math.isnan(bump_q(0.3))
