import logging
import math

import numpy as np
import pytest

from sptri.core import (
    DomainError,
    MaskKind,
    build_witness,
    check_witness_order,
    convolution_split_identity,
    dirichlet_doubling_ratio,
    dirichlet_kernel,
    dirichlet_split_check,
    dirichlet_split_identity,
    in_log_regime,
    lp_norm,
    main_envelopes,
    mask,
    projection_upper_bound,
    shifted_split_identity,
    witness_blocks,
    witness_lower_bounds,
    witness_polys,
)


def test_smallest_witness():
    P_k, P_k_minus, P_k_plus = witness_polys(2)
    assert P_k.coeffs == {3: 0.5, 4: 1.0, 5: 0.5}
    assert P_k_minus.coeffs == {3: 0.5}
    assert P_k_plus.coeffs == {5: 0.5}


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6, 7])
def test_witness_support(k):
    P_k, P_k_minus, P_k_plus = witness_polys(k)
    assert (P_k.min_freq, P_k.max_freq) == (2 ** (k - 1) + 1, 3 * 2 ** (k - 1) - 1)
    assert P_k_minus.max_freq < 2**k < P_k_plus.min_freq
    assert P_k.coefficient(2**k) == 1.0


@pytest.mark.parametrize("k", range(2, 9))
def test_split_identities(k):
    assert shifted_split_identity(k)
    assert convolution_split_identity(k)


@pytest.mark.parametrize("m", [1, 2, 3, 7, 8, 100])
def test_dirichlet_split_identity(m):
    assert dirichlet_split_identity(m)


def test_dirichlet_split_identity_domain():
    with pytest.raises(DomainError):
        dirichlet_split_identity(0)


def test_build_witness():
    bundle = build_witness(3, 0.75)
    assert (bundle.n_effective, bundle.gamma_Pk.size, bundle.gamma_Pk_minus.size) == (8, 12, 12)
    assert bundle.mask_identity_holds()
    assert 0.0 < bundle.lower_bound


@pytest.mark.parametrize("k", [2, 4, 6])
def test_witness_blocks_are_masked_copies(k):
    gamma, gamma_minus = witness_blocks(k)
    delta = mask(MaskKind.DELTA, 2**k).padded(gamma.size)
    np.testing.assert_array_equal(gamma.matrix * delta, gamma_minus.matrix)


@pytest.mark.parametrize("k", [3, 5])
@pytest.mark.parametrize("p", [0.5, 1.0])
def test_upper_and_lower_parts_have_equal_norm(k, p):
    _, P_k_minus, P_k_plus = witness_polys(k)
    assert lp_norm(P_k_plus, p) == pytest.approx(lp_norm(P_k_minus, p), rel=1e-6)


@pytest.mark.parametrize("k", [2, 3, 5])
@pytest.mark.parametrize("p", [0.5, 0.75, 1.0])
def test_dirichlet_split_check(k, p):
    assert dirichlet_split_check(k, p).passed


def test_projection_upper_bound():
    for p in (0.5, 0.8, 1.0):
        assert projection_upper_bound(1, p) == pytest.approx(2.0 ** (1.0 / p - 1.0), rel=1e-12)
    with pytest.raises(DomainError):
        projection_upper_bound(0, 0.5)
    with pytest.raises(DomainError):
        projection_upper_bound(4, 1.5)


@pytest.mark.parametrize("n", [4, 32, 512])
@pytest.mark.parametrize("p", [0.5, 0.75, 0.95])
def test_main_envelope_dominates_the_projection_bound(n, p):
    assert projection_upper_bound(n, p) <= main_envelopes(n, p).upper * (1 + 1e-5)


def test_main_envelopes():
    lower, upper = main_envelopes(8, 0.5)
    assert lower == pytest.approx(8 * 2.0)
    assert upper == pytest.approx(16 * math.log(40))
    with pytest.raises(DomainError):
        main_envelopes(1, 0.5)
    with pytest.raises(DomainError):
        main_envelopes(8, 1.0)


def test_in_log_regime():
    assert not in_log_regime(2, 0.99)
    assert in_log_regime(1000, 0.9)
    assert not in_log_regime(1000, 0.5)


def test_doubling_ratio():
    expected = 1.0 / lp_norm(dirichlet_kernel(2), 0.5)
    assert dirichlet_doubling_ratio(1, 0.5) == pytest.approx(expected, rel=1e-10)
    with pytest.raises(DomainError):
        dirichlet_doubling_ratio(0, 0.5)


def test_check_witness_order(caplog):
    with pytest.raises(DomainError):
        check_witness_order(1)
    with pytest.raises(DomainError):
        check_witness_order(13)
    with caplog.at_level(logging.WARNING, logger="sptri.core.witness"):
        check_witness_order(11)
    assert "3072x3072" in caplog.text


def test_witness_exponent_domain():
    with pytest.raises(DomainError):
        build_witness(3, 0.0)
    with pytest.raises(DomainError):
        witness_lower_bounds(3, [0.5, 1.2])


def test_lower_bounds_share_one_decomposition():
    bounds = witness_lower_bounds(3, [0.5, 0.75])
    assert bounds[0.75] == pytest.approx(build_witness(3, 0.75).lower_bound, rel=1e-12)
    assert bounds[0.5] == pytest.approx(build_witness(3, 0.5).lower_bound, rel=1e-12)


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("p", [0.5, 0.75, 0.9, 1.0])
def test_lower_bound_stays_below_upper_bound(k, p):
    lower = build_witness(k, p).lower_bound
    assert lower <= projection_upper_bound(2**k, p) * (1 + 1e-5)
