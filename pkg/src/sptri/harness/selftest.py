"""Coefficient-exact identities and small-scale oracle comparisons run by ``sptri selftest``."""

import logging
from collections.abc import Callable, Iterator
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.bump import bump_q, lattice_samples, v_poly
from ..core.errors import SptriError
from ..core.formatter import status_marker
from ..core.hankel import dyadic_band, hankel_of, littlewood_paley_pieces
from ..core.spcore import MaskKind, column_reverse, mask, random_matrix, schur_product, singular_spectrum
from ..core.trigpoly import QuadratureConfig, dirichlet_kernel, hadamard_convolve, lp_norm, random_trigpoly
from ..core.witness import (
    DEFAULT_K_MAX,
    convolution_split_identity,
    dirichlet_split_identity,
    shifted_split_identity,
    witness_blocks,
)
from .oracles import dirichlet_modulus, direct_modulus, oracle_lp_norm, oracle_spectrum

logger = logging.getLogger(__name__)

PARTITION_POINTS = 1000
PARTITION_TOL = 1e-12
DYADIC_LIMIT = 1024
MASK_REVERSAL_MAX = 64
SPECTRUM_TOL = 1e-8
DIRICHLET_ORACLE_TOL = 1e-6
POLY_ORACLE_TOL = 1e-5
SELFTEST_SEED = 20240229

Bump = Callable[[ArrayLike], NDArray[np.float64]]


class CheckResult(NamedTuple):
    """Outcome of one named self-test check."""

    name: str
    passed: bool
    detail: str


def check_partition(bump: Bump = bump_q) -> CheckResult:
    """``q(t) + q(t - 1) = 1`` on a 1000-point grid of ``[0, 1]`` that includes both ends."""
    t = np.linspace(0.0, 1.0, PARTITION_POINTS)
    error = np.abs(np.asarray(bump(t)) + np.asarray(bump(t - 1.0)) - 1.0)
    worst = int(np.argmax(error))
    return CheckResult(
        "partition-identity",
        bool(error[worst] <= PARTITION_TOL),
        f"max error {error[worst]:.3g} at t={t[worst]:.6g}",
    )


def check_evenness(bump: Bump = bump_q) -> CheckResult:
    t = np.linspace(-1.5, 1.5, 601)
    values = np.asarray(bump(t))
    even = np.array_equal(values, np.asarray(bump(-t)))
    outside = np.all(values[np.abs(t) >= 1.0] == 0.0) and np.all(np.asarray(bump(np.array([-1.0, 1.0]))) == 0.0)
    passed = bool(even and outside)
    return CheckResult("bump-evenness", passed, "q(t) == q(-t), q(+-1) == 0, supp q in [-1, 1]")


def check_lattice_partition(k_max: int) -> CheckResult:
    """``q(i/m) + q((i-m)/m) == 1`` with no tolerance, for power-of-two and odd lattices."""
    sizes = [2**j for j in range(k_max)] + [3, 5, 7, 11, 101]
    for m in sizes:
        samples = lattice_samples(m)
        i = np.arange(1, m)
        if not np.all(samples[i] + samples[m - i] == 1.0) or samples[0] != 1.0:
            return CheckResult("lattice-partition", False, f"fails at m={m}")
    return CheckResult("lattice-partition", True, f"{len(sizes)} lattice sizes")


def check_dyadic_partition() -> CheckResult:
    """``sum_n V_n^(j) = 1`` for ``1 <= j <= 1024``."""
    total = np.zeros(DYADIC_LIMIT)
    n = 0
    while 2 ** (n - 1) < DYADIC_LIMIT:
        total += v_poly(n).dense(1, DYADIC_LIMIT)
        n += 1
    error = float(np.max(np.abs(total - 1.0)))
    return CheckResult("dyadic-partition", error <= PARTITION_TOL, f"max error {error:.3g} over j <= {DYADIC_LIMIT}")


def check_riesz_split(k_max: int) -> CheckResult:
    for k in range(2, k_max + 1):
        if not dirichlet_split_identity(2 ** (k - 1) - 1):
            return CheckResult("riesz-split", False, f"Dirichlet split fails at k={k}")
        if not convolution_split_identity(k):
            return CheckResult("riesz-split", False, f"convolution split fails at k={k}")
    return CheckResult("riesz-split", True, f"k = 2..{k_max}")


def check_witness_split(k_max: int) -> CheckResult:
    failed = [k for k in range(2, k_max + 1) if not shifted_split_identity(k)]
    detail = f"k = 2..{k_max}" if not failed else f"fails at k={failed}"
    return CheckResult("witness-split", not failed, detail)


def check_hankel_mask(k_max: int, rng: np.random.Generator) -> CheckResult:
    """Schur product with the anti-triangular mask is convolution with the Dirichlet kernel, bit for bit."""
    for k in range(2, k_max + 1):
        gamma, gamma_minus = witness_blocks(k)
        delta = mask(MaskKind.DELTA, 2**k).padded(gamma.size)
        if not np.array_equal(schur_product(gamma.matrix, delta), gamma_minus.matrix):
            return CheckResult("hankel-mask", False, f"witness blocks differ at k={k}")
    for degree in (3, 10, 31, 64):
        phi = random_trigpoly(0, degree, rng)
        block = hankel_of(phi)
        for n in (1, 2, degree // 2 + 1, degree + 1):
            masked = schur_product(block.matrix, mask(MaskKind.DELTA, n).padded(block.size))
            truncated = hankel_of(hadamard_convolve(phi, dirichlet_kernel(n)), size=block.size)
            if not np.array_equal(masked, truncated.matrix):
                return CheckResult("hankel-mask", False, f"random symbol of degree {degree} differs at n={n}")
    return CheckResult("hankel-mask", True, f"witnesses k = 2..{k_max} and random symbols")


def check_mask_reversal() -> CheckResult:
    for n in range(1, MASK_REVERSAL_MAX + 1):
        if not np.array_equal(column_reverse(mask(MaskKind.CHI, n)), mask(MaskKind.DELTA, n).entries):
            return CheckResult("mask-reversal", False, f"fails at n={n}")
    return CheckResult("mask-reversal", True, f"n = 1..{MASK_REVERSAL_MAX}")


def check_besov_pieces(rng: np.random.Generator) -> CheckResult:
    """A symbol in the ``n``-th dyadic band has at most the pieces ``n - 1, n, n + 1``, and they sum back to it."""
    for band in range(1, 7):
        lo, hi = dyadic_band(band)
        phi = random_trigpoly(lo, hi, rng)
        pieces = littlewood_paley_pieces(phi)
        if not set(pieces) <= {band - 1, band, band + 1}:
            return CheckResult("besov-pieces", False, f"band {band} has pieces {sorted(pieces)}")
        total = np.zeros(hi + 1, dtype=np.complex128)
        for piece in pieces.values():
            total += piece.dense(0, hi)
        error = float(np.max(np.abs(total - phi.dense(0, hi))))
        if error > PARTITION_TOL * float(np.max(np.abs(phi.coef))):
            return CheckResult("besov-pieces", False, f"band {band} reassembles with error {error:.3g}")
    return CheckResult("besov-pieces", True, "bands 1..6")


def _small_matrices(rng: np.random.Generator) -> Iterator[NDArray]:
    for rows in range(1, 6):
        for cols in range(1, 6):
            yield random_matrix(rows, cols, rng.integers(2**32), "gaussian-real")
            yield random_matrix(rows, cols, rng.integers(2**32), "gaussian-complex")
    for n in range(1, 6):
        yield mask(MaskKind.CHI, n).entries
        yield mask(MaskKind.DELTA, n).entries


def check_spectrum_oracle(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    count = 0
    for A in _small_matrices(rng):
        fast, slow = singular_spectrum(A), oracle_spectrum(A)
        worst = max(worst, float(np.max(np.abs(fast - slow))) / max(1.0, float(fast[0])))
        count += 1
    return CheckResult("spectrum-oracle", worst <= SPECTRUM_TOL, f"{count} matrices, max deviation {worst:.3g}")


def check_quadrature_oracle(rng: np.random.Generator, samples: int = 5, cfg: QuadratureConfig | None = None):
    """``lp_norm`` against adaptive Simpson for ``D_8`` at ``p = 1/2`` and a few random polynomials."""
    fast = lp_norm(dirichlet_kernel(8), 0.5, cfg)
    slow = oracle_lp_norm(dirichlet_modulus(8), 0.5)
    if abs(fast - slow) > DIRICHLET_ORACLE_TOL * slow:
        return CheckResult("quadrature-oracle", False, f"||D_8||_0.5: {fast!r} vs oracle {slow!r}")
    for i in range(samples):
        degree = int(rng.integers(1, 65))
        p = (0.5, 0.75, 0.9)[i % 3]
        f = random_trigpoly(0, degree, rng)
        fast, slow = lp_norm(f, p, cfg), oracle_lp_norm(direct_modulus(f), p)
        if abs(fast - slow) > POLY_ORACLE_TOL * slow:
            return CheckResult("quadrature-oracle", False, f"degree {degree}, p={p}: {fast!r} vs oracle {slow!r}")
    return CheckResult("quadrature-oracle", True, f"D_8 and {samples} random polynomials")


def run_selftest(
    bump: Bump = bump_q,
    k_max: int = DEFAULT_K_MAX,
    seed: int = SELFTEST_SEED,
    cfg: QuadratureConfig | None = None,
) -> list[CheckResult]:
    """Run every self-test check.

    Parameters
    ----------
    bump : callable
        Bump used by the pointwise partition and evenness checks; injecting a perturbed
        bump makes ``partition-identity`` fail.
    k_max : int
        Largest witness order for the coefficient identities and mask checks.
    seed : int
        Seed of the random symbols and matrices.
    cfg : QuadratureConfig | None
        Quadrature parameters of the oracle comparison.

    Returns
    -------
    list[CheckResult]
        One result per check; a check that raises is reported as failed.
    """
    rng = np.random.default_rng(seed)
    checks: list[tuple[str, Callable[[], CheckResult]]] = [
        ("partition-identity", lambda: check_partition(bump)),
        ("bump-evenness", lambda: check_evenness(bump)),
        ("lattice-partition", lambda: check_lattice_partition(k_max)),
        ("dyadic-partition", check_dyadic_partition),
        ("riesz-split", lambda: check_riesz_split(k_max)),
        ("witness-split", lambda: check_witness_split(k_max)),
        ("hankel-mask", lambda: check_hankel_mask(k_max, rng)),
        ("mask-reversal", check_mask_reversal),
        ("besov-pieces", lambda: check_besov_pieces(rng)),
        ("spectrum-oracle", lambda: check_spectrum_oracle(rng)),
        ("quadrature-oracle", lambda: check_quadrature_oracle(rng, cfg=cfg)),
    ]
    results = []
    for name, check in checks:
        try:
            result = check()
        except SptriError as e:
            result = CheckResult(name, False, f"raised {type(e).__name__}: {e}")
        logger.info("selftest %s: %s", name, "ok" if result.passed else result.detail)
        results.append(result)
    return results


def format_selftest(results: list[CheckResult]) -> str:
    """One line per check with its status marker."""
    return "\n".join(f"{status_marker(r.passed)} {r.name}: {r.detail}" for r in results)
