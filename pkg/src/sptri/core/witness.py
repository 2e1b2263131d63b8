"""Witness polynomials for the triangular projection and the two-sided bounds on its norm.

``P_k = z^(2^k) Q_m`` with ``m = 2^(k-1)`` is split into the part below frequency ``2^k``
(``P_k^-``), the part above it (``P_k^+``) and the single term ``z^(2^k)``. The Hankel
matrix of ``P_k^-`` is the Schur product of the Hankel matrix of ``P_k`` with the
anti-triangular mask of order ``2^k``, so the quotient of their Schatten quasi-norms
bounds the multiplier norm of that mask, and hence of the triangular projection, from
below.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .bump import q_sampled_poly
from .errors import DomainError
from .hankel import BOUND_SLACK, BoundCheck, HankelBlock, hankel_of
from .spcore import MaskKind, mask, singular_spectrum, spectrum_quasinorm
from .trigpoly import (
    Envelope,
    QuadratureConfig,
    TrigPoly,
    dirichlet_kernel,
    hadamard_convolve,
    lp_norm,
    riesz_minus,
    riesz_plus,
    riesz_strict_plus,
    shift,
)

logger = logging.getLogger(__name__)

DEFAULT_K_MAX = 10
HARD_K_MAX = 12


@dataclass(frozen=True, eq=False)
class WitnessBundle:
    """Everything built for one witness order ``k``.

    Attributes
    ----------
    k : int
        Witness order; ``P_k`` has frequencies in ``[2^(k-1) + 1, 3 2^(k-1) - 1]``.
    p : float
        Schatten exponent of ``lower_bound``.
    P_k, P_k_minus, P_k_plus : TrigPoly
        The witness symbol and its parts below and strictly above frequency ``2^k``.
    gamma_Pk, gamma_Pk_minus : HankelBlock
        Hankel blocks of ``P_k`` and ``P_k^-``, both of order ``3 2^(k-1)``.
    lower_bound : float
        ``||Gamma(P_k^-)||_p / ||Gamma(P_k)||_p``.
    n_effective : int
        Order ``2^k`` of the mask whose multiplier norm ``lower_bound`` certifies.
    """

    k: int
    p: float
    P_k: TrigPoly
    P_k_minus: TrigPoly
    P_k_plus: TrigPoly
    gamma_Pk: HankelBlock = field(repr=False)
    gamma_Pk_minus: HankelBlock = field(repr=False)
    lower_bound: float
    n_effective: int

    def mask_identity_holds(self) -> bool:
        """Whether ``Gamma(P_k^-) == Gamma(P_k) * Delta_(2^k)`` entrywise, with no tolerance."""
        delta = mask(MaskKind.DELTA, self.n_effective).padded(self.gamma_Pk.size)
        return bool(np.array_equal(self.gamma_Pk.matrix * delta, self.gamma_Pk_minus.matrix))


def check_witness_order(k: int) -> None:
    """Validate ``k`` against the dense-SVD limits.

    Raises
    ------
    DomainError
        If ``k < 2`` or ``k > HARD_K_MAX``.
    """
    if k < 2:
        raise DomainError(f"witness order must be at least 2, got {k}")
    if k > HARD_K_MAX:
        raise DomainError(f"witness order {k} exceeds the memory guard k <= {HARD_K_MAX}")
    if k > DEFAULT_K_MAX:
        size = 3 * 2 ** (k - 1)
        logger.warning("witness order %d builds dense %dx%d Hankel blocks; expect a long SVD", k, size, size)


def witness_polys(k: int) -> tuple[TrigPoly, TrigPoly, TrigPoly]:
    """``(P_k, P_k^-, P_k^+)``."""
    if k < 2:
        raise DomainError(f"witness order must be at least 2, got {k}")
    q = q_sampled_poly(2 ** (k - 1))
    return shift(q, 2**k), shift(riesz_minus(q), 2**k), shift(riesz_strict_plus(q), 2**k)


def witness_blocks(k: int) -> tuple[HankelBlock, HankelBlock]:
    """Hankel blocks of ``P_k`` and ``P_k^-`` at the common order ``3 2^(k-1)``."""
    check_witness_order(k)
    P_k, P_k_minus, _ = witness_polys(k)
    gamma = hankel_of(P_k)
    return gamma, hankel_of(P_k_minus, size=gamma.size)


def witness_lower_bounds(k: int, ps: list[float]) -> dict[float, float]:
    """``lower_bound`` for several exponents from a single pair of SVDs."""
    if any(p <= 0 or p > 1 for p in ps):
        raise DomainError(f"witness exponents must lie in (0, 1], got {ps}")
    gamma, gamma_minus = witness_blocks(k)
    s_full, s_minus = singular_spectrum(gamma.matrix), singular_spectrum(gamma_minus.matrix)
    return {p: spectrum_quasinorm(s_minus, p) / spectrum_quasinorm(s_full, p) for p in ps}


def build_witness(k: int, p: float) -> WitnessBundle:
    """Construct the witness of order ``k`` and its certified lower bound.

    Parameters
    ----------
    k : int
        Witness order, ``2 <= k <= HARD_K_MAX``; orders above ``DEFAULT_K_MAX`` log a warning.
    p : float
        Exponent in ``(0, 1]``.

    Returns
    -------
    WitnessBundle
        Polynomials, Hankel blocks and the lower bound for ``||P_(2^k)||`` on ``S_p``.

    Examples
    --------
    >>> bundle = build_witness(3, 0.75)
    >>> bundle.n_effective, bundle.gamma_Pk.size
    (8, 12)
    """
    if not 0.0 < p <= 1.0:
        raise DomainError(f"witness exponent must lie in (0, 1], got {p}")
    check_witness_order(k)
    P_k, P_k_minus, P_k_plus = witness_polys(k)
    gamma = hankel_of(P_k)
    gamma_minus = hankel_of(P_k_minus, size=gamma.size)
    lower = spectrum_quasinorm(singular_spectrum(gamma_minus.matrix), p) / spectrum_quasinorm(
        singular_spectrum(gamma.matrix), p
    )
    logger.debug("witness k=%d p=%g lower bound %.12g", k, p, lower)
    return WitnessBundle(
        k=k,
        p=p,
        P_k=P_k,
        P_k_minus=P_k_minus,
        P_k_plus=P_k_plus,
        gamma_Pk=gamma,
        gamma_Pk_minus=gamma_minus,
        lower_bound=lower,
        n_effective=2**k,
    )


def shifted_split_identity(k: int) -> bool:
    """``P_k^+ + z^(2^(k-1)) P_k^- == z^(2^k + 1) D_(2^(k-1) - 1)``, coefficient for coefficient.

    At ``k = 2`` the right-hand side is ``z^5 D_1 = z^5``.
    """
    _, P_k_minus, P_k_plus = witness_polys(k)
    lhs = P_k_plus + shift(P_k_minus, 2 ** (k - 1))
    return lhs == shift(dirichlet_kernel(2 ** (k - 1) - 1), 2**k + 1)


def dirichlet_split_identity(m: int) -> bool:
    """``zbar P^+ Q_(m+1) + z^m P_- Q_(m+1) == D_m``, coefficient for coefficient."""
    if m < 1:
        raise DomainError(f"m must be at least 1, got {m}")
    q = q_sampled_poly(m + 1)
    return shift(riesz_strict_plus(q), -1) + shift(riesz_minus(q), m) == dirichlet_kernel(m)


def convolution_split_identity(k: int) -> bool:
    """``P_k^- == P_k * D_(2^k)`` and ``P_k == P_k^- + z^(2^k) + P_k^+``."""
    P_k, P_k_minus, P_k_plus = witness_polys(k)
    return (
        hadamard_convolve(P_k, dirichlet_kernel(2**k)) == P_k_minus
        and P_k_minus + TrigPoly.monomial(2**k) + P_k_plus == P_k
        and shift(riesz_plus(q_sampled_poly(2 ** (k - 1))), 2**k) == TrigPoly.monomial(2**k) + P_k_plus
    )


def dirichlet_split_check(k: int, p: float, cfg: QuadratureConfig | None = None) -> BoundCheck:
    """``||D_(2^(k-1) - 1)||_p^p <= 2 ||P_k^-||_p^p``."""
    if k < 2:
        raise DomainError(f"witness order must be at least 2, got {k}")
    _, P_k_minus, _ = witness_polys(k)
    lhs = lp_norm(dirichlet_kernel(2 ** (k - 1) - 1), p, cfg) ** p
    rhs = 2.0 * lp_norm(P_k_minus, p, cfg) ** p
    return BoundCheck(lhs, rhs, lhs <= rhs * (1.0 + BOUND_SLACK))


def projection_upper_bound(n: int, p: float, cfg: QuadratureConfig | None = None) -> float:
    """``(2n)^(1/p-1) ||D_n||_p``, an upper bound for the triangular projection on ``S_p``."""
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    if not 0.0 < p <= 1.0:
        raise DomainError(f"projection bound needs 0 < p <= 1, got {p}")
    return (2.0 * n) ** (1.0 / p - 1.0) * lp_norm(dirichlet_kernel(n), p, cfg)


def main_envelopes(n: int, p: float) -> Envelope:
    """Shape of the lower bound (without its constant) and the closed-form upper bound.

    ``lower = n^(1/p-1) min{(1-p)^-1, log n}``;
    ``upper = (2n)^(1/p-1) min{2 (1-p)^-1, log 5n}``.
    """
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    if not 0.5 <= p < 1.0:
        raise DomainError(f"main envelopes need 1/2 <= p < 1, got {p}")
    lower = n ** (1.0 / p - 1.0) * min(1.0 / (1.0 - p), math.log(n))
    upper = (2.0 * n) ** (1.0 / p - 1.0) * min(2.0 / (1.0 - p), math.log(5 * n))
    return Envelope(lower, upper)


def in_log_regime(n: int, p: float) -> bool:
    """Whether ``log n`` is the smaller term, i.e. ``n >= 3`` and ``p >= 1 - 1/log n``."""
    return n >= 3 and p >= 1.0 - 1.0 / math.log(n)


def dirichlet_doubling_ratio(k: int, p: float, cfg: QuadratureConfig | None = None) -> float:
    """``||D_(2^(k-1))||_p / ||D_(2^k)||_p``."""
    if k < 1:
        raise DomainError(f"k must be at least 1, got {k}")
    return lp_norm(dirichlet_kernel(2 ** (k - 1)), p, cfg) / lp_norm(dirichlet_kernel(2**k), p, cfg)
