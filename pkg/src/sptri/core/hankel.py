"""Hankel matrices of analytic polynomials, Besov quasi-norms and the associated inequality checks."""

import logging
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray

from .bump import v_poly
from .errors import DimensionError, DomainError
from .spcore import as_dense, schatten_quasinorm, schur_product
from .trigpoly import QuadratureConfig, TrigPoly, hadamard_convolve, lp_norm

logger = logging.getLogger(__name__)

# multiplicative slack for inequalities whose right-hand side carries quadrature error
BOUND_SLACK = 1e-5


@dataclass(frozen=True, eq=False)
class HankelBlock:
    """Leading block of the Hankel matrix ``{phi^(j+k)}``.

    Attributes
    ----------
    source : TrigPoly
        The analytic symbol.
    size : int
        Order of the block; ``degree + 1`` unless a larger size was requested.
    matrix : numpy.ndarray
        ``size x size`` array with entry ``(j, k)`` equal to ``phi^(j+k)``.
    """

    source: TrigPoly
    size: int
    matrix: NDArray = field(repr=False)


class BoundCheck(NamedTuple):
    """Both sides of an inequality and whether it held within slack."""

    lhs: float
    rhs: float
    passed: bool


@dataclass(frozen=True)
class SpecialFormCheck:
    """Comparison of a dyadic-band symbol against the two-sided Hankel estimate.

    Attributes
    ----------
    sp_norm : float
        ``||Gamma_phi||_p``.
    lower_env : float | None
        ``d 2^((n+1)/p) ||phi||_p`` when an empirical constant ``d`` was supplied.
    upper_env : float
        ``2^((n+1)/p) ||phi||_p``.
    ratio : float
        ``sp_norm / upper_env``, the empirical constant of the lower half.
    passed : bool
        Whether ``sp_norm <= upper_env`` within slack.
    """

    sp_norm: float
    lower_env: float | None
    upper_env: float
    ratio: float
    passed: bool


def _require_analytic(phi: TrigPoly) -> None:
    if not phi.is_analytic:
        raise DomainError(f"Hankel symbol must be analytic, min_freq = {phi.min_freq}")
    if phi.is_zero:
        raise DomainError("Hankel symbol is the zero polynomial")


def hankel_of(phi: TrigPoly, size: int | None = None) -> HankelBlock:
    """Materialize the Hankel matrix of ``phi``.

    Parameters
    ----------
    phi : TrigPoly
        Analytic polynomial (no negative frequencies).
    size : int | None
        Block order; defaults to ``degree + 1``, which already carries every nonzero entry.

    Returns
    -------
    HankelBlock
        The block with entries ``phi^(j+k)``.
    """
    _require_analytic(phi)
    size = phi.degree + 1 if size is None else size
    if size < phi.degree + 1:
        raise DimensionError(f"block of order {size} truncates a symbol of degree {phi.degree}")
    coefs = phi.dense(0, 2 * size - 2)
    matrix = scipy.linalg.hankel(coefs[:size], coefs[size - 1 :])
    return HankelBlock(source=phi, size=size, matrix=matrix)


def hankel_sp_norm(phi: TrigPoly, p: float) -> float:
    """``||Gamma_phi||_{S_p}``."""
    return schatten_quasinorm(hankel_of(phi).matrix, p)


def _check_exponent(p: float) -> None:
    if not 0.0 < p <= 1.0:
        raise DomainError(f"this inequality needs 0 < p <= 1, got {p}")


def check_polybound(phi: TrigPoly, p: float, cfg: QuadratureConfig | None = None) -> BoundCheck:
    """``||Gamma_phi||_p <= 2^(1/p-1) m^(1/p) ||phi||_p`` for ``phi`` of degree ``m - 1``."""
    _check_exponent(p)
    m = phi.degree + 1
    lhs = hankel_sp_norm(phi, p)
    rhs = 2.0 ** (1.0 / p - 1.0) * m ** (1.0 / p) * lp_norm(phi, p, cfg)
    return BoundCheck(lhs, rhs, lhs <= rhs * (1.0 + BOUND_SLACK))


def check_multbound(phi: TrigPoly, B: ArrayLike, p: float, cfg: QuadratureConfig | None = None) -> BoundCheck:
    """Witnessed form of the multiplier bound ``||Gamma_phi||_{M_p} <= (2m)^(1/p-1) ||phi||_p``.

    Parameters
    ----------
    phi : TrigPoly
        Analytic polynomial of degree ``m - 1``.
    B : array_like
        ``m x m`` witness matrix.
    p : float
        Exponent in ``(0, 1]``.
    cfg : QuadratureConfig | None
        Quadrature parameters for ``||phi||_p``.

    Returns
    -------
    BoundCheck
        ``lhs = ||Gamma_phi * B||_p`` and ``rhs = (2m)^(1/p-1) ||phi||_p ||B||_p``.
    """
    _check_exponent(p)
    block = hankel_of(phi)
    B = as_dense(B)
    if B.shape != block.matrix.shape:
        raise DimensionError(f"witness shape {B.shape} does not match Hankel block {block.matrix.shape}")
    m = block.size
    lhs = schatten_quasinorm(schur_product(block.matrix, B), p)
    rhs = (2.0 * m) ** (1.0 / p - 1.0) * lp_norm(phi, p, cfg) * schatten_quasinorm(B, p)
    return BoundCheck(lhs, rhs, lhs <= rhs * (1.0 + BOUND_SLACK))


def littlewood_paley_pieces(phi: TrigPoly) -> dict[int, TrigPoly]:
    """Nonzero pieces ``phi * V_n`` keyed by ``n``.

    Raises
    ------
    DomainError
        If ``phi`` is not analytic or has a nonzero constant term.
    """
    if not phi.is_analytic:
        raise DomainError(f"Besov decomposition needs an analytic symbol, min_freq = {phi.min_freq}")
    if phi.coefficient(0) != 0:
        raise DomainError("constant term outside Besov decomposition")
    pieces: dict[int, TrigPoly] = {}
    if phi.is_zero:
        return pieces
    n = 0
    # V_n lives on (2^(n-1), 2^(n+1)); nothing survives once 2^(n-1) >= degree
    while n == 0 or 2 ** (n - 1) < phi.degree:
        piece = hadamard_convolve(phi, v_poly(n))
        if not piece.is_zero:
            pieces[n] = piece
        n += 1
    return pieces


def besov_quasinorm(phi: TrigPoly, p: float, cfg: QuadratureConfig | None = None) -> float:
    """``(sum_n 2^n ||phi * V_n||_p^p)^(1/p)`` for analytic ``phi`` with ``phi^(0) = 0``."""
    if p <= 0:
        raise DomainError(f"p must be positive, got {p}")
    total = sum(2.0**n * lp_norm(piece, p, cfg) ** p for n, piece in littlewood_paley_pieces(phi).items())
    return total ** (1.0 / p)


def dyadic_band(n: int) -> tuple[int, int]:
    """Frequency band ``[2^(n-1) + 1, 2^(n+1) - 1]``."""
    if n < 1:
        raise DomainError(f"dyadic band index must be at least 1, got {n}")
    return 2 ** (n - 1) + 1, 2 ** (n + 1) - 1


def special_form_check(
    phi: TrigPoly,
    n: int,
    p: float,
    d: float | None = None,
    cfg: QuadratureConfig | None = None,
) -> SpecialFormCheck:
    """Compare ``||Gamma_phi||_p`` with ``2^((n+1)/p) ||phi||_p`` for ``phi`` in the ``n``-th dyadic band.

    Parameters
    ----------
    phi : TrigPoly
        Symbol supported in ``[2^(n-1) + 1, 2^(n+1) - 1]``.
    n : int
        Band index, at least 1.
    p : float
        Exponent in ``(0, 1]``.
    d : float | None
        Empirical constant for the lower envelope; omitted from the result when ``None``.
    cfg : QuadratureConfig | None
        Quadrature parameters.

    Returns
    -------
    SpecialFormCheck
        Norm, envelopes and ratio.
    """
    _check_exponent(p)
    lo, hi = dyadic_band(n)
    if phi.is_zero or phi.min_freq < lo or phi.max_freq > hi:
        raise DomainError(f"symbol support [{phi.min_freq}, {phi.max_freq}] is outside the band [{lo}, {hi}]")
    sp_norm = hankel_sp_norm(phi, p)
    upper = 2.0 ** ((n + 1) / p) * lp_norm(phi, p, cfg)
    return SpecialFormCheck(
        sp_norm=sp_norm,
        lower_env=None if d is None else d * upper,
        upper_env=upper,
        ratio=sp_norm / upper,
        passed=sp_norm <= upper * (1.0 + BOUND_SLACK),
    )
