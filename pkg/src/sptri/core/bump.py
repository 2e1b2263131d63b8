"""The smooth partition-of-unity bump, its Fourier transform, and the polynomials sampled from it."""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.optimize
import scipy.special
from numpy.typing import ArrayLike, NDArray

from .errors import DomainError, QuadratureError
from .trigpoly import NOISE_FLOOR, TrigPoly

logger = logging.getLogger(__name__)

FOURIER_NODES = 4096
FQ_TRUNC_TOL = 1e-8
FQ_MAX_TRUNCATION = 2**20
# samples per unit length when bracketing zeros of the Fourier transform
_ZERO_SCAN_DENSITY = 32
_JACOBI_NODES = 24
_CHUNK = 1024


@dataclass(frozen=True)
class BumpSpec:
    """Description of the bump construction used throughout the lab.

    Attributes
    ----------
    tag : str
        Identifier written to run manifests.
    support : tuple[float, float]
        Support of ``q``.
    """

    tag: str = "smoothstep-exp(-1/t)"
    support: tuple[float, float] = (-1.0, 1.0)

    def __call__(self, t: ArrayLike) -> NDArray[np.float64]:
        return bump_q(t)


BUMP = BumpSpec()


def _flat(t: NDArray) -> NDArray:
    """``exp(-1/t)`` for ``t > 0`` and 0 elsewhere."""
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def smoothstep(s: ArrayLike) -> NDArray[np.float64] | float:
    """C-infinity step ``g(s) = h(s) / (h(s) + h(1-s))`` with ``h(t) = exp(-1/t)``.

    ``g`` vanishes for ``s <= 0``, equals 1 for ``s >= 1`` and is flat to all orders at
    both ends.
    """
    s_arr = np.asarray(s, dtype=np.float64)
    a, b = _flat(np.atleast_1d(s_arr)), _flat(np.atleast_1d(1.0 - s_arr))
    out = a / (a + b)
    return out.reshape(s_arr.shape) if s_arr.ndim else float(out[0])


def bump_q(t: ArrayLike) -> NDArray[np.float64] | float:
    """Even bump ``q(t) = g(1 - |t|)`` supported on ``[-1, 1]`` with ``q(t) + q(t-1) = 1`` on ``[0, 1]``."""
    return smoothstep(1.0 - np.abs(np.asarray(t, dtype=np.float64)))


@lru_cache(maxsize=256)
def lattice_samples(m: int) -> NDArray[np.float64]:
    """``q(k/m)`` for ``k = 0..m-1``.

    The argument is formed from the integer ratio ``(m - k)/m`` and the upper half is
    evaluated as ``1 - g(k/m)``, so that ``q(i/m) + q((i-m)/m) == 1`` holds exactly in
    floating point.
    """
    if m < 1:
        raise DomainError(f"lattice size must be at least 1, got {m}")
    k = np.arange(m)
    edge = m - k  # distance to the end of the support, in lattice steps
    direct = 2 * edge <= m
    out = np.empty(m)
    out[direct] = smoothstep(edge[direct] / m)
    out[~direct] = 1.0 - smoothstep(k[~direct] / m)
    out.setflags(write=False)
    return out


def q_sampled_poly(m: int) -> TrigPoly:
    """``Q_m(z) = sum_k q(k/m) z^k``, a real even polynomial of degree at most ``m - 1``."""
    if m < 1:
        raise DomainError(f"m must be at least 1, got {m}")
    half = lattice_samples(m)
    return TrigPoly(np.concatenate([half[:0:-1], half]), -(m - 1))


@lru_cache(maxsize=1)
def _fourier_nodes() -> tuple[NDArray, NDArray]:
    x = np.linspace(-1.0, 1.0, FOURIER_NODES + 1)
    weights = np.asarray(bump_q(x)) * (2.0 / FOURIER_NODES)
    keep = weights > 0
    return x[keep], weights[keep]


def fourier_q(t: ArrayLike) -> NDArray[np.float64] | float:
    """``(Fq)(t) = int q(x) exp(-2 pi i x t) dx`` by the trapezoidal rule on ``[-1, 1]``.

    ``q`` is even, so only the cosine part survives and the result is real and even.
    """
    t_arr = np.asarray(t, dtype=np.float64)
    flat = np.atleast_1d(t_arr).ravel()
    x, weights = _fourier_nodes()
    out = np.empty(flat.size)
    for start in range(0, flat.size, _CHUNK):
        chunk = flat[start : start + _CHUNK]
        out[start : start + _CHUNK] = np.cos(2.0 * np.pi * np.outer(chunk, x)) @ weights
    return out.reshape(t_arr.shape) if t_arr.ndim else float(out[0])


@lru_cache(maxsize=8)
def _jacobi_rule(alpha: float, beta: float) -> tuple[NDArray, NDArray]:
    return scipy.special.roots_jacobi(_JACOBI_NODES, alpha, beta)


def _panel_integral(a: NDArray, b: NDArray, alpha: float, beta: float, p: float, floor: float) -> float:
    """Sum over panels of ``int_a^b |Fq|^p`` with the endpoint behaviour folded into the rule."""
    if a.size == 0:
        return 0.0
    x, w = _jacobi_rule(alpha, beta)
    mid, half = (a + b) / 2.0, (b - a) / 2.0
    t = mid[:, None] + half[:, None] * x[None, :]
    values = np.abs(fourier_q(t))
    values[values < floor] = 0.0
    weight = (1.0 - x) ** alpha * (1.0 + x) ** beta
    return float(np.sum(half[:, None] * w[None, :] * values**p / weight[None, :]))


def _zero_in(a: float, b: float) -> float:
    try:
        return scipy.optimize.brentq(fourier_q, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    except ValueError as e:
        raise QuadratureError(f"cannot bracket a zero of Fq in [{a}, {b}]: {e}") from e


def _half_line_integral(p: float, T: float) -> float:
    """``int_0^T |Fq|^p``, splitting at the zeros of ``Fq``.

    ``q`` is a partition of unity, so ``Fq`` vanishes at every nonzero integer; those
    zeros are taken as known and only the remaining sign changes are bracketed.
    """
    floor = NOISE_FLOOR * fourier_q(0.0)
    u = np.linspace(0.0, T, int(T * _ZERO_SCAN_DENSITY) + 1)
    values = fourier_q(u)
    values[np.abs(values) < floor] = 0.0
    significant = np.flatnonzero(values)
    end = T if significant[-1] + 1 >= u.size else float(u[significant[-1] + 1])
    live = u <= end
    u, values = u[live], values[live]

    zeros = [float(j) for j in range(1, math.floor(end) + 1)]
    zeros += [float(u[i]) for i in np.flatnonzero(values[1:-1] == 0.0) + 1]
    for i in np.flatnonzero(values[:-1] * values[1:] < 0):
        zeros.append(_zero_in(u[i], u[i + 1]))
    zeros = np.unique(zeros)
    zeros = zeros[zeros < end]

    if zeros.size == 0:
        return _panel_integral(np.array([0.0]), np.array([end]), 0.0, 0.0, p, floor)
    # Jacobi weight (1-x)^alpha (1+x)^beta: alpha at the right end, beta at the left end
    first = _panel_integral(np.array([0.0]), zeros[:1], p, 0.0, p, floor)
    inner = _panel_integral(zeros[:-1], zeros[1:], p, p, p, floor)
    last = _panel_integral(zeros[-1:], np.array([end]), 0.0, p, p, floor) if end > zeros[-1] else 0.0
    return first + inner + last


@lru_cache(maxsize=64)
def fq_lp_norm(p: float, trunc_tol: float = FQ_TRUNC_TOL) -> float:
    """``||Fq||_{L^p(R)}`` for ``0 < p <= 1``.

    The half-line integral over ``[0, T]`` is computed on panels between the zeros of
    ``Fq`` with Gauss-Jacobi rules, and ``T`` doubles from 8 until the increment falls
    below ``trunc_tol``.

    Raises
    ------
    QuadratureError
        If the truncation has not settled by ``T = 2**20``.
    """
    if not 0.0 < p <= 1.0:
        raise DomainError(f"fq_lp_norm needs 0 < p <= 1, got {p}")
    T = 8.0
    iterates: list[float] = []
    while T <= FQ_MAX_TRUNCATION:
        total = 2.0 * _half_line_integral(p, T)
        if iterates and abs(total - iterates[-1]) <= trunc_tol * total:
            logger.debug("fq_lp_norm: p=%g settled at T=%g", p, T)
            return total ** (1.0 / p)
        iterates.append(total)
        T *= 2.0
    raise QuadratureError(f"||Fq||_p did not settle for p={p}", iterates=iterates[-2:], grid=int(T / 2))


def dyadic_v(x: ArrayLike) -> NDArray[np.float64] | float:
    """Dyadic window ``v(x) = q(log2 x)``, supported on ``[1/2, 2]``."""
    x_arr = np.asarray(x, dtype=np.float64)
    if np.any(x_arr <= 0):
        raise DomainError("dyadic window is defined for x > 0 only")
    return bump_q(np.log2(x_arr))


def v_poly(n: int) -> TrigPoly:
    """``V_n(z) = sum_{j>0} v(2^-n j) z^j``, supported in ``(2^(n-1), 2^(n+1))``."""
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    lo = 2 ** (n - 1) + 1 if n >= 1 else 1
    j = np.arange(lo, 2 ** (n + 1))
    return TrigPoly(np.asarray(bump_q(np.log2(j) - n)), lo)


def periodized_fourier_q(m: int, t: ArrayLike, cutoff: float = 200.0) -> NDArray[np.float64]:
    """``sum_k m (Fq)(m (t + k))`` truncated to ``|m (t + k)| <= cutoff``."""
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    reach = math.ceil(cutoff / m) + 1
    shifts = np.arange(-reach, reach + 1)
    arg = m * (t_arr[:, None] + shifts[None, :])
    values = np.where(np.abs(arg) <= cutoff, fourier_q(np.clip(arg, -cutoff, cutoff)), 0.0)
    return m * values.sum(axis=1)
