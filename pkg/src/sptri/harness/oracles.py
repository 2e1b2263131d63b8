"""Independent reference computations used to cross-check the fast paths.

Neither oracle shares code with the production routines: the integral oracle evaluates
polynomials by direct summation and integrates with adaptive Simpson, the spectrum
oracle goes through the characteristic polynomial of ``A^H A``.
"""

from collections.abc import Callable

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.trigpoly import TrigPoly

SIMPSON_PANELS = 64
SIMPSON_TOL = 1e-11
# intervals shorter than this are accepted whatever their error estimate
SIMPSON_MIN_WIDTH = 1e-12


def adaptive_simpson(
    func: Callable[[NDArray], NDArray],
    a: float,
    b: float,
    tol: float = SIMPSON_TOL,
    panels: int = SIMPSON_PANELS,
) -> float:
    """Integrate a vectorized function over ``[a, b]`` with adaptive Simpson and Richardson correction.

    All intervals of one refinement level are processed together; an interval is accepted
    once ``|S_left + S_right - S| <= 15 eps``, where ``eps`` is ``tol`` times its share of
    ``[a, b]``.
    """
    edges = np.linspace(a, b, panels + 1)
    lo, hi = edges[:-1], edges[1:]
    mid = (lo + hi) / 2.0
    f_lo, f_mid, f_hi = func(lo), func(mid), func(hi)
    whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi)
    scale = max(float(np.abs(whole).sum()), np.finfo(float).tiny)
    total = 0.0
    while lo.size:
        q1, q3 = (lo + mid) / 2.0, (mid + hi) / 2.0
        f_q1, f_q3 = func(q1), func(q3)
        left = (mid - lo) / 6.0 * (f_lo + 4.0 * f_q1 + f_mid)
        right = (hi - mid) / 6.0 * (f_mid + 4.0 * f_q3 + f_hi)
        delta = left + right - whole
        eps = tol * scale * (hi - lo) / (b - a)
        done = (np.abs(delta) <= 15.0 * eps) | (hi - lo < SIMPSON_MIN_WIDTH)
        total += float(np.sum((left + right + delta / 15.0)[done]))
        keep = ~done
        lo, mid, hi = (
            np.concatenate([lo[keep], mid[keep]]),
            np.concatenate([q1[keep], q3[keep]]),
            np.concatenate([mid[keep], hi[keep]]),
        )
        f_lo, f_mid, f_hi = (
            np.concatenate([f_lo[keep], f_mid[keep]]),
            np.concatenate([f_q1[keep], f_q3[keep]]),
            np.concatenate([f_mid[keep], f_hi[keep]]),
        )
        whole = np.concatenate([left[keep], right[keep]])
    return total


def direct_modulus(f: TrigPoly) -> Callable[[NDArray], NDArray]:
    """``t -> |f(e^{it})|`` by explicit summation over the coefficients."""
    freqs = f.offset + np.arange(f.span)

    def modulus(t: NDArray) -> NDArray:
        return np.abs(np.exp(1j * np.outer(t, freqs)) @ f.coef)

    return modulus


def dirichlet_modulus(n: int) -> Callable[[NDArray], NDArray]:
    """``t -> |sin(nt/2) / sin(t/2)|``, with the limit ``n`` at multiples of ``2 pi``."""

    def modulus(t: NDArray) -> NDArray:
        den = np.sin(t / 2.0)
        safe = np.abs(den) > 1e-300
        out = np.full(t.shape, float(n))
        out[safe] = np.abs(np.sin(n * t[safe] / 2.0) / den[safe])
        return out

    return modulus


def oracle_lp_norm(modulus: Callable[[NDArray], NDArray], p: float, tol: float = SIMPSON_TOL) -> float:
    """``((1/2pi) int_0^2pi modulus(t)^p dt)^(1/p)`` by adaptive Simpson."""
    value = adaptive_simpson(lambda t: modulus(t) ** p, 0.0, 2.0 * np.pi, tol=tol)
    return (value / (2.0 * np.pi)) ** (1.0 / p)


def oracle_spectrum(A: ArrayLike) -> NDArray[np.float64]:
    """Singular values as square roots of the roots of the characteristic polynomial of ``A^H A``.

    Only meant for matrices of order five or less.
    """
    arr = np.asarray(A, dtype=np.complex128)
    gram = arr.conj().T @ arr if arr.shape[0] >= arr.shape[1] else arr @ arr.conj().T
    eigenvalues = np.roots(np.poly(gram)).real
    return np.sort(np.sqrt(np.clip(eigenvalues, 0.0, None)))[::-1]


def oracle_quasinorm(A: ArrayLike, p: float) -> float:
    return float(np.sum(oracle_spectrum(A) ** p) ** (1.0 / p))
