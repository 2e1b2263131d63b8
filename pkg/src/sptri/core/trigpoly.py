"""Trigonometric polynomials, L^p quasi-norms on the circle, Riesz projections and Dirichlet kernels.

All L^p norms use the normalized measure ``dt / 2pi`` on the circle.
"""

import logging
import math
import os
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from numpy.polynomial import legendre
from numpy.typing import ArrayLike, NDArray

from .errors import AliasingError, ConfigError, DomainError, QuadratureError

logger = logging.getLogger(__name__)

MAX_GRID_ENV = "SPTRI_MAX_GRID"

# |f| below NOISE_FLOOR * sum |f^(j)| is indistinguishable from FFT round-off.
NOISE_FLOOR = 1e-15

GAUSS_NODES = 10
GRADING_RATIO = 0.5
# cells are oversampled at least this much relative to the spectral span
OVERSAMPLING = 8
_CHUNK = 2048

DIRICHLET_LOWER_CONSTANT = math.sqrt(2.0) * (1.0 - math.exp(-1.0)) ** 2 / (4.0 * math.pi)


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


@dataclass(frozen=True)
class QuadratureConfig:
    """Grid parameters for every L^p integration on the circle.

    Attributes
    ----------
    initial_grid : int
        Smallest number of cells tried; a power of two.
    rel_tol : float
        Relative difference between two successive grids that ends the refinement.
    max_grid : int
        Largest number of cells tried before giving up; a power of two.
    """

    initial_grid: int = 1024
    rel_tol: float = 1e-7
    max_grid: int = 2**22

    def __post_init__(self):
        if not _is_power_of_two(self.initial_grid):
            raise ConfigError(f"initial_grid must be a power of two, got {self.initial_grid}")
        if not _is_power_of_two(self.max_grid):
            raise ConfigError(f"max_grid must be a power of two, got {self.max_grid}")
        if self.initial_grid > self.max_grid:
            raise ConfigError(f"initial_grid {self.initial_grid} exceeds max_grid {self.max_grid}")
        if not self.rel_tol > 0:
            raise ConfigError(f"rel_tol must be positive, got {self.rel_tol}")

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None, **overrides) -> "QuadratureConfig":
        """Build a config, taking ``max_grid`` from ``SPTRI_MAX_GRID`` when it is set."""
        environ = os.environ if environ is None else environ
        raw = environ.get(MAX_GRID_ENV)
        if raw is not None and "max_grid" not in overrides:
            try:
                overrides["max_grid"] = int(raw)
            except ValueError as e:
                raise ConfigError(f"{MAX_GRID_ENV} must be an integer, got {raw!r}") from e
        return cls(**overrides)


@dataclass(frozen=True, eq=False)
class TrigPoly:
    """Finitely supported map from integer frequencies to coefficients.

    Coefficients are stored densely from ``offset`` upwards; leading and trailing zeros
    are trimmed on construction, so ``min_freq`` and ``max_freq`` are exact support
    bounds. The zero polynomial has an empty coefficient array.

    Attributes
    ----------
    coef : numpy.ndarray
        ``float64`` or ``complex128`` coefficients for frequencies ``offset, offset + 1, ...``.
    offset : int
        Frequency of ``coef[0]``.
    """

    coef: NDArray = field(repr=False)
    offset: int = 0

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.coef))
        if arr.ndim != 1:
            raise DomainError("coefficients must be one-dimensional")
        arr = arr.astype(np.complex128 if np.iscomplexobj(arr) else np.float64)
        if not np.all(np.isfinite(arr)):
            raise DomainError("coefficients must be finite")
        nonzero = np.flatnonzero(arr)
        offset = int(self.offset)
        if nonzero.size == 0:
            arr, offset = arr[:0], 0
        else:
            offset += int(nonzero[0])
            arr = arr[nonzero[0] : nonzero[-1] + 1].copy()
        arr.setflags(write=False)
        object.__setattr__(self, "coef", arr)
        object.__setattr__(self, "offset", offset)

    @classmethod
    def from_mapping(cls, coeffs: Mapping[int, complex]) -> "TrigPoly":
        """Build a polynomial from a ``{frequency: coefficient}`` mapping."""
        if not coeffs:
            return cls(np.zeros(0))
        lo, hi = min(coeffs), max(coeffs)
        values = np.array(list(coeffs.values()))
        arr = np.zeros(hi - lo + 1, dtype=np.complex128 if np.iscomplexobj(values) else np.float64)
        for j, c in coeffs.items():
            arr[j - lo] = c
        return cls(arr, lo)

    @classmethod
    def monomial(cls, j: int, c: complex = 1.0) -> "TrigPoly":
        """Return ``c z^j``."""
        return cls(np.array([c]), j)

    @property
    def is_zero(self) -> bool:
        return self.coef.size == 0

    @property
    def min_freq(self) -> int:
        return self.offset

    @property
    def max_freq(self) -> int:
        return self.offset + self.coef.size - 1

    @property
    def span(self) -> int:
        """Number of frequencies between the support bounds, inclusive."""
        return self.coef.size

    @property
    def degree(self) -> int:
        return self.max_freq

    @property
    def is_analytic(self) -> bool:
        return self.is_zero or self.min_freq >= 0

    @property
    def coeffs(self) -> dict[int, complex]:
        """Nonzero coefficients keyed by frequency."""
        return {self.offset + int(i): self.coef[i].item() for i in np.flatnonzero(self.coef)}

    def coefficient(self, j: int) -> complex:
        """Coefficient of ``z^j`` (zero outside the support)."""
        i = j - self.offset
        if 0 <= i < self.coef.size:
            return self.coef[i].item()
        return 0.0

    def dense(self, lo: int, hi: int) -> NDArray:
        """Coefficients for frequencies ``lo..hi`` inclusive, zero-padded."""
        out = np.zeros(max(hi - lo + 1, 0), dtype=self.coef.dtype)
        if self.is_zero:
            return out
        a, b = max(lo, self.min_freq), min(hi, self.max_freq)
        if a <= b:
            out[a - lo : b - lo + 1] = self.coef[a - self.offset : b - self.offset + 1]
        return out

    def restrict(self, lo: int | None = None, hi: int | None = None) -> "TrigPoly":
        """Keep the coefficients with ``lo <= j <= hi``."""
        if self.is_zero:
            return self
        lo = self.min_freq if lo is None else max(lo, self.min_freq)
        hi = self.max_freq if hi is None else min(hi, self.max_freq)
        if lo > hi:
            return TrigPoly(np.zeros(0))
        return TrigPoly(self.coef[lo - self.offset : hi - self.offset + 1], lo)

    def __call__(self, z: ArrayLike) -> NDArray:
        """Evaluate by direct (Horner) summation at points ``z``."""
        z = np.asarray(z, dtype=np.complex128)
        if self.is_zero:
            return np.zeros_like(z)
        return np.polynomial.polynomial.polyval(z, self.coef) * z**self.offset

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self.offset == other.offset and np.array_equal(self.coef, other.coef)

    __hash__ = None

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        if not isinstance(other, TrigPoly):
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo = min(self.min_freq, other.min_freq)
        hi = max(self.max_freq, other.max_freq)
        out = np.zeros(hi - lo + 1, dtype=np.result_type(self.coef, other.coef))
        out[self.offset - lo : self.max_freq - lo + 1] += self.coef
        out[other.offset - lo : other.max_freq - lo + 1] += other.coef
        return TrigPoly(out, lo)

    def __neg__(self) -> "TrigPoly":
        return TrigPoly(-self.coef, self.offset)

    def __sub__(self, other: "TrigPoly") -> "TrigPoly":
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c: complex) -> "TrigPoly":
        if isinstance(c, TrigPoly):
            return NotImplemented
        return TrigPoly(self.coef * c, self.offset)

    __rmul__ = __mul__


class QuadratureResult(NamedTuple):
    """Outcome of an L^p integration."""

    value: float
    grid: int
    points: int


class Envelope(NamedTuple):
    """Lower and upper analytic bounds."""

    lower: float
    upper: float


def eval_on_grid(f: TrigPoly, N: int) -> NDArray[np.complex128]:
    """Values ``f(exp(2 pi i k / N))`` for ``k = 0..N-1`` via one inverse FFT.

    Raises
    ------
    AliasingError
        If ``N`` is smaller than the span of ``f``.
    """
    if N < max(1, f.span):
        raise AliasingError(f"grid of {N} points aliases a polynomial spanning {f.span} frequencies")
    buf = np.zeros(N, dtype=np.complex128)
    if not f.is_zero:
        buf[(f.offset + np.arange(f.span)) % N] = f.coef
    return N * np.fft.ifft(buf)


@lru_cache(maxsize=1)
def _gauss_rule() -> tuple[NDArray, NDArray, NDArray]:
    x, w = legendre.leggauss(GAUSS_NODES)
    degrees = np.arange(GAUSS_NODES)
    # nodal values -> Legendre coefficients, exact for the degree GAUSS_NODES - 1 interpolant
    to_modal = (degrees[:, None] + 0.5) * legendre.legvander(x, GAUSS_NODES - 1).T * w[None, :]
    return x, w, to_modal


@lru_cache(maxsize=32)
def _graded_rule(levels: int) -> tuple[NDArray, NDArray]:
    """Nodes and weights on ``[0, 1]`` refined geometrically toward 0."""
    x, w, _ = _gauss_rule()
    edges = GRADING_RATIO ** np.arange(levels + 1)
    edges = np.append(edges, 0.0)
    a, b = edges[1:], edges[:-1]
    nodes = a[:, None] + (b - a)[:, None] * (x[None, :] + 1.0) / 2.0
    weights = (b - a)[:, None] * w[None, :] / 2.0
    return nodes.ravel(), weights.ravel()


def _cell_samples(f: TrigPoly, N: int, x: NDArray) -> NDArray[np.complex128]:
    """Values of ``f`` at the Gauss nodes of each of the ``N`` cells, shape ``(len(x), N)``."""
    h = 2.0 * np.pi / N
    # recentring the spectrum leaves |f| unchanged and keeps each cell well resolved
    r = np.arange(f.span) - f.span // 2
    idx = r % N
    out = np.empty((x.size, N), dtype=np.complex128)
    buf = np.zeros(N, dtype=np.complex128)
    for g, xg in enumerate(x):
        buf[idx] = f.coef * np.exp(1j * r * (xg + 1.0) * h / 2.0)
        out[g] = N * np.fft.ifft(buf)
    return out


def _newton_roots(modal: NDArray, start: NDArray, iterations: int = 30) -> NDArray[np.complex128]:
    deriv = legendre.legder(modal, axis=0)
    z = start.astype(np.complex128)
    with np.errstate(all="ignore"):
        for _ in range(iterations):
            z = z - legendre.legval(z, modal, tensor=False) / legendre.legval(z, deriv, tensor=False)
    return z


def _graded_cells(modal: NDArray, centers: NDArray, p: float, floor: float) -> NDArray[np.float64]:
    """Integrate ``|interpolant|^p`` over ``[-1, 1]`` with a mesh graded toward ``centers``."""
    levels = math.ceil(40.0 / (1.0 + p))
    nodes, weights = _graded_rule(levels)
    out = np.empty(centers.size)
    for start in range(0, centers.size, _CHUNK):
        sl = slice(start, start + _CHUNK)
        c = centers[sl]
        left, right = c + 1.0, 1.0 - c
        pts = np.concatenate(
            [c[None, :] - left[None, :] * nodes[:, None], c[None, :] + right[None, :] * nodes[:, None]]
        )
        wts = np.concatenate([left[None, :] * weights[:, None], right[None, :] * weights[:, None]])
        vals = np.abs(legendre.legval(pts, modal[:, sl], tensor=False))
        vals[vals < floor] = 0.0
        out[sl] = np.sum(wts * vals**p, axis=0)
    return out


def _power_mean(f: TrigPoly, p: float, N: int, floor: float) -> tuple[float, int]:
    """``(1/2pi) int |f|^p`` on ``N`` cells, with cells near zeros of ``f`` refined."""
    x, w, to_modal = _gauss_rule()
    samples = _cell_samples(f, N, x)
    mags = np.abs(samples)
    mags[mags < floor] = 0.0
    cells = w @ mags**p
    points = x.size * N

    top, bottom = mags.max(axis=0), mags.min(axis=0)
    suspect = np.flatnonzero((top > 0.0) & (bottom < 0.5 * top))
    if suspect.size:
        modal = to_modal @ samples[:, suspect]
        start = x[np.argmin(mags[:, suspect], axis=0)]
        roots = _newton_roots(modal, start)
        usable = np.isfinite(roots) & (np.abs(roots.real) <= 2.0) & (np.abs(roots.imag) <= 2.0)
        centers = np.where(usable, np.clip(roots.real, -1.0, 1.0), start)
        cells[suspect] = _graded_cells(modal, np.nan_to_num(centers), p, floor)
        points += suspect.size * 2 * _graded_rule(math.ceil(40.0 / (1.0 + p)))[0].size
    return float(cells.sum()) / (2.0 * N), points


def lp_quadrature(f: TrigPoly, p: float, cfg: QuadratureConfig | None = None) -> QuadratureResult:
    """Normalized L^p quasi-norm of ``f`` together with quadrature metadata.

    The number of cells starts at the smallest power of two that is at least
    ``max(cfg.initial_grid, 8 * span)`` and doubles until two successive values agree to
    ``cfg.rel_tol``. Each cell is integrated with Gauss-Legendre nodes; cells containing a
    (near) zero of ``f`` are re-integrated on a mesh graded toward the zero, which removes
    the cusp of ``|f|^p`` from the error.

    Parameters
    ----------
    f : TrigPoly
        The polynomial.
    p : float
        Exponent in ``(0, inf)``.
    cfg : QuadratureConfig | None
        Grid parameters; defaults to :class:`QuadratureConfig`.

    Returns
    -------
    QuadratureResult
        The value, the final number of cells and the number of integrand evaluations.

    Raises
    ------
    QuadratureError
        If the refinement does not settle before ``cfg.max_grid``.
    """
    if p <= 0:
        raise DomainError(f"p must be positive, got {p}")
    cfg = cfg or QuadratureConfig()
    if f.is_zero:
        return QuadratureResult(0.0, 0, 0)
    N = cfg.initial_grid
    while N < OVERSAMPLING * f.span:
        N *= 2
    floor = NOISE_FLOOR * float(np.abs(f.coef).sum())
    iterates: list[float] = []
    while N <= cfg.max_grid:
        mean, points = _power_mean(f, p, N, floor)
        value = mean ** (1.0 / p)
        logger.debug("lp quadrature: span=%d p=%g N=%d value=%.16g", f.span, p, N, value)
        if iterates and abs(value - iterates[-1]) <= cfg.rel_tol * value:
            return QuadratureResult(value, N, points)
        iterates.append(value)
        N *= 2
    raise QuadratureError(
        f"L^p quadrature did not converge below max_grid={cfg.max_grid} (span={f.span}, p={p})",
        iterates=iterates[-2:],
        grid=N // 2,
    )


def lp_norm(f: TrigPoly, p: float, cfg: QuadratureConfig | None = None) -> float:
    """``((1/2pi) int |f(e^{it})|^p dt)^(1/p)``; see :func:`lp_quadrature`."""
    return lp_quadrature(f, p, cfg).value


def riesz_plus(f: TrigPoly) -> TrigPoly:
    """Keep frequencies ``j >= 0``."""
    return f.restrict(lo=0)


def riesz_strict_plus(f: TrigPoly) -> TrigPoly:
    """Keep frequencies ``j >= 1``."""
    return f.restrict(lo=1)


def riesz_minus(f: TrigPoly) -> TrigPoly:
    """Keep frequencies ``j < 0``."""
    return f.restrict(hi=-1)


def dirichlet_kernel(n: int) -> TrigPoly:
    """Analytic Dirichlet kernel ``1 + z + ... + z^(n-1)``."""
    if n < 1:
        raise DomainError(f"Dirichlet kernel order must be at least 1, got {n}")
    return TrigPoly(np.ones(n), 0)


def _min_term(n: int, p: float, scale: float = 1.0) -> float:
    inverse_gap = math.inf if p >= 1.0 else scale / (1.0 - p)
    return min(inverse_gap, math.log(n))


def dirichlet_envelopes(n: int, p: float) -> Envelope:
    """Two-sided bound for the L^p quasi-norm of the Dirichlet kernel, ``1/2 <= p < 1``.

    ``lower = C min{(1-p)^-1, log n}`` with ``C = sqrt(2)(1-1/e)^2/(4 pi)`` (and the exact
    value 1 at ``n = 1``); ``upper = min{2 (1-p)^-1, log 5n}``.
    """
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    if not 0.5 <= p < 1.0:
        raise DomainError(f"Dirichlet envelopes need 1/2 <= p < 1, got {p}")
    lower = 1.0 if n == 1 else DIRICHLET_LOWER_CONSTANT * _min_term(n, p)
    upper = min(2.0 / (1.0 - p), math.log(5 * n))
    return Envelope(lower, upper)


def dirichlet_refined_envelopes(n: int, p: float) -> Envelope:
    """Sharper intermediate bounds for the Dirichlet kernel, valid for ``0 < p <= 1``.

    ``lower^p = 2^(p/2-1) n^(p-1) pi^-p sum_{k<=n} k^-p`` and
    ``upper = min{(1-p)^(-1/p), log(e pi n / 2)}``.
    """
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    if not 0.0 < p <= 1.0:
        raise DomainError(f"refined envelopes need 0 < p <= 1, got {p}")
    upper = math.log(math.e * math.pi * n / 2.0)
    if p < 1.0:
        upper = min(upper, (1.0 - p) ** (-1.0 / p))
    if n == 1:
        return Envelope(1.0, upper)
    harmonic = float(np.sum(np.arange(1, n + 1, dtype=np.float64) ** -p))
    lower = (2.0 ** (p / 2.0 - 1.0) * n ** (p - 1.0) * math.pi**-p * harmonic) ** (1.0 / p)
    return Envelope(lower, upper)


def hadamard_convolve(f: TrigPoly, g: TrigPoly) -> TrigPoly:
    """Coefficientwise product over the intersection of supports."""
    if f.is_zero or g.is_zero:
        return TrigPoly(np.zeros(0))
    lo, hi = max(f.min_freq, g.min_freq), min(f.max_freq, g.max_freq)
    if lo > hi:
        return TrigPoly(np.zeros(0))
    return TrigPoly(f.dense(lo, hi) * g.dense(lo, hi), lo)


def shift(f: TrigPoly, s: int) -> TrigPoly:
    """Multiply by ``z^s``."""
    return TrigPoly(f.coef, f.offset + s)


def random_trigpoly(
    min_freq: int,
    max_freq: int,
    rng: np.random.Generator,
    complex_coefficients: bool = True,
) -> TrigPoly:
    """Gaussian coefficients on ``min_freq..max_freq``; the end coefficients are kept nonzero."""
    if max_freq < min_freq:
        raise DomainError(f"empty frequency range {min_freq}..{max_freq}")
    size = max_freq - min_freq + 1
    coef = rng.standard_normal(size)
    if complex_coefficients:
        coef = (coef + 1j * rng.standard_normal(size)) / math.sqrt(2.0)
    coef[coef == 0] = 1.0
    return TrigPoly(coef, min_freq)
