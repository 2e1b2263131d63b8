"""Dense matrices, singular spectra, Schatten quasi-norms and Schur multiplier masks."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray

from .errors import DegenerateWitnessError, DimensionError, DomainError

logger = logging.getLogger(__name__)

DenseMatrix = NDArray[np.floating] | NDArray[np.complexfloating]
SingularSpectrum = NDArray[np.float64]

# Singular values below this fraction of the largest one are treated as zero.
SPECTRUM_CLAMP = 1e-12


class MaskKind(str, Enum):
    """Kind of 0/1 Schur multiplier mask."""

    CHI = "chi"  # upper triangular, j <= k
    DELTA = "delta"  # anti-triangular Hankel, j + k < n


class Distribution(str, Enum):
    """Entry distributions understood by :func:`random_matrix`."""

    GAUSSIAN_REAL = "gaussian-real"
    GAUSSIAN_COMPLEX = "gaussian-complex"
    SIGN = "sign"


@dataclass(frozen=True, eq=False)
class MaskMatrix:
    """A 0/1 multiplier mask of size ``n x n``.

    Attributes
    ----------
    kind : MaskKind
        Which triangular pattern the mask carries.
    n : int
        Mask order.
    entries : numpy.ndarray
        ``float64`` array of zeros and ones.
    """

    kind: MaskKind
    n: int
    entries: NDArray[np.float64] = field(repr=False)

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def padded(self, size: int) -> NDArray[np.float64]:
        """Embed the mask in the upper-left corner of a ``size x size`` zero matrix."""
        if size < self.n:
            raise DimensionError(f"cannot pad a mask of order {self.n} to size {size}")
        out = np.zeros((size, size))
        out[: self.n, : self.n] = self.entries
        return out


def as_dense(A: ArrayLike | MaskMatrix) -> DenseMatrix:
    """Validate and convert input to a two-dimensional finite array.

    Raises
    ------
    DimensionError
        If the input is not two-dimensional or has a zero dimension.
    DomainError
        If any entry is NaN or infinite.
    """
    arr = np.asarray(A)
    if arr.ndim != 2:
        raise DimensionError(f"expected a matrix, got an array with {arr.ndim} dimensions")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DimensionError("empty matrix")
    if not np.iscomplexobj(arr):
        arr = arr.astype(np.float64, copy=False)
    if not np.all(np.isfinite(arr)):
        raise DomainError("matrix has non-finite entries")
    return arr


def singular_spectrum(A: ArrayLike) -> SingularSpectrum:
    """Compute all singular values of a dense matrix.

    Bidiagonalization followed by implicit QR (LAPACK ``gesvd``) is used; it delivers
    small singular values to high relative accuracy, which matters once they are
    raised to a power ``p < 1``.

    Parameters
    ----------
    A : array_like
        Real or complex matrix with finite entries.

    Returns
    -------
    numpy.ndarray
        The ``min(rows, cols)`` singular values, sorted non-increasing.
    """
    arr = as_dense(A)
    return scipy.linalg.svd(arr, compute_uv=False, lapack_driver="gesvd", check_finite=False)


def spectrum_quasinorm(s: SingularSpectrum, p: float) -> float:
    """Return ``(sum s_j^p)^(1/p)`` of a spectrum after clamping its noise floor."""
    if p <= 0:
        raise DomainError(f"p must be positive, got {p}")
    s = np.asarray(s, dtype=np.float64)
    if s.size == 0:
        return 0.0
    top = float(s.max())
    if top == 0.0:
        return 0.0
    # factor out the top value so tiny p does not overflow
    rel = s / top
    rel = rel[rel >= SPECTRUM_CLAMP]
    return top * float(np.sum(rel**p)) ** (1.0 / p)


def schatten_quasinorm(A: ArrayLike, p: float) -> float:
    """Schatten p-quasi-norm of a matrix.

    Parameters
    ----------
    A : array_like
        Real or complex matrix.
    p : float
        Exponent in ``(0, inf)``.

    Returns
    -------
    float
        ``(sum_j s_j^p)^(1/p)`` over the singular values of ``A``.
    """
    if p <= 0:
        raise DomainError(f"p must be positive, got {p}")
    return spectrum_quasinorm(singular_spectrum(A), p)


def schur_product(A: ArrayLike | MaskMatrix, B: ArrayLike | MaskMatrix) -> DenseMatrix:
    """Entrywise (Schur-Hadamard) product of two matrices of identical shape."""
    a, b = as_dense(A), as_dense(B)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a * b


def mask(kind: MaskKind | str, n: int) -> MaskMatrix:
    """Build the ``chi`` or ``delta`` mask of order ``n``.

    Parameters
    ----------
    kind : MaskKind | str
        ``"chi"`` (entry 1 iff ``j <= k``) or ``"delta"`` (entry 1 iff ``j + k < n``).
    n : int
        Mask order, at least 1.

    Returns
    -------
    MaskMatrix
        The 0-indexed mask.
    """
    kind = MaskKind(kind)
    if n < 1:
        raise DomainError(f"mask order must be at least 1, got {n}")
    idx = np.arange(n)
    if kind is MaskKind.CHI:
        entries = (idx[:, None] <= idx[None, :]).astype(np.float64)
    else:
        entries = (np.add.outer(idx, idx) < n).astype(np.float64)
    return MaskMatrix(kind=kind, n=n, entries=entries)


def column_reverse(A: ArrayLike | MaskMatrix) -> DenseMatrix:
    """Map column ``k`` to column ``cols - 1 - k``."""
    return as_dense(A)[:, ::-1].copy()


def apply_multiplier_witness(M: ArrayLike | MaskMatrix, B: ArrayLike, p: float) -> float:
    """Ratio ``||M * B||_p / ||B||_p``, a lower bound for the multiplier norm of ``M``.

    Parameters
    ----------
    M : array_like | MaskMatrix
        The multiplier, either a mask or a general matrix.
    B : array_like
        Witness matrix of the same shape.
    p : float
        Schatten exponent.

    Returns
    -------
    float
        The witness ratio.

    Raises
    ------
    DegenerateWitnessError
        If ``B`` has zero quasi-norm.
    """
    denominator = schatten_quasinorm(B, p)
    if denominator == 0.0:
        raise DegenerateWitnessError("degenerate witness: B has zero quasi-norm")
    return schatten_quasinorm(schur_product(M, B), p) / denominator


def random_matrix(
    rows: int,
    cols: int,
    seed: int | Sequence[int] | None,
    distribution: Distribution | str = Distribution.GAUSSIAN_REAL,
) -> DenseMatrix:
    """Seeded random matrix.

    Parameters
    ----------
    rows, cols : int
        Positive dimensions.
    seed : int | Sequence[int] | None
        Seed for :func:`numpy.random.default_rng`; a fixed seed gives identical output.
    distribution : Distribution | str
        ``"gaussian-real"``, ``"gaussian-complex"`` or ``"sign"``.

    Returns
    -------
    numpy.ndarray
        The sampled matrix.
    """
    try:
        distribution = Distribution(distribution)
    except ValueError as e:
        raise DomainError(f"unknown distribution {distribution!r}") from e
    if rows < 1 or cols < 1:
        raise DimensionError(f"dimensions must be positive, got {rows}x{cols}")
    rng = np.random.default_rng(seed)
    if distribution is Distribution.GAUSSIAN_REAL:
        return rng.standard_normal((rows, cols))
    if distribution is Distribution.GAUSSIAN_COMPLEX:
        return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2.0)
    return rng.choice(np.array([-1.0, 1.0]), size=(rows, cols))
