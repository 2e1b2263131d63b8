"""Tools for Schatten quasi-norms of matrices and L^p quasi-norms of Dirichlet kernels."""

import numpy as np

from sptri.core import (
    QuadratureConfig,
    SptriError,
    dirichlet_envelopes,
    dirichlet_kernel,
    dirichlet_refined_envelopes,
    format_dirichlet_report,
    format_schatten_report,
    lp_quadrature,
    singular_spectrum,
    spectrum_quasinorm,
)
from sptri.mcp import mcp

# largest Dirichlet order accepted interactively
MAX_TOOL_ORDER = 2**16


@mcp.tool
def schatten_norm(matrix: list[list[float]], p: float) -> str:
    """Compute the Schatten p-quasi-norm of a real matrix.

    Parameters
    ----------
    matrix : list[list[float]]
        Rows of the matrix; all rows must have the same length.
    p : float
        Exponent, positive. For p < 1 the result is a quasi-norm.

    Returns
    -------
    str
        Markdown report with the value and the leading singular values.

    Examples
    --------
    >>> schatten_norm([[0, 1], [1, 0]], 0.5)  # singular values 1, 1 -> 4
    """
    try:
        arr = np.asarray(matrix, dtype=np.float64)
    except ValueError:
        return "❌ The matrix must be a rectangular list of rows of numbers."
    try:
        spectrum = singular_spectrum(arr)
        value = spectrum_quasinorm(spectrum, p)
    except SptriError as e:
        return f"❌ Cannot compute the Schatten norm.\n\nError: {e}"
    return format_schatten_report(arr.shape, p, value, spectrum)


@mcp.tool
def dirichlet_norm(n: int, p: float, quad_tol: float = 1e-7) -> str:
    """Compute the L^p quasi-norm of the analytic Dirichlet kernel 1 + z + ... + z^(n-1).

    The norm uses the normalized measure dt/2pi on the circle. For 1/2 <= p < 1 the
    report includes the two-sided envelope min{(1-p)^-1, log n}; for 0 < p <= 1 it
    also includes the sharper intermediate envelope.

    Parameters
    ----------
    n : int
        Kernel order, 1 <= n <= 65536.
    p : float
        Exponent, positive.
    quad_tol : float, default: 1e-7
        Relative tolerance of the grid refinement.

    Returns
    -------
    str
        Markdown report with the norm, the quadrature grid and the envelopes.
    """
    if n > MAX_TOOL_ORDER:
        return f"❌ Order {n} is too large for an interactive call (maximum {MAX_TOOL_ORDER})."
    try:
        result = lp_quadrature(dirichlet_kernel(n), p, QuadratureConfig(rel_tol=quad_tol))
        envelope = dirichlet_envelopes(n, p) if 0.5 <= p < 1.0 else None
        refined = dirichlet_refined_envelopes(n, p) if 0.0 < p <= 1.0 else None
    except SptriError as e:
        return f"❌ Cannot compute ||D_{n}||_{p}.\n\nError: {e}"
    return format_dirichlet_report(n, p, result.value, result.grid, envelope, refined)
