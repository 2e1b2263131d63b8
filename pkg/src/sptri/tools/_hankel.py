"""Tool for the Schatten norm inequalities of Hankel matrices."""

import numpy as np

from sptri.core import (
    BoundCheck,
    SptriError,
    TrigPoly,
    besov_quasinorm,
    check_multbound,
    check_polybound,
    format_bound_checks,
    format_value,
    special_form_check,
)
from sptri.mcp import mcp

MAX_TOOL_DEGREE = 1024


def _band_of(phi: TrigPoly) -> int | None:
    """Index ``n`` of the dyadic band ``[2^(n-1) + 1, 2^(n+1) - 1]`` holding the support, if any."""
    n = 1
    while 2 ** (n - 1) + 1 <= phi.min_freq:
        if phi.max_freq <= 2 ** (n + 1) - 1:
            return n
        n += 1
    return None


@mcp.tool
def hankel_bounds(coefficients: list[float], p: float) -> str:
    """Check the Schatten norm inequalities for the Hankel matrix of an analytic polynomial.

    Parameters
    ----------
    coefficients : list[float]
        Taylor coefficients phi(0), phi(1), ..., phi(m-1).
    p : float
        Exponent in (0, 1].

    Returns
    -------
    str
        Markdown table with the polynomial bound, the multiplier bound witnessed by the
        all-ones matrix, and the dyadic-band bound when the support fits a band. The
        Besov quasi-norm is appended when phi(0) = 0.

    Examples
    --------
    >>> hankel_bounds([0, 0, 1, 1], 0.5)
    """
    if not coefficients or len(coefficients) > MAX_TOOL_DEGREE + 1:
        return f"❌ Provide between 1 and {MAX_TOOL_DEGREE + 1} coefficients."
    try:
        phi = TrigPoly(np.asarray(coefficients, dtype=np.float64))
        if phi.is_zero:
            return "❌ The polynomial is zero."
        m = phi.degree + 1
        checks: list[tuple[str, BoundCheck]] = [
            ("polynomial bound", check_polybound(phi, p)),
            ("multiplier bound, all-ones witness", check_multbound(phi, np.ones((m, m)), p)),
        ]
        band = _band_of(phi)
        if band is not None:
            special = special_form_check(phi, band, p)
            checks.append((f"dyadic band {band}", BoundCheck(special.sp_norm, special.upper_env, special.passed)))
        besov = besov_quasinorm(phi, p) if phi.coefficient(0) == 0 else None
    except SptriError as e:
        return f"❌ Cannot check the Hankel bounds.\n\nError: {e}"
    report = format_bound_checks(f"Hankel matrix of order {m}, p = {format_value(p)}", checks)
    if besov is not None:
        report += f"\n\n**Besov quasi-norm:** {format_value(besov)}"
    return report
