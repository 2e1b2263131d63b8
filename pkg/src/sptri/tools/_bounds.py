"""Tools for the bounds on the norm of the triangular projection."""

from sptri.core import (
    SptriError,
    build_witness,
    format_projection_report,
    format_witness_report,
    in_log_regime,
    main_envelopes,
    projection_upper_bound,
)
from sptri.mcp import mcp

# largest witness order built interactively; the Hankel blocks have order 3 * 2^(k-1)
MAX_TOOL_WITNESS_K = 8


@mcp.tool
def projection_bounds(n: int, p: float) -> str:
    """Certified upper bound for the triangular projection of order n on the Schatten class S_p.

    The upper bound is (2n)^(1/p-1) ||D_n||_p. For n >= 2 and 1/2 <= p < 1 the report
    adds the closed-form upper bound and the shape n^(1/p-1) min{(1-p)^-1, log n} of
    the lower bound, whose constant is not known explicitly.

    Parameters
    ----------
    n : int
        Matrix order, at least 1.
    p : float
        Exponent in (0, 1].

    Returns
    -------
    str
        Markdown report.
    """
    try:
        upper = projection_upper_bound(n, p)
    except SptriError as e:
        return f"❌ Cannot bound the projection.\n\nError: {e}"
    envelope = main_envelopes(n, p) if n >= 2 and 0.5 <= p < 1.0 else None
    return format_projection_report(n, p, upper, envelope, in_log_regime(n, p))


@mcp.tool
def witness_bound(k: int, p: float) -> str:
    """Witness lower bound for the triangular projection of order 2^k on S_p.

    The witness is the Hankel matrix of a smooth bump sampled on a dyadic band; the
    ratio of the Schatten quasi-norms of its truncated and full Hankel matrices is a
    certified lower bound. The report also shows the certified upper bound.

    Parameters
    ----------
    k : int
        Witness order, 2 <= k <= 8.
    p : float
        Exponent in (0, 1].

    Returns
    -------
    str
        Markdown report with both bounds and the exact mask identity check.
    """
    if k > MAX_TOOL_WITNESS_K:
        return f"❌ Witness order {k} is too large for an interactive call (maximum {MAX_TOOL_WITNESS_K})."
    try:
        bundle = build_witness(k, p)
        upper = projection_upper_bound(bundle.n_effective, p)
    except SptriError as e:
        return f"❌ Cannot build the witness.\n\nError: {e}"
    return format_witness_report(bundle, upper)
