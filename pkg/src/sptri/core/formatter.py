"""Markdown rendering of lab results for the MCP tools and the self-test report."""

from collections.abc import Iterable, Sequence

from .hankel import BoundCheck
from .trigpoly import Envelope
from .witness import WitnessBundle

# number of leading singular values shown in a report
SPECTRUM_PREVIEW = 8


def format_value(value: float | None) -> str:
    """Render a float with 12 significant digits, ``-`` for missing values."""
    if value is None:
        return "-"
    return f"{value:.12g}"


def status_marker(passed: bool) -> str:
    return "✅" if passed else "❌"


def format_spectrum_preview(spectrum: Sequence[float], limit: int = SPECTRUM_PREVIEW) -> str:
    """Comma separated leading singular values, elided after ``limit`` entries."""
    shown = ", ".join(format_value(float(s)) for s in spectrum[:limit])
    if len(spectrum) > limit:
        shown += f", ... ({len(spectrum) - limit} more)"
    return shown


def format_schatten_report(shape: tuple[int, int], p: float, value: float, spectrum: Sequence[float]) -> str:
    """Report for a single Schatten quasi-norm evaluation.

    Parameters
    ----------
    shape : tuple[int, int]
        Matrix dimensions.
    p : float
        Exponent.
    value : float
        The quasi-norm.
    spectrum : Sequence[float]
        Singular values, non-increasing.

    Returns
    -------
    str
        Markdown report.
    """
    return "\n".join(
        [
            f"# Schatten {format_value(p)}-norm",
            "",
            f"**Shape:** {shape[0]} x {shape[1]}",
            f"**Value:** {format_value(value)}",
            f"**Singular values:** {format_spectrum_preview(spectrum)}",
        ]
    )


def format_envelope_lines(name: str, envelope: Envelope, value: float) -> list[str]:
    passed = envelope.lower <= value <= envelope.upper
    return [
        f"**{name}:** [{format_value(envelope.lower)}, {format_value(envelope.upper)}] {status_marker(passed)}",
    ]


def format_dirichlet_report(
    n: int,
    p: float,
    value: float,
    grid: int,
    envelope: Envelope | None,
    refined: Envelope | None,
) -> str:
    """Report for ``||D_n||_p`` with whichever envelopes apply at this ``p``."""
    lines = [
        f"# Dirichlet kernel D_{n}, p = {format_value(p)}",
        "",
        f"**Norm:** {format_value(value)}",
        f"**Quadrature cells:** {grid}",
    ]
    if envelope is not None:
        lines += format_envelope_lines("Two-sided envelope", envelope, value)
    if refined is not None:
        lines += format_envelope_lines("Refined envelope", refined, value)
    if envelope is None and refined is None:
        lines.append("")
        lines.append("⚠️ No envelope is available for this exponent.")
    return "\n".join(lines)


def format_projection_report(n: int, p: float, upper: float, envelope: Envelope | None, log_regime: bool) -> str:
    """Report for the triangular projection bounds at order ``n``."""
    lines = [
        f"# Triangular projection, n = {n}, p = {format_value(p)}",
        "",
        f"**Certified upper bound:** {format_value(upper)}",
    ]
    if envelope is not None:
        lines.append(f"**Lower shape (no constant):** {format_value(envelope.lower)}")
        lines.append(f"**Closed-form upper bound:** {format_value(envelope.upper)}")
        lines.append(f"**Shape ratio:** {format_value(upper / envelope.lower)}")
    lines.append(f"**Regime:** {'log n' if log_regime else '(1-p)^-1'}")
    return "\n".join(lines)


def format_witness_report(bundle: WitnessBundle, upper: float) -> str:
    """Report for one witness with its certified sandwich."""
    passed = bundle.lower_bound <= upper * (1.0 + 1e-4)
    return "\n".join(
        [
            f"# Witness k = {bundle.k}, p = {format_value(bundle.p)}",
            "",
            f"**Mask order:** {bundle.n_effective}",
            f"**Hankel block:** {bundle.gamma_Pk.size} x {bundle.gamma_Pk.size}",
            f"**Lower bound:** {format_value(bundle.lower_bound)}",
            f"**Upper bound:** {format_value(upper)}",
            f"**Sandwich:** {status_marker(passed)}",
            f"**Mask identity:** {status_marker(bundle.mask_identity_holds())}",
        ]
    )


def format_bound_checks(title: str, checks: Iterable[tuple[str, BoundCheck]]) -> str:
    """Markdown table of inequality checks, one row per labelled check."""
    lines = [f"# {title}", "", "| check | lhs | rhs | status |", "|---|---|---|---|"]
    for label, check in checks:
        lhs, rhs = format_value(check.lhs), format_value(check.rhs)
        lines.append(f"| {label} | {lhs} | {rhs} | {status_marker(check.passed)} |")
    return "\n".join(lines)
