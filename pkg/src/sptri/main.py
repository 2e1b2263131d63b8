import enum
import logging
import sys
from collections.abc import Callable
from dataclasses import asdict
from pathlib import Path

import click

# Import tools to register them with the MCP server
from . import tools  # noqa: F401
from .core import BUMP, ConfigError, DomainError, QuadratureConfig, status_marker
from .core.trigpoly import MAX_GRID_ENV
from .core.witness import DEFAULT_K_MAX, HARD_K_MAX
from .harness import (
    DEFAULT_BUMP_P_GRID,
    DEFAULT_M_GRID,
    DEFAULT_N_GRID,
    DEFAULT_P_GRID,
    INT_GRID,
    P_GRID,
    OutputFormat,
    RunManifest,
    SweepOutcome,
    cmd_bump,
    cmd_dirichlet,
    cmd_hankel_check,
    cmd_witness,
    format_selftest,
    library_versions,
    run_selftest,
    tool_version,
    write_manifest,
    write_records,
)

logger = logging.getLogger(__name__)

HANKEL_P_GRID = "0.5,0.75,0.9"


class EnvironmentType(enum.Enum):
    """Enum to define environment type."""

    PRODUCTION = enum.auto()
    DEVELOPMENT = enum.auto()


def quadrature_options(func: Callable) -> Callable:
    """Options shared by every command that integrates on the circle."""
    func = click.option(
        "--quad-tol",
        "quad_tol",
        type=float,
        default=1e-7,
        show_default=True,
        help="Relative difference between successive grids that ends the refinement.",
    )(func)
    func = click.option(
        "--max-grid",
        "max_grid",
        type=int,
        default=2**22,
        show_default=True,
        envvar=MAX_GRID_ENV,
        help=f"Largest quadrature grid, a power of two. Also read from {MAX_GRID_ENV}.",
    )(func)
    return func


def output_options(func: Callable) -> Callable:
    """``--out``, ``--format`` and ``--jobs``."""
    func = click.option(
        "--out",
        "out",
        type=click.Path(dir_okay=False, writable=True, path_type=Path),
        default=None,
        help="Output file; a manifest is written next to it. Defaults to stdout without manifest.",
    )(func)
    func = click.option(
        "--format",
        "fmt",
        type=click.Choice([fmt.value for fmt in OutputFormat], case_sensitive=False),
        default=OutputFormat.CSV.value,
        show_default=True,
        help="Record format.",
    )(func)
    func = click.option(
        "--jobs", "jobs", type=click.IntRange(min=1), default=1, show_default=True, help="Worker processes."
    )(func)
    return func


def _quadrature_config(quad_tol: float, max_grid: int) -> QuadratureConfig:
    try:
        return QuadratureConfig(rel_tol=quad_tol, max_grid=max_grid)
    except ConfigError as e:
        raise click.UsageError(str(e)) from e


def _run_sweep(
    command: str,
    parameters: dict,
    sweep: Callable[[], SweepOutcome],
    cfg: QuadratureConfig,
    out: Path | None,
    fmt: str,
    seed: int | None = None,
) -> None:
    """Run a sweep, write its records and manifest, report the gates and set the exit code."""
    manifest = RunManifest(
        tool_version=tool_version(),
        command=command,
        parameters=parameters,
        bump=BUMP.tag,
        quadrature=asdict(cfg),
        seed=seed,
        libraries=library_versions(),
    )
    try:
        outcome = sweep()
    except (DomainError, ConfigError) as e:
        raise click.UsageError(str(e)) from e

    if out is None:
        write_records(outcome.records, click.get_text_stream("stdout"), fmt)
    else:
        with out.open("w", encoding="utf-8", newline="") as f:
            write_records(outcome.records, f, fmt)
        manifest.finish()
        write_manifest(manifest, out)

    for record in outcome.failed_records:
        logger.warning("row failed: %s k=%s n=%d p=%g", record.experiment, record.k, record.n, record.p)
    for gate in outcome.gates:
        logger.info("gate %s: %s (%s)", gate.name, "passed" if gate.passed else "FAILED", gate.detail)
        click.echo(f"{status_marker(gate.passed)} {gate.name}: {gate.detail}", err=True)
    if not outcome.passed:
        click.echo(f"❌ {command}: {len(outcome.failed_records)} failed rows", err=True)
        sys.exit(1)


@click.group(invoke_without_command=True)
@click.option("--verbose", "verbose", is_flag=True, help="Log progress and gate results.")
@click.option("-v", "--version", "version", is_flag=True, help="Get version of package.")
@click.pass_context
def cli(ctx: click.Context, verbose: bool = False, version: bool = False):
    """Numerical lab for the triangular projection on Schatten classes.

    Every sweep writes one record per grid point (CSV by default) and exits with 0 when
    all certified rows and aggregate gates pass, 1 when one of them fails and 2 on
    usage or configuration errors.
    """
    if version:
        from sptri import __version__

        click.echo(__version__)
        sys.exit(0)
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


@cli.command(name="dirichlet")
@click.option("--n", "n_list", type=INT_GRID, default=DEFAULT_N_GRID, show_default=True, help="Kernel orders.")
@click.option("--p", "p_list", type=P_GRID, default=DEFAULT_P_GRID, show_default=True, help="Exponents.")
@quadrature_options
@output_options
def dirichlet(n_list, p_list, quad_tol, max_grid, out, fmt, jobs):
    """``||D_n||_p`` against its two-sided envelopes."""
    cfg = _quadrature_config(quad_tol, max_grid)
    parameters = {"n": n_list, "p": p_list, "jobs": jobs}
    _run_sweep("dirichlet", parameters, lambda: cmd_dirichlet(n_list, p_list, cfg, jobs), cfg, out, fmt)


@cli.command(name="witness")
@click.option(
    "--k-max",
    "k_max",
    type=click.IntRange(2, HARD_K_MAX),
    default=DEFAULT_K_MAX,
    show_default=True,
    help=f"Largest witness order; above {DEFAULT_K_MAX} the dense SVDs get slow.",
)
@click.option("--k-min", "k_min", type=click.IntRange(2, HARD_K_MAX), default=2, show_default=True)
@click.option("--p", "p_list", type=P_GRID, default=DEFAULT_P_GRID, show_default=True, help="Exponents in (0, 1].")
@click.option("--include-p1", "include_p1", is_flag=True, help="Add p = 1 rows and the logarithmic growth gates.")
@quadrature_options
@output_options
def witness(k_max, k_min, p_list, include_p1, quad_tol, max_grid, out, fmt, jobs):
    """Witness lower bounds against the certified upper bound of the triangular projection."""
    cfg = _quadrature_config(quad_tol, max_grid)
    parameters = {"k_min": k_min, "k_max": k_max, "p": p_list, "include_p1": include_p1, "jobs": jobs}
    _run_sweep(
        "witness",
        parameters,
        lambda: cmd_witness(k_max, p_list, cfg, include_p1=include_p1, jobs=jobs, k_min=k_min),
        cfg,
        out,
        fmt,
    )


@cli.command(name="hankel-check")
@click.option("--trials", "trials", type=click.IntRange(min=1), default=100, show_default=True)
@click.option("--m-max", "m_max", type=click.IntRange(min=1), default=128, show_default=True)
@click.option("--seed", "seed", type=int, default=42, show_default=True)
@click.option("--p", "p_list", type=P_GRID, default=HANKEL_P_GRID, show_default=True, help="Exponents in (0, 1].")
@quadrature_options
@output_options
def hankel_check(trials, m_max, seed, p_list, quad_tol, max_grid, out, fmt, jobs):
    """Randomized suite for the Hankel inequalities, plus Besov and dyadic-band reports."""
    cfg = _quadrature_config(quad_tol, max_grid)
    parameters = {"trials": trials, "m_max": m_max, "p": p_list, "jobs": jobs}
    _run_sweep(
        "hankel-check",
        parameters,
        lambda: cmd_hankel_check(trials, m_max, p_list, seed, cfg, jobs),
        cfg,
        out,
        fmt,
        seed=seed,
    )


@cli.command(name="bump-check")
@click.option("--m", "m_list", type=INT_GRID, default=DEFAULT_M_GRID, show_default=True, help="Lattice sizes.")
@click.option("--p", "p_list", type=P_GRID, default=DEFAULT_BUMP_P_GRID, show_default=True, help="Exponents in (0, 1].")
@quadrature_options
@output_options
def bump_check(m_list, p_list, quad_tol, max_grid, out, fmt, jobs):
    """``||Q_m||_p`` against ``m^(1-1/p) ||Fq||_p`` and the jump of its analytic part."""
    cfg = _quadrature_config(quad_tol, max_grid)
    parameters = {"m": m_list, "p": p_list, "jobs": jobs}
    _run_sweep("bump-check", parameters, lambda: cmd_bump(m_list, p_list, cfg, jobs), cfg, out, fmt)


@cli.command(name="selftest")
@click.option("--k-max", "k_max", type=click.IntRange(2, HARD_K_MAX), default=DEFAULT_K_MAX, show_default=True)
def selftest(k_max):
    """Coefficient-exact identities and small-scale oracle comparisons."""
    results = run_selftest(k_max=k_max)
    click.echo(format_selftest(results))
    failed = [r.name for r in results if not r.passed]
    if failed:
        click.echo(f"❌ failed: {', '.join(failed)}", err=True)
        sys.exit(1)


@cli.command(name="serve")
@click.option(
    "-t",
    "--transport",
    "transport",
    type=str,
    help="MCP transport option. Defaults to 'stdio'.",
    default="stdio",
    envvar="MCP_TRANSPORT",
)
@click.option(
    "-p",
    "--port",
    "port",
    type=int,
    help="Port of MCP server. Defaults to '8000'",
    default=8000,
    envvar="MCP_PORT",
    required=False,
)
@click.option(
    "-h",
    "--host",
    "hostname",
    type=str,
    help="Hostname of MCP server. Defaults to '0.0.0.0'",
    default="0.0.0.0",
    envvar="MCP_HOSTNAME",
    required=False,
)
@click.option(
    "-e",
    "--env",
    "environment",
    type=click.Choice(EnvironmentType, case_sensitive=False),
    default=EnvironmentType.DEVELOPMENT,
    envvar="MCP_ENVIRONMENT",
    help="MCP server environment. Defaults to 'development'.",
)
def serve(
    transport: str = "stdio",
    port: int = 8000,
    hostname: str = "0.0.0.0",
    environment: EnvironmentType = EnvironmentType.DEVELOPMENT,
):
    """Run the MCP server "sptri".

    The transport is set via "-t/--transport" or MCP_TRANSPORT and defaults to "stdio";
    with "http" the server listens on "-h/--host" (MCP_HOSTNAME) and "-p/--port" (MCP_PORT).
    The production environment ("-e production", MCP_ENVIRONMENT) only serves over http.
    """
    from sptri.mcp import mcp

    if environment == EnvironmentType.PRODUCTION and transport != "http":
        raise click.UsageError("production mode serves over http; pass '-t http'")
    logger.info("Starting MCP server (%s, %s transport)", environment, transport)
    if transport == "http":
        mcp.run(transport=transport, port=port, host=hostname)
    else:
        mcp.run(transport=transport)


if __name__ == "__main__":
    cli()
