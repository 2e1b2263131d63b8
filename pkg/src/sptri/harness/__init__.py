"""Experiment driver: grids, sweeps, gates, records, manifests and the self-test."""

from .environment import NUMERICAL_LIBRARIES, library_versions, tool_version
from .experiments import (
    GateResult,
    SweepOutcome,
    cmd_bump,
    cmd_dirichlet,
    cmd_hankel_check,
    cmd_witness,
    hankel_sizes,
    run_cells,
    witness_gates,
)
from .grids import (
    DEFAULT_BUMP_P_GRID,
    DEFAULT_M_GRID,
    DEFAULT_N_GRID,
    DEFAULT_P_GRID,
    INT_GRID,
    P_GRID,
    GridType,
    expand_grid,
)
from .oracles import (
    adaptive_simpson,
    dirichlet_modulus,
    direct_modulus,
    oracle_lp_norm,
    oracle_quasinorm,
    oracle_spectrum,
)
from .records import (
    CSV_COLUMNS,
    OutputFormat,
    RunManifest,
    SweepRecord,
    canonical_order,
    manifest_path,
    read_csv,
    read_manifest,
    write_manifest,
    write_records,
)
from .registry import EXPERIMENTS, CertifiedExperiment, Experiment, ExperimentKind, ReportExperiment, get_experiment
from .selftest import CheckResult, format_selftest, run_selftest

__all__ = [
    # environment
    "NUMERICAL_LIBRARIES",
    "library_versions",
    "tool_version",
    # experiments
    "GateResult",
    "SweepOutcome",
    "cmd_bump",
    "cmd_dirichlet",
    "cmd_hankel_check",
    "cmd_witness",
    "hankel_sizes",
    "run_cells",
    "witness_gates",
    # grids
    "DEFAULT_BUMP_P_GRID",
    "DEFAULT_M_GRID",
    "DEFAULT_N_GRID",
    "DEFAULT_P_GRID",
    "INT_GRID",
    "P_GRID",
    "GridType",
    "expand_grid",
    # oracles
    "adaptive_simpson",
    "dirichlet_modulus",
    "direct_modulus",
    "oracle_lp_norm",
    "oracle_quasinorm",
    "oracle_spectrum",
    # records
    "CSV_COLUMNS",
    "OutputFormat",
    "RunManifest",
    "SweepRecord",
    "canonical_order",
    "manifest_path",
    "read_csv",
    "read_manifest",
    "write_manifest",
    "write_records",
    # registry
    "EXPERIMENTS",
    "CertifiedExperiment",
    "Experiment",
    "ExperimentKind",
    "ReportExperiment",
    "get_experiment",
    # selftest
    "CheckResult",
    "format_selftest",
    "run_selftest",
]
