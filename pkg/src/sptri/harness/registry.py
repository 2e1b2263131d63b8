"""Catalogue of the experiment tags a sweep can emit."""

from dataclasses import dataclass
from enum import Enum


class ExperimentKind(str, Enum):
    """Whether the envelopes of a record are proven bounds or reported figures."""

    CERTIFIED = "certified"
    REPORT = "report"


@dataclass(frozen=True)
class Experiment:
    """Metadata for an experiment tag.

    Attributes
    ----------
    name : str
        Tag written to the ``experiment`` column.
    command : str
        CLI command producing the rows.
    description : str
        What ``value``, ``lower_env`` and ``upper_env`` hold.
    kind : ExperimentKind
        Certified experiments must satisfy ``lower_env <= value <= upper_env``.
    slack : float
        Relative slack of that check.
    """

    name: str
    command: str
    description: str
    kind: ExperimentKind
    slack: float = 1e-5


@dataclass(frozen=True)
class CertifiedExperiment(Experiment):
    """Experiment whose envelopes are proven bounds."""

    def __init__(self, name: str, command: str, description: str, slack: float = 1e-5):
        """Initialize certified experiment."""
        object.__setattr__(self, "slack", slack)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "command", command)
        object.__setattr__(self, "description", description)
        object.__setattr__(self, "kind", ExperimentKind.CERTIFIED)


@dataclass(frozen=True)
class ReportExperiment(Experiment):
    """Experiment whose rows are measured and reported, not asserted row by row."""

    def __init__(self, name: str, command: str, description: str):
        """Initialize report experiment."""
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "command", command)
        object.__setattr__(self, "description", description)
        object.__setattr__(self, "kind", ExperimentKind.REPORT)
        object.__setattr__(self, "slack", 0.0)


EXPERIMENTS = [
    CertifiedExperiment(
        name="dirichlet",
        command="dirichlet",
        description="||D_n||_p between the two-sided Dirichlet envelopes",
    ),
    CertifiedExperiment(
        name="witness",
        command="witness",
        description="witness lower bound below the certified projection upper bound (n = 2^k)",
        slack=1e-4,
    ),
    ReportExperiment(
        name="witness-shape",
        command="witness",
        description="witness lower bound divided by n^(1/p-1) min{(1-p)^-1, log n}",
    ),
    CertifiedExperiment(
        name="witness-upper-shape",
        command="witness",
        description="certified upper bound divided by the same shape, below 2^(1/p-1) 2.4 for n >= 4",
    ),
    ReportExperiment(
        name="witness-log",
        command="witness",
        description="p = 1 witness lower bound divided by log(1 + n)",
    ),
    CertifiedExperiment(
        name="witness-upper-log",
        command="witness",
        description="p = 1 upper bound ||D_n||_1 below log 5n",
    ),
    ReportExperiment(
        name="witness-doubling",
        command="witness",
        description="||D_(n/2)||_p / ||D_n||_p",
    ),
    CertifiedExperiment(
        name="hankel-polybound",
        command="hankel-check",
        description="||Gamma_phi||_p below 2^(1/p-1) m^(1/p) ||phi||_p",
    ),
    CertifiedExperiment(
        name="hankel-multbound",
        command="hankel-check",
        description="||Gamma_phi * B||_p below (2m)^(1/p-1) ||phi||_p ||B||_p",
    ),
    ReportExperiment(
        name="besov-ratio",
        command="hankel-check",
        description="||Gamma_phi||_p divided by the Besov quasi-norm",
    ),
    CertifiedExperiment(
        name="special-form",
        command="hankel-check",
        description="||Gamma_phi||_p for a band symbol below 2^((n+1)/p) ||phi||_p",
    ),
    CertifiedExperiment(
        name="bump-theorem",
        command="bump-check",
        description="||Q_m||_p below m^(1-1/p) ||Fq||_p",
    ),
    CertifiedExperiment(
        name="bump-jump",
        command="bump-check",
        description="||P_+ Q_m||_p / ||Q_m||_p above m^(1/p-1) / s, s the measured sup of m^(1/p-1) ||Q_m||_p",
    ),
]

EXPERIMENTS_BY_NAME = {experiment.name: experiment for experiment in EXPERIMENTS}


def get_experiment(name: str) -> Experiment | None:
    """Get experiment metadata by tag.

    Parameters
    ----------
    name : str
        Experiment tag.

    Returns
    -------
    Experiment | None
        Metadata if the tag is registered, None otherwise.
    """
    return EXPERIMENTS_BY_NAME.get(name)


def is_certified(name: str) -> bool:
    experiment = get_experiment(name)
    return experiment is not None and experiment.kind is ExperimentKind.CERTIFIED


def envelope_slack(name: str) -> float:
    experiment = get_experiment(name)
    return 1e-5 if experiment is None else experiment.slack
