"""Sweep records, run manifests and their CSV / JSON-lines serialization."""

import csv
import datetime
import json
import logging
import math
from collections.abc import Iterable, Mapping
from dataclasses import asdict, dataclass, field
from enum import Enum
from pathlib import Path
from typing import IO, Any

from .registry import envelope_slack, is_certified

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("experiment", "k", "n", "p", "value", "lower_env", "upper_env", "quad_points", "seed", "wall_ms")


class OutputFormat(str, Enum):
    """Record serialization formats."""

    CSV = "csv"
    JSONL = "jsonl"


@dataclass(frozen=True)
class SweepRecord:
    """One row of a sweep.

    Attributes
    ----------
    experiment : str
        Tag from the experiment registry.
    k : int | None
        Witness order or trial index, when the experiment has one.
    n : int
        Size parameter (kernel order, mask order, polynomial length or lattice size).
    p : float
        Exponent.
    value : float | None
        Measured quantity; ``None`` when the computation failed (see ``failure``).
    lower_env, upper_env : float | None
        Envelopes, when the experiment has them.
    quad_points : int
        Integrand evaluations spent on the row (0 when no quadrature was involved).
    seed : int | None
        Seed of the random input, when there is one.
    wall_ms : int
        Wall-clock time of the row in milliseconds.
    failure : str | None
        Error message of a failed computation; not part of the CSV schema.
    """

    experiment: str
    k: int | None
    n: int
    p: float
    value: float | None
    lower_env: float | None = None
    upper_env: float | None = None
    quad_points: int = 0
    seed: int | None = None
    wall_ms: int = 0
    failure: str | None = None

    @property
    def certified(self) -> bool:
        return is_certified(self.experiment)

    def within_envelopes(self, slack: float | None = None) -> bool:
        """Whether the value lies between the envelopes that are present, up to relative ``slack``.

        ``slack`` defaults to the one registered for the experiment.
        """
        slack = envelope_slack(self.experiment) if slack is None else slack
        if self.value is None or math.isnan(self.value):
            return False
        if any(env is not None and math.isnan(env) for env in (self.lower_env, self.upper_env)):
            return False
        if self.lower_env is not None and self.value < self.lower_env * (1.0 - slack):
            return False
        if self.upper_env is not None and self.value > self.upper_env * (1.0 + slack):
            return False
        return True

    @property
    def passed(self) -> bool:
        """Failed rows never pass; certified rows must sit inside their envelopes."""
        if self.failure is not None:
            return False
        return not self.certified or self.within_envelopes()

    def sort_key(self) -> tuple:
        return (self.experiment, -1 if self.k is None else self.k, self.n, self.p)


def canonical_order(records: Iterable[SweepRecord]) -> list[SweepRecord]:
    """Sort by ``(experiment, k, n, p)``; ties keep their generation order."""
    return sorted(records, key=SweepRecord.sort_key)


def _csv_field(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(records: Iterable[SweepRecord], stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for record in records:
        writer.writerow([_csv_field(getattr(record, column)) for column in CSV_COLUMNS])


def write_jsonl(records: Iterable[SweepRecord], stream: IO[str]) -> None:
    for record in records:
        stream.write(json.dumps(asdict(record)) + "\n")


def write_records(records: Iterable[SweepRecord], stream: IO[str], fmt: OutputFormat | str = OutputFormat.CSV) -> None:
    """Serialize records in the requested format.

    Parameters
    ----------
    records : Iterable[SweepRecord]
        Rows, already in canonical order.
    stream : IO[str]
        Text stream to write to.
    fmt : OutputFormat | str
        ``"csv"`` (fixed header, missing fields empty) or ``"jsonl"`` (one object per row,
        ``failure`` included).
    """
    if OutputFormat(fmt) is OutputFormat.CSV:
        write_csv(records, stream)
    else:
        write_jsonl(records, stream)


def read_csv(stream: IO[str]) -> list[dict[str, str]]:
    """Rows of a CSV written by :func:`write_csv`, as string dictionaries."""
    return list(csv.DictReader(stream))


def utc_now_iso() -> str:
    dt = datetime.datetime.now(datetime.timezone.utc).replace(microsecond=0)
    return dt.isoformat().replace("+00:00", "Z")


@dataclass
class RunManifest:
    """Everything needed to reproduce a run.

    Attributes
    ----------
    tool_version : str
        Installed version of sptri.
    command : str
        CLI command name.
    parameters : dict
        Full parameter set after grid expansion.
    bump : str
        Tag of the bump construction.
    quadrature : dict
        Quadrature configuration.
    seed : int | None
        Base seed of random inputs.
    libraries : dict
        Versions of the numerical libraries.
    started, finished : str
        UTC timestamps.
    """

    tool_version: str
    command: str
    parameters: dict
    bump: str
    quadrature: dict
    seed: int | None = None
    libraries: dict = field(default_factory=dict)
    started: str = field(default_factory=utc_now_iso)
    finished: str | None = None

    def finish(self) -> None:
        self.finished = utc_now_iso()

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "RunManifest":
        return cls(**data)


def manifest_path(out: Path) -> Path:
    """``<out>.manifest.json`` next to the output file."""
    return out.with_name(out.name + ".manifest.json")


def write_manifest(manifest: RunManifest, out: Path) -> Path:
    path = manifest_path(out)
    with path.open("w", encoding="utf-8") as f:
        json.dump(manifest.to_dict(), f, indent=2, sort_keys=True)
        f.write("\n")
    logger.info("manifest written to %s", path)
    return path


def read_manifest(path: Path) -> RunManifest:
    with Path(path).open(encoding="utf-8") as f:
        return RunManifest.from_dict(json.load(f))
