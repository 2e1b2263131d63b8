"""Versions of sptri and the numerical libraries, recorded in run manifests."""

import importlib.metadata
from collections.abc import Iterable

# libraries whose versions can change numerical output
NUMERICAL_LIBRARIES = ("numpy", "scipy")
NOT_INSTALLED = "not installed"


def _distribution_version(name: str) -> str | None:
    try:
        return importlib.metadata.version(name)
    except importlib.metadata.PackageNotFoundError:
        return None


def library_versions(names: Iterable[str] = NUMERICAL_LIBRARIES) -> dict[str, str]:
    """``{name: version}`` as stored in a manifest; missing libraries map to ``"not installed"``."""
    return {name: _distribution_version(name) or NOT_INSTALLED for name in names}


def tool_version() -> str:
    return _distribution_version("sptri") or "unknown"
