from importlib.metadata import version

from sptri.main import cli
from sptri.mcp import mcp

__version__ = version("sptri")

__all__ = ["mcp", "cli", "__version__"]


if __name__ == "__main__":
    cli()
