"""
Version management for the ortholat package.
"""

from importlib import metadata

# Base version - update this for major releases
BASE_VERSION = "1.0.0"


def get_version() -> str:
    """
    Get the current version.

    - If the distribution is installed, use its metadata
    - Fallback to base version
    """
    try:
        return metadata.version("graph-orthogonality")
    except metadata.PackageNotFoundError:
        return BASE_VERSION


__version__ = get_version()
