"""
Pydantic models for check runs and reports.
"""

from .checks import CheckErrorStrategy, CheckResult, CheckRun, CheckStatus
from .reports import (
    AutomorphismReport,
    ClassReport,
    CompressionReport,
    DeflationReport,
    ExtensionReport,
    GraphSummary,
    InflationReport,
    LatticeMapReport,
    LatticeReport,
)

__all__ = [
    # Check runs
    "CheckRun",
    "CheckResult",
    "CheckStatus",
    "CheckErrorStrategy",
    # Reports
    "GraphSummary",
    "LatticeReport",
    "ExtensionReport",
    "ClassReport",
    "LatticeMapReport",
    "CompressionReport",
    "InflationReport",
    "DeflationReport",
    "AutomorphismReport",
]
