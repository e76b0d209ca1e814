"""
Models for property-check runs.

A run executes a list of named checks against one graph (or a family of
graphs) and records one result per check.
"""

from datetime import datetime
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class CheckStatus(str, Enum):
    """Outcome of a single check."""
    RUNNING = "running"
    SUCCESS = "success"
    FAILED = "failed"
    SKIPPED = "skipped"  # a cap made the check impossible to run


class CheckErrorStrategy(str, Enum):
    """How a run reacts to a failed check."""
    FAIL = "fail"          # Stop the run at the first failure
    CONTINUE = "continue"  # Record the failure and run the remaining checks


class CheckResult(BaseModel):
    """Result of executing a single check."""

    check_id: str = Field(..., description="Check that was executed")
    module: str = Field(..., description="Module whose properties the check covers")
    status: CheckStatus = Field(CheckStatus.RUNNING, description="success, failed, skipped")
    started_at: datetime = Field(default_factory=datetime.utcnow)
    completed_at: Optional[datetime] = Field(None)
    execution_time_seconds: Optional[float] = Field(None)

    # Results
    items_processed: int = Field(0, description="Instances (subsets, links, graphs, ...) examined")
    graphs_skipped: int = Field(0, description="Graphs passed over because a cap was exceeded")

    # Errors
    error_message: Optional[str] = Field(None)

    # Metadata
    metadata: Dict[str, Any] = Field(default_factory=dict)


class CheckRun(BaseModel):
    """Record of a check run."""

    id: str = Field(..., description="Unique run identifier")
    subject: str = Field(..., description="Graph or graph family the checks ran on")
    strategy: CheckErrorStrategy = Field(CheckErrorStrategy.CONTINUE)

    # Execution timing
    started_at: datetime = Field(default_factory=datetime.utcnow)
    completed_at: Optional[datetime] = Field(None)
    execution_time_seconds: Optional[float] = Field(None)

    # Status
    status: str = Field("running", description="running, completed, failed")

    # Results
    results: List[CheckResult] = Field(default_factory=list)
    total_checks: int = Field(0)
    completed_checks: int = Field(0)
    failed_checks: int = Field(0)
    skipped_checks: int = Field(0)
    skipped_graphs: int = Field(0, description="Graph-level skips summed over all checks")

    error_message: Optional[str] = Field(None)
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "completed" and self.failed_checks == 0
