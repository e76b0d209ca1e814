"""
Check execution engine.

Runs the property suites of :mod:`ortholat.engine.invariants` as isolated
stages: each check gets its own result with timing, a failure is recorded
and (under the continue strategy) the remaining checks still run.
"""

import logging
import time
from datetime import datetime
from typing import List, Optional, Sequence

from ..config import Settings, get_settings
from ..core.graph import Graph
from ..exceptions import CapacityError
from ..models.checks import CheckErrorStrategy, CheckResult, CheckRun, CheckStatus
from .invariants import Check, CheckContext, check_extension_witnesses, graphs_up_to, select_checks

logger = logging.getLogger(__name__)

WITNESS_CHECK_ID = "extension.witnesses"


class CheckEngine:
    """Executes property checks against one graph or every small graph."""

    def __init__(
        self,
        settings: Optional[Settings] = None,
        strategy: CheckErrorStrategy = CheckErrorStrategy.CONTINUE,
    ):
        self.settings = settings or get_settings()
        self.strategy = strategy

    def run_checks(self, graph: Graph, selection: Sequence[str] = ()) -> CheckRun:
        """Run the selected checks on a single graph."""
        checks = select_checks(selection)
        run = CheckRun(
            id=f"check_{graph.n}v{graph.edge_count()}e_{int(time.time())}",
            subject=str(graph),
            strategy=self.strategy,
            total_checks=len(checks),
        )
        return self._execute(run, checks, [graph])

    def run_exhaustive(self, max_vertices: int, selection: Sequence[str] = ()) -> CheckRun:
        """Run the selected checks on every labelled graph with 1 to ``max_vertices`` vertices."""
        checks = select_checks(selection)
        graphs = list(graphs_up_to(max_vertices))
        run = CheckRun(
            id=f"exhaustive_{max_vertices}_{int(time.time())}",
            subject=f"all labelled graphs on 1..{max_vertices} vertices",
            strategy=self.strategy,
            total_checks=len(checks) + (1 if self._wants_witnesses(checks) else 0),
            metadata={"graphs": len(graphs), "exhaustive_limit": self.settings.exhaustive_limit},
        )
        witness_depth = max_vertices if self._wants_witnesses(checks) else None
        return self._execute(run, checks, graphs, witness_depth, exhaustive=True)

    @staticmethod
    def _wants_witnesses(checks: Sequence[Check]) -> bool:
        return any(check.module == "extension" for check in checks)

    def _execute(
        self,
        run: CheckRun,
        checks: List[Check],
        graphs: List[Graph],
        witness_depth: Optional[int] = None,
        exhaustive: bool = False,
    ) -> CheckRun:
        logger.info(f"Starting check run: {run.id}")
        context = CheckContext.from_settings(self.settings, exhaustive=exhaustive)
        try:
            for check in checks:
                result = self._execute_check(check, graphs, context)
                self._record(run, result)
                if run.status == "failed":
                    break
            if witness_depth is not None and run.status == "running":
                self._record(run, self._execute_witness_search(witness_depth))
            if run.status == "running":
                run.status = "completed"
        except Exception as e:
            logger.error(f"Check run failed: {e}")
            run.status = "failed"
            run.error_message = str(e)
        finally:
            run.completed_at = datetime.utcnow()
            run.execution_time_seconds = (run.completed_at - run.started_at).total_seconds()
        logger.info(
            f"Check run {run.id}: {run.completed_checks} passed, {run.failed_checks} failed, "
            f"{run.skipped_checks} skipped ({run.skipped_graphs} graphs over a cap)"
        )
        return run

    def _record(self, run: CheckRun, result: CheckResult) -> None:
        run.results.append(result)
        run.skipped_graphs += result.graphs_skipped
        if result.status == CheckStatus.SUCCESS:
            run.completed_checks += 1
        elif result.status == CheckStatus.FAILED:
            run.failed_checks += 1
            if self.strategy == CheckErrorStrategy.FAIL:
                run.status = "failed"
                run.error_message = result.error_message
        elif result.status == CheckStatus.SKIPPED:
            run.skipped_checks += 1

    def _execute_check(self, check: Check, graphs: List[Graph], context: CheckContext) -> CheckResult:
        """Execute a single check over every graph; a graph over a cap is skipped on its own."""
        logger.info(f"Executing check: {check.check_id}")
        result = CheckResult(check_id=check.check_id, module=check.module)
        reasons: List[str] = []
        try:
            for graph in graphs:
                try:
                    result.items_processed += check.run(graph, context)
                except CapacityError as e:
                    logger.warning(f"Check {check.check_id} skipped {graph}: {e}")
                    result.graphs_skipped += 1
                    reasons.append(str(e))
            if graphs and result.graphs_skipped == len(graphs):
                result.status = CheckStatus.SKIPPED
                result.error_message = reasons[0]
            else:
                result.status = CheckStatus.SUCCESS
                if reasons:
                    result.metadata["first_skip_reason"] = reasons[0]
        except Exception as e:
            logger.error(f"Check {check.check_id} failed: {e}")
            result.status = CheckStatus.FAILED
            result.error_message = str(e)
        finally:
            result.completed_at = datetime.utcnow()
            result.execution_time_seconds = (result.completed_at - result.started_at).total_seconds()
        return result

    def _execute_witness_search(self, max_vertices: int) -> CheckResult:
        result = CheckResult(check_id=WITNESS_CHECK_ID, module="extension")
        try:
            result.metadata = check_extension_witnesses(max_vertices)
            result.items_processed = len(result.metadata["increments"])
            result.status = CheckStatus.SUCCESS
        except Exception as e:
            logger.error(f"Check {WITNESS_CHECK_ID} failed: {e}")
            result.status = CheckStatus.FAILED
            result.error_message = str(e)
        finally:
            result.completed_at = datetime.utcnow()
            result.execution_time_seconds = (result.completed_at - result.started_at).total_seconds()
        return result


def run_checks(graph: Graph, selection: Sequence[str] = (), settings: Optional[Settings] = None) -> CheckRun:
    return CheckEngine(settings).run_checks(graph, selection)


def run_exhaustive(max_vertices: int, selection: Sequence[str] = (), settings: Optional[Settings] = None) -> CheckRun:
    return CheckEngine(settings).run_exhaustive(max_vertices, selection)
