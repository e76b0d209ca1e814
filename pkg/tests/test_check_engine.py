"""Tests for the property suites and the check engine."""

import itertools

import pytest

from ortholat.config import Settings
from ortholat.core.graph import complete_graph
from ortholat.engine import check_engine
from ortholat.engine.check_engine import WITNESS_CHECK_ID, CheckEngine, run_checks, run_exhaustive
from ortholat.engine.invariants import (
    CHECKS,
    Check,
    CheckContext,
    check_extension_witnesses,
    graphs_up_to,
    select_checks,
)
from ortholat.exceptions import PreconditionError, VerificationError
from ortholat.models.checks import CheckErrorStrategy, CheckStatus


def _failing(graph, context):
    raise VerificationError("always fails")


def _passing(graph, context):
    return 1


FAILING = Check("demo.failing", "demo", "Always fails", _failing)
PASSING = Check("demo.passing", "demo", "Always passes", _passing)


def test_select_checks():
    assert select_checks() == list(CHECKS)
    assert [c.check_id for c in select_checks(["ortho"])] == ["ortho.complement_laws", "ortho.closure_laws"]
    assert [c.check_id for c in select_checks(["lattice.structure"])] == ["lattice.structure"]
    with pytest.raises(PreconditionError):
        select_checks(["ortho", "nonsense"])


def test_context_enumerates_small_cases(k3, fast_settings):
    context = CheckContext.from_settings(fast_settings)
    assert context.subsets(k3) == list(range(8))
    assert len(context.tuples(k3, 2)) == 40
    assert context.can_scan(k3)


def test_context_sampling_is_seeded(p4, fast_settings):
    first = CheckContext.from_settings(fast_settings).tuples(p4, 3)
    second = CheckContext.from_settings(fast_settings).tuples(p4, 3)
    assert first == second


def test_exhaustive_context_walks_every_tuple(p4):
    context = CheckContext.from_settings(Settings(), exhaustive=True)
    triples = context.tuples(p4, 3)
    assert len(triples) == 4096
    assert triples == list(itertools.product(range(16), repeat=3))
    assert list(context.limit(p4, range(1000))) == list(range(1000))


def test_exhaustive_context_samples_above_its_limit(p4):
    assert len(CheckContext.from_settings(Settings(), exhaustive=False).tuples(p4, 3)) == 200
    capped = CheckContext.from_settings(Settings(exhaustive_limit=3), exhaustive=True)
    assert len(capped.tuples(p4, 3)) == 200
    assert len(list(capped.limit(p4, range(1000)))) == 200


def test_exhaustive_run_counts_every_triple(fast_settings):
    run = run_exhaustive(3, ["ortho.complement_laws"], settings=fast_settings)
    assert run.passed, run.error_message
    assert run.metadata["exhaustive_limit"] == 4
    assert run.results[0].items_processed == 8 + 2 * 64 + 8 * 512


def test_graphs_up_to():
    assert sum(1 for _ in graphs_up_to(3)) == 1 + 2 + 8


@pytest.mark.parametrize("fixture", ["p4", "s3", "k3", "n3", "two_edges"])
def test_all_checks_pass(fixture, fast_settings, request):
    graph = request.getfixturevalue(fixture)
    run = run_checks(graph, settings=fast_settings)
    assert run.passed, run.error_message
    assert run.status == "completed"
    assert run.total_checks == len(CHECKS)
    assert run.completed_checks == len(CHECKS)
    assert all(result.status == CheckStatus.SUCCESS for result in run.results)
    assert all(result.items_processed > 0 for result in run.results)


def test_capacity_errors_skip_the_check(p4):
    run = run_checks(p4, ["automorphism"], settings=Settings(aut_cap=3, random_trials=40))
    assert run.results[0].status == CheckStatus.SKIPPED
    assert run.skipped_checks == 1
    assert run.passed


def test_capacity_errors_skip_only_the_graph():
    run = run_exhaustive(4, ["automorphism"], settings=Settings(aut_cap=3, random_trials=40))
    result = run.results[0]
    assert result.status == CheckStatus.SUCCESS
    assert result.graphs_skipped == 64
    assert result.items_processed > 0
    assert run.skipped_graphs == 64
    assert run.skipped_checks == 0
    assert run.passed


def test_continue_strategy_records_every_result(p4, fast_settings, monkeypatch):
    monkeypatch.setattr(check_engine, "select_checks", lambda selection: [FAILING, PASSING])
    run = CheckEngine(fast_settings).run_checks(p4)
    assert [r.status for r in run.results] == [CheckStatus.FAILED, CheckStatus.SUCCESS]
    assert run.status == "completed"
    assert run.failed_checks == 1
    assert not run.passed
    assert run.results[0].error_message == "always fails"


def test_fail_strategy_stops_at_first_failure(p4, fast_settings, monkeypatch):
    monkeypatch.setattr(check_engine, "select_checks", lambda selection: [FAILING, PASSING])
    run = CheckEngine(fast_settings, CheckErrorStrategy.FAIL).run_checks(p4)
    assert len(run.results) == 1
    assert run.status == "failed"
    assert run.error_message == "always fails"
    assert run.completed_at is not None


def test_exhaustive_run_includes_witness_search(fast_settings):
    run = run_exhaustive(3, settings=fast_settings)
    assert run.passed, run.error_message
    assert run.metadata["graphs"] == 11
    assert run.total_checks == len(CHECKS) + 1
    witness = run.results[-1]
    assert witness.check_id == WITNESS_CHECK_ID
    assert witness.metadata["join_failure"] and witness.metadata["meet_failure"]


def test_exhaustive_run_without_extension_checks(fast_settings):
    run = run_exhaustive(2, ["ortho"], settings=fast_settings)
    assert run.passed
    assert [r.check_id for r in run.results] == ["ortho.complement_laws", "ortho.closure_laws"]


def test_extension_witnesses_on_three_vertices():
    found = check_extension_witnesses(3)
    assert found["join_failure"] and found["meet_failure"]
    assert [0, 0] in found["increments"]
    assert [1, 1] in found["increments"]


def test_runs_are_reproducible(fast_settings):
    graph = complete_graph(4)
    first = run_checks(graph, settings=fast_settings)
    second = run_checks(graph, settings=fast_settings)
    strip = {"started_at", "completed_at", "execution_time_seconds"}
    assert [r.model_dump(exclude=strip) for r in first.results] == [r.model_dump(exclude=strip) for r in second.results]


@pytest.mark.slow
def test_exhaustive_run_up_to_four_vertices(fast_settings):
    run = run_exhaustive(4, settings=fast_settings)
    assert run.passed, run.error_message
