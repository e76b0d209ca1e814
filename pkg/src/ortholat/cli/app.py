"""
Command-line front-end.

Every subcommand reads one graph (edge list or graph6) from ``--in`` or
stdin and writes a text, JSON or DOT report to stdout.

Exit codes: 0 on success, 1 on usage, parse or precondition errors, 2 when a
verification fails or an ``--assert`` does not hold.
"""

import json
import logging
import sys
from typing import Callable, List, Optional, TextIO

import click
from pydantic import BaseModel

from ..config import Settings, get_settings
from ..core.graph import Graph
from ..core.lattice import enumerate_closed_sets, poset_isomorphic
from ..core.ortho import ortho_complement
from ..engine.automorphism import verify_split_sequence
from ..engine.check_engine import CheckEngine
from ..engine.compression import lattice_quotient_map
from ..engine.extension import analyze_extension, gamma_isomorphism_verdict
from ..engine.inflation import InflationKind, elementary_deflate, elementary_inflate
from ..exceptions import OrthoLatException, VerificationError
from ..formats import emit_compressed_dot, emit_hasse_dot, parse_graph
from ..models.checks import CheckErrorStrategy, CheckRun
from ..version import __version__
from . import reports

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ASSERTION = 2

# Fields that differ between otherwise identical runs.
RUN_VOLATILE_FIELDS = {"id", "started_at", "completed_at", "execution_time_seconds"}
RESULT_VOLATILE_FIELDS = {"started_at", "completed_at", "execution_time_seconds"}


def _configure_logging(settings: Settings, verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, settings.log_level, logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


def _read_graph(source: Optional[TextIO], input_format: str) -> Graph:
    stream = source if source is not None else click.get_text_stream("stdin")
    text = stream.read()
    return parse_graph(text, None if input_format == "auto" else input_format)


def _parse_names(graph: Graph, value: str) -> int:
    """Comma-separated vertex names to a mask; an empty string is ∅."""
    names = [name.strip() for name in value.split(",") if name.strip()]
    return graph.mask_from_names(names)


def _to_json(model: BaseModel, **dump_options) -> str:
    return json.dumps(model.model_dump(mode="json", **dump_options), sort_keys=True, indent=2)


def _output_format(output_format: str, dot: bool) -> str:
    return "dot" if dot else output_format


def _emit(
    model: BaseModel,
    output_format: str,
    render_text: Callable,
    render_dot: Optional[Callable[[], str]] = None,
) -> None:
    if output_format == "json":
        click.echo(_to_json(model))
    elif output_format == "dot":
        if render_dot is None:
            raise click.UsageError("DOT output is not available for this command")
        click.echo(render_dot(), nl=False)
    else:
        click.echo(render_text(model))


def graph_options(func):
    """Input and output options shared by every subcommand."""
    func = click.option("--verbose", "-v", is_flag=True, help="Enable debug logging")(func)
    func = click.option("--dot", is_flag=True, help="Shorthand for --format dot")(func)
    func = click.option(
        "--format", "output_format",
        type=click.Choice(["text", "json", "dot"]), default="text", show_default=True,
        help="Report format",
    )(func)
    func = click.option(
        "--input-format",
        type=click.Choice(["auto", "edges", "graph6"]), default="auto", show_default=True,
        help="Graph input format",
    )(func)
    func = click.option(
        "--in", "source", type=click.File("r"), default=None,
        help="Graph file (default: stdin)",
    )(func)
    return func


@click.group()
@click.version_option(__version__, prog_name="ortholat")
@click.pass_context
def cli(ctx: click.Context):
    """Closed-set lattices of finite simple graphs."""
    ctx.obj = get_settings()


def _setup(ctx: click.Context, verbose: bool) -> Settings:
    settings: Settings = ctx.obj or get_settings()
    _configure_logging(settings, verbose)
    return settings


@cli.command()
@graph_options
@click.pass_context
def lattice(ctx, source, input_format, output_format, dot, verbose):
    """Enumerate L(Γ) with heights, ranks and covers."""
    _setup(ctx, verbose)
    graph = _read_graph(source, input_format)
    closed = enumerate_closed_sets(graph)
    logger.info(f"Built lattice with {len(closed)} elements, height {closed.height}")
    report = reports.lattice_report(graph, closed)
    _emit(report, _output_format(output_format, dot), reports.lattice_text, lambda: emit_hasse_dot(closed))
    return EXIT_OK


@cli.command()
@graph_options
@click.option("--link", required=True, help="J_t as comma-separated vertex names (empty for ∅)")
@click.pass_context
def extend(ctx, source, input_format, output_format, dot, verbose, link):
    """Adjoin a vertex t with the given link and compare L, L̃ and L̄."""
    settings = _setup(ctx, verbose)
    graph = _read_graph(source, input_format)
    analysis = analyze_extension(graph, _parse_names(graph, link), scan_limit=settings.scan_limit)
    verdict = gamma_isomorphism_verdict(analysis)
    report = reports.extension_report(analysis, verdict)
    _emit(
        report, _output_format(output_format, dot), reports.extension_text,
        lambda: emit_hasse_dot(analysis.extended_lattice),
    )
    return EXIT_OK


@cli.command()
@graph_options
@click.option("--assert", "assert_epimorphism", is_flag=True, help="Exit 2 unless c_L is a lattice epimorphism")
@click.pass_context
def compress(ctx, source, input_format, output_format, dot, verbose, assert_epimorphism):
    """Quotient by ⊥- and o-equivalence and compare the lattices."""
    _setup(ctx, verbose)
    graph = _read_graph(source, input_format)
    quotient_map = lattice_quotient_map(graph)
    report = reports.compression_report(quotient_map)
    _emit(
        report, _output_format(output_format, dot), reports.compression_text,
        lambda: emit_compressed_dot(quotient_map.compressed),
    )
    if assert_epimorphism and not quotient_map.is_epimorphism:
        click.echo("Assertion failed: c_L is not a lattice epimorphism", err=True)
        return EXIT_ASSERTION
    return EXIT_OK


@cli.command()
@graph_options
@click.option("--kind", type=click.Choice([k.value for k in InflationKind]), required=True)
@click.option("--witness", required=True, help="Simplex (abelian) or free co-simplex (free), comma-separated")
@click.option("--assert", "assert_invariant", is_flag=True, help="Exit 2 unless the lattice is unchanged")
@click.pass_context
def inflate(ctx, source, input_format, output_format, dot, verbose, kind, witness, assert_invariant):
    """Apply one elementary inflation."""
    _setup(ctx, verbose)
    graph = _read_graph(source, input_format)
    inflation_kind = InflationKind(kind)
    witness_mask = _parse_names(graph, witness)
    inflated = elementary_inflate(graph, inflation_kind, witness_mask)
    isomorphic = poset_isomorphic(enumerate_closed_sets(graph), enumerate_closed_sets(inflated))
    report = reports.inflation_report(
        graph, inflation_kind, witness_mask, ortho_complement(graph, witness_mask), inflated, isomorphic
    )
    _emit(
        report, _output_format(output_format, dot), reports.inflation_text,
        lambda: emit_hasse_dot(enumerate_closed_sets(inflated)),
    )
    if assert_invariant and not isomorphic:
        click.echo("Assertion failed: inflation changed the lattice", err=True)
        return EXIT_ASSERTION
    return EXIT_OK


@cli.command()
@graph_options
@click.option("--kind", type=click.Choice([k.value for k in InflationKind]), required=True)
@click.option("--vertex", required=True, help="Vertex to remove")
@click.option("--assert", "assert_found", is_flag=True, help="Exit 2 if no deflation applies")
@click.pass_context
def deflate(ctx, source, input_format, output_format, dot, verbose, kind, vertex, assert_found):
    """Remove a vertex that some elementary inflation would re-create."""
    _setup(ctx, verbose)
    graph = _read_graph(source, input_format)
    inflation_kind = InflationKind(kind)
    v = graph.vertex_index(vertex)
    deflation = elementary_deflate(graph, inflation_kind, v)
    report = reports.deflation_report(graph, inflation_kind, v, deflation)
    render_dot = None if deflation is None else (lambda: emit_hasse_dot(enumerate_closed_sets(deflation.graph)))
    _emit(report, _output_format(output_format, dot), reports.deflation_text, render_dot)
    if assert_found and deflation is None:
        click.echo(f"Assertion failed: no {kind} deflation removes {vertex}", err=True)
        return EXIT_ASSERTION
    return EXIT_OK


@cli.command()
@graph_options
@click.option("--aut-cap", type=click.IntRange(1, 64), default=None, help="Override ORTHOLAT_AUT_CAP")
@click.pass_context
def aut(ctx, source, input_format, output_format, dot, verbose, aut_cap):
    """Verify 1 → ∏ S_μ → Aut(Γ) → Aut(Γ^c) → 1 and its splitting."""
    settings = _setup(ctx, verbose)
    if aut_cap is not None:
        settings = settings.model_copy(update={"aut_cap": aut_cap})
    graph = _read_graph(source, input_format)
    report = reports.automorphism_report(verify_split_sequence(graph, settings))
    _emit(report, _output_format(output_format, dot), reports.automorphism_text)
    return EXIT_OK


def _check_json(run: CheckRun) -> str:
    return _to_json(
        run,
        exclude={
            **{name: True for name in RUN_VOLATILE_FIELDS},
            "results": {"__all__": RESULT_VOLATILE_FIELDS},
        },
    )


@cli.command()
@graph_options
@click.option("--exhaustive-n", type=click.IntRange(1, 6), default=None, help="Also check every graph on 1..k vertices")
@click.option("--select", "selection", multiple=True, help="Check id or module name (repeatable)")
@click.option("--fail-fast", is_flag=True, help="Stop at the first failing check")
@click.option("--seed", type=int, default=None, help="Override ORTHOLAT_RANDOM_SEED")
@click.option("--trials", type=click.IntRange(0), default=None, help="Override ORTHOLAT_RANDOM_TRIALS")
@click.pass_context
def check(ctx, source, input_format, output_format, dot, verbose, exhaustive_n, selection, fail_fast, seed, trials):
    """Run the invariant suite on the input graph (and optionally on all small graphs)."""
    settings = _setup(ctx, verbose)
    overrides = {key: value for key, value in (("random_seed", seed), ("random_trials", trials)) if value is not None}
    if overrides:
        settings = settings.model_copy(update=overrides)
    fmt = _output_format(output_format, dot)
    if fmt == "dot":
        raise click.UsageError("DOT output is not available for this command")

    strategy = CheckErrorStrategy.FAIL if fail_fast else CheckErrorStrategy.CONTINUE
    engine = CheckEngine(settings, strategy)
    runs: List[CheckRun] = []
    if source is not None or exhaustive_n is None:
        runs.append(engine.run_checks(_read_graph(source, input_format), selection))
    if exhaustive_n is not None:
        runs.append(engine.run_exhaustive(exhaustive_n, selection))

    for run in runs:
        click.echo(_check_json(run) if fmt == "json" else reports.check_text(run))
    if not all(run.passed for run in runs):
        return EXIT_ASSERTION
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Console entry point; returns the process exit code."""
    try:
        result = cli.main(args=argv, prog_name="ortholat", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.exceptions.Abort:
        click.echo("Aborted", err=True)
        return EXIT_ERROR
    except click.ClickException as e:
        e.show()
        return EXIT_ERROR
    except VerificationError as e:
        click.echo(f"Verification failed: {e}", err=True)
        return EXIT_ASSERTION
    except OrthoLatException as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_ERROR
    # --help and --version return None
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
