"""
CLI entry point for splitlab.

Exit status is 0 on success or a true verdict, 1 on a false verdict and 2 on
input errors.
"""

import json
import sys
from collections.abc import Callable
from functools import wraps
from pathlib import Path
from typing import Any, TypeVar

import click
import structlog

from splitlab import catalog
from splitlab.acceptance import run_acceptance_suite
from splitlab.config import get_settings, load_settings, use_settings
from splitlab.corpus import cographic_corpus, graphic_corpus, regular_corpus
from splitlab.io_layer import (
    load_graph,
    load_matroid,
    write_records_jsonl,
    write_report,
    write_text,
)
from splitlab.logging_config import configure_logging
from splitlab.recognition import classify as classify_matroid
from splitlab.recognition import has_minor as find_minor
from splitlab.splitting import SplitPair, split, split_graph
from splitlab.theorems import (
    CASES,
    MatroidClass,
    decide_by_forbidden_minors,
    get_case,
    oracle_all_splits,
    sweep_corpus,
)

logger = structlog.get_logger()

F = TypeVar("F", bound=Callable[..., Any])

EXIT_FALSE = 1
EXIT_INPUT_ERROR = 2

json_option = click.option("--json", "as_json", is_flag=True, help="Emit JSON output")


def input_errors(func: F) -> F:
    """Report library ValueErrors as one line on stderr with exit status 2."""

    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except ValueError as e:
            logger.error("command_failed", error=str(e), error_type=type(e).__name__)
            click.echo(f"error: {type(e).__name__}: {e}", err=True)
            sys.exit(EXIT_INPUT_ERROR)

    return wrapper  # type: ignore[return-value]


def _emit(data: dict[str, Any], as_json: bool, text: str) -> None:
    click.echo(json.dumps(data, indent=2) if as_json else text.rstrip("\n"))


@click.group()
@click.option(
    "--config",
    "-c",
    type=click.Path(exists=True, path_type=Path),
    default=None,
    help="Path to configuration YAML file",
)
@click.option(
    "--log-level",
    default=None,
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    help="Logging level (overrides the config file)",
)
@click.option("--max-elements", type=click.IntRange(min=1), default=None, help="Enumeration bound")
@click.option("--seed", type=click.IntRange(min=0), default=None, help="Seed for randomized runs")
def cli(config: Path | None, log_level: str | None, max_elements: int | None, seed: int | None) -> None:
    """splitlab - splitting operations on binary matroids"""
    settings = load_settings(config)
    overrides: dict[str, Any] = {}
    if max_elements is not None:
        overrides["enumeration_bound"] = max_elements
    if seed is not None:
        overrides["seed"] = seed
    if log_level is not None:
        overrides["log_level"] = log_level.upper()
    settings = settings.model_copy(update=overrides)
    use_settings(settings)
    configure_logging(log_level=settings.log_level)
    logger.debug("settings_loaded", config_file=str(config) if config else None, **overrides)


@cli.command("split")
@click.argument("matroid")
@click.argument("x")
@click.argument("y")
@json_option
@input_errors
def split_command(matroid: str, x: str, y: str, as_json: bool) -> None:
    """Print the splitting matroid of MATROID with respect to X and Y."""
    M = load_matroid(matroid)
    S = split(M, SplitPair(x, y))
    data = {"elements": list(S.elements), "rows": S.representation.to_lists(), "rank": S.rank}
    _emit(data, as_json, S.representation.format(S.elements))


@cli.command("split-graph")
@click.argument("graph")
@click.argument("x")
@click.argument("y")
@click.option("--vertex", type=int, default=None, help="Shared endpoint to split at")
@json_option
@input_errors
def split_graph_command(graph: str, x: str, y: str, vertex: int | None, as_json: bool) -> None:
    """Split edges X and Y of GRAPH away from their common vertex."""
    g = split_graph(load_graph(graph), SplitPair(x, y), vertex)
    data = {
        "vertex_count": g.vertex_count,
        "edges": [{"label": e.label, "u": e.u, "v": e.v} for e in g.edges],
    }
    _emit(data, as_json, g.format())


@cli.command()
@click.argument("matroid")
@json_option
@input_errors
def classify(matroid: str, as_json: bool) -> None:
    """Decide whether MATROID is regular, graphic and cographic."""
    flags = classify_matroid(load_matroid(matroid))
    text = "\n".join(
        f"{name}: {str(value).lower()}"
        for name, value in (
            ("regular", flags.regular),
            ("graphic", flags.graphic),
            ("cographic", flags.cographic),
        )
    )
    _emit(flags.to_dict(), as_json, text)


@cli.command("has-minor")
@click.argument("matroid")
@click.argument("target")
@json_option
@input_errors
def has_minor_command(matroid: str, target: str, as_json: bool) -> None:
    """Search MATROID for a minor isomorphic to TARGET."""
    witness = find_minor(load_matroid(matroid), load_matroid(target))
    if witness is None:
        _emit({"found": False}, as_json, "no minor found")
        sys.exit(EXIT_FALSE)
    data = {**witness.to_dict(), "found": True}
    text = (
        f"delete: {' '.join(sorted(witness.spec.delete))}\n"
        f"contract: {' '.join(sorted(witness.spec.contract))}"
    )
    _emit(data, as_json, text)


@cli.command()
@click.argument("matroid")
@click.option(
    "--case",
    "case_id",
    required=True,
    type=click.Choice(list(CASES)),
    help="Splitting characterization to decide",
)
@click.option("--oracle", is_flag=True, help="Also run the all-pairs splitting oracle")
@json_option
@input_errors
def decide(matroid: str, case_id: str, oracle: bool, as_json: bool) -> None:
    """Decide whether every splitting of MATROID stays in the case's target class."""
    M = load_matroid(matroid)
    case = get_case(case_id)
    report = decide_by_forbidden_minors(M, case)
    data = report.to_dict()
    lines = [f"case {case.id}: {'true' if report.verdict else 'false'}"]
    if report.minor_witness is not None:
        lines.append(f"forbidden minor: {report.minor_witness[0]}")
    if report.precondition_status == "violated":
        lines.append(f"precondition violated: tilde minor of {report.tilde_witness[0]}")  # type: ignore[index]
    if oracle:
        checked = oracle_all_splits(M, case.target)
        data["oracle"] = checked.to_dict()
        lines.append(f"oracle: {'true' if checked.verdict else 'false'}")
    _emit(data, as_json, "\n".join(lines))
    if not report.verdict:
        sys.exit(EXIT_FALSE)


@cli.command()
@click.option(
    "--case",
    "case_id",
    required=True,
    type=click.Choice(list(CASES)),
    help="Splitting characterization to sweep",
)
@click.option(
    "--records",
    "-r",
    type=click.Path(path_type=Path),
    default=None,
    help="Write one JSON record per matroid here",
)
@input_errors
def sweep(case_id: str, records: Path | None) -> None:
    """Compare the decision with the splitting oracle across the configured corpus."""
    case = get_case(case_id)
    corpus_settings = get_settings().corpus
    corpus = {
        MatroidClass.GRAPHIC: graphic_corpus,
        MatroidClass.COGRAPHIC: cographic_corpus,
        MatroidClass.REGULAR: regular_corpus,
    }[case.input_class](corpus_settings)
    results = sweep_corpus(corpus, case)
    if records is not None:
        write_records_jsonl(results, records)
    statuses = [r["status"] for r in results]
    summary = {
        status: statuses.count(status)
        for status in ("agree", "disagree", "skipped_input_class", "skipped_precondition")
    }
    click.echo(json.dumps({"case": case.id, "matroids": len(results), **summary}, indent=2))
    if summary["disagree"]:
        sys.exit(EXIT_FALSE)


@cli.command()
@click.argument("name")
@click.option("--output", "-o", type=click.Path(path_type=Path), default=None, help="Output file")
@input_errors
def export(name: str, output: Path | None) -> None:
    """Write a catalog entry in matrix or graph text format."""
    text = catalog.get(name).format()
    if output is None:
        click.echo(text, nl=False)
    else:
        write_text(text, output)


@cli.command("verify-paper")
@click.option("--only", type=int, multiple=True, help="Criterion number to run (repeatable)")
@click.option("--output", "-o", type=click.Path(path_type=Path), default=None, help="Also write the report here")
@input_errors
def verify(only: tuple[int, ...], output: Path | None) -> None:
    """Run the acceptance suite and print a JSON summary."""
    results = run_acceptance_suite(get_settings(), only or None)
    records = [r.to_dict() for r in results]
    summary = {"passed": all(r.passed for r in results), "criteria": records}
    if output is not None:
        write_report(summary, output)
    click.echo(json.dumps(summary, indent=2))
    logger.info("acceptance_completed", passed=summary["passed"], criteria=len(records))
    if not summary["passed"]:
        sys.exit(EXIT_FALSE)


if __name__ == "__main__":
    cli()
