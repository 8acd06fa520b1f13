"""
I/O layer for matroid and graph files and JSON reports.

Wherever a file is expected a catalog name is accepted too; catalog names are
resolved first, then the filesystem.
"""

import json
from collections.abc import Iterable
from pathlib import Path
from typing import Any

import structlog

from splitlab import catalog
from splitlab.gf2 import BitMatrix
from splitlab.matroid import BinaryMatroid, Multigraph, from_graph, from_matrix

logger = structlog.get_logger()

GRAPH_SUFFIXES = (".graph",)
MATRIX_SUFFIXES = (".mat", ".matrix")


class InputNotFoundError(ValueError):
    """Raised when a token is neither a catalog name nor an existing file."""

    pass


def _looks_like_graph(text: str) -> bool:
    """
    Matrix bodies start with a 0/1 row or the labels line; anything else is an edge line.

    A bare header is a graph only when it reads "V 0" with V > 0, since a
    matrix with rows needs row lines.
    """
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if len(lines) > 1:
        second = lines[1]
        return not (second.startswith("labels:") or set(second) <= {"0", "1"})
    header = lines[0].split() if lines else []
    return (
        len(header) == 2
        and all(tok.isdigit() for tok in header)
        and int(header[0]) > 0
        and int(header[1]) == 0
    )


def parse_matroid(text: str, kind: str | None = None) -> BinaryMatroid:
    """
    Parse matrix or graph text into a matroid.

    Args:
        text: File contents
        kind: "matrix" or "graph"; sniffed from the second line when None

    Returns:
        The vector matroid of the matrix, or the cycle matroid of the graph.
        Unlabeled matrices get labels "1".."n".

    Raises:
        MatrixFormatError: If matrix text is malformed
        GraphFormatError: If graph text is malformed
    """
    if kind is None:
        kind = "graph" if _looks_like_graph(text) else "matrix"
    if kind == "graph":
        return from_graph(Multigraph.parse(text))
    matrix, labels = BitMatrix.parse(text)
    if labels is None:
        labels = [str(i) for i in range(1, matrix.col_count + 1)]
    return from_matrix(matrix, labels)


def _kind_for(path: Path) -> str | None:
    if path.suffix in GRAPH_SUFFIXES:
        return "graph"
    if path.suffix in MATRIX_SUFFIXES:
        return "matrix"
    return None


def _existing(token: str) -> Path:
    path = Path(token)
    if not path.is_file():
        raise InputNotFoundError(
            f"{token!r} is neither a catalog name nor a file. Catalog: {list(catalog.NAMES)}"
        )
    return path


def load_matroid(token: str) -> BinaryMatroid:
    """
    Resolve a catalog name or load a matrix/graph file.

    Raises:
        InputNotFoundError: If the token names nothing
        MatrixFormatError: If a matrix file is malformed
        GraphFormatError: If a graph file is malformed
    """
    if token in catalog.NAMES:
        logger.debug("catalog_entry_resolved", name=token)
        return catalog.matroid(token)
    path = _existing(token)
    try:
        M = parse_matroid(path.read_text(), _kind_for(path))
    except ValueError as e:
        logger.error(
            "failed_to_parse_input", path=str(path), error=str(e), error_type=type(e).__name__
        )
        raise
    logger.info("matroid_loaded", path=str(path), size=M.size, rank=M.rank)
    return M


def load_graph(token: str) -> Multigraph:
    """
    Resolve a catalog graph or load a graph file.

    Raises:
        InputNotFoundError: If the token names nothing, or a catalog entry
            that is not a graph
        GraphFormatError: If the file is malformed
    """
    if token in catalog.NAMES:
        value = catalog.get(token).value
        if not isinstance(value, Multigraph):
            raise InputNotFoundError(f"Catalog entry {token!r} is a matrix, not a graph")
        return value
    path = _existing(token)
    graph = Multigraph.parse(path.read_text())
    logger.info("graph_loaded", path=str(path), vertices=graph.vertex_count, edges=graph.edge_count)
    return graph


def write_text(text: str, output_path: Path) -> None:
    """Write a matrix or graph rendering, creating parent directories."""
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(text)
    logger.info("text_written", path=str(output_path))


def write_report(report: Any, output_path: Path) -> None:
    """
    Write a report to a JSON file.

    Args:
        report: A JSON-ready value or an object with a to_dict method
        output_path: Path to output file
    """
    data = report.to_dict() if hasattr(report, "to_dict") else report
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, "w") as f:
        json.dump(data, f, indent=2)
    logger.info("report_written", path=str(output_path))


def write_records_jsonl(records: Iterable[dict[str, Any]], output_path: Path) -> None:
    """Write one JSON object per line."""
    output_path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(output_path, "w") as f:
        for record in records:
            f.write(json.dumps(record) + "\n")
            count += 1
    logger.info("records_written", path=str(output_path), count=count)
