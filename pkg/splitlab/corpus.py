"""
Generated inputs for the cross-validation sweeps.

Connected multigraphs are enumerated exhaustively up to isomorphism; random
binary matroids and planted tilde-minor hosts come from a seeded numpy
generator so every run sees the same corpus.
"""

from collections.abc import Iterator
from dataclasses import dataclass
from itertools import combinations_with_replacement

import networkx as nx
import numpy as np
import structlog

from splitlab import catalog
from splitlab.config import CorpusSettings, get_settings
from splitlab.gf2 import BitMatrix
from splitlab.matroid import (
    BinaryMatroid,
    Multigraph,
    dual,
    extend,
    from_graph,
    from_matrix,
    series_extension,
    single_element_minors,
)

logger = structlog.get_logger()


def _weighted(pairs: tuple[tuple[int, int], ...], vertex_count: int) -> nx.Graph:
    """Simple graph with edge multiplicities as a string attribute."""
    graph = nx.Graph()
    graph.add_nodes_from(range(vertex_count))
    for u, v in pairs:
        if graph.has_edge(u, v):
            graph[u][v]["mult"] = str(int(graph[u][v]["mult"]) + 1)
        else:
            graph.add_edge(u, v, mult="1")
    return graph


def _same_multiplicity(a: dict[str, str], b: dict[str, str]) -> bool:
    return a["mult"] == b["mult"]


def connected_multigraphs(
    max_edges: int, max_vertices: int, allow_loops: bool = False
) -> Iterator[Multigraph]:
    """
    Every connected multigraph with at least one edge, once per isomorphism class.

    Candidates are bucketed by a Weisfeiler-Lehman hash of the multiplicity
    graph and then compared exactly within a bucket.
    """
    total = 0
    for vertex_count in range(1, max_vertices + 1):
        slots = [
            (u, v)
            for u in range(vertex_count)
            for v in range(u, vertex_count)
            if allow_loops or u != v
        ]
        if not slots:
            continue
        for edge_count in range(max(1, vertex_count - 1), max_edges + 1):
            buckets: dict[str, list[nx.Graph]] = {}
            for pairs in combinations_with_replacement(slots, edge_count):
                graph = _weighted(pairs, vertex_count)
                if not nx.is_connected(graph):
                    continue
                key = nx.weisfeiler_lehman_graph_hash(graph, edge_attr="mult")
                bucket = buckets.setdefault(key, [])
                if any(
                    nx.is_isomorphic(graph, seen, edge_match=_same_multiplicity) for seen in bucket
                ):
                    continue
                bucket.append(graph)
                total += 1
                yield Multigraph.from_pairs(vertex_count, pairs)
    logger.debug("multigraphs_enumerated", count=total, max_edges=max_edges, max_vertices=max_vertices)


def random_binary_matroids(
    count: int, max_rows: int, max_cols: int, seed: int
) -> list[BinaryMatroid]:
    """Vector matroids of uniformly random 0/1 matrices, labeled "1".."n"."""
    rng = np.random.default_rng(seed)
    matroids = []
    for _ in range(count):
        rows = int(rng.integers(1, max_rows + 1))
        cols = int(rng.integers(1, max_cols + 1))
        entries = rng.integers(0, 2, size=(rows, cols), dtype=np.uint8)
        matroids.append(from_matrix(BitMatrix(entries), [str(i) for i in range(1, cols + 1)]))
    return matroids


@dataclass(frozen=True)
class PlantedHost:
    """
    A matroid built to contain a tilde minor of F.

    Attributes:
        host: The padded matroid
        kind: "extension", "series" or "double_series"
        pair: The planted pair {x, y}
        excluded: Catalog name of F
    """

    host: BinaryMatroid
    kind: str
    pair: tuple[str, str]
    excluded: str


PLANT_KINDS = ("extension", "series", "double_series")


def _random_column(rng: np.random.Generator, rows: int) -> list[int]:
    return [int(b) for b in rng.integers(0, 2, size=rows)]


def _plant(F: BinaryMatroid, kind: str, rng: np.random.Generator) -> BinaryMatroid:
    rows = F.representation.row_count
    anchor = F.elements[int(rng.integers(0, F.size))]
    match kind:
        case "extension":
            N = extend(F, _random_column(rng, rows), "x")
            return extend(N, _random_column(rng, rows), "y")
        case "series":
            # contracting y restores F and {x, y} is a series pair
            return series_extension(F.relabel({anchor: "x"}), "x", "y")
        case "double_series":
            N = series_extension(F, anchor, "x")
            return series_extension(N, "x", "y")
    raise ValueError(f"Unknown plant kind {kind!r}")


def planted_tilde_hosts(
    name: str, count: int, seed: int, max_size: int = 12
) -> list[PlantedHost]:
    """
    Hosts carrying a constructed member of the tilde class of a catalog entry.

    Plant kinds rotate through two-element extensions, single series
    coextensions and double series coextensions; each host is then padded
    with random extensions and series coextensions up to a random size no
    larger than max_size.
    """
    F = catalog.matroid(name)
    rng = np.random.default_rng(seed)
    hosts = []
    for i in range(count):
        kind = PLANT_KINDS[i % len(PLANT_KINDS)]
        host = _plant(F, kind, rng)
        target = int(rng.integers(host.size, max(host.size, max_size) + 1))
        extra = 0
        while host.size < target:
            extra += 1
            if rng.random() < 0.5:
                rows = host.representation.row_count + int(rng.integers(0, 2))
                host = extend(host, _random_column(rng, rows), f"p{extra}")
            else:
                anchor = host.elements[int(rng.integers(0, host.size))]
                host = series_extension(host, anchor, f"p{extra}")
        hosts.append(PlantedHost(host, kind, ("x", "y"), name))
    logger.debug("tilde_hosts_planted", excluded=name, count=count, seed=seed)
    return hosts


def graphic_corpus(settings: CorpusSettings | None = None) -> list[BinaryMatroid]:
    """Cycle matroids of the configured multigraph corpus."""
    cfg = settings or get_settings().corpus
    return [
        from_graph(g)
        for g in connected_multigraphs(cfg.max_edges, cfg.max_vertices, cfg.allow_loops)
    ]


def cographic_corpus(settings: CorpusSettings | None = None) -> list[BinaryMatroid]:
    """Duals of the graphic corpus."""
    return [dual(M) for M in graphic_corpus(settings)]


def regular_corpus(settings: CorpusSettings | None = None) -> list[BinaryMatroid]:
    """Graphic and cographic corpora plus R10 and its single-element minors."""
    graphic = graphic_corpus(settings)
    r10 = catalog.matroid("R10")
    # R10 is element-transitive, so one deletion and one contraction cover
    # every single-element minor up to isomorphism
    derived = [r10] + [N for _, N in single_element_minors(r10)][:2]
    return graphic + [dual(M) for M in graphic] + derived
