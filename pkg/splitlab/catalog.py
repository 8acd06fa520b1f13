"""
Named matroids and graphs with their checkable identities.

Each entry lists verification obligations: the relationships the entry must
satisfy. Graph edge lists were decoded from drawings, so a wrong decoding
shows up as a failing obligation instead of silently changing a forbidden set.
"""

from collections.abc import Callable
from dataclasses import dataclass
from functools import cache
from itertools import combinations

import structlog

from splitlab.gf2 import BitMatrix, row_space_equal
from splitlab.matroid import (
    BinaryMatroid,
    Edge,
    Multigraph,
    circuits,
    dual,
    from_graph,
    from_matrix,
    isomorphic,
)

logger = structlog.get_logger()


class UnknownCatalogEntryError(ValueError):
    """Raised when a catalog name is not defined."""

    pass


class CatalogDefectError(ValueError):
    """Raised when a catalog entry fails one of its obligations."""

    pass


R10_MATRIX = (
    (1, 0, 0, 0, 0, 1, 1, 0, 0, 1),
    (0, 1, 0, 0, 0, 1, 1, 1, 0, 0),
    (0, 0, 1, 0, 0, 0, 1, 1, 1, 0),
    (0, 0, 0, 1, 0, 0, 0, 1, 1, 1),
    (0, 0, 0, 0, 1, 1, 0, 0, 1, 1),
)

# R10/{4,5} in standard form
MATRIX_B = (
    (1, 0, 0, 1, 1, 0, 0, 1),
    (0, 1, 0, 1, 1, 1, 0, 0),
    (0, 0, 1, 0, 1, 1, 1, 0),
)
MATRIX_B_LABELS = ("1", "2", "3", "6", "7", "8", "9", "10")

# R10 with a coloop adjoined as column 11
MATRIX_A1 = tuple(row + (0,) for row in R10_MATRIX) + ((0,) * 10 + (1,),)

FANO_MATRIX = (
    (1, 0, 0, 1, 1, 0, 1),
    (0, 1, 0, 1, 0, 1, 1),
    (0, 0, 1, 0, 1, 1, 1),
)


def _graph(vertex_count: int, edges: list[tuple[str, int, int]]) -> Multigraph:
    """Graph from (label, u, v) with 1-based vertex names."""
    return Multigraph(vertex_count, tuple(Edge(label, u - 1, v - 1) for label, u, v in edges))


def _simple(vertex_count: int, pairs: list[tuple[int, int]]) -> Multigraph:
    return _graph(vertex_count, [(f"{u}{v}", u, v) for u, v in pairs])


def _complete(n: int) -> Multigraph:
    return _simple(n, list(combinations(range(1, n + 1), 2)))


def _complete_bipartite() -> Multigraph:
    return _simple(6, [(u, v) for u in (1, 3, 5) for v in (2, 4, 6)])


def _numbered(count: int) -> tuple[str, ...]:
    return tuple(str(i) for i in range(1, count + 1))


@dataclass(frozen=True)
class CatalogEntry:
    """
    A named matroid or graph.

    Attributes:
        name: Catalog token
        value: The matroid, or the graph whose cycle matroid is meant
        verification_obligations: Names of checks the entry must pass
    """

    name: str
    value: BinaryMatroid | Multigraph
    verification_obligations: tuple[str, ...] = ()

    @property
    def matroid(self) -> BinaryMatroid:
        if isinstance(self.value, Multigraph):
            return from_graph(self.value)
        return self.value

    def format(self) -> str:
        """Text form: graph format for graphs, labeled matrix format otherwise."""
        if isinstance(self.value, Multigraph):
            return self.value.format()
        return self.value.representation.format(self.value.elements)


def _build(name: str) -> BinaryMatroid | Multigraph:
    match name:
        case "F7":
            return from_matrix(BitMatrix.from_rows(FANO_MATRIX), _numbered(7))
        case "F7dual":
            return dual(matroid("F7"))
        case "R10":
            return from_matrix(BitMatrix.from_rows(R10_MATRIX), _numbered(10))
        case "MA1":
            return from_matrix(BitMatrix.from_rows(MATRIX_A1), _numbered(11))
        case "MG1matrixB":
            return from_matrix(BitMatrix.from_rows(MATRIX_B), MATRIX_B_LABELS)
        case "K4":
            return _complete(4)
        case "K5" | "G3":
            return _complete(5)
        case "K33":
            return _complete_bipartite()
        case "K5dual":
            return dual(matroid("K5"))
        case "K33dual":
            return dual(matroid("K33"))
        case "G1":
            # K4 with the opposite edges 12 and 34 doubled
            k4 = _complete(4)
            return Multigraph(4, k4.edges + (Edge("12b", 0, 1), Edge("34b", 2, 3)))
        case "G2":
            # square 1-2-3-4, apex 5 on 1, 2, 4, edge 34 doubled
            return _graph(
                5,
                [
                    ("12", 1, 2),
                    ("23", 2, 3),
                    ("34", 3, 4),
                    ("14", 1, 4),
                    ("15", 1, 5),
                    ("25", 2, 5),
                    ("45", 4, 5),
                    ("34b", 3, 4),
                ],
            )
        case "G4":
            # left side 1-7-6, right side 3-4-5, bottom 5-6, apex 2 joined to
            # 1, 3 and 6, rung 4-7, diagonals 1-5 and 3-7
            return _simple(
                7,
                [
                    (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7),
                    (1, 7), (1, 5), (2, 6), (3, 7), (4, 7),
                ],
            )  # fmt: skip
        case "G5":
            # K33 on parts {1,3,5} and {2,4,6} plus the edge 35
            return _simple(
                6, [(2, 3), (3, 5), (5, 6), (3, 6), (2, 5), (1, 4), (3, 4), (4, 5), (1, 2), (1, 6)]
            )
        case "G6":
            # K33 on parts {1,3,5} and {2,4,6} minus the edge 14
            return _simple(6, [(1, 2), (1, 6), (2, 3), (3, 4), (3, 6), (2, 5), (4, 5), (5, 6)])
        case "G7":
            # K5 minus the edges 35 and 45
            return _simple(5, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 5), (2, 5), (1, 3), (2, 4)])
    raise UnknownCatalogEntryError(f"Unknown catalog name {name!r}. Available: {list(NAMES)}")


def _has_minor(host: str, target: str) -> bool:
    from splitlab.recognition import has_minor

    return has_minor(matroid(host), matroid(target)) is not None


def _iso(a: BinaryMatroid, b: BinaryMatroid) -> bool:
    return isomorphic(a, b) is not None


def _contract_45_is_matrix_b() -> bool:
    contracted = matroid("R10").contract(["4", "5"])
    return contracted.elements == MATRIX_B_LABELS and row_space_equal(
        contracted.reduced, BitMatrix.from_rows(MATRIX_B)
    )


OBLIGATIONS: dict[str, Callable[[], bool]] = {
    "F7.seven_triangles": lambda: (
        matroid("F7").size == 7
        and sum(len(c) == 3 for c in circuits(matroid("F7"))) == 7
    ),
    "F7dual.rank_4": lambda: matroid("F7dual").rank == 4 and matroid("F7dual").size == 7,
    "R10.rank_5": lambda: matroid("R10").rank == 5 and matroid("R10").size == 10,
    "R10.contract_45_is_matrix_B": _contract_45_is_matrix_b,
    "R10.contract_45_is_G1": lambda: _iso(matroid("R10").contract(["4", "5"]), matroid("G1")),
    "MA1.rank_6": lambda: matroid("MA1").rank == 6 and matroid("MA1").size == 11,
    "MA1.has_R10_minor": lambda: _has_minor("MA1", "R10"),
    "MG1matrixB.is_G1": lambda: _iso(matroid("MG1matrixB"), matroid("G1")),
    "K4.rank_3": lambda: matroid("K4").rank == 3 and matroid("K4").size == 6,
    "K5.rank_4": lambda: matroid("K5").rank == 4 and matroid("K5").size == 10,
    "K33.rank_5": lambda: matroid("K33").rank == 5 and matroid("K33").size == 9,
    "K5dual.rank_6": lambda: matroid("K5dual").rank == 6,
    "K33dual.rank_4": lambda: matroid("K33dual").rank == 4,
    "G1.is_matrix_B": lambda: _iso(matroid("G1"), matroid("MG1matrixB")),
    "G2.is_dual_of_G7": lambda: _iso(matroid("G2"), dual(matroid("G7"))),
    "G3.is_K5": lambda: _iso(matroid("G3"), matroid("K5")),
    "G4.has_G1_minor": lambda: _has_minor("G4", "G1"),
    "G5.rank_5": lambda: matroid("G5").rank == 5 and matroid("G5").size == 10,
    "G6.dual_is_G1": lambda: _iso(dual(matroid("G6")), matroid("MG1matrixB")),
    "G6.minor_of_K33": lambda: _has_minor("K33", "G6"),
    "G7.dual_is_G2": lambda: _iso(dual(matroid("G7")), matroid("G2")),
    "G7.minor_of_K5": lambda: _has_minor("K5", "G7"),
}

NAMES = (
    "F7",
    "F7dual",
    "R10",
    "MA1",
    "K4",
    "K5",
    "K33",
    "K5dual",
    "K33dual",
    "G1",
    "G2",
    "G3",
    "G4",
    "G5",
    "G6",
    "G7",
    "MG1matrixB",
)


@cache
def get(name: str) -> CatalogEntry:
    """
    Look up a catalog entry.

    Raises:
        UnknownCatalogEntryError: If the name is not defined
    """
    if name not in NAMES:
        raise UnknownCatalogEntryError(f"Unknown catalog name {name!r}. Available: {list(NAMES)}")
    obligations = tuple(key for key in OBLIGATIONS if key.split(".")[0] == name)
    return CatalogEntry(name=name, value=_build(name), verification_obligations=obligations)


@cache
def matroid(name: str) -> BinaryMatroid:
    """The matroid of a catalog entry (cycle matroid for graphs)."""
    return get(name).matroid


def verify(name: str) -> dict[str, bool]:
    """Run the obligations of one entry."""
    results = {key: bool(OBLIGATIONS[key]()) for key in get(name).verification_obligations}
    for key, passed in results.items():
        if not passed:
            logger.error("catalog_obligation_failed", entry=name, obligation=key)
    return results


def check_catalog() -> None:
    """
    Run every obligation of every entry.

    Raises:
        CatalogDefectError: Listing each failed obligation
    """
    failed = [key for name in NAMES for key, ok in verify(name).items() if not ok]
    if failed:
        raise CatalogDefectError(f"Catalog obligations failed: {failed}")
    logger.info("catalog_verified", entries=len(NAMES), obligations=len(OBLIGATIONS))

