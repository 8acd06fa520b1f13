"""
The splitting operation on binary matroids and on graphs.
"""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import structlog

from splitlab.gf2 import BitMatrix
from splitlab.matroid import (
    BinaryMatroid,
    Edge,
    MatroidError,
    Multigraph,
    standard_representation,
)

logger = structlog.get_logger()


class SplitError(ValueError):
    """Raised when a graph split is requested for an invalid edge pair."""

    pass


@dataclass(frozen=True)
class SplitPair:
    """Two distinct elements x and y to split on."""

    x: str
    y: str

    def __post_init__(self) -> None:
        if self.x == self.y:
            raise MatroidError(f"Split pair needs two distinct elements, got {self.x!r} twice")

    def to_dict(self) -> dict[str, str]:
        return {"x": self.x, "y": self.y}


def split(M: BinaryMatroid, p: SplitPair, basis: Sequence[str] | None = None) -> BinaryMatroid:
    """
    Splitting matroid M_{x,y}.

    A standard representation A of M gets one extra row with 1s in the columns
    of x and y; the result is the vector matroid of that matrix on the same
    labels.

    Args:
        M: Matroid
        p: Pair to split on
        basis: Optional labels the standard representation should be built on;
            the resulting matroid does not depend on this choice

    Raises:
        MatroidError: If x or y is not an element of M
    """
    ix, iy = M.positions([p.x, p.y])
    a = standard_representation(M, basis)
    extra = np.zeros((1, M.size), dtype=np.uint8)
    extra[0, [ix, iy]] = 1
    result = BinaryMatroid(M.elements, a.stack(BitMatrix(extra)))
    logger.debug("split_computed", x=p.x, y=p.y, rank_before=M.rank, rank_after=result.rank)
    return result


def _shared_vertex(g: Multigraph, x: Edge, y: Edge, vertex: int | None) -> int:
    common = sorted({x.u, x.v} & {y.u, y.v})
    if vertex is not None:
        if vertex not in common:
            raise SplitError(f"Edges {x.label} and {y.label} do not both meet vertex {vertex}")
        common = [vertex]
    if not common:
        raise SplitError(f"Edges {x.label} and {y.label} do not share an endpoint")
    for v in common:
        if g.degree(v) >= 3:
            return v
    raise SplitError(
        f"Shared endpoint of {x.label} and {y.label} has degree {g.degree(common[0])}, need >= 3"
    )


def _far_end(e: Edge, v: int) -> int:
    return e.v if e.u == v else e.u


def split_graph(g: Multigraph, p: SplitPair, vertex: int | None = None) -> Multigraph:
    """
    Split the pair {x, y} away from their common vertex v.

    With x = vv1 and y = vv2, the edges x and y are replaced by edges from a
    new vertex v_{x,y} to v1 and v2, keeping the labels x and y.

    Args:
        g: Graph
        p: Pair of edges meeting at a vertex of degree at least 3
        vertex: Common endpoint to split at, when x and y share two

    Raises:
        SplitError: If an edge is a loop, the edges share no endpoint, or the
            shared endpoint has degree below 3
    """
    x, y = g.edge(p.x), g.edge(p.y)
    for e in (x, y):
        if e.u == e.v:
            raise SplitError(f"Edge {e.label} is a loop")
    v = _shared_vertex(g, x, y, vertex)
    new_vertex = g.vertex_count
    replaced = {
        x.label: Edge(x.label, new_vertex, _far_end(x, v)),
        y.label: Edge(y.label, new_vertex, _far_end(y, v)),
    }
    logger.debug("graph_split", x=p.x, y=p.y, vertex=v, new_vertex=new_vertex)
    return Multigraph(g.vertex_count + 1, tuple(replaced.get(e.label, e) for e in g.edges))
