"""
Binary matroids, multigraphs and the minor/dual algebra.

A BinaryMatroid is a labeled ground set plus a GF(2) representation whose
columns follow the label order. Internally columns are handled as integer
bitmasks over the rows and element subsets as bitmasks over element indices.
"""

from collections import Counter
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Any, NamedTuple

import networkx as nx
import numpy as np
import structlog

from splitlab.config import get_settings
from splitlab.gf2 import BitMatrix, reduced_rows, standard_form

logger = structlog.get_logger()


class MatroidError(ValueError):
    """Raised for unknown or duplicate labels and invalid minor specifications."""

    pass


class EnumerationBoundError(ValueError):
    """Raised when a ground set exceeds the configured enumeration bound."""

    pass


class GraphFormatError(ValueError):
    """Raised when graph text cannot be parsed."""

    pass


class CircuitKind(Enum):
    """Which family of minimal dependent sets to enumerate."""

    CIRCUIT = "circuit"
    COCIRCUIT = "cocircuit"


def _check_label(label: str) -> None:
    if not isinstance(label, str) or not label or any(ch.isspace() for ch in label):
        raise MatroidError(
            f"Element labels must be nonempty tokens without whitespace, got {label!r}"
        )


def _mask_rank(masks: Iterable[int]) -> int:
    """Rank of a family of GF(2) vectors given as integers."""
    pivots: dict[int, int] = {}
    for v in masks:
        while v:
            high = v.bit_length() - 1
            if high in pivots:
                v ^= pivots[high]
            else:
                pivots[high] = v
                break
    return len(pivots)


def _span(basis: Sequence[int]) -> list[int]:
    """All XOR combinations of the basis vectors."""
    vectors = [0]
    for b in basis:
        vectors += [v ^ b for v in vectors]
    return vectors


def _minimal_supports(vectors: Iterable[int]) -> list[int]:
    """Inclusion-minimal nonzero supports."""
    minimal: list[int] = []
    for v in sorted({v for v in vectors if v}, key=lambda m: (m.bit_count(), m)):
        if not any(c & v == c for c in minimal):
            minimal.append(v)
    return minimal


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _drop_row(col: int, row: int, low: int) -> int:
    return (col & low) | ((col >> (row + 1)) << row)


def _check_bound(size: int, bound: int | None, what: str) -> None:
    limit = get_settings().enumeration_bound if bound is None else bound
    if size > limit:
        raise EnumerationBoundError(f"{what} needs at most {limit} elements, got {size}")


@dataclass(frozen=True, eq=False)
class BinaryMatroid:
    """
    Vector matroid of a GF(2) matrix with labeled columns.

    Attributes:
        elements: Ground set labels, in column order
        representation: Matrix whose column j represents elements[j]
    """

    elements: tuple[str, ...]
    representation: BitMatrix

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        for label in self.elements:
            _check_label(label)
        if len(set(self.elements)) != len(self.elements):
            dupes = sorted(k for k, v in Counter(self.elements).items() if v > 1)
            raise MatroidError(f"Duplicate element labels: {dupes}")
        if self.representation.col_count != len(self.elements):
            raise MatroidError(
                f"{len(self.elements)} labels for a matrix with "
                f"{self.representation.col_count} columns"
            )

    @classmethod
    def from_masks(
        cls, elements: Sequence[str], masks: Sequence[int], row_count: int
    ) -> "BinaryMatroid":
        return cls(tuple(elements), BitMatrix.from_column_masks(masks, row_count))

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Column bitmasks, in element order."""
        return self.representation.column_masks()

    @cached_property
    def index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.elements)}

    @property
    def size(self) -> int:
        return len(self.elements)

    @cached_property
    def rank(self) -> int:
        return _mask_rank(self.masks)

    @property
    def corank(self) -> int:
        return self.size - self.rank

    def positions(self, labels: Iterable[str]) -> list[int]:
        """Element indices of labels."""
        try:
            return [self.index[label] for label in labels]
        except KeyError as e:
            raise MatroidError(f"Unknown element label {e.args[0]!r}") from None

    def subset_mask(self, labels: Iterable[str]) -> int:
        mask = 0
        for i in self.positions(labels):
            mask |= 1 << i
        return mask

    def labels_of(self, mask: int) -> frozenset[str]:
        return frozenset(self.elements[i] for i in _bits(mask))

    def mask_rank(self, subset: int) -> int:
        """Rank of the element subset given as an index bitmask."""
        return _mask_rank(self.masks[i] for i in _bits(subset))

    def rank_of(self, labels: Iterable[str]) -> int:
        return self.mask_rank(self.subset_mask(labels))

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    @cached_property
    def reduced(self) -> BitMatrix:
        """Row-reduced representation with zero rows dropped."""
        return reduced_rows(self.representation)[0]

    def delete(self, labels: Iterable[str]) -> "BinaryMatroid":
        return minor(self, MinorSpec(delete=frozenset(labels)))

    def contract(self, labels: Iterable[str]) -> "BinaryMatroid":
        return minor(self, MinorSpec(contract=frozenset(labels)))

    def relabel(self, mapping: Mapping[str, str]) -> "BinaryMatroid":
        """Rename elements; labels missing from mapping keep their name."""
        return BinaryMatroid(
            tuple(mapping.get(e, e) for e in self.elements), self.representation
        )

    def __repr__(self) -> str:
        return f"BinaryMatroid(size={self.size}, rank={self.rank})"


class Edge(NamedTuple):
    """Labeled edge between vertices u and v (u == v for a loop)."""

    label: str
    u: int
    v: int


@dataclass(frozen=True)
class Multigraph:
    """
    Multigraph with labeled edges; loops and parallel edges are allowed.

    Attributes:
        vertex_count: Number of vertices, indexed from 0
        edges: Labeled edges in order
    """

    vertex_count: int
    edges: tuple[Edge, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))
        if self.vertex_count < 1:
            raise ValueError(f"vertex_count must be positive, got {self.vertex_count}")
        labels = [e.label for e in self.edges]
        for label in labels:
            _check_label(label)
        if len(set(labels)) != len(labels):
            dupes = sorted(k for k, v in Counter(labels).items() if v > 1)
            raise MatroidError(f"Duplicate edge labels: {dupes}")
        for e in self.edges:
            if not (0 <= e.u < self.vertex_count and 0 <= e.v < self.vertex_count):
                raise ValueError(
                    f"Edge {e.label} joins {e.u} and {e.v}, outside 0..{self.vertex_count - 1}"
                )

    @classmethod
    def from_pairs(cls, vertex_count: int, pairs: Iterable[tuple[int, int]]) -> "Multigraph":
        """Graph with edges labeled "e0", "e1", ... in order."""
        return cls(vertex_count, tuple(Edge(f"e{i}", u, v) for i, (u, v) in enumerate(pairs)))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.edges)

    def edge(self, label: str) -> Edge:
        for e in self.edges:
            if e.label == label:
                return e
        raise MatroidError(f"Unknown edge label {label!r}")

    def degree(self, vertex: int) -> int:
        """Vertex degree; a loop counts twice."""
        return sum((e.u == vertex) + (e.v == vertex) for e in self.edges)

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.vertex_count))
        for e in self.edges:
            graph.add_edge(e.u, e.v, key=e.label)
        return graph

    def is_connected(self) -> bool:
        return bool(nx.is_connected(self.to_networkx()))

    def format(self) -> str:
        """Render in the graph text format: "VERTICES E" then "label u v" lines."""
        lines = [f"{self.vertex_count} {self.edge_count}"]
        lines.extend(f"{e.label} {e.u} {e.v}" for e in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Multigraph":
        """
        Parse the graph text format.

        Raises:
            GraphFormatError: If the header or an edge line is malformed
        """
        lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
        if not lines:
            raise GraphFormatError("Empty graph text")
        header = lines[0].split()
        if len(header) != 2 or not all(tok.isdigit() for tok in header):
            raise GraphFormatError(f"Header must be 'VERTICES E', got {lines[0]!r}")
        vertex_count, edge_count = int(header[0]), int(header[1])
        body = lines[1:]
        if len(body) != edge_count:
            raise GraphFormatError(f"Expected {edge_count} edge lines, found {len(body)}")
        edges = []
        for line in body:
            parts = line.split()
            if len(parts) != 3 or not parts[1].isdigit() or not parts[2].isdigit():
                raise GraphFormatError(f"Edge line must be 'label u v', got {line!r}")
            edges.append(Edge(parts[0], int(parts[1]), int(parts[2])))
        try:
            return cls(vertex_count, tuple(edges))
        except ValueError as e:
            raise GraphFormatError(str(e)) from e


@dataclass(frozen=True)
class MinorSpec:
    """
    Deletion set T1 and contraction set T2 naming a minor M\\T1/T2.

    Attributes:
        delete: Elements to delete
        contract: Elements to contract
    """

    delete: frozenset[str] = frozenset()
    contract: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "delete", frozenset(self.delete))
        object.__setattr__(self, "contract", frozenset(self.contract))
        overlap = self.delete & self.contract
        if overlap:
            raise MatroidError(f"Delete and contract sets overlap on {sorted(overlap)}")

    @property
    def removed(self) -> frozenset[str]:
        return self.delete | self.contract

    def merged(self, other: "MinorSpec") -> "MinorSpec":
        return MinorSpec(self.delete | other.delete, self.contract | other.contract)

    def to_dict(self) -> dict[str, list[str]]:
        return {"delete": sorted(self.delete), "contract": sorted(self.contract)}


def from_matrix(m: BitMatrix, labels: Sequence[str]) -> BinaryMatroid:
    """
    Vector matroid of a matrix.

    Raises:
        MatroidError: On a label/column count mismatch or duplicate labels
    """
    return BinaryMatroid(tuple(labels), m)


def from_graph(g: Multigraph) -> BinaryMatroid:
    """
    Cycle matroid of a multigraph.

    The vertex-edge incidence matrix is row-reduced; a loop gives a zero column.
    """
    masks = [0 if e.u == e.v else (1 << e.u) | (1 << e.v) for e in g.edges]
    incidence = BitMatrix.from_column_masks(masks, g.vertex_count)
    return BinaryMatroid(g.labels, reduced_rows(incidence)[0])


def standard_representation(
    M: BinaryMatroid, basis: Sequence[str] | None = None
) -> BitMatrix:
    """
    Representation [I_r | D] of M, columns kept in element order.

    Args:
        M: Matroid
        basis: Optional labels to scan first, so the identity sits on them
            whenever they are independent

    Returns:
        Row-reduced matrix with rank(M) rows
    """
    priority = None
    if basis is not None:
        first = M.positions(basis)
        priority = first + [i for i in range(M.size) if i not in set(first)]
    return standard_form(M.representation, priority).in_original_order()


def dual(M: BinaryMatroid) -> BinaryMatroid:
    """
    Dual matroid on the same labels.

    With standard form [I_r | D] in column order (basis; cobasis), the dual is
    represented by [D^T | I_{n-r}] mapped back to element order.
    """
    sf = standard_form(M.representation)
    r, n = sf.rank, M.size
    d = sf.matrix.entries[:, r:]
    dual_std = np.hstack([d.T.reshape(n - r, r), np.eye(n - r, dtype=np.uint8)])
    inverse = [0] * n
    for std_col, orig_col in enumerate(sf.column_order):
        inverse[orig_col] = std_col
    return BinaryMatroid(M.elements, BitMatrix(dual_std[:, inverse].reshape(n - r, n)))


def minor(M: BinaryMatroid, spec: MinorSpec) -> BinaryMatroid:
    """
    The minor M\\T1/T2.

    Deletion drops columns. Contraction of a non-loop pivots its column to a
    unit vector and removes that row and column; contracting a loop deletes it.

    Raises:
        MatroidError: If `spec` names labels outside E(M)
    """
    unknown = spec.removed - set(M.elements)
    if unknown:
        raise MatroidError(f"Minor spec names unknown elements {sorted(unknown)}")

    columns = dict(zip(M.elements, M.masks))
    row_count = M.representation.row_count
    for label in M.elements:
        if label not in spec.contract:
            continue
        pivot_col = columns.pop(label)
        if pivot_col == 0:
            continue
        row = (pivot_col & -pivot_col).bit_length() - 1
        low = (1 << row) - 1
        columns = {
            other: _drop_row(col ^ pivot_col if col >> row & 1 else col, row, low)
            for other, col in columns.items()
        }
        row_count -= 1

    kept = [e for e in M.elements if e in columns and e not in spec.delete]
    return BinaryMatroid.from_masks(kept, [columns[e] for e in kept], row_count)


def _cycle_basis(M: BinaryMatroid) -> list[int]:
    """Null-space basis of the representation, as element-index masks."""
    sf = standard_form(M.representation)
    r = sf.rank
    d = sf.matrix.entries
    basis = []
    for j in range(r, M.size):
        vec = 1 << sf.column_order[j]
        for i in range(r):
            if d[i, j]:
                vec |= 1 << sf.basis_columns[i]
        basis.append(vec)
    return basis


def _cocycle_basis(M: BinaryMatroid) -> list[int]:
    """Row-space basis of the representation, as element-index masks."""
    return [
        sum(1 << j for j in range(M.size) if row[j]) for row in M.reduced.entries
    ]


def circuit_masks(
    M: BinaryMatroid, kind: CircuitKind = CircuitKind.CIRCUIT, bound: int | None = None
) -> tuple[int, ...]:
    """Circuits or cocircuits as element-index masks, ordered by size then mask."""
    _check_bound(M.size, bound, "Circuit enumeration")
    cache = M.__dict__.setdefault("_circuit_cache", {})
    if kind not in cache:
        basis = _cycle_basis(M) if kind is CircuitKind.CIRCUIT else _cocycle_basis(M)
        cache[kind] = tuple(_minimal_supports(_span(basis)))
    return cache[kind]


def circuits(
    M: BinaryMatroid, kind: CircuitKind = CircuitKind.CIRCUIT, bound: int | None = None
) -> frozenset[frozenset[str]]:
    """
    All circuits (or cocircuits) of M.

    Circuits are the minimal nonzero supports of the cycle space; cocircuits
    are the minimal nonzero supports of the row space.

    Raises:
        EnumerationBoundError: If |E(M)| exceeds the bound
    """
    return frozenset(M.labels_of(c) for c in circuit_masks(M, kind, bound))


def loops_coloops(M: BinaryMatroid) -> tuple[frozenset[str], frozenset[str]]:
    """Loops (zero columns) and coloops (rank drops on deletion)."""
    loops = frozenset(e for e, col in zip(M.elements, M.masks) if col == 0)
    coloops = frozenset(
        e for i, e in enumerate(M.elements) if M.mask_rank(M.full_mask & ~(1 << i)) < M.rank
    )
    return loops, coloops


def is_2_cocircuit(M: BinaryMatroid, x: str, y: str) -> bool:
    """
    Check whether {x, y} is a cocircuit of M.

    Raises:
        MatroidError: If x == y or a label is unknown
    """
    if x == y:
        raise MatroidError(f"A 2-cocircuit needs two distinct elements, got {x!r} twice")
    ix, iy = M.positions([x, y])
    full = M.full_mask
    return (
        M.mask_rank(full & ~(1 << ix)) == M.rank
        and M.mask_rank(full & ~(1 << iy)) == M.rank
        and M.mask_rank(full & ~(1 << ix) & ~(1 << iy)) == M.rank - 1
    )


def same_matroid(M: BinaryMatroid, N: BinaryMatroid, bound: int | None = None) -> bool:
    """
    Check whether M and N are the same matroid on the same labels.

    Decided by rank agreement on every subset of the ground set.
    """
    if set(M.elements) != set(N.elements):
        return False
    _check_bound(M.size, bound, "Matroid comparison")
    order = N.positions(M.elements)
    n_masks = [N.masks[i] for i in order]
    for subset in range(1 << M.size):
        members = list(_bits(subset))
        if M.mask_rank(subset) != _mask_rank(n_masks[i] for i in members):
            return False
    return True


def _element_profiles(
    M: BinaryMatroid, bound: int | None = None
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Per element: counts of circuits and of cocircuits through it, by size."""
    profiles = []
    circ = circuit_masks(M, CircuitKind.CIRCUIT, bound)
    cocirc = circuit_masks(M, CircuitKind.COCIRCUIT, bound)
    for i in range(M.size):
        bit = 1 << i
        by_size = [0] * (M.size + 1)
        co_by_size = [0] * (M.size + 1)
        for c in circ:
            if c & bit:
                by_size[c.bit_count()] += 1
        for c in cocirc:
            if c & bit:
                co_by_size[c.bit_count()] += 1
        profiles.append((tuple(by_size), tuple(co_by_size)))
    return profiles


def fingerprint(M: BinaryMatroid, bound: int | None = None) -> tuple[Any, ...]:
    """
    Isomorphism invariant: size, rank, circuit and cocircuit size profiles and
    the multiset of per-element profiles.
    """
    _check_bound(M.size, bound, "Fingerprint")
    cache = M.__dict__
    if "_fingerprint" not in cache:
        circ = Counter(c.bit_count() for c in circuit_masks(M, CircuitKind.CIRCUIT, bound))
        cocirc = Counter(c.bit_count() for c in circuit_masks(M, CircuitKind.COCIRCUIT, bound))
        cache["_fingerprint"] = (
            M.size,
            M.rank,
            tuple(sorted(circ.items())),
            tuple(sorted(cocirc.items())),
            tuple(sorted(_element_profiles(M, bound))),
        )
    return cache["_fingerprint"]


def isomorphic(
    M: BinaryMatroid, N: BinaryMatroid, bound: int | None = None
) -> dict[str, str] | None:
    """
    Find a bijection E(M) -> E(N) carrying circuits onto circuits.

    Backtracks over label assignments. Candidates for an element must share its
    per-element profile; elements with the fewest candidates are placed first,
    ties broken by label order.

    Returns:
        The bijection, or None if M and N are not isomorphic

    Raises:
        EnumerationBoundError: If either ground set exceeds the bound
    """
    _check_bound(max(M.size, N.size), bound, "Isomorphism search")
    if M.size != N.size or M.rank != N.rank:
        return None
    if fingerprint(M, bound) != fingerprint(N, bound):
        return None

    m_circ = circuit_masks(M, bound=bound)
    n_circ = circuit_masks(N, bound=bound)
    n_circ_set = set(n_circ)
    m_circ_set = set(m_circ)
    m_through = [[c for c in m_circ if c >> i & 1] for i in range(M.size)]
    n_through = [[c for c in n_circ if c >> j & 1] for j in range(N.size)]

    m_prof = _element_profiles(M, bound)
    n_prof = _element_profiles(N, bound)
    candidates = [[j for j in range(N.size) if n_prof[j] == m_prof[i]] for i in range(M.size)]
    order = sorted(range(M.size), key=lambda i: (len(candidates[i]), M.elements[i]))

    forward = [-1] * M.size
    backward = [-1] * N.size

    def image(mask: int) -> int:
        out = 0
        for i in _bits(mask):
            out |= 1 << forward[i]
        return out

    def preimage(mask: int) -> int:
        out = 0
        for j in _bits(mask):
            out |= 1 << backward[j]
        return out

    def consistent(i: int, j: int, placed: int, placed_image: int) -> bool:
        for c in m_through[i]:
            if c & ~placed == 0 and image(c) not in n_circ_set:
                return False
        for c in n_through[j]:
            if c & ~placed_image == 0 and preimage(c) not in m_circ_set:
                return False
        return True

    def search(depth: int, placed: int, placed_image: int) -> bool:
        if depth == len(order):
            return True
        i = order[depth]
        for j in candidates[i]:
            if backward[j] != -1:
                continue
            forward[i], backward[j] = j, i
            new_placed, new_image = placed | (1 << i), placed_image | (1 << j)
            if consistent(i, j, new_placed, new_image) and search(depth + 1, new_placed, new_image):
                return True
            forward[i], backward[j] = -1, -1
        return False

    if not search(0, 0, 0):
        logger.debug("isomorphism_rejected", size=M.size, rank=M.rank)
        return None
    return {M.elements[i]: N.elements[forward[i]] for i in range(M.size)}


def series_extension(M: BinaryMatroid, x: str, new: str) -> BinaryMatroid:
    """
    Coextension of M by `new` placed in series with `x`.

    A new row carries 1s at x and new; contracting `new` gives back M.
    """
    (ix,) = M.positions([x])
    if new in M.index:
        raise MatroidError(f"Element {new!r} already in the ground set")
    row = M.representation.row_count
    masks = list(M.masks)
    masks[ix] |= 1 << row
    masks.append(1 << row)
    return BinaryMatroid.from_masks(M.elements + (new,), masks, row + 1)


def extend(M: BinaryMatroid, column: Sequence[int], new: str) -> BinaryMatroid:
    """
    Extension of M by an element represented by `column`.

    A column longer than the representation adds zero rows below M's columns,
    so extra 1s there make `new` a coloop.
    """
    if new in M.index:
        raise MatroidError(f"Element {new!r} already in the ground set")
    rows = max(M.representation.row_count, len(column))
    mask = sum(1 << i for i, bit in enumerate(column) if bit)
    return BinaryMatroid.from_masks(M.elements + (new,), list(M.masks) + [mask], rows)


def single_element_minors(M: BinaryMatroid) -> Iterator[tuple[MinorSpec, BinaryMatroid]]:
    """Every M\\e and M/e, in element order."""
    for e in M.elements:
        yield MinorSpec(delete=frozenset({e})), M.delete([e])
        yield MinorSpec(contract=frozenset({e})), M.contract([e])


def pairs(M: BinaryMatroid) -> Iterator[tuple[str, str]]:
    """Unordered element pairs in label order."""
    return combinations(M.elements, 2)
