"""
Minor search and forbidden-minor classification.

Minors are enumerated in normal form M\\D/C with C independent and D
coindependent in M/C, so the minor's rank is rank(M) - |C|. Candidates are
rejected by fingerprint before any isomorphism search.
"""

from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

import networkx as nx
import structlog

from splitlab import catalog
from splitlab.config import get_settings
from splitlab.gf2 import standard_form
from splitlab.matroid import (
    BinaryMatroid,
    CircuitKind,
    Edge,
    EnumerationBoundError,
    MatroidError,
    MinorSpec,
    Multigraph,
    circuit_masks,
    fingerprint,
    isomorphic,
    loops_coloops,
    minor,
)

logger = structlog.get_logger()

REGULAR_EXCLUDED = ("F7", "F7dual")
GRAPHIC_EXCLUDED = REGULAR_EXCLUDED + ("K33dual", "K5dual")
COGRAPHIC_EXCLUDED = REGULAR_EXCLUDED + ("K33", "K5")


@dataclass(frozen=True)
class MinorWitness:
    """
    A minor embedding M\\T1/T2 isomorphic to a target.

    Attributes:
        spec: Deletion and contraction sets in the host
        bijection: Map from the minor's elements to the target's elements
    """

    spec: MinorSpec
    bijection: Mapping[str, str] = field(hash=False)

    def to_dict(self) -> dict[str, Any]:
        return {**self.spec.to_dict(), "bijection": dict(sorted(self.bijection.items()))}


@dataclass(frozen=True)
class ClassificationFlags:
    """
    Regular, graphic and cographic membership.

    Attributes:
        regular: No F7 or F7* minor
        graphic: Regular and no M*(K33) or M*(K5) minor
        cographic: Regular and no M(K33) or M(K5) minor
        witnesses: Per flag, the excluded minor found (catalog name, witness)
    """

    regular: bool
    graphic: bool
    cographic: bool
    witnesses: Mapping[str, tuple[str, MinorWitness] | None] = field(hash=False)

    def to_dict(self) -> dict[str, Any]:
        return {
            "regular": self.regular,
            "graphic": self.graphic,
            "cographic": self.cographic,
            "witnesses": {
                flag: None if w is None else {"minor": w[0], **w[1].to_dict()}
                for flag, w in self.witnesses.items()
            },
        }


@dataclass(frozen=True)
class TildeWitness:
    """
    A minor N of the host in the tilde class of F.

    Attributes:
        condition: 1 (N\\{x,y} = F), 2 (2-cocircuit, N/x = F) or
            3 (2-cocircuit, N/{x,y} = F)
        spec: Deletion and contraction sets giving N from the host
        pair: The elements x and y of N
    """

    condition: int
    spec: MinorSpec
    pair: tuple[str, str]

    def to_dict(self) -> dict[str, Any]:
        return {"condition": self.condition, **self.spec.to_dict(), "pair": list(self.pair)}


def _labels(M: BinaryMatroid, indices: tuple[int, ...]) -> frozenset[str]:
    return frozenset(M.elements[i] for i in indices)


def normal_minors(
    M: BinaryMatroid, size: int, rank: int
) -> Iterator[tuple[MinorSpec, BinaryMatroid]]:
    """
    Every minor of M with the given size and rank, in normal form.

    C runs over independent sets of size rank(M) - rank and D over
    coindependent sets of M/C of the remaining size. Contraction sets are
    tried over the standard-form basis first, trailing pivots leading, so
    the first candidate keeps the standard form [I | D] of what remains.
    """
    k = M.rank - rank
    d = M.size - size - k
    if k < 0 or d < 0:
        return
    pivots = standard_form(M.representation).basis_columns[::-1]
    order = pivots + tuple(i for i in range(M.size) if i not in pivots)
    for contract_idx in combinations(order, k):
        contract_mask = sum(1 << i for i in contract_idx)
        if M.mask_rank(contract_mask) != k:
            continue
        contract = _labels(M, contract_idx)
        contracted = minor(M, MinorSpec(contract=contract))
        for delete_idx in combinations(range(contracted.size), d):
            delete_mask = sum(1 << i for i in delete_idx)
            if contracted.mask_rank(contracted.full_mask & ~delete_mask) != contracted.rank:
                continue
            delete = _labels(contracted, delete_idx)
            yield MinorSpec(delete, contract), minor(contracted, MinorSpec(delete=delete))


def _normalize(M: BinaryMatroid, spec: MinorSpec) -> MinorSpec:
    """Report contracted coloops of M as deletions; both give the same minor."""
    _, coloops = loops_coloops(M)
    moved = spec.contract & coloops
    return MinorSpec(spec.delete | moved, spec.contract - moved)


def find_minors(
    M: BinaryMatroid, target: BinaryMatroid, bound: int | None = None
) -> Iterator[MinorWitness]:
    """
    Yield every distinct minor embedding of target in M.

    Raises:
        MatroidError: If target has more elements than M
        EnumerationBoundError: If M exceeds the enumeration bound
    """
    limit = get_settings().enumeration_bound if bound is None else bound
    if M.size > limit:
        raise EnumerationBoundError(f"Minor search needs at most {limit} elements, got {M.size}")
    if target.size > M.size:
        raise MatroidError(
            f"Target has {target.size} elements, more than the host's {M.size}"
        )
    if target.rank > M.rank or target.corank > M.corank:
        return

    wanted = fingerprint(target, limit)
    seen: set[tuple[tuple[str, ...], tuple[int, ...]]] = set()
    logger.debug("minor_search_started", host_size=M.size, target_size=target.size)
    for spec, candidate in normal_minors(M, target.size, target.rank):
        key = (candidate.elements, circuit_masks(candidate, bound=limit))
        if key in seen:
            continue
        seen.add(key)
        if fingerprint(candidate, limit) != wanted:
            continue
        bijection = isomorphic(candidate, target, limit)
        if bijection is not None:
            yield MinorWitness(_normalize(M, spec), bijection)


def has_minor(
    M: BinaryMatroid, target: BinaryMatroid, bound: int | None = None
) -> MinorWitness | None:
    """
    First minor embedding of target in M, or None.

    Raises:
        MatroidError: If target has more elements than M
        EnumerationBoundError: If M exceeds the enumeration bound
    """
    witness = next(find_minors(M, target, bound), None)
    logger.debug("minor_search_finished", host_size=M.size, found=witness is not None)
    return witness


def _first_excluded(
    M: BinaryMatroid, names: tuple[str, ...], bound: int | None
) -> tuple[str, MinorWitness] | None:
    for name in names:
        excluded = catalog.matroid(name)
        if excluded.size > M.size:
            continue
        witness = has_minor(M, excluded, bound)
        if witness is not None:
            return name, witness
    return None


def is_regular(M: BinaryMatroid, bound: int | None = None) -> bool:
    return _first_excluded(M, REGULAR_EXCLUDED, bound) is None


def is_graphic(M: BinaryMatroid, bound: int | None = None) -> bool:
    return _first_excluded(M, GRAPHIC_EXCLUDED, bound) is None


def is_cographic(M: BinaryMatroid, bound: int | None = None) -> bool:
    return _first_excluded(M, COGRAPHIC_EXCLUDED, bound) is None


def classify(M: BinaryMatroid, bound: int | None = None) -> ClassificationFlags:
    """
    Decide regular, graphic and cographic membership by excluded minors.

    Raises:
        EnumerationBoundError: If M exceeds the enumeration bound
    """
    regular = _first_excluded(M, REGULAR_EXCLUDED, bound)
    if regular is not None:
        witnesses = {"regular": regular, "graphic": regular, "cographic": regular}
    else:
        witnesses = {
            "regular": None,
            "graphic": _first_excluded(M, GRAPHIC_EXCLUDED[2:], bound),
            "cographic": _first_excluded(M, COGRAPHIC_EXCLUDED[2:], bound),
        }
    flags = ClassificationFlags(
        regular=witnesses["regular"] is None,
        graphic=witnesses["graphic"] is None,
        cographic=witnesses["cographic"] is None,
        witnesses=witnesses,
    )
    logger.debug(
        "classified", size=M.size, regular=flags.regular, graphic=flags.graphic,
        cographic=flags.cographic,
    )  # fmt: skip
    return flags


def _spanning_trees(vertex_count: int) -> Iterator[list[tuple[int, int]]]:
    """One tree per isomorphism class on the given number of vertices."""
    if vertex_count == 1:
        yield []
    elif vertex_count == 2:
        yield [(0, 1)]
    else:
        for tree in nx.nonisomorphic_trees(vertex_count):
            yield sorted(tuple(sorted(e)) for e in tree.edges())


def _path_ends(tree_edges: list[tuple[int, int]]) -> tuple[int, int] | None:
    """End vertices if the tree edges form a path, else None."""
    degree: dict[int, int] = {}
    for u, v in tree_edges:
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
    if any(d > 2 for d in degree.values()) or len(degree) != len(tree_edges) + 1:
        return None
    ends = sorted(v for v, d in degree.items() if d == 1)
    return ends[0], ends[1]


def _max_degree_ok(tree_edges: list[tuple[int, int]]) -> bool:
    degree: dict[int, int] = {}
    for u, v in tree_edges:
        for w in (u, v):
            degree[w] = degree.get(w, 0) + 1
            if degree[w] > 2:
                return False
    return True


def graphic_by_realization(M: BinaryMatroid, bound: int | None = None) -> Multigraph | None:
    """
    Search for a graph whose cycle matroid is M.

    A basis of M is placed on a spanning tree of rank(M) + 1 vertices; every
    other element's fundamental circuit minus itself must then be a tree path,
    whose ends give that element's endpoints. Trees are tried once per
    isomorphism class and basis labels are assigned by backtracking.

    Returns:
        A realizing multigraph with edges in element order, or None

    Raises:
        EnumerationBoundError: If M exceeds the realization bound
    """
    limit = get_settings().realization_bound if bound is None else bound
    if M.size > limit:
        raise EnumerationBoundError(f"Realization search needs at most {limit} elements, got {M.size}")

    sf = standard_form(M.representation)
    r = sf.rank
    basis = list(sf.basis_columns)
    paths: dict[int, list[int]] = {}
    for j in range(r, M.size):
        paths[sf.column_order[j]] = [i for i in range(r) if sf.matrix.entries[i, j]]

    # most constrained basis elements first
    weight = [sum(i in members for members in paths.values()) for i in range(r)]
    order = sorted(range(r), key=lambda i: (-weight[i], i))
    watching = {i: [p for p in paths.values() if i in p] for i in range(r)}

    for tree in _spanning_trees(r + 1):
        placement: dict[int, tuple[int, int]] = {}
        used: set[int] = set()

        def fits(i: int) -> bool:
            for members in watching[i]:
                placed = [placement[m] for m in members if m in placement]
                if len(placed) == len(members):
                    if _path_ends(placed) is None:
                        return False
                elif not _max_degree_ok(placed):
                    return False
            return True

        def assign(depth: int) -> bool:
            if depth == r:
                return True
            i = order[depth]
            for slot, tree_edge in enumerate(tree):
                if slot in used:
                    continue
                placement[i] = tree_edge
                used.add(slot)
                if fits(i) and assign(depth + 1):
                    return True
                used.discard(slot)
                del placement[i]
            return False

        if not assign(0):
            continue

        ends: dict[int, tuple[int, int]] = {}
        for row, col in enumerate(basis):
            ends[col] = placement[row]
        for col, members in paths.items():
            if not members:
                ends[col] = (0, 0)
            else:
                found = _path_ends([placement[m] for m in members])
                assert found is not None
                ends[col] = found
        graph = Multigraph(
            r + 1, tuple(Edge(label, *ends[i]) for i, label in enumerate(M.elements))
        )
        logger.debug("graph_realized", size=M.size, rank=r)
        return graph

    logger.debug("graph_realization_failed", size=M.size, rank=r)
    return None


def _two_cocircuits(N: BinaryMatroid, bound: int | None = None) -> list[tuple[str, str]]:
    found = []
    for c in circuit_masks(N, CircuitKind.COCIRCUIT, bound):
        if c.bit_count() == 2:
            i, j = (k for k in range(N.size) if c >> k & 1)
            found.append((N.elements[i], N.elements[j]))
    return found


def find_tilde_minor(
    M: BinaryMatroid, F: BinaryMatroid, bound: int | None = None
) -> TildeWitness | None:
    """
    Find a minor N of M in the tilde class of F.

    N carries a pair {x, y} with (1) N\\{x,y} = F, or (2) {x,y} a 2-cocircuit
    of N and N/x = F, or (3) {x,y} a 2-cocircuit of N and N/{x,y} = F.
    Equality is taken up to isomorphism.

    Raises:
        EnumerationBoundError: If M exceeds the enumeration bound
    """
    limit = get_settings().enumeration_bound if bound is None else bound
    if M.size > limit:
        raise EnumerationBoundError(f"Tilde search needs at most {limit} elements, got {M.size}")
    if M.size < F.size + 1:
        return None

    # condition 2: N has one more element and one more rank than F
    for spec, N in normal_minors(M, F.size + 1, F.rank + 1):
        for x, y in _two_cocircuits(N, limit):
            for first, second in ((x, y), (y, x)):
                if isomorphic(N.contract([first]), F, limit) is not None:
                    return TildeWitness(2, spec, (first, second))

    if M.size < F.size + 2:
        return None

    # condition 3: a 2-cocircuit whose contraction leaves F
    for extra_rank in (1, 2):
        for spec, N in normal_minors(M, F.size + 2, F.rank + extra_rank):
            for x, y in _two_cocircuits(N, limit):
                if isomorphic(N.contract([x, y]), F, limit) is not None:
                    return TildeWitness(3, spec, (x, y))

    # condition 1: F is a minor of M\{x,y} for some pair
    normal_deletions = (M.size - F.size) - (M.rank - F.rank)
    if normal_deletions >= 2:
        witness = has_minor(M, F, limit)
        if witness is not None and len(witness.spec.delete) >= 2:
            x, y = sorted(witness.spec.delete, key=M.index.__getitem__)[:2]
            spec = MinorSpec(witness.spec.delete - {x, y}, witness.spec.contract)
            return TildeWitness(1, spec, (x, y))
    for x, y in combinations(M.elements, 2):
        host = M.delete([x, y])
        if F.size > host.size:
            break
        witness = has_minor(host, F, limit)
        if witness is not None:
            return TildeWitness(1, witness.spec, (x, y))
    return None


def has_tilde_minor(M: BinaryMatroid, F: BinaryMatroid, bound: int | None = None) -> bool:
    """Check whether M has a minor in the tilde class of F."""
    return find_tilde_minor(M, F, bound) is not None
