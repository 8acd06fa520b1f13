"""
Unit tests for binary matroids and multigraphs.
"""

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitlab.gf2 import BitMatrix, row_space_equal
from splitlab.matroid import (
    BinaryMatroid,
    CircuitKind,
    Edge,
    EnumerationBoundError,
    GraphFormatError,
    MatroidError,
    MinorSpec,
    Multigraph,
    circuits,
    dual,
    extend,
    fingerprint,
    from_graph,
    from_matrix,
    is_2_cocircuit,
    isomorphic,
    loops_coloops,
    minor,
    same_matroid,
    series_extension,
    single_element_minors,
    standard_representation,
)

R10_ROWS = [
    [1, 0, 0, 0, 0, 1, 1, 0, 0, 1],
    [0, 1, 0, 0, 0, 1, 1, 1, 0, 0],
    [0, 0, 1, 0, 0, 0, 1, 1, 1, 0],
    [0, 0, 0, 1, 0, 0, 0, 1, 1, 1],
    [0, 0, 0, 0, 1, 1, 0, 0, 1, 1],
]
B_ROWS = [
    [1, 0, 0, 1, 1, 0, 0, 1],
    [0, 1, 0, 1, 1, 1, 0, 0],
    [0, 0, 1, 0, 1, 1, 1, 0],
]


def r10() -> BinaryMatroid:
    return from_matrix(BitMatrix.from_rows(R10_ROWS), [str(i) for i in range(1, 11)])


def k4() -> BinaryMatroid:
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    return from_graph(Multigraph(4, tuple(Edge(f"{u}{v}", u, v) for u, v in pairs)))


def square_with_chord() -> BinaryMatroid:
    """4-cycle 0-1-2-3 plus chord 02; edges 01 and 12 are in series."""
    pairs = [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]
    return from_graph(Multigraph(4, tuple(Edge(f"{u}{v}", u, v) for u, v in pairs)))


@st.composite
def binary_matroids(draw, max_rows: int = 4, max_cols: int = 7) -> BinaryMatroid:
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    grid = draw(
        st.lists(st.lists(st.integers(0, 1), min_size=cols, max_size=cols), min_size=rows, max_size=rows)
    )
    return from_matrix(BitMatrix.from_rows(grid), [f"e{i}" for i in range(cols)])


class TestConstruction:
    """Tests for building matroids."""

    def test_free_matroid(self):
        """Test that the identity gives a matroid without circuits."""
        M = from_matrix(BitMatrix.identity(3), ["a", "b", "c"])
        assert M.rank == 3
        assert circuits(M) == frozenset()
        assert M.rank_of(["a", "b", "c"]) == 3

    def test_r10_rank(self):
        """Test R10 has 10 elements and rank 5."""
        M = r10()
        assert (M.size, M.rank, M.corank) == (10, 5, 5)

    def test_label_count_mismatch(self):
        """Test that labels must match the column count."""
        with pytest.raises(MatroidError, match="labels for a matrix"):
            from_matrix(BitMatrix.identity(2), ["a"])

    def test_duplicate_labels(self):
        """Test that duplicate labels are rejected."""
        with pytest.raises(MatroidError, match="Duplicate"):
            from_matrix(BitMatrix.identity(2), ["a", "a"])

    def test_whitespace_label(self):
        """Test that labels with whitespace are rejected."""
        with pytest.raises(MatroidError, match="nonempty tokens"):
            from_matrix(BitMatrix.identity(1), ["a b"])

    def test_cycle_matroid_of_triangle(self):
        """Test that a triangle has one 3-element circuit."""
        g = Multigraph.from_pairs(3, [(0, 1), (1, 2), (0, 2)])
        assert circuits(from_graph(g)) == frozenset({frozenset({"e0", "e1", "e2"})})

    def test_loops_and_parallel_edges(self):
        """Test that a loop is a loop element and parallel edges form a 2-circuit."""
        g = Multigraph.from_pairs(2, [(0, 0), (0, 1), (0, 1)])
        M = from_graph(g)
        loops, coloops = loops_coloops(M)
        assert loops == {"e0"}
        assert coloops == frozenset()
        assert frozenset({"e1", "e2"}) in circuits(M)

    def test_bridge_is_coloop(self):
        """Test that a pendant edge is a coloop."""
        g = Multigraph.from_pairs(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
        _, coloops = loops_coloops(from_graph(g))
        assert coloops == {"e3"}

    def test_standard_representation_on_basis(self):
        """Test that the identity sits on the requested basis."""
        M = r10()
        a = standard_representation(M, ["6", "7", "8", "9", "10"])
        assert a.columns([5, 6, 7, 8, 9]) == BitMatrix.identity(5)
        assert row_space_equal(a, M.representation)


class TestDual:
    """Tests for the dual matroid."""

    def test_dual_rank(self):
        """Test rank(M*) = n - rank(M)."""
        M = r10()
        assert dual(M).rank == M.size - M.rank
        assert dual(M).elements == M.elements

    def test_circuits_of_dual_are_cocircuits(self):
        """Test that dual circuits equal the cocircuits."""
        M = square_with_chord()
        assert circuits(dual(M)) == circuits(M, CircuitKind.COCIRCUIT)

    def test_k4_is_self_dual(self):
        """Test M(K4) is isomorphic to its dual."""
        assert isomorphic(k4(), dual(k4())) is not None

    @settings(max_examples=40, deadline=None)
    @given(binary_matroids())
    def test_double_dual(self, M):
        """Test M** = M."""
        assert same_matroid(dual(dual(M)), M)


class TestMinor:
    """Tests for deletion and contraction."""

    def test_r10_contraction_is_matrix_b(self):
        """Test R10/{4,5} has the standard form B."""
        N = minor(r10(), MinorSpec(contract=frozenset({"4", "5"})))
        assert N.elements == ("1", "2", "3", "6", "7", "8", "9", "10")
        assert row_space_equal(N.reduced, BitMatrix.from_rows(B_ROWS))

    def test_overlapping_spec(self):
        """Test that delete and contract sets must be disjoint."""
        with pytest.raises(MatroidError, match="overlap"):
            MinorSpec(delete=frozenset({"a"}), contract=frozenset({"a"}))

    def test_unknown_labels(self):
        """Test that a spec naming unknown elements raises."""
        with pytest.raises(MatroidError, match="unknown elements"):
            minor(r10(), MinorSpec(delete=frozenset({"99"})))

    def test_contracting_a_loop_deletes_it(self):
        """Test M/e = M\\e for a loop e."""
        M = from_graph(Multigraph.from_pairs(2, [(0, 0), (0, 1)]))
        assert same_matroid(M.contract(["e0"]), M.delete(["e0"]))

    def test_single_element_minors(self):
        """Test every deletion and contraction is produced once."""
        M = k4()
        produced = list(single_element_minors(M))
        assert len(produced) == 2 * M.size
        assert all(N.size == M.size - 1 for _, N in produced)

    @settings(max_examples=40, deadline=None)
    @given(binary_matroids(), st.data())
    def test_contraction_rank(self, M, data):
        """Test r_{M/T}(X) = r(X u T) - r(T)."""
        contract = data.draw(st.sets(st.sampled_from(M.elements), max_size=2))
        rest = [e for e in M.elements if e not in contract]
        subset = data.draw(st.sets(st.sampled_from(rest), max_size=len(rest))) if rest else set()
        N = M.contract(contract)
        assert N.rank_of(subset) == M.rank_of(subset | contract) - M.rank_of(contract)

    @settings(max_examples=40, deadline=None)
    @given(binary_matroids())
    def test_contraction_is_dual_of_deletion(self, M):
        """Test M/e = (M*\\e)*."""
        e = M.elements[0]
        assert same_matroid(M.contract([e]), dual(dual(M).delete([e])))


class TestPredicates:
    """Tests for 2-cocircuits, equality and isomorphism."""

    def test_series_pair(self):
        """Test that edges at a degree-2 vertex form a 2-cocircuit."""
        M = square_with_chord()
        assert is_2_cocircuit(M, "01", "12")
        assert not is_2_cocircuit(M, "01", "02")

    def test_2_cocircuit_needs_distinct_elements(self):
        """Test x == y is rejected."""
        with pytest.raises(MatroidError, match="distinct"):
            is_2_cocircuit(k4(), "01", "01")

    def test_same_matroid_ignores_representation(self):
        """Test that row operations do not change the matroid."""
        M = r10()
        N = BinaryMatroid(M.elements, M.reduced)
        assert same_matroid(M, N)

    def test_same_matroid_needs_same_labels(self):
        """Test that relabeling breaks equality but not isomorphism."""
        M = k4()
        N = M.relabel({"01": "x"})
        assert not same_matroid(M, N)
        assert isomorphic(M, N) is not None

    def test_isomorphism_maps_circuits(self):
        """Test that the bijection carries circuits onto circuits."""
        M = square_with_chord()
        N = M.relabel({e: f"z{i}" for i, e in enumerate(reversed(M.elements))})
        bijection = isomorphic(M, N)
        assert bijection is not None
        mapped = frozenset(frozenset(bijection[e] for e in c) for c in circuits(M))
        assert mapped == circuits(N)

    def test_non_isomorphic(self):
        """Test matroids with different ranks are not isomorphic."""
        doubled_triangle = from_graph(
            Multigraph.from_pairs(3, [(0, 1), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2)])
        )
        assert isomorphic(k4(), doubled_triangle) is None

    def test_fingerprint_is_invariant(self):
        """Test isomorphic matroids share a fingerprint."""
        M = r10()
        N = M.relabel({e: f"r{e}" for e in M.elements})
        assert fingerprint(M) == fingerprint(N)
        assert fingerprint(M) != fingerprint(dual(k4()))

    def test_enumeration_bound(self):
        """Test circuit enumeration refuses ground sets over the bound."""
        with pytest.raises(EnumerationBoundError):
            circuits(r10(), bound=5)


class TestExtensions:
    """Tests for extensions and series coextensions."""

    def test_series_extension(self):
        """Test contracting the new element restores M and the pair is in series."""
        M = k4()
        N = series_extension(M, "01", "s")
        assert N.rank == M.rank + 1
        assert same_matroid(N.contract(["s"]), M)
        assert is_2_cocircuit(N, "01", "s")

    def test_extend(self):
        """Test deleting the new element restores M."""
        M = k4()
        N = extend(M, [1, 1, 0], "t")
        assert N.rank == M.rank
        assert same_matroid(N.delete(["t"]), M)

    def test_extend_with_new_row_adds_coloop(self):
        """Test a column reaching below the representation makes a coloop."""
        M = k4()
        N = extend(M, [0] * M.representation.row_count + [1], "c")
        _, coloops = loops_coloops(N)
        assert coloops == {"c"}

    def test_existing_label_rejected(self):
        """Test that a new element must have a fresh label."""
        with pytest.raises(MatroidError, match="already"):
            series_extension(k4(), "01", "02")


class TestMultigraph:
    """Tests for the multigraph type and its text format."""

    def test_degree_counts_loops_twice(self):
        """Test loop degree."""
        g = Multigraph.from_pairs(2, [(0, 0), (0, 1)])
        assert g.degree(0) == 3
        assert g.degree(1) == 1

    def test_is_connected(self):
        """Test connectivity, including isolated vertices."""
        assert Multigraph.from_pairs(3, [(0, 1), (1, 2)]).is_connected()
        assert not Multigraph.from_pairs(3, [(0, 1)]).is_connected()

    def test_vertex_out_of_range(self):
        """Test that edges must join existing vertices."""
        with pytest.raises(ValueError, match="outside"):
            Multigraph(2, (Edge("a", 0, 2),))

    def test_duplicate_edge_labels(self):
        """Test that edge labels must be distinct."""
        with pytest.raises(MatroidError, match="Duplicate edge labels"):
            Multigraph(2, (Edge("a", 0, 1), Edge("a", 0, 1)))

    def test_format_then_parse(self):
        """Test the graph text format."""
        g = Multigraph(3, (Edge("x", 0, 1), Edge("y", 1, 2), Edge("z", 2, 2)))
        assert g.format() == "3 3\nx 0 1\ny 1 2\nz 2 2\n"
        assert Multigraph.parse(g.format()) == g

    @pytest.mark.parametrize(
        "text",
        ["", "3\n", "2 2\na 0 1\n", "2 1\na 0\n", "2 1\na 0 5\n", "2 1\na x 1\n"],
    )
    def test_malformed_text(self, text):
        """Test that malformed graph text raises GraphFormatError."""
        with pytest.raises(GraphFormatError):
            Multigraph.parse(text)


def parallel_class(size: int) -> BinaryMatroid:
    """Rank-1 matroid whose elements are all parallel."""
    return from_matrix(BitMatrix.from_rows([[1] * size]), [f"p{i}" for i in range(size)])


def test_isomorphism_honours_explicit_bound():
    """Test an explicit bound above the configured one reaches every inner step."""
    M = parallel_class(15)
    with pytest.raises(EnumerationBoundError):
        isomorphic(M, M)
    assert isomorphic(M, M, bound=16) is not None
    assert fingerprint(M, bound=16)[:2] == (15, 1)


@st.composite
def minor_spec_pairs(draw, M: BinaryMatroid) -> tuple[MinorSpec, MinorSpec]:
    """Two disjoint minor specs over the elements of M."""
    chosen = draw(st.lists(st.sampled_from(M.elements), unique=True, max_size=M.size))
    cuts = sorted(draw(st.lists(st.integers(0, len(chosen)), min_size=3, max_size=3)))
    d1, c1 = chosen[: cuts[0]], chosen[cuts[0] : cuts[1]]
    d2, c2 = chosen[cuts[1] : cuts[2]], chosen[cuts[2] :]
    return (
        MinorSpec(frozenset(d1), frozenset(c1)),
        MinorSpec(frozenset(d2), frozenset(c2)),
    )


@st.composite
def small_multigraphs(draw) -> Multigraph:
    n = draw(st.integers(1, 4))
    pairs = draw(
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), min_size=1, max_size=6)
    )
    return Multigraph.from_pairs(n, pairs)


def _minimal_even_connected_sets(g: Multigraph) -> frozenset[frozenset[str]]:
    candidates = []
    for mask in range(1, 1 << g.edge_count):
        edges = [e for i, e in enumerate(g.edges) if mask >> i & 1]
        degree = [0] * g.vertex_count
        for e in edges:
            degree[e.u] += 1
            degree[e.v] += 1
        if any(d % 2 for d in degree):
            continue
        sub = Multigraph(g.vertex_count, tuple(edges)).to_networkx()
        sub.remove_nodes_from([v for v in range(g.vertex_count) if degree[v] == 0])
        if nx.is_connected(sub):
            candidates.append(frozenset(e.label for e in edges))
    return frozenset(c for c in candidates if not any(o < c for o in candidates))


class TestMatroidAxioms:
    """Property tests for the circuit axioms, minors and isomorphism."""

    @settings(max_examples=40, deadline=None)
    @given(binary_matroids())
    def test_no_circuit_contains_another(self, M):
        """Test circuits form an antichain of nonempty sets."""
        cs = circuits(M)
        assert frozenset() not in cs
        assert not any(a < b for a in cs for b in cs)

    @settings(max_examples=40, deadline=None)
    @given(binary_matroids())
    def test_circuit_elimination(self, M):
        """Test C1, C2 sharing e leave a circuit inside (C1 u C2) - e."""
        cs = circuits(M)
        for a in cs:
            for b in cs:
                if a == b:
                    continue
                for e in a & b:
                    rest = (a | b) - {e}
                    assert any(c <= rest for c in cs)

    @settings(max_examples=40, deadline=None)
    @given(binary_matroids(), st.data())
    def test_minor_operations_commute(self, M, data):
        """Test M\\D1/C1 then \\D2/C2 equals the merged minor in either order."""
        s1, s2 = data.draw(minor_spec_pairs(M))
        merged = minor(M, s1.merged(s2))
        assert same_matroid(minor(minor(M, s1), s2), merged)
        assert same_matroid(minor(minor(M, s2), s1), merged)

    @settings(max_examples=30, deadline=None)
    @given(binary_matroids(), st.data())
    def test_isomorphism_is_an_equivalence(self, M, data):
        """Test reflexivity, symmetry and transitivity through relabelings."""
        first = data.draw(st.permutations(M.elements))
        second = data.draw(st.permutations(M.elements))
        N = M.relabel({e: f"n_{f}" for e, f in zip(M.elements, first)})
        P = N.relabel({f"n_{e}": f"q_{f}" for e, f in zip(M.elements, second)})

        assert isomorphic(M, M) is not None
        forward = isomorphic(M, N)
        assert forward is not None
        assert isomorphic(N, M) is not None
        onward = isomorphic(N, P)
        assert onward is not None
        composed = {e: onward[forward[e]] for e in M.elements}
        mapped = frozenset(frozenset(composed[e] for e in c) for c in circuits(M))
        assert mapped == circuits(P)

    @settings(max_examples=40, deadline=None)
    @given(binary_matroids(max_cols=6), binary_matroids(max_cols=6))
    def test_isomorphism_verdict_is_symmetric(self, M, N):
        """Test isomorphic(M, N) and isomorphic(N, M) agree."""
        assert (isomorphic(M, N) is None) == (isomorphic(N, M) is None)

    @settings(max_examples=40, deadline=None)
    @given(small_multigraphs())
    def test_graph_circuits_are_minimal_even_subgraphs(self, g):
        """Test cycle matroid circuits are the minimal connected even-degree edge sets."""
        assert circuits(from_graph(g)) == _minimal_even_connected_sets(g)
