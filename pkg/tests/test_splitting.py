"""
Unit tests for the splitting operation.
"""

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from splitlab import catalog
from splitlab.gf2 import BitMatrix
from splitlab.matroid import (
    Edge,
    MatroidError,
    MinorSpec,
    Multigraph,
    from_graph,
    from_matrix,
    is_2_cocircuit,
    loops_coloops,
    minor,
    same_matroid,
)
from splitlab.splitting import SplitError, SplitPair, split, split_graph
from tests.test_matroid import binary_matroids, k4, square_with_chord


def triangle_with_pendant() -> Multigraph:
    return Multigraph.from_pairs(4, [(0, 1), (1, 2), (0, 2), (2, 3)])


def test_split_pair_needs_distinct_elements():
    """Test x == y is rejected."""
    with pytest.raises(MatroidError, match="distinct"):
        SplitPair("a", "a")


def test_split_r10_appends_row():
    """Test splitting R10 on 4 and 5 adds one row with 1s in those columns."""
    S = split(catalog.matroid("R10"), SplitPair("4", "5"))
    assert S.representation.shape == (6, 10)
    assert S.representation.to_lists()[-1] == [0, 0, 0, 1, 1, 0, 0, 0, 0, 0]
    assert S.rank == 6


def test_split_unknown_label():
    """Test that labels must belong to the matroid."""
    with pytest.raises(MatroidError, match="Unknown element"):
        split(k4(), SplitPair("01", "99"))


def test_split_on_2_cocircuit_is_identity():
    """Test M_{x,y} = M when {x,y} is a 2-cocircuit."""
    M = square_with_chord()
    assert is_2_cocircuit(M, "01", "12")
    assert same_matroid(split(M, SplitPair("01", "12")), M)


def test_coloop_propagates():
    """Test that splitting a coloop with another element makes both coloops."""
    M = from_graph(triangle_with_pendant())
    S = split(M, SplitPair("e3", "e0"))
    _, coloops = loops_coloops(S)
    assert {"e3", "e0"} <= coloops


def test_split_on_loop_runs():
    """Test that a loop stops being a loop after splitting."""
    M = from_graph(Multigraph.from_pairs(3, [(0, 0), (0, 1), (1, 2), (0, 2)]))
    S = split(M, SplitPair("e0", "e1"))
    loops, _ = loops_coloops(S)
    assert "e0" not in loops
    assert S.rank == M.rank + 1


@settings(max_examples=50, deadline=None)
@given(binary_matroids(), st.data())
def test_split_properties(M, data):
    """Test rank step, new 2-cocircuit and standard-form independence."""
    assume(M.size >= 2)
    x, y = data.draw(st.lists(st.sampled_from(M.elements), min_size=2, max_size=2, unique=True))
    p = SplitPair(x, y)
    S = split(M, p)
    assert S.rank - M.rank in (0, 1)
    assert same_matroid(S, split(M, p, basis=list(reversed(M.elements))))
    _, coloops = loops_coloops(M)
    if x not in coloops and y not in coloops:
        assert is_2_cocircuit(S, x, y)


@settings(max_examples=50, deadline=None)
@given(binary_matroids(max_cols=7), st.data())
def test_split_commutes_with_minors(M, data):
    """Test M_{x,y}\\T1/T2 = (M\\T1/T2)_{x,y} for T1, T2 away from x and y."""
    assume(M.size >= 3)
    x, y = data.draw(st.lists(st.sampled_from(M.elements), min_size=2, max_size=2, unique=True))
    rest = [e for e in M.elements if e not in (x, y)]
    removed = data.draw(st.lists(st.sampled_from(rest), max_size=len(rest), unique=True))
    cut = data.draw(st.integers(0, len(removed)))
    spec = MinorSpec(frozenset(removed[:cut]), frozenset(removed[cut:]))
    p = SplitPair(x, y)
    assert same_matroid(minor(split(M, p), spec), split(minor(M, spec), p))


class TestSplitGraph:
    """Tests for splitting a pair of adjacent edges off a vertex."""

    def test_k4_split(self):
        """Test bookkeeping on K4 split at a degree-3 vertex."""
        g = Multigraph.from_pairs(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        h = split_graph(g, SplitPair("e0", "e1"))
        assert h.vertex_count == 5
        assert h.edge_count == 6
        assert h.degree(4) == 2
        assert h.edge("e0") == Edge("e0", 4, 1)
        assert h.edge("e1") == Edge("e1", 4, 2)

    def test_triangle_with_pendant(self):
        """Test splitting the triangle edges at the degree-3 vertex."""
        h = split_graph(triangle_with_pendant(), SplitPair("e1", "e2"))
        assert h.edges == (
            Edge("e0", 0, 1),
            Edge("e1", 4, 1),
            Edge("e2", 4, 0),
            Edge("e3", 2, 3),
        )

    def test_matches_matroid_split(self):
        """Test M(G_{x,y}) = M(G)_{x,y} with labels aligned."""
        g = Multigraph.from_pairs(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        p = SplitPair("e0", "e2")
        assert same_matroid(from_graph(split_graph(g, p)), split(from_graph(g), p))

    def test_loop_rejected(self):
        """Test a loop cannot be split off."""
        g = Multigraph.from_pairs(2, [(0, 0), (0, 1), (0, 1)])
        with pytest.raises(SplitError, match="loop"):
            split_graph(g, SplitPair("e0", "e1"))

    def test_edges_must_meet(self):
        """Test that the edges need a common endpoint."""
        g = Multigraph.from_pairs(4, [(0, 1), (2, 3), (1, 2)])
        with pytest.raises(SplitError, match="share an endpoint"):
            split_graph(g, SplitPair("e0", "e1"))

    def test_degree_too_small(self):
        """Test that the shared vertex needs degree at least 3."""
        g = Multigraph.from_pairs(3, [(0, 1), (1, 2), (0, 2)])
        with pytest.raises(SplitError, match="degree"):
            split_graph(g, SplitPair("e0", "e1"))

    def test_vertex_choice(self):
        """Test that a named vertex must be shared by both edges."""
        g = triangle_with_pendant()
        with pytest.raises(SplitError, match="do not both meet"):
            split_graph(g, SplitPair("e1", "e2"), vertex=0)


def test_split_of_matrix_b_keeps_size():
    """Test that splitting the matrix B matroid keeps its elements."""
    M = from_matrix(BitMatrix.from_rows(catalog.MATRIX_B), catalog.MATRIX_B_LABELS)
    S = split(M, SplitPair("1", "10"))
    assert S.size == M.size
    assert S.rank in (M.rank, M.rank + 1)
