"""
Unit tests for minor search and classification.
"""

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from splitlab import catalog
from splitlab.config import CorpusSettings
from splitlab.corpus import graphic_corpus
from splitlab.matroid import (
    EnumerationBoundError,
    MatroidError,
    MinorSpec,
    Multigraph,
    dual,
    extend,
    from_graph,
    minor,
    same_matroid,
    series_extension,
)
from splitlab.recognition import (
    classify,
    find_minors,
    find_tilde_minor,
    graphic_by_realization,
    has_minor,
    has_tilde_minor,
    is_cographic,
    is_graphic,
    is_regular,
)
from tests.test_matroid import binary_matroids, parallel_class


@st.composite
def connected_graphs(draw, max_vertices: int = 5, max_edges: int = 7) -> Multigraph:
    """Random spanning tree plus random extra edges (loops and parallels allowed)."""
    n = draw(st.integers(1, max_vertices))
    pairs = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    extra = draw(st.integers(0, max(0, max_edges - len(pairs))))
    for _ in range(extra):
        pairs.append((draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))))
    if not pairs:
        pairs.append((0, 0))
    return Multigraph.from_pairs(n, pairs)


class TestHasMinor:
    """Tests for minor embeddings."""

    def test_r10_has_g1_minor(self):
        """Test G1 is a contraction of R10 by {4, 5}."""
        R10, G1 = catalog.matroid("R10"), catalog.matroid("G1")
        witness = has_minor(R10, G1)
        assert witness is not None
        assert witness.spec.delete == frozenset()
        assert witness.spec.contract == {"4", "5"}
        embedded = minor(R10, witness.spec).relabel(witness.bijection)
        assert same_matroid(embedded, G1)

    def test_a1_deletes_its_coloop(self):
        """Test the R10 minor of A1 is reported as deleting column 11."""
        witness = has_minor(catalog.matroid("MA1"), catalog.matroid("R10"))
        assert witness is not None
        assert witness.spec.delete == {"11"}
        assert witness.spec.contract == frozenset()

    def test_witness_to_dict(self):
        """Test the JSON form of a witness."""
        witness = has_minor(catalog.matroid("MA1"), catalog.matroid("R10"))
        data = witness.to_dict()
        assert data["delete"] == ["11"]
        assert data["contract"] == []
        assert len(data["bijection"]) == 10

    def test_target_larger_than_host(self):
        """Test that a larger target is an error."""
        with pytest.raises(MatroidError, match="more than the host"):
            has_minor(catalog.matroid("K4"), catalog.matroid("F7"))

    def test_absent_minor(self):
        """Test that a graphic matroid has no Fano minor."""
        assert has_minor(catalog.matroid("K5"), catalog.matroid("F7")) is None

    def test_bound(self):
        """Test the enumeration bound is enforced."""
        with pytest.raises(EnumerationBoundError):
            has_minor(catalog.matroid("R10"), catalog.matroid("G1"), bound=9)

    def test_find_minors_distinct(self):
        """Test that several embeddings of a triangle in K4 are found."""
        triangle = from_graph(Multigraph.from_pairs(3, [(0, 1), (1, 2), (0, 2)]))
        witnesses = list(find_minors(catalog.matroid("K4"), triangle))
        assert len(witnesses) >= 4
        assert len({(w.spec.delete, w.spec.contract) for w in witnesses}) == len(witnesses)


class TestClassify:
    """Tests for regular, graphic and cographic membership."""

    def test_r10(self):
        """Test R10 is regular but neither graphic nor cographic."""
        flags = classify(catalog.matroid("R10"))
        assert (flags.regular, flags.graphic, flags.cographic) == (True, False, False)
        assert flags.witnesses["regular"] is None
        assert flags.witnesses["graphic"][0] in ("K33dual", "K5dual")

    def test_fano(self):
        """Test F7 fails all three classes with F7 as witness."""
        flags = classify(catalog.matroid("F7"))
        assert not (flags.regular or flags.graphic or flags.cographic)
        assert flags.witnesses["regular"][0] == "F7"

    def test_k5_and_k33(self):
        """Test the Kuratowski graphs are graphic but not cographic."""
        for name in ("K5", "K33"):
            assert is_graphic(catalog.matroid(name))
            assert not is_cographic(catalog.matroid(name))
            assert not is_graphic(catalog.matroid(name + "dual"))
            assert is_cographic(catalog.matroid(name + "dual"))

    def test_fano_dual_not_regular(self):
        """Test F7* is not regular."""
        assert not is_regular(catalog.matroid("F7dual"))

    def test_to_dict(self):
        """Test the JSON form of the flags."""
        data = classify(catalog.matroid("K4")).to_dict()
        assert data == {
            "regular": True,
            "graphic": True,
            "cographic": True,
            "witnesses": {"regular": None, "graphic": None, "cographic": None},
        }


class TestGraphicByRealization:
    """Tests for the exhaustive graph search."""

    def test_k4(self):
        """Test K4 is realized by a graph with the same cycle matroid."""
        M = catalog.matroid("K4")
        graph = graphic_by_realization(M)
        assert graph is not None
        assert graph.labels == M.elements
        assert same_matroid(from_graph(graph), M)

    def test_k33(self):
        """Test K33 is realized on six vertices."""
        graph = graphic_by_realization(catalog.matroid("K33"))
        assert graph is not None
        assert graph.vertex_count == 6

    def test_non_graphic(self):
        """Test F7 and the dual of K33 have no realization."""
        assert graphic_by_realization(catalog.matroid("F7")) is None
        assert graphic_by_realization(catalog.matroid("K33dual")) is None

    def test_loops(self):
        """Test loops and coloops are placed."""
        g = Multigraph.from_pairs(3, [(0, 0), (0, 1), (1, 2), (1, 2)])
        M = from_graph(g)
        graph = graphic_by_realization(M)
        assert graph is not None
        assert same_matroid(from_graph(graph), M)

    def test_bound(self):
        """Test the realization bound is enforced."""
        with pytest.raises(EnumerationBoundError):
            graphic_by_realization(catalog.matroid("R10"))

    @settings(max_examples=40, deadline=None)
    @given(connected_graphs())
    def test_cycle_matroids_are_realized(self, g):
        """Test every cycle matroid is realized."""
        M = from_graph(g)
        graph = graphic_by_realization(M)
        assert graph is not None
        assert same_matroid(from_graph(graph), M)

    @settings(max_examples=40, deadline=None)
    @given(binary_matroids(max_rows=4, max_cols=7))
    def test_agrees_with_classify(self, M):
        """Test excluded-minor and realization answers agree."""
        assert classify(M).graphic == (graphic_by_realization(M) is not None)


class TestTildeMinor:
    """Tests for the tilde class of a matroid F."""

    def test_two_element_extension(self):
        """Test F plus two elements has a condition-1 tilde minor."""
        F = catalog.matroid("K4")
        host = extend(extend(F, [1, 1, 1], "x"), [1, 0, 0], "y")
        witness = find_tilde_minor(host, F)
        assert witness is not None
        assert witness.condition == 1

    def test_series_coextension(self):
        """Test a series coextension has a condition-2 tilde minor."""
        F = catalog.matroid("K4")
        host = series_extension(F, "12", "s")
        witness = find_tilde_minor(host, F)
        assert witness is not None
        assert witness.condition == 2
        assert set(witness.pair) == {"12", "s"}

    def test_double_series_coextension(self):
        """Test two series elements give a tilde minor."""
        F = catalog.matroid("K4")
        host = series_extension(series_extension(F, "12", "s"), "s", "t")
        assert has_tilde_minor(host, F)

    def test_f_itself_is_not_in_its_tilde_class(self):
        """Test a matroid has no tilde minor of itself."""
        F = catalog.matroid("K4")
        assert not has_tilde_minor(F, F)

    def test_regular_r10_has_no_kuratowski_tilde_minor(self):
        """Test R10 avoids the tilde classes of K5 and K33."""
        R10 = catalog.matroid("R10")
        assert not has_tilde_minor(R10, catalog.matroid("K33"))
        assert not has_tilde_minor(R10, catalog.matroid("K5"))

    def test_a1_has_k33_tilde_minor(self):
        """Test A1 has a two-element extension of K33."""
        witness = find_tilde_minor(catalog.matroid("MA1"), catalog.matroid("K33"))
        assert witness is not None
        assert witness.condition == 1


class TestMinorRelation:
    """Property tests for the minor relation and class duality."""

    @settings(max_examples=30, deadline=None)
    @given(binary_matroids(max_cols=7), st.data())
    def test_minor_of_a_minor_is_a_minor(self, M, data):
        """Test P <= N and N <= M give P <= M, with fresh labels on each level."""
        assume(M.size >= 5)
        first = data.draw(st.sets(st.sampled_from(M.elements), max_size=2))
        cut = data.draw(st.integers(0, len(first)))
        N = minor(M, MinorSpec(frozenset(sorted(first)[:cut]), frozenset(sorted(first)[cut:])))
        N = N.relabel({e: f"n_{e}" for e in N.elements})
        second = data.draw(st.sets(st.sampled_from(N.elements), max_size=2))
        P = minor(N, MinorSpec(contract=frozenset(second)))
        P = P.relabel({e: f"p_{e}" for e in P.elements})

        assert has_minor(N, P) is not None
        assert has_minor(M, N) is not None
        assert has_minor(M, P) is not None

    @settings(max_examples=40, deadline=None)
    @given(binary_matroids(max_cols=7))
    def test_graphic_is_dual_of_cographic(self, M):
        """Test M is graphic exactly when its dual is cographic."""
        flags, dual_flags = classify(M), classify(dual(M))
        assert flags.graphic == dual_flags.cographic
        assert flags.cographic == dual_flags.graphic
        assert flags.regular == dual_flags.regular

    def test_duality_on_graph_corpus(self):
        """Test the duality of the classes across enumerated graphs."""
        for M in graphic_corpus(CorpusSettings(max_edges=5, max_vertices=4)):
            assert classify(M).graphic
            assert classify(dual(M)).cographic


def test_explicit_bound_reaches_minor_search():
    """Test a bound above the configured one is used throughout the search."""
    M = parallel_class(15)
    with pytest.raises(EnumerationBoundError):
        has_minor(M, M)
    witness = has_minor(M, M, bound=16)
    assert witness is not None
    assert witness.spec.delete == frozenset() and witness.spec.contract == frozenset()
