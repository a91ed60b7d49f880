import pytest

from parapac import (
    ForbiddenFamily,
    Graph,
    GraphSampleSet,
    GraphSample,
    InputError,
    VertexSet,
    complete_graph,
    cycle_graph,
    path_graph,
)
from parapac.errors import WidthMismatchError
from parapac.graphs import find_induced_copy, free_of_family, is_acyclic


class TestGraph:
    def test_normalization(self):
        g = Graph.from_edges(3, [(3, 1), (2, 3)])
        assert g.edges == frozenset({(1, 3), (2, 3)})
        assert g.has_edge(3, 1) and not g.has_edge(1, 2)

    def test_invalid_edges(self):
        with pytest.raises(InputError):
            Graph.from_edges(2, [(1, 1)])
        with pytest.raises(InputError):
            Graph.from_edges(2, [(1, 3)])

    def test_assignment_round_trip(self):
        g = Graph.from_edges(3, [(1, 2), (2, 3)])
        x = g.to_assignment()
        assert x.n == 9
        assert Graph.from_assignment(x, 3) == g

    def test_asymmetric_matrix_rejected(self):
        from parapac import Assignment

        with pytest.raises(InputError):
            Graph.from_assignment(Assignment(4, 0b0010), 2)
        with pytest.raises(WidthMismatchError):
            Graph.from_assignment(Assignment(5, 0), 2)

    def test_constructors(self):
        assert complete_graph(3).edges == frozenset({(1, 2), (1, 3), (2, 3)})
        assert path_graph(3).edges == frozenset({(1, 2), (2, 3)})
        assert cycle_graph(4).edges == frozenset({(1, 2), (2, 3), (3, 4), (1, 4)})
        with pytest.raises(InputError):
            cycle_graph(2)


class TestGraphSampleSet:
    def test_conflicting_duplicates_rejected(self):
        g = path_graph(3)
        with pytest.raises(InputError):
            GraphSampleSet([GraphSample(g, 1), GraphSample(g, 0)])

    def test_equal_duplicates_dropped(self):
        g = path_graph(3)
        assert len(GraphSampleSet([GraphSample(g, 1), GraphSample(g, 1)])) == 1

    def test_mixed_orders_rejected(self):
        with pytest.raises(WidthMismatchError):
            GraphSampleSet([GraphSample(path_graph(3), 1), GraphSample(path_graph(4), 1)])


class TestVertexSet:
    def test_range_check(self):
        with pytest.raises(InputError):
            VertexSet(frozenset({7}), 6)
        assert str(VertexSet(frozenset({2, 5}), 6)) == "{2, 5}"


class TestInducedCopy:
    def test_edge_detection(self):
        g = Graph.from_edges(4, [(2, 4)])
        assert find_induced_copy(g, complete_graph(2)) == (2, 4)
        assert find_induced_copy(g, complete_graph(2), frozenset({2})) is None

    def test_p3_needs_missing_edge(self):
        triangle = complete_graph(3)
        assert find_induced_copy(triangle, path_graph(3)) is None
        path = Graph.from_edges(4, [(1, 2), (2, 3)])
        copy = find_induced_copy(path, path_graph(3))
        assert copy == (1, 2, 3)

    def test_lexicographic_first(self):
        g = Graph.from_edges(5, [(1, 5), (2, 3)])
        assert find_induced_copy(g, complete_graph(2)) == (1, 5)

    def test_family_free(self):
        fam = ForbiddenFamily([complete_graph(2)])
        assert free_of_family(Graph.from_edges(3, []), fam)
        assert not free_of_family(path_graph(3), fam)
        assert free_of_family(path_graph(3), fam, frozenset({2}))

    def test_pattern_with_automorphisms_still_found(self):
        square = cycle_graph(4)
        assert find_induced_copy(square, path_graph(3)) is not None


class TestAcyclicity:
    def test_triangle(self):
        assert not is_acyclic(complete_graph(3))
        assert is_acyclic(complete_graph(3), frozenset({1}))

    def test_forest(self):
        assert is_acyclic(Graph.from_edges(5, [(1, 2), (3, 4)]))

    def test_disjoint_cycle_components(self):
        g = Graph.from_edges(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
        assert not is_acyclic(g, frozenset({1}))
        assert is_acyclic(g, frozenset({1, 5}))
