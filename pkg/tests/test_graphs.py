"""有限图构造与图算法"""
import pytest

from src.errors import BadDimension, LoopInQuotient, TooManyVertices
from src.models import FiniteGraph, SolveStatus
from src.services.catalog import catalog
from src.services.coloring import (
    chromatic_number_exact,
    code_coloring,
    find_longest_cycle,
    greedy_coloring,
    improper_edge,
    independence_number,
    is_proper,
    max_clique,
)
from src.services.graphs import cayley_ball, coset_min_vector_graph, half_cube_graph, quotient_graph
from src.services.lattice import sublattice_coordinates
from src.utils.codes import hamming_h8, minimum_distance, shorten, weight_distribution


def cycle_graph(n):
    return FiniteGraph.build([str(i) for i in range(n)], [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


class TestFiniteGraph:
    def test_edges_are_canonical(self):
        graph = FiniteGraph.build(["a", "b", "c"], [(1, 0), (0, 1), (2, 1)])
        assert graph.edges == ((0, 1), (1, 2))

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError):
            FiniteGraph(labels=["a", "b"], edges=[(1, 1)])

    def test_dimacs(self):
        assert cycle_graph(3).to_dimacs() == "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n"


class TestCayleyGraphs:
    def test_z2_ball(self, vor_of):
        lattice, vor = vor_of("Z", 2)
        graph = cayley_ball(lattice, vor, 1)
        assert graph.n_vertices == 5
        assert graph.n_edges == 4

    def test_a2_ball_contains_triangles(self, vor_of):
        lattice, vor = vor_of("A", 2)
        graph = cayley_ball(lattice, vor, 2)
        assert graph.n_vertices == 7
        assert max_clique(graph).size == 3

    def test_ball_vertex_cap(self, vor_of):
        lattice, vor = vor_of("Z", 3)
        with pytest.raises(TooManyVertices):
            cayley_ball(lattice, vor, 9, max_vertices=10)

    def test_quotient_graph_of_z2(self, vor_of):
        lattice, vor = vor_of("Z", 2)
        graph = quotient_graph(lattice, vor, [[2, 0], [0, 2]])
        assert graph.n_vertices == 4
        assert graph.n_edges == 4
        assert chromatic_number_exact(graph).upper == 2

    def test_quotient_loop(self, vor_of):
        lattice, vor = vor_of("Z", 2)
        with pytest.raises(LoopInQuotient):
            quotient_graph(lattice, vor, [[1, 0], [0, 2]])

    def test_schlafli_graph(self):
        e6_dual = catalog("E6*")
        sub = [[int(x) for x in row] for row in sublattice_coordinates(e6_dual, catalog("E6"))]
        graph = coset_min_vector_graph(e6_dual, sub)
        assert graph.n_vertices == 27
        assert graph.n_edges == 216
        assert set(graph.degrees()) == {16}

    def test_gosset_graph(self):
        """E7*/E7 非平凡陪集的 56 个最短向量：Gosset 图，27-正则"""
        e7_dual = catalog("E7*")
        sub = [[int(x) for x in row] for row in sublattice_coordinates(e7_dual, catalog("E7"))]
        graph = coset_min_vector_graph(e7_dual, sub)
        assert graph.n_vertices == 56
        assert set(graph.degrees()) == {27}
        assert graph.n_edges == 756

    @pytest.mark.slow
    def test_schlafli_chromatic_number(self):
        e6_dual = catalog("E6*")
        sub = [[int(x) for x in row] for row in sublattice_coordinates(e6_dual, catalog("E6"))]
        result = chromatic_number_exact(coset_min_vector_graph(e6_dual, sub))
        assert (result.lower, result.upper) == (9, 9)


class TestHalfCube:
    @pytest.mark.parametrize("n, vertices, degree", [(4, 8, 6), (5, 16, 10), (6, 32, 15)])
    def test_shape(self, n, vertices, degree):
        graph = half_cube_graph(n)
        assert graph.n_vertices == vertices
        assert set(graph.degrees()) == {degree}

    def test_too_small(self):
        with pytest.raises(BadDimension):
            half_cube_graph(1)

    @pytest.mark.parametrize("n, chi", [(4, 4), (5, 8), (6, 8)])
    def test_chromatic_number(self, n, chi):
        result = chromatic_number_exact(half_cube_graph(n))
        assert result.status == SolveStatus.EXACT
        assert result.upper == chi
        assert is_proper(half_cube_graph(n), result.coloring)

    @pytest.mark.slow
    def test_chromatic_number_of_seven_cube(self):
        assert chromatic_number_exact(half_cube_graph(7)).upper == 8

    def test_hamming_code_coloring(self):
        coloring = code_coloring(8, hamming_h8())
        assert max(coloring) + 1 == 8
        assert is_proper(half_cube_graph(8), coloring)

    def test_shortened_code_coloring(self):
        coloring = code_coloring(7, shorten(hamming_h8()))
        assert max(coloring) + 1 == 8
        assert is_proper(half_cube_graph(7), coloring)


class TestGraphAlgorithms:
    def test_odd_cycle(self):
        result = chromatic_number_exact(cycle_graph(5))
        assert result.chromatic == 3
        assert find_longest_cycle(cycle_graph(5)).length == 5
        assert independence_number(cycle_graph(5)).size == 2

    def test_tree_has_no_cycle(self):
        star = FiniteGraph.build(["c", "a", "b", "d"], [(0, 1), (0, 2), (0, 3)])
        assert find_longest_cycle(star).length == 0

    def test_longest_cycle_with_chord(self):
        # 四边形 0-1-2-3 加弦 0-2，顶点 4 孤立
        graph = FiniteGraph.build(
            [str(i) for i in range(5)], [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)], name="C4+chord"
        )
        result = find_longest_cycle(graph)
        assert result.length == 4
        assert set(result.cycle) == {0, 1, 2, 3}

    def test_zero_budget_gives_bounds(self):
        result = chromatic_number_exact(cycle_graph(7), budget=0)
        assert result.lower <= 3 <= result.upper

    def test_improper_edge(self):
        graph = cycle_graph(4)
        assert improper_edge(graph, [0, 1, 0, 1]) is None
        assert improper_edge(graph, [0, 0, 1, 1]) == (0, 1)

    def test_greedy_is_proper(self):
        graph = half_cube_graph(5)
        assert is_proper(graph, greedy_coloring(graph))


class TestCodes:
    def test_h8_weights(self):
        assert weight_distribution(hamming_h8()) == {0: 1, 4: 14, 8: 1}
        assert minimum_distance(hamming_h8()) == 4

    def test_shortened_code(self):
        short = shorten(hamming_h8())
        assert len(short) == 8
        assert all(len(w) == 7 for w in short)
