"""第一类 Voronoi 格：超基、极小割、最长圈团与块分解"""
import pytest

from src.errors import CertificateRejected, DisconnectedInput, NotABasis, PositiveInnerProduct, SumNotZero
from src.models import QuotientColoring, RelevantVectorSet
from src.services.bounds import verify_coloring
from src.services.catalog import catalog
from src.services.first_kind import (
    DIM3_ROWS,
    biconnected_split,
    block_bound,
    check_obtuse_superbasis,
    cut_vector,
    cycle_clique_lower_bound,
    delaunay_graph,
    first_kind_report,
    mod_coloring,
    relevant_from_cuts,
    superbasis_from_graph,
    superbasis_lattice,
    table_dim3,
)
from src.services.voronoi import relevant_vectors

Z3_SUPERBASIS = [[-1, -1, -1], [1, 0, 0], [0, 1, 0], [0, 0, 1]]


def superbasis(name, n):
    return check_obtuse_superbasis(catalog(name, n).meta.superbasis)


class TestSuperbasis:
    def test_selling_parameters(self):
        sb = check_obtuse_superbasis(Z3_SUPERBASIS)
        assert sb.n == 3
        assert sb.selling[0][1] == -1
        assert sb.selling[1][2] == 0
        assert not sb.strictly_obtuse
        assert delaunay_graph(sb).n_edges == 3

    def test_a3_dual_is_strictly_obtuse(self):
        assert superbasis("A*", 3).strictly_obtuse

    def test_sum_not_zero(self):
        with pytest.raises(SumNotZero):
            check_obtuse_superbasis([[1, 0], [0, 1], [-1, 0]])

    def test_not_a_basis(self):
        with pytest.raises(NotABasis):
            check_obtuse_superbasis([[1, 0], [-1, 0], [0, 0]])

    def test_positive_inner_product(self):
        with pytest.raises(PositiveInnerProduct) as info:
            check_obtuse_superbasis([[1, 1], [1, 0], [-2, -1]])
        assert info.value.exit_code == 2


class TestRelevantFromCuts:
    @pytest.mark.parametrize("name, n", [("A", 2), ("A", 3), ("A*", 2), ("A*", 3), ("A", 4)])
    def test_matches_coset_enumeration(self, name, n):
        sb = superbasis(name, n)
        from_cuts = relevant_from_cuts(sb)
        assert from_cuts == relevant_vectors(superbasis_lattice(sb))

    def test_counts(self):
        assert relevant_from_cuts(superbasis("A", 4)).count == 20
        assert relevant_from_cuts(superbasis("A*", 4)).count == 30
        assert relevant_from_cuts(check_obtuse_superbasis(Z3_SUPERBASIS)).count == 6

    def test_cut_vector(self):
        assert cut_vector({1, 3}, 3) == (1, 0, 1)
        assert cut_vector({0, 1}, 3) == (0, -1, -1)


class TestCycleClique:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_an_cycle_gives_full_clique(self, n):
        sb = superbasis("A", n)
        cycle, clique = cycle_clique_lower_bound(sb)
        assert len(cycle) == n + 1
        relevant = relevant_from_cuts(sb).as_set()
        for i in range(len(clique)):
            for j in range(i + 1, len(clique)):
                assert tuple(a - b for a, b in zip(clique[i], clique[j])) in relevant

    def test_pendant_vertices_join_the_clique(self):
        # 三角形 0-1-2 加悬挂点 3
        sb = superbasis_from_graph(4, [(0, 1), (1, 2), (0, 2), (0, 3)])
        cycle, clique = cycle_clique_lower_bound(sb)
        assert len(cycle) == 3
        assert len(set(clique)) == 3

    def test_two_connected_graph_with_off_cycle_vertex(self):
        # 六个顶点，最长圈长度 5，经过 4 与 5 之一，另一个只与 1、2 相邻
        edges = [(0, 1), (0, 3), (3, 2), (4, 2), (5, 2), (4, 1), (5, 1)]
        sb = superbasis_from_graph(6, edges)
        cycle, clique = cycle_clique_lower_bound(sb)
        assert len(cycle) == 5
        assert len(set(clique)) == 5
        report = first_kind_report(sb)
        assert report.blocks == [(0, 1, 2, 3, 4, 5)]
        assert (report.lower, report.upper) == (5, 6)
        assert report.chromatic is None
        assert report.certificate_accepted

    def test_clique_checked_against_relevant_vectors(self):
        sb = superbasis("A", 3)
        _, clique = cycle_clique_lower_bound(sb)
        step = tuple(a - b for a, b in zip(clique[1], clique[0]))
        full = relevant_from_cuts(sb)
        kept = [
            (v, q) for v, q in zip(full.vectors, full.norm2) if v != step and v != tuple(-x for x in step)
        ]
        with pytest.raises(CertificateRejected) as exc:
            cycle_clique_lower_bound(sb, relevant=RelevantVectorSet.from_pairs(kept))
        assert exc.value.code == "CliqueRejected"
        assert exc.value.exit_code == 4


class TestColorings:
    @pytest.mark.parametrize("name, n", [("A", 3), ("A*", 3), ("A", 5)])
    def test_mod_coloring(self, name, n):
        sb = superbasis(name, n)
        cert = mod_coloring(sb)
        assert cert.k == n + 1
        assert verify_coloring(superbasis_lattice(sb), relevant_from_cuts(sb), cert).accepted

    def test_block_split_of_triangle_plus_edge(self):
        sb = superbasis_from_graph(4, [(0, 1), (1, 2), (0, 2), (0, 3)])
        blocks = [block for block, _ in biconnected_split(sb)]
        assert blocks == [(0, 1, 2), (0, 3)]
        assert block_bound(sb) == 3

    def test_tree_is_bipartite(self):
        report = first_kind_report(check_obtuse_superbasis(Z3_SUPERBASIS))
        assert (report.lower, report.upper) == (2, 2)
        assert report.certificate.k == 2
        assert report.certificate_accepted


class TestReports:
    @pytest.mark.parametrize("name, n", [(name, n) for name in ("A", "A*") for n in range(2, 7)])
    def test_an_and_dual_have_n_plus_one_colors(self, name, n):
        report = first_kind_report(superbasis(name, n))
        assert report.chromatic == n + 1
        assert report.certificate_accepted

    def test_graph_input(self):
        # C5：χ = 5
        sb = superbasis_from_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
        assert sb.n == 4
        report = first_kind_report(sb)
        assert report.chromatic == 5

    def test_disconnected_graph_input(self):
        with pytest.raises(DisconnectedInput):
            superbasis_from_graph(4, [(0, 1), (2, 3)])

    def test_dim3_table(self):
        rows = table_dim3()
        assert [row["lattice"] for row in rows] == [name for name, _, _, _ in DIM3_ROWS]
        assert [row["chromatic"] for row in rows] == [2, 3, 4, 4, 4]
        assert [row["delaunay_graph"] for row in rows] == [shape for _, _, shape, _ in DIM3_ROWS]
        assert all(row["certificate_accepted"] for row in rows)

    def test_rejected_certificate_gives_no_upper_bound(self, monkeypatch):
        """证书未通过校验时不给出上界"""
        bad = QuotientColoring(sublattice=[[2, 0, 0], [0, 2, 0], [0, 0, 2]], k=1, colors=[0] * 8)
        monkeypatch.setattr("src.services.first_kind.block_mod_coloring", lambda sb: bad)
        report = first_kind_report(check_obtuse_superbasis(Z3_SUPERBASIS))
        assert report.lower == 2
        assert report.upper is None
        assert report.chromatic is None
        assert report.certificate_accepted is False
