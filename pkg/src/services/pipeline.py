"""
界汇总流水线

为一个格收集全部适用的下界与上界（每个上界证书在加入前都重新校验），
并重现目录格、谱界与三维第一类格三张汇总表
"""
import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.config import settings
from src.errors import BudgetExceeded, CertificateRejected, InputError, NoCycle
from src.models import BoundEntry, BoundReport, Lattice, QuotientColoring, RelevantVectorSet
from src.services.bounds import (
    coloring_from_quotient_graph,
    dn_coloring_from_halfcube,
    dn_dual_coloring,
    e8_coloring_from_d8,
    sphere_packing_lower_bound,
    upper_bound_degree,
    verify_coloring,
)
from src.services.catalog import catalog, parse_name
from src.services.coloring import chromatic_number_exact, code_coloring, max_clique
from src.services.first_kind import (
    block_mod_coloring,
    check_obtuse_superbasis,
    cycle_clique_lower_bound,
    superbasis_lattice,
    table_dim3,
)
from src.services.graphs import cayley_ball, half_cube_graph
from src.services.lattice import quotient_structure
from src.services.spectral import spectral_bound
from src.services.voronoi import relevant_vectors
from src.utils.codes import hamming_h8, shorten
from src.utils.linalg import coordinates_in_basis, inverse, mat_mul, vec_mat

logger = logging.getLogger(__name__)

REFERENCE_TAG = "paper-reference, not recomputed"

# 只作为参考数据列出的上界（构造不在本工具中重算）
REFERENCE_UPPERS: Dict[str, Tuple[int, str]] = {
    "E6": (9, "index-9 sublattice from Schläfli-graph coloring orbits"),
    "E7": (14, "lamination of E7 over A6 cosets"),
    "E6*": (16, "sublattice enumeration and SAT search"),
    "E7*": (16, "sublattice enumeration and SAT search"),
}

# 非格对象的参考色数（表格中单列）
REFERENCE_GRAPHS: List[Tuple[str, int, str]] = [
    ("half-cube(9)", 13, "exact coloring of the 256-vertex half-cube"),
    ("Gosset polytope graph", 14, "exact coloring of the 56-vertex Gosset graph"),
]

TABLE1_LATTICES = [
    "Z2", "Z3", "A2", "A3", "A4", "A2*", "A3*", "D4", "D5", "D4*", "E6", "E7", "E8", "E6*", "E7*", "Leech",
]
TABLE2_LATTICES = ["A2", "A3", "A4", "A5", "A6", "D4", "D5", "D6", "D7", "E6", "E7", "E8"]


def _transport(cert: QuotientColoring, source: Lattice, target: Lattice) -> QuotientColoring:
    """
    把 source 坐标下的证书改写到 target 坐标（两者为同一个格的不同基）
    """
    change = coordinates_in_basis([list(b) for b in source.basis], [list(b) for b in target.basis])
    if change is None:
        raise InputError("Superbasis does not span the catalog lattice", code="NotABasis")
    back = inverse(change)
    sub = [[int(x) for x in row] for row in mat_mul([list(r) for r in cert.sublattice], change)]
    source_quotient = quotient_structure(source, cert.sublattice)
    target_quotient = quotient_structure(target, sub)
    colors = []
    for rep in target_quotient.coset_reps():
        local = [int(x) for x in vec_mat(list(rep), back)]
        colors.append(cert.colors[source_quotient.class_index(local)])
    return QuotientColoring(sublattice=target_quotient.sublattice, k=cert.k, colors=colors, note=cert.note)


class BoundPipeline:
    """χ(Λ) 上下界汇总"""

    def __init__(
        self,
        budget: Optional[int] = None,
        seed: Optional[int] = None,
        starts: Optional[int] = None,
        cap_dim: Optional[int] = None,
        workers: Optional[int] = None,
        with_spectral: bool = True,
    ) -> None:
        """
        Args:
            budget: 分支定界节点预算（默认 settings.budget_nodes）
            seed: 谱界随机种子（默认 settings.seed）
            starts: 谱界起点数（默认 64·n）
            cap_dim: relevant_vectors 的维数上限（默认 settings.cap_dim）
            workers: 陪集循环的进程数
            with_spectral: 是否计算谱下界
        """
        self.budget = settings.budget_nodes if budget is None else budget
        self.seed = settings.seed if seed is None else seed
        self.starts = starts
        self.cap_dim = settings.cap_dim if cap_dim is None else cap_dim
        self.workers = workers
        self.with_spectral = with_spectral

    def assemble_bounds(
        self,
        lattice: Lattice,
        vor: Optional[RelevantVectorSet] = None,
        sublattice: Optional[Sequence[Sequence[int]]] = None,
    ) -> BoundReport:
        """
        汇总全部适用的界

        下界：Cayley 球中的团、小球的精确色数、球堆积、已认证的谱界、第一类格的最长圈；
        上界：度数引理（Λ/2Λ 上的贪心证书）、第一类 mod 着色、Dₙ 半立方体提升、由 D8 得到的 E8 着色、
        Dₙ* 的 4 着色、给定子格的商图着色以及参考数据

        Returns:
            BoundReport: lower 为最大的已证明下界，upper 为最小的已证明上界
        """
        report = BoundReport(lattice=lattice.label, dim=lattice.dim)
        if vor is None and lattice.dim <= self.cap_dim:
            vor = relevant_vectors(lattice, cap_dim=self.cap_dim, workers=self.workers)
        if vor is None:
            report.details.append(f"dimension {lattice.dim} exceeds cap {self.cap_dim}: relevant vectors not computed")

        self._packing_lower(lattice, vor, report)
        if vor is not None:
            self._ball_lowers(lattice, vor, report)
            if self.with_spectral:
                self._spectral_lower(lattice, vor, report)
            self._degree_uppers(lattice, vor, report)
            self._family_uppers(lattice, vor, report)
            if sublattice is not None:
                cert = coloring_from_quotient_graph(lattice, vor, sublattice, budget=self.budget)
                self._accept(lattice, vor, cert, "quotient-certificate", report)
        self._first_kind(lattice, vor, report)
        self._references(lattice, report)

        proven_lowers = [e for e in report.lowers if e.proven]
        proven_uppers = [e for e in report.uppers if e.proven]
        if proven_lowers:
            report.lower = max(proven_lowers, key=lambda e: e.value)
        if proven_uppers:
            report.upper = min(proven_uppers, key=lambda e: (e.value, e.certificate is None))
        if report.lower and report.upper and report.lower.value > report.upper.value:
            logger.error(f"{lattice.label}: lower bound {report.lower.value} exceeds upper bound {report.upper.value}")
            report.details.append("inconsistent bounds")
        logger.info(
            f"Bounds for {lattice.label}: "
            f"[{report.lower.value if report.lower else '?'}, {report.upper.value if report.upper else '?'}]"
        )
        return report

    def _accept(self, lattice: Lattice, vor: RelevantVectorSet, cert: QuotientColoring, tag: str, report: BoundReport):
        verdict = verify_coloring(lattice, vor, cert)
        if verdict.accepted:
            report.uppers.append(BoundEntry(value=cert.k, tag=tag, note=cert.note, certificate=cert))
        else:
            logger.warning(f"{lattice.label}: {tag} certificate rejected ({verdict.reason})")
            report.details.append(f"{tag} certificate rejected: {verdict.reason} {verdict.witness}")

    def _packing_lower(self, lattice: Lattice, vor: Optional[RelevantVectorSet], report: BoundReport):
        try:
            packing = sphere_packing_lower_bound(lattice, vor)
        except InputError as e:
            report.details.append(f"sphere-packing: {e.code}")
            return
        report.lowers.append(
            BoundEntry(value=packing.value, tag="sphere-packing", note=f"ratio² = {packing.ratio_squared}")
        )

    def _ball_lowers(self, lattice: Lattice, vor: RelevantVectorSet, report: BoundReport):
        try:
            ball = cayley_ball(lattice, vor, vor.max_norm2())
        except BudgetExceeded as e:
            report.details.append(f"Cayley ball skipped: {e}")
            return
        clique = max_clique(ball, budget=self.budget)
        note = f"clique in the Cayley ball of radius² {vor.max_norm2()}"
        if not clique.complete:
            note += " (partial search)"
        report.lowers.append(BoundEntry(value=clique.size, tag="clique", note=note))
        if ball.n_vertices <= settings.subgraph_chi_max_vertices:
            result = chromatic_number_exact(ball, budget=self.budget)
            note = f"{ball.n_vertices}-vertex ball, {result.status.value}"
            report.lowers.append(BoundEntry(value=result.lower, tag="subgraph-χ", note=note))

    def _spectral_lower(self, lattice: Lattice, vor: RelevantVectorSet, report: BoundReport):
        result = spectral_bound(lattice, vor, starts=self.starts, seed=self.seed)
        note = f"min 𝓕 = {result.min_value:.9f}"
        if not result.certified:
            note += ", heuristic estimate (no exact oracle)"
        report.lowers.append(BoundEntry(value=result.hoffman_int, tag="spectral", proven=result.certified, note=note))

    def _degree_uppers(self, lattice: Lattice, vor: RelevantVectorSet, report: BoundReport):
        """度数引理：Λ/2Λ 商图的贪心着色至多用 |Vor|/2 + 1 种颜色，作为证书校验后加入"""
        degree = upper_bound_degree(vor)
        n = lattice.dim
        if 2 ** n > settings.max_quotient_index:
            report.details.append(
                f"degree lemma gives χ <= {degree}; not listed: 2^{n} cosets exceed the quotient cap "
                f"{settings.max_quotient_index}, so no certificate was built"
            )
            return
        doubled = [[2 * int(i == j) for j in range(n)] for i in range(n)]
        cert = coloring_from_quotient_graph(lattice, vor, doubled, budget=0)
        self._accept(lattice, vor, cert, "degree", report)

    def _family_uppers(self, lattice: Lattice, vor: RelevantVectorSet, report: BoundReport):
        if not lattice.name:
            return
        try:
            family, n = parse_name(lattice.name)
        except InputError:
            return
        if family == "D" and n == lattice.dim and n <= 8:
            cert = dn_coloring_from_halfcube(n, self._half_cube_coloring(n))
            self._accept(lattice, vor, cert, "halfcube-lift", report)
        elif family == "D*" and n == lattice.dim:
            self._accept(lattice, vor, dn_dual_coloring(n), "quotient-certificate", report)
        elif family == "E" and n == 8:
            cert = e8_coloring_from_d8(code_coloring(8, hamming_h8()))
            self._accept(lattice, vor, cert, "quotient-certificate", report)

    def _half_cube_coloring(self, n: int) -> List[int]:
        if n == 7:
            return code_coloring(7, shorten(hamming_h8()))
        if n == 8:
            return code_coloring(8, hamming_h8())
        return list(chromatic_number_exact(half_cube_graph(n), budget=self.budget).coloring)

    def _first_kind(self, lattice: Lattice, vor: Optional[RelevantVectorSet], report: BoundReport):
        if lattice.meta.superbasis is None:
            return
        sb = check_obtuse_superbasis(lattice.meta.superbasis)
        try:
            cycle, _ = cycle_clique_lower_bound(sb, self.budget)
            report.lowers.append(BoundEntry(value=len(cycle), tag="first-kind-cycle", note=f"cycle {cycle}"))
        except NoCycle:
            report.lowers.append(BoundEntry(value=2, tag="first-kind-cycle", note="Delaunay graph is a tree"))
        except CertificateRejected as e:
            logger.warning(f"{lattice.label}: cycle clique rejected ({e})")
            report.details.append(f"first-kind-cycle clique rejected: {e}")
        if vor is None:
            return
        cert = _transport(block_mod_coloring(sb), superbasis_lattice(sb), lattice)
        self._accept(lattice, vor, cert, "first-kind-mod", report)

    def _references(self, lattice: Lattice, report: BoundReport):
        if lattice.name in REFERENCE_UPPERS:
            value, note = REFERENCE_UPPERS[lattice.name]
            report.uppers.append(BoundEntry(value=value, tag=REFERENCE_TAG, proven=False, note=note))

    def table1(self) -> List[Dict[str, Any]]:
        """目录格的色数界（含参考数据行）"""
        rows = []
        for name in TABLE1_LATTICES:
            report = self.assemble_bounds(catalog(name))
            reference = REFERENCE_UPPERS.get(name)
            rows.append(
                {
                    "lattice": name,
                    "dim": report.dim,
                    "lower": report.lower.value if report.lower else None,
                    "lower_source": report.lower.tag if report.lower else None,
                    "upper": report.upper.value if report.upper else None,
                    "upper_source": report.upper.tag if report.upper else None,
                    "chromatic": report.exact,
                    "reference_upper": reference[0] if reference else None,
                }
            )
        for name, value, _ in REFERENCE_GRAPHS:
            rows.append(
                {
                    "lattice": name,
                    "dim": None,
                    "lower": None,
                    "lower_source": None,
                    "upper": None,
                    "upper_source": REFERENCE_TAG,
                    "chromatic": None,
                    "reference_upper": value,
                }
            )
        return rows

    def table2(self) -> List[Dict[str, Any]]:
        """谱（Hoffman 型）下界"""
        rows = []
        for name in TABLE2_LATTICES:
            lattice = catalog(name)
            vor = relevant_vectors(lattice, cap_dim=self.cap_dim, workers=self.workers)
            result = spectral_bound(lattice, vor, starts=self.starts, seed=self.seed)
            rows.append(
                {
                    "lattice": name,
                    "relevant": vor.count,
                    "min_value": round(result.min_value, 9),
                    "oracle_min": result.oracle_min,
                    "hoffman": round(result.hoffman, 6),
                    "bound": result.hoffman_int,
                    "certified": result.certified,
                }
            )
        return rows

    def table3(self) -> List[Dict[str, Any]]:
        """三维第一类格"""
        return table_dim3(self.budget)

    def reproduce(self, table: str) -> List[Dict[str, Any]]:
        builders = {"table1": self.table1, "table2": self.table2, "table3": self.table3}
        if table not in builders:
            raise InputError(f"Unknown table {table!r}; expected one of {sorted(builders)}", code="UnknownTable")
        return builders[table]()


def assemble_bounds(
    lattice: Lattice,
    vor: Optional[RelevantVectorSet] = None,
    sublattice: Optional[Sequence[Sequence[int]]] = None,
    **options,
) -> BoundReport:
    """用一次性的 BoundPipeline 汇总界（options 同 BoundPipeline 的构造参数）"""
    return BoundPipeline(**options).assemble_bounds(lattice, vor, sublattice)

