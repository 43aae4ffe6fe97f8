"""
界与证书服务

周期着色证书（子格 + 商群颜色表）的构造与穷举校验，度数上界，半立方体提升，
正交和组合，以及球堆积下界
"""
import logging
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from src.errors import ImproperInput, InapplicableDimension, RhoHypothesisFails
from src.models import (
    Lattice,
    PackingBound,
    QuotientColoring,
    RelevantVectorSet,
    VerificationResult,
)
from src.services.catalog import catalog
from src.services.coloring import chromatic_number_exact, improper_edge
from src.services.enumeration import min_norm2
from src.services.graphs import half_cube_graph, quotient_graph
from src.services.lattice import lattice_determinant, make_lattice, quotient_structure, sublattice_coordinates
from src.services.voronoi import relevant_vectors
from src.utils.linalg import coordinates_in_basis
from src.utils.rationals import ceil_sqrt

logger = logging.getLogger(__name__)

# 已证明最优的格堆积中心密度的平方 δₙ²
OPTIMAL_DENSITY_SQUARED: Dict[int, Fraction] = {
    1: Fraction(1, 4),
    2: Fraction(1, 12),
    3: Fraction(1, 32),
    8: Fraction(1, 256),
    24: Fraction(1),
}

HALF = Fraction(1, 2)


def upper_bound_degree(vor: RelevantVectorSet) -> int:
    """|Vor(Λ)|/2 + 1"""
    return vor.count // 2 + 1


def verify_coloring(lattice: Lattice, vor: RelevantVectorSet, cert: QuotientColoring) -> VerificationResult:
    """
    穷举校验周期着色证书

    检查：颜色表长度等于商群阶且颜色在 0..k−1 内；没有相关向量落在子格中；
    对每个陪集代表元 r 与每个相关向量 u，color(r + u) ≠ color(r)

    Returns:
        VerificationResult: accepted 时 χ(Λ) ≤ k
    """
    quotient = quotient_structure(lattice, cert.sublattice)
    if len(cert.colors) != quotient.index:
        return VerificationResult(
            accepted=False,
            reason="BadColors",
            witness={"expected": quotient.index, "got": len(cert.colors)},
            k=cert.k,
        )
    bad = [c for c in cert.colors if not 0 <= c < cert.k]
    if bad:
        return VerificationResult(accepted=False, reason="BadColors", witness={"color": bad[0]}, k=cert.k)

    steps: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    for v in vor.vectors:
        cls = quotient.class_vector(v)
        if not any(cls):
            return VerificationResult(accepted=False, reason="VorInSublattice", witness={"vector": list(v)}, k=cert.k)
        steps.setdefault(cls, v)

    divisors = quotient.elementary_divisors
    checks = 0
    for a in range(quotient.index):
        digits = quotient.digits(a)
        for cls, v in steps.items():
            checks += 1
            b_digits = tuple((x + y) % d for x, y, d in zip(digits, cls, divisors))
            b = 0
            for r, d in zip(b_digits, divisors):
                b = b * d + r
            if cert.colors[a] == cert.colors[b]:
                witness = {
                    "rep": list(quotient.representative(a)),
                    "vector": list(v),
                    "neighbor": list(quotient.representative(b)),
                    "color": cert.colors[a],
                }
                logger.info(f"Certificate rejected for {lattice.label}: monochromatic edge {witness}")
                return VerificationResult(
                    accepted=False, reason="EdgeMonochromatic", witness=witness, k=cert.k, checks=checks
                )
    logger.info(f"Certificate accepted for {lattice.label}: k = {cert.k}, {checks} checks")
    return VerificationResult(accepted=True, k=cert.k, checks=checks)


def certificate_from_function(
    lattice: Lattice,
    sub: Sequence[Sequence[int]],
    color_of: Callable[[Tuple[int, ...]], int],
    note: Optional[str] = None,
) -> QuotientColoring:
    """
    把陪集代表元上的颜色函数整理成证书（颜色按首次出现重新编号）
    """
    quotient = quotient_structure(lattice, sub)
    raw = [color_of(rep) for rep in quotient.coset_reps()]
    relabel: Dict[int, int] = {}
    colors = [relabel.setdefault(c, len(relabel)) for c in raw]
    return QuotientColoring(sublattice=quotient.sublattice, k=len(relabel), colors=colors, note=note)


def trivial_quotient_coloring(lattice: Lattice, sub: Sequence[Sequence[int]]) -> QuotientColoring:
    """每个陪集一种颜色：子格与 Vor(Λ) 不交时 χ(Λ) ≤ |Λ/Λ′|"""
    quotient = quotient_structure(lattice, sub)
    return QuotientColoring(
        sublattice=quotient.sublattice,
        k=quotient.index,
        colors=list(range(quotient.index)),
        note="one color per coset",
    )


def coloring_from_quotient_graph(
    lattice: Lattice,
    vor: RelevantVectorSet,
    sub: Sequence[Sequence[int]],
    budget: Optional[int] = None,
) -> QuotientColoring:
    """
    对商图求（精确或预算内最好的）着色并转为证书

    Raises:
        LoopInQuotient: 某个相关向量落在子格中
    """
    graph = quotient_graph(lattice, vor, sub)
    result = chromatic_number_exact(graph, budget=budget)
    quotient = quotient_structure(lattice, sub)
    return QuotientColoring(
        sublattice=quotient.sublattice,
        k=result.upper,
        colors=list(result.coloring),
        note=f"quotient graph coloring ({result.status.value}, lower {result.lower})",
    )


def doubled_integer_sublattice(lattice: Lattice) -> List[List[int]]:
    """2ℤⁿ 在格坐标下的基（要求 2ℤⁿ ⊂ Λ）"""
    n = lattice.ambient_dim
    doubled = make_lattice([[2 * int(i == j) for j in range(n)] for i in range(n)], metric=lattice.metric)
    return [[int(x) for x in row] for row in sublattice_coordinates(lattice, doubled)]


def _check_half_cube_coloring(n: int, coloring: Sequence[int]):
    graph = half_cube_graph(n)
    if len(coloring) != graph.n_vertices:
        raise ImproperInput(f"Half-cube coloring for n={n} needs {graph.n_vertices} entries, got {len(coloring)}")
    edge = improper_edge(graph, coloring)
    if edge is not None:
        raise ImproperInput(f"Half-cube coloring is not proper: edge {graph.labels[edge[0]]}-{graph.labels[edge[1]]}")
    return {label: c for label, c in zip(graph.labels, coloring)}


def dn_coloring_from_halfcube(n: int, hc_coloring: Sequence[int]) -> QuotientColoring:
    """
    Dₙ 的着色：x ↦ c(x mod 2)，子格为 2ℤⁿ

    Raises:
        ImproperInput: hc_coloring 不是 ½Hₙ 的合法着色
    """
    color_of_word = _check_half_cube_coloring(n, hc_coloring)
    lattice = catalog("D", n)
    sub = doubled_integer_sublattice(lattice)

    def color_of(rep):
        x = lattice.ambient(rep)
        return color_of_word[tuple(int(v) % 2 for v in x)]

    return certificate_from_function(lattice, sub, color_of, note=f"half-cube lift for D{n}")


def e8_coloring_from_d8(hc8_coloring: Sequence[int]) -> QuotientColoring:
    """
    E8 的 2k 着色：D8 陪集用 c(x mod 2)，陪集 h + D8（h = (1/2)⁸）用 k + c((x − h) mod 2)

    Raises:
        ImproperInput: hc8_coloring 不是 ½H₈ 的合法着色
    """
    color_of_word = _check_half_cube_coloring(8, hc8_coloring)
    offset = max(hc8_coloring) + 1
    lattice = catalog("E", 8)
    sub = doubled_integer_sublattice(lattice)

    def color_of(rep):
        x = lattice.ambient(rep)
        if all(v.denominator == 1 for v in x):
            return color_of_word[tuple(int(v) % 2 for v in x)]
        return offset + color_of_word[tuple(int(v - HALF) % 2 for v in x)]

    cert = certificate_from_function(lattice, sub, color_of, note="E8 from two half-cube colorings of D8 cosets")
    return cert


def combine_orthogonal(parts: Sequence[Tuple[Lattice, QuotientColoring]]) -> QuotientColoring:
    """
    正交和的证书：子格为块对角，颜色为 Σ cᵢ mod max kᵢ

    Args:
        parts: [(加项格, 其证书)]，顺序与 orthogonal_sum 一致
    """
    k = max(cert.k for _, cert in parts)
    quotients = [quotient_structure(lat, cert.sublattice) for lat, cert in parts]
    dims = [lat.dim for lat, _ in parts]
    total = sum(dims)
    sub: List[List[int]] = []
    offset = 0
    for (_, cert), d in zip(parts, dims):
        for row in cert.sublattice:
            sub.append([0] * offset + list(row) + [0] * (total - offset - d))
        offset += d

    def color_of(rep):
        color = 0
        start = 0
        for (_, cert), quotient, d in zip(parts, quotients, dims):
            color += cert.colors[quotient.class_index(rep[start:start + d])]
            start += d
        return color % k

    # 只借用维数与子格，因此用单位基的占位格即可
    frame = make_lattice([[int(i == j) for j in range(total)] for i in range(total)])
    quotient = quotient_structure(frame, sub)
    colors = [color_of(rep) for rep in quotient.coset_reps()]
    note = "orthogonal sum, colors added mod k"
    return QuotientColoring(sublattice=quotient.sublattice, k=k, colors=colors, note=note)


def dn_dual_coloring(n: int) -> QuotientColoring:
    """
    Dₙ* 的 4 着色：子格 Dₙ（指数 4），四个陪集（ℤⁿ 的两个奇偶类与 h + ℤⁿ 的两个奇偶类）各一色
    """
    lattice = catalog("D*", n)
    sub = [[int(x) for x in row] for row in sublattice_coordinates(lattice, catalog("D", n))]
    cert = trivial_quotient_coloring(lattice, sub)
    return QuotientColoring(sublattice=cert.sublattice, k=cert.k, colors=cert.colors, note=f"D{n} cosets in D{n}*")


def dn_dual_clique(n: int) -> List[Tuple[int, ...]]:
    """Dₙ* 中两两相差相关向量的 4 个点 {0, e₁, h, h − eₙ}（格坐标）"""
    lattice = catalog("D*", n)
    e1 = [Fraction(int(i == 0)) for i in range(n)]
    h = [HALF] * n
    h_minus = [HALF - int(i == n - 1) for i in range(n)]
    points = [[Fraction(0)] * n, e1, h, h_minus]
    coords = coordinates_in_basis(points, lattice.basis)
    return [tuple(int(x) for x in row) for row in coords]


def center_density_squared(lattice: Lattice, norm2: Optional[Fraction] = None) -> Fraction:
    """
    中心密度的平方 δ² = (λ1²)ⁿ / (4ⁿ·det(gram))，与缩放无关
    """
    mu2 = min_norm2(lattice) if norm2 is None else norm2
    n = lattice.dim
    return mu2 ** n / (4 ** n * lattice_determinant(lattice))


def sphere_packing_lower_bound(lattice: Lattice, vor: Optional[RelevantVectorSet] = None) -> PackingBound:
    """
    球堆积下界 ⌈(ρ/2)ⁿ·δ(Λ)/δₙ⌉，ρ = √8（把 λ1 缩放到 2）

    平方后为 2ⁿ·δ²/δₙ²，精确有理计算后取 ⌈√·⌉

    Raises:
        InapplicableDimension: n ∉ {1, 2, 3, 8, 24}
        RhoHypothesisFails: 存在范数² ≥ 2·λ1² 的相关向量
    """
    n = lattice.dim
    if n not in OPTIMAL_DENSITY_SQUARED:
        raise InapplicableDimension(f"No proven optimal packing density in dimension {n}")

    mu2 = min_norm2(lattice)
    if vor is not None:
        longest = vor.max_norm2()
        source = "relevant vectors"
    elif lattice.meta.relevant_norm2:
        longest = max(lattice.meta.relevant_norm2)
        source = "lattice metadata"
    else:
        longest = relevant_vectors(lattice).max_norm2()
        source = "relevant vectors"
    if longest >= 2 * mu2:
        raise RhoHypothesisFails(f"Relevant vector of norm² {longest} is not shorter than √8 after scaling")

    delta2 = center_density_squared(lattice, mu2)
    optimal = OPTIMAL_DENSITY_SQUARED[n]
    ratio2 = 2 ** n * delta2 / optimal
    value = ceil_sqrt(ratio2)
    logger.info(f"Sphere-packing bound for {lattice.label}: {value} (ratio² {ratio2})")
    return PackingBound(
        dim=n,
        value=value,
        center_density_squared=delta2,
        optimal_density_squared=optimal,
        ratio_squared=ratio2,
        source=source,
    )
