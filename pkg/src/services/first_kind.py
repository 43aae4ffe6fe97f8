"""
第一类 Voronoi 格服务

钝角超基校验、Delaunay 图、由极小割得到相关向量、由最长圈构造 Cayley 图的团、
mod (n+1) 着色，以及按双连通分支分解的正交和上界
"""
import logging
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from src.errors import (
    CertificateRejected,
    DimensionMismatch,
    DisconnectedInput,
    NoCycle,
    NotABasis,
    NotRational,
    PositiveInnerProduct,
    SumNotZero,
)
from src.models import FiniteGraph, FirstKindReport, Lattice, QuotientColoring, RelevantVectorSet, Superbasis
from src.services.bounds import certificate_from_function, verify_coloring
from src.services.coloring import find_longest_cycle
from src.services.lattice import make_lattice
from src.utils.linalg import coordinates_in_basis, dot, inverse, mat_mul, rank
from src.utils.rationals import parse_matrix

logger = logging.getLogger(__name__)


def check_obtuse_superbasis(vectors: Sequence[Sequence[Any]]) -> Superbasis:
    """
    校验钝角超基 v₀…vₙ

    Raises:
        NotRational: 元素无法解析
        DimensionMismatch: 向量个数或长度不合法
        SumNotZero: Σvᵢ ≠ 0
        NotABasis: v₁…vₙ 线性相关
        PositiveInnerProduct: 某个 vᵢ·vⱼ > 0
    """
    try:
        rows = parse_matrix(vectors)
    except ValueError as e:
        raise NotRational(str(e)) from e
    if len(rows) < 2:
        raise DimensionMismatch("A superbasis needs at least two vectors")
    width = len(rows[0])
    n = len(rows) - 1
    if any(len(r) != width for r in rows) or width < n:
        raise DimensionMismatch(f"Superbasis of {n + 1} vectors needs rows of equal length >= {n}")
    total = [sum(col, Fraction(0)) for col in zip(*rows)]
    if any(total):
        raise SumNotZero(f"Superbasis vectors sum to {[str(x) for x in total]}, not 0")
    if rank(rows[1:]) < n:
        raise NotABasis("v1..vn are linearly dependent")
    selling = [[dot(a, b) for b in rows] for a in rows]
    for i, j in combinations(range(n + 1), 2):
        if selling[i][j] > 0:
            raise PositiveInnerProduct(i, j, selling[i][j])
    return Superbasis(vectors=rows, selling=selling)


def superbasis_lattice(sb: Superbasis, name: Optional[str] = None) -> Lattice:
    """由 v₁…vₙ 张成的格（格坐标即 v₁…vₙ 的系数）"""
    return make_lattice([list(v) for v in sb.vectors[1:]], name=name)


def delaunay_graph(sb: Superbasis) -> FiniteGraph:
    """Delaunay 图：顶点 0..n，vᵢ·vⱼ < 0 时相邻"""
    size = len(sb.vectors)
    edges = [(i, j) for i, j in combinations(range(size), 2) if sb.selling[i][j] < 0]
    return FiniteGraph.build([f"v{i}" for i in range(size)], edges, name="delaunay")


def cut_vector(subset, n: int) -> Tuple[int, ...]:
    """v_I = Σ_{i∈I} vᵢ 在 v₁…vₙ 下的坐标（v₀ = −Σ vᵢ）"""
    shift = 1 if 0 in subset else 0
    return tuple(int(i in subset) - shift for i in range(1, n + 1))


def _connected(g: nx.Graph, nodes) -> bool:
    return bool(nodes) and nx.is_connected(g.subgraph(nodes))


def relevant_from_cuts(sb: Superbasis) -> RelevantVectorSet:
    """
    由极小割得到相关向量：I 与其补集都诱导连通子图时输出 ±v_I

    Raises:
        DisconnectedInput: Delaunay 图不连通
    """
    graph = delaunay_graph(sb)
    g = graph.to_networkx()
    if not nx.is_connected(g):
        raise DisconnectedInput("Delaunay graph is disconnected")
    n = sb.n
    lattice = superbasis_lattice(sb)
    vertices = set(range(n + 1))
    pairs = []
    # 0 ∉ I 的子集各代表一对 ±v_I
    for mask in range(1, 2 ** n):
        subset = {i + 1 for i in range(n) if mask >> i & 1}
        if _connected(g, subset) and _connected(g, vertices - subset):
            v = cut_vector(subset, n)
            q = lattice.norm2([Fraction(x) for x in v])
            pairs.append((v, q))
            pairs.append((tuple(-x for x in v), q))
    return RelevantVectorSet.from_pairs(pairs)


def cycle_clique_lower_bound(
    sb: Superbasis, budget: Optional[int] = None, relevant: Optional[RelevantVectorSet] = None
) -> Tuple[List[int], List[Tuple[int, ...]]]:
    """
    由 Delaunay 图的最长圈 c₀…c_{σ−1} 构造 Cayley 图中的 σ-团

    连接点 conn(k)：k 在圈上时为 {k}，否则为 G − C 中 k 所在分支相邻的圈顶点。
    I_ℓ = {k : conn(k) ⊂ {c₀..c_ℓ}}，团为 u_ℓ = v_{I_ℓ}
    两两之差逐一对照 relevant_from_cuts(sb)（或传入的 relevant）校验

    Returns:
        (圈, 团的格坐标列表)

    Raises:
        NoCycle: Delaunay 图无圈
        CertificateRejected: 某两个团顶点之差不是相关向量
    """
    graph = delaunay_graph(sb)
    cycle = find_longest_cycle(graph, budget).cycle
    if not cycle:
        raise NoCycle("Delaunay graph is a forest; the cycle bound is degenerate")
    n = sb.n
    g = graph.to_networkx()
    on_cycle = set(cycle)
    position = {c: i for i, c in enumerate(cycle)}

    # 每个顶点的连接点中位置最大者决定它何时进入 I_ℓ
    entry: Dict[int, int] = {c: position[c] for c in cycle}
    rest = g.subgraph(set(g.nodes) - on_cycle)
    for component in nx.connected_components(rest):
        connectors = {u for k in component for u in g.neighbors(k) if u in on_cycle}
        last = max(position[u] for u in connectors)
        for k in component:
            entry[k] = last

    # ℓ = σ − 1 时 I 为全集，v_I = 0
    clique = [cut_vector({k for k, e in entry.items() if e <= ell}, n) for ell in range(len(cycle))]
    vor = (relevant if relevant is not None else relevant_from_cuts(sb)).as_set()
    for a, b in combinations(range(len(clique)), 2):
        diff = tuple(x - y for x, y in zip(clique[a], clique[b]))
        if diff not in vor:
            raise CertificateRejected(
                f"Clique points {list(clique[a])} and {list(clique[b])} differ by {list(diff)}, not a relevant vector",
                code="CliqueRejected",
            )
    logger.debug(f"Cycle {cycle} gives clique {clique}")
    return list(cycle), clique


def mod_coloring(sb: Superbasis) -> QuotientColoring:
    """
    x ↦ Σxᵢ mod (n+1)，子格为该线性型的核（指数 n+1）
    """
    n = sb.n
    sub = [[n + 1] + [0] * (n - 1)]
    sub += [[-1] + [int(j == i) for j in range(1, n)] for i in range(1, n)]
    lattice = superbasis_lattice(sb)
    note = f"sum of coordinates mod {n + 1}"
    return certificate_from_function(lattice, sub, lambda rep: sum(rep) % (n + 1), note=note)


def _branches(g: nx.Graph, block: set) -> Dict[int, set]:
    """块中每个顶点 i 及其在块外悬挂的顶点集合 Sᵢ"""
    outside = g.subgraph(set(g.nodes) - block)
    branches = {i: {i} for i in block}
    for component in nx.connected_components(outside):
        anchors = {u for k in component for u in g.neighbors(k) if u in block}
        # 块外分支只经过一个割点接入本块
        branches[min(anchors)] |= component
    return branches


def biconnected_split(sb: Superbasis) -> List[Tuple[Tuple[int, ...], Superbasis]]:
    """
    按 Delaunay 图的双连通分支分解：块 B 的超基为 wᵢ = Σ_{j∈Sᵢ} vⱼ（i ∈ B）

    Returns:
        [(块的顶点, 块的超基)]，按顶点排序
    """
    g = delaunay_graph(sb).to_networkx()
    blocks = sorted(tuple(sorted(b)) for b in nx.biconnected_components(g))
    result = []
    for block in blocks:
        branches = _branches(g, set(block))
        vectors = []
        for i in block:
            w = [Fraction(0)] * len(sb.vectors[0])
            for j in branches[i]:
                w = [a + b for a, b in zip(w, sb.vectors[j])]
            vectors.append(w)
        result.append((block, check_obtuse_superbasis(vectors)))
    return result


def block_bound(sb: Superbasis) -> int:
    """max |V(Gᵢ)|（双连通分支的最大顶点数）"""
    blocks = biconnected_split(sb)
    return max(len(block) for block, _ in blocks) if blocks else 1


def block_mod_coloring(sb: Superbasis) -> QuotientColoring:
    """
    正交和上的组合着色：每个块用坐标和 mod |B|，再求和 mod max |B|

    块超基 w₁..w_{|B|−1} 拼起来是 Λ 的一组基；子格为各块 mod |B| 核的直和
    """
    n = sb.n
    lattice = superbasis_lattice(sb)
    blocks = biconnected_split(sb)
    k = max(len(block) for block, _ in blocks)
    rows: List[List[Fraction]] = []
    spans: List[Tuple[int, int, int]] = []
    for block, block_sb in blocks:
        start = len(rows)
        rows.extend(list(w) for w in block_sb.vectors[1:])
        spans.append((start, len(rows), len(block)))

    # v 坐标 → 块基坐标
    change = coordinates_in_basis([list(v) for v in sb.vectors[1:]], rows)
    if change is None:
        raise NotABasis("Block superbases do not span the lattice")

    sub_block = [[0] * n for _ in range(n)]
    for start, end, size in spans:
        sub_block[start][start] = size
        for r in range(start + 1, end):
            sub_block[r][start] = -1
            sub_block[r][r] = 1
    back = inverse(change)
    sub = [[int(x) for x in row] for row in mat_mul(sub_block, back)]

    def color_of(rep):
        y = [sum(rep[i] * change[i][j] for i in range(n)) for j in range(n)]
        total = 0
        for start, end, size in spans:
            total += int(sum(y[start:end])) % size
        return total % k

    return certificate_from_function(lattice, sub, color_of, note=f"block sums mod block size, combined mod {k}")


def superbasis_from_graph(n_vertices: int, edges: Sequence[Tuple[int, int]]) -> Superbasis:
    """
    把连通图实现为 Delaunay 图：vᵢ 为有向关联矩阵的第 i 行（边 (i, j) 上 i < j 取 +1，否则 −1）

    Raises:
        DisconnectedInput: 图不连通
    """
    g = nx.Graph()
    g.add_nodes_from(range(n_vertices))
    g.add_edges_from(edges)
    if not nx.is_connected(g):
        raise DisconnectedInput("Graph must be connected to be a Delaunay graph")
    ordered = sorted({(min(a, b), max(a, b)) for a, b in edges})
    vectors = [[0] * len(ordered) for _ in range(n_vertices)]
    for e, (a, b) in enumerate(ordered):
        vectors[a][e] = 1
        vectors[b][e] = -1
    return check_obtuse_superbasis(vectors)


def first_kind_report(sb: Superbasis, budget: Optional[int] = None) -> FirstKindReport:
    """
    完整流程：Delaunay 图、块分解、相关向量、最长圈与团、上下界与证书
    """
    graph = delaunay_graph(sb)
    lattice = superbasis_lattice(sb)
    relevant = relevant_from_cuts(sb)
    blocks = [block for block, _ in biconnected_split(sb)]
    try:
        cycle, clique = cycle_clique_lower_bound(sb, budget, relevant=relevant)
    except NoCycle:
        cycle = []
        clique = [tuple([0] * sb.n), relevant.vectors[0]]
    lower = max(2, len(cycle))
    certificate = block_mod_coloring(sb)
    verdict = verify_coloring(lattice, relevant, certificate)
    # 上界只由通过校验的证书给出
    upper = certificate.k if verdict.accepted else None
    if not verdict.accepted:
        logger.warning(f"First-kind certificate rejected: {verdict.reason} {verdict.witness}")
    logger.info(f"First-kind lattice of rank {sb.n}: chromatic number in [{lower}, {upper if upper else '?'}]")
    return FirstKindReport(
        superbasis=sb,
        delaunay=graph,
        blocks=blocks,
        relevant=relevant,
        cycle=cycle,
        clique=clique,
        lower=lower,
        upper=upper,
        certificate=certificate,
        certificate_accepted=verdict.accepted,
    )


# 三维第一类格的五种类型：(名称, Voronoi 胞腔, Delaunay 图, 超基)
DIM3_ROWS: List[Tuple[str, str, str, List[List[int]]]] = [
    ("Z3", "cube", "star K1,3", [[-1, -1, -1], [1, 0, 0], [0, 1, 0], [0, 0, 1]]),
    (
        "A2 ⊥ Z",
        "hexagonal prism",
        "triangle + edge",
        [[-1, 0, 1, -1], [1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 0, 1]],
    ),
    ("A3", "rhombic dodecahedron", "C4", [[-1, 0, 0, 1], [1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1]]),
    ("K4 - e", "elongated dodecahedron", "K4 - e", [[-1, -1, -2], [2, 0, 0], [0, 2, 0], [-1, -1, 2]]),
    ("A3*", "truncated octahedron", "K4", [[1, 1, 1, -3], [-3, 1, 1, 1], [1, -3, 1, 1], [1, 1, -3, 1]]),
]


def graph_shape(graph: FiniteGraph) -> str:
    """识别四顶点 Delaunay 图的形状"""
    g = graph.to_networkx()
    named = {
        "star K1,3": nx.star_graph(3),
        "triangle + edge": nx.Graph([(0, 1), (1, 2), (0, 2), (0, 3)]),
        "C4": nx.cycle_graph(4),
        "K4 - e": nx.Graph([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]),
        "K4": nx.complete_graph(4),
    }
    for name, model in named.items():
        if nx.is_isomorphic(g, model):
            return name
    return f"{graph.n_vertices} vertices, {graph.n_edges} edges"


def table_dim3(budget: Optional[int] = None) -> List[Dict[str, Any]]:
    """三维第一类格分类表的五行"""
    rows = []
    for name, cell, _, vectors in DIM3_ROWS:
        sb = check_obtuse_superbasis(vectors)
        report = first_kind_report(sb, budget)
        rows.append(
            {
                "lattice": name,
                "voronoi_cell": cell,
                "delaunay_graph": graph_shape(report.delaunay),
                "lower": report.lower,
                "upper": report.upper,
                "chromatic": report.chromatic,
                "certificate_accepted": report.certificate_accepted,
            }
        )
    return rows
