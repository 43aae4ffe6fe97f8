"""
图构造服务

由格构造有限图：Cayley 球图、商图、陪集最短向量图，以及半立方体骨架 ½Hₙ
"""
import logging
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from src.config import settings
from src.errors import BadDimension, InputError, LoopInQuotient, TooManyVertices
from src.models import FiniteGraph, Lattice, QuotientGroup, RelevantVectorSet
from src.services.enumeration import CosetEnumerator, vectors_in_ball
from src.services.lattice import quotient_structure, sublattice
from src.utils.linalg import inverse, vec_mat
from src.utils.rationals import parse_rational

logger = logging.getLogger(__name__)


def cayley_ball(
    lattice: Lattice,
    vor: RelevantVectorSet,
    radius2,
    max_vertices: Optional[int] = None,
) -> FiniteGraph:
    """
    Cayley 图在球 {x : ‖x‖² ≤ R2} 上的诱导子图

    Args:
        lattice: 格
        vor: 相关向量
        radius2: 半径平方 R2 ≥ 0
        max_vertices: 顶点数上限（默认 settings.max_vertices）

    Raises:
        TooManyVertices: 顶点数超过上限
    """
    r2 = parse_rational(radius2)
    if r2 < 0:
        raise InputError(f"Ball radius² must be nonnegative, got {r2}", code="NegativeRadius")
    points = vectors_in_ball(lattice, r2, max_count=max_vertices)
    labels = [p for p, _ in points]
    index = {label: i for i, label in enumerate(labels)}
    edges = set()
    for i, u in enumerate(labels):
        for r in vor.vectors:
            j = index.get(tuple(a + b for a, b in zip(u, r)))
            if j is not None and j > i:
                edges.add((i, j))
    graph = FiniteGraph.build(labels, edges, name=f"ball({lattice.label}, {r2})")
    logger.info(f"Cayley ball of {lattice.label} with R2={r2}: {graph.n_vertices} vertices, {graph.n_edges} edges")
    return graph


def _add_mod(a: Sequence[int], b: Sequence[int], divisors: Sequence[int]) -> Tuple[int, ...]:
    return tuple((x + y) % d for x, y, d in zip(a, b, divisors))


def _radix_index(digits: Sequence[int], divisors: Sequence[int]) -> int:
    index = 0
    for r, d in zip(digits, divisors):
        index = index * d + r
    return index


def quotient_edge_classes(quotient: QuotientGroup, vor: RelevantVectorSet) -> List[Tuple[int, ...]]:
    """
    相关向量在商群中的类（去重）

    Raises:
        LoopInQuotient: 某个相关向量落在子格中
    """
    classes = set()
    for v in vor.vectors:
        cls = quotient.class_vector(v)
        if not any(cls):
            raise LoopInQuotient(f"Relevant vector {list(v)} lies in the sublattice; the quotient graph has a loop")
        classes.add(cls)
    return sorted(classes)


def quotient_graph(
    lattice: Lattice,
    vor: RelevantVectorSet,
    sub: Sequence[Sequence[int]],
    max_index: Optional[int] = None,
) -> FiniteGraph:
    """
    商图 Λ/Λ′：顶点为陪集代表元，a、b 相邻当且仅当 a − b 与某个相关向量同类

    Raises:
        LoopInQuotient: Vor(Λ) ∩ Λ′ 非空
        TooManyVertices: 商群阶超过上限
    """
    quotient = quotient_structure(lattice, sub)
    cap = settings.max_quotient_index if max_index is None else max_index
    if quotient.index > cap:
        raise TooManyVertices(f"Quotient of index {quotient.index} exceeds the cap {cap}")
    steps = quotient_edge_classes(quotient, vor)
    divisors = quotient.elementary_divisors
    edges = set()
    for a in range(quotient.index):
        digits = quotient.digits(a)
        for step in steps:
            b = _radix_index(_add_mod(digits, step, divisors), divisors)
            edges.add((min(a, b), max(a, b)))
    labels = quotient.coset_reps()
    graph = FiniteGraph.build(labels, edges, name=f"quotient({lattice.label})")
    logger.info(f"Quotient graph of {lattice.label}: index {quotient.index}, {graph.n_edges} edges")
    return graph


def nonzero_coset(lattice: Lattice, sub: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """第一个不在子格中的基向量（格坐标），用作默认陪集"""
    quotient = quotient_structure(lattice, sub)
    n = lattice.dim
    for i in range(n):
        e = tuple(int(i == j) for j in range(n))
        if not quotient.contains(e):
            return e
    raise InputError("Sublattice equals the lattice; no nontrivial coset", code="TrivialCoset")


def coset_min_vector_graph(
    sup: Lattice,
    sub: Sequence[Sequence[int]],
    coset: Optional[Sequence[int]] = None,
) -> FiniteGraph:
    """
    陪集最短向量图

    顶点为陪集 coset + Λ′ 中的全部最短向量，两点相邻当且仅当距离平方等于顶点间的最小距离平方

    Args:
        sup: 母格 Λ
        sub: 子格 Λ′ 的基（Λ 的坐标）
        coset: 陪集代表元（Λ 的坐标，默认取第一个不在 Λ′ 中的基向量）

    Raises:
        InputError: 陪集为平凡类
    """
    sub_rows = [[Fraction(x) for x in row] for row in sub]
    coset = tuple(coset) if coset is not None else nonzero_coset(sup, sub)
    sub_lattice = sublattice(sup, sub_rows, name=f"sub({sup.label})")
    shift = vec_mat([Fraction(x) for x in coset], inverse(sub_rows))
    if all(x.denominator == 1 for x in shift):
        raise InputError(f"Coset {list(coset)} is the trivial class of the sublattice", code="TrivialCoset")

    norm2, vectors = CosetEnumerator(sub_lattice).closest(shift)
    labels = [tuple(int(x) for x in vec_mat(v, sub_rows)) for v in vectors]

    distances: Dict[Tuple[int, int], Fraction] = {}
    for i, j in combinations(range(len(vectors)), 2):
        diff = [a - b for a, b in zip(vectors[i], vectors[j])]
        distances[(i, j)] = sub_lattice.norm2(diff)
    edges = []
    if distances:
        shortest = min(distances.values())
        edges = [pair for pair, d in distances.items() if d == shortest]
    graph = FiniteGraph.build(labels, edges, name=f"coset-min({sup.label}, {list(coset)})")
    logger.info(
        f"Coset minimal-vector graph of {sup.label}: {graph.n_vertices} vectors of norm² {norm2}, "
        f"{graph.n_edges} edges"
    )
    return graph


def half_cube_graph(n: int) -> FiniteGraph:
    """
    半立方体 ½Hₙ 的骨架：偶重量 0/1 串，Hamming 距离为 2 时相邻

    Raises:
        BadDimension: n < 2
    """
    if n < 2:
        raise BadDimension(f"Half-cube needs n >= 2, got {n}")
    words = [w for w in product((0, 1), repeat=n) if sum(w) % 2 == 0]
    index = {w: i for i, w in enumerate(words)}
    edges = []
    for i, w in enumerate(words):
        for a, b in combinations(range(n), 2):
            flipped = list(w)
            flipped[a] ^= 1
            flipped[b] ^= 1
            j = index[tuple(flipped)]
            if j > i:
                edges.append((i, j))
    return FiniteGraph.build(words, edges, name=f"half-cube({n})")
