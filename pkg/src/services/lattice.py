"""
格核心服务

精确有理数格的构造、对偶、LLL 约化、Hermite/Smith 标准形、商群结构与正交和
"""
import logging
from fractions import Fraction
from math import prod
from typing import Any, Optional, Sequence, Tuple

from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from src.errors import DimensionMismatch, InputError, NotRational, RankDeficient, SingularSublattice
from src.models import Lattice, LatticeMeta, NormalForms, QuotientGroup
from src.utils.linalg import (
    coordinates_in_basis,
    determinant,
    inverse,
    mat_mul,
    rank,
    scale_matrix,
    transpose,
)
from src.utils.normal_forms import elementary_divisors, hermite_form, row_lattice_basis, smith_form
from src.utils.rationals import RationalMatrix, matrix_denominator, parse_matrix, parse_rational

logger = logging.getLogger(__name__)

LLL_DELTA = QQ(3, 4)


def make_lattice(
    basis: Sequence[Sequence[Any]],
    metric: Any = 1,
    name: Optional[str] = None,
    meta: Optional[LatticeMeta] = None,
) -> Lattice:
    """
    由基矩阵构造格

    Args:
        basis: 行向量为基（接受 int / Fraction / "p/q" 字符串）
        metric: 内积缩放因子，gram = metric·basis·basisᵀ
        name: 目录名称
        meta: 元数据

    Returns:
        Lattice: scale 为 gram 各元素分母的最小公倍数

    Raises:
        NotRational: 元素无法解析为有理数
        DimensionMismatch: 各行长度不一致
        RankDeficient: 行向量线性相关
    """
    try:
        rows = parse_matrix(basis)
        metric_value = parse_rational(metric)
    except ValueError as e:
        raise NotRational(str(e)) from e

    if not rows or not rows[0]:
        raise RankDeficient("Basis must contain at least one nonzero row")
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise DimensionMismatch("Basis rows have different lengths")
    if metric_value <= 0:
        raise NotRational(f"Metric must be a positive rational, got {metric_value}")
    row_rank = rank(rows)
    if row_rank < len(rows):
        raise RankDeficient(f"Basis rows are linearly dependent (rank {row_rank} < {len(rows)})")

    gram = scale_matrix(mat_mul(rows, transpose(rows)), metric_value)
    scale = matrix_denominator(gram)
    return Lattice(
        name=name,
        basis=rows,
        metric=metric_value,
        gram=gram,
        scale=Fraction(scale),
        meta=meta or LatticeMeta(),
    )


def lattice_determinant(lattice: Lattice) -> Fraction:
    """det(gram) = vol(ℝⁿ/Λ)²"""
    return determinant(lattice.gram)


def dual(lattice: Lattice) -> Lattice:
    """
    对偶格

    基为 gram⁻¹·basis，其 Gram 矩阵为 gram⁻¹
    """
    gram_inv = inverse(lattice.gram)
    basis = mat_mul(gram_inv, lattice.basis)
    name = None
    if lattice.name:
        name = lattice.name[:-1] if lattice.name.endswith("*") else lattice.name + "*"
    return make_lattice(basis, metric=lattice.metric, name=name)


def lll_reduce(lattice: Lattice) -> Tuple[Lattice, Tuple[Tuple[int, ...], ...]]:
    """
    精确 LLL 约化（δ = 3/4）

    Returns:
        (约化后的格, 幺模变换 T)，新基 = T·旧基
    """
    denom = matrix_denominator(lattice.basis)
    int_rows = [[int(x * denom) for x in row] for row in lattice.basis]
    dm = DomainMatrix([[ZZ(x) for x in row] for row in int_rows], (lattice.dim, lattice.ambient_dim), ZZ)
    _, transform = dm.lll_transform(delta=LLL_DELTA)
    t = tuple(tuple(int(x) for x in row) for row in transform.to_list())
    basis = mat_mul([[Fraction(x) for x in row] for row in t], lattice.basis)
    reduced = make_lattice(basis, metric=lattice.metric, name=lattice.name, meta=lattice.meta)
    return reduced, t


def hnf_snf(matrix: Sequence[Sequence[int]]) -> NormalForms:
    """
    整数矩阵的 Hermite 与 Smith 标准形

    Raises:
        NotRational: 矩阵含非整数元素
    """
    try:
        parsed = parse_matrix(matrix)
    except ValueError as e:
        raise NotRational(str(e)) from e
    if any(x.denominator != 1 for row in parsed for x in row):
        raise NotRational("Normal forms need an integer matrix")
    rows = [[int(x) for x in row] for row in parsed]
    h, u = hermite_form(rows)
    d, s, t, divisors = smith_form(rows)
    return NormalForms(hermite=h, hermite_transform=u, smith=d, left=s, right=t, divisors=divisors)


def quotient_structure(lattice: Lattice, sub: Sequence[Sequence[int]]) -> QuotientGroup:
    """
    商群 Λ/Λ′ 的结构

    Args:
        lattice: 格 Λ
        sub: 子格 Λ′ 的基（Λ 的坐标，整数方阵）

    Raises:
        DimensionMismatch: 形状错误
        NotRational: 非整数
        SingularSublattice: 子格不满秩
    """
    rows = [list(r) for r in sub]
    n = lattice.dim
    if len(rows) != n or any(len(r) != n for r in rows):
        raise DimensionMismatch(f"Sublattice matrix must be {n}x{n}")
    if any(Fraction(x).denominator != 1 for r in rows for x in r):
        raise NotRational("Sublattice coordinates must be integers")
    rows = [[int(x) for x in r] for r in rows]
    if determinant([[Fraction(x) for x in r] for r in rows]) == 0:
        raise SingularSublattice("Sublattice is not full rank")

    _, _, t, divisors = smith_form(rows)
    t_inv = inverse([[Fraction(x) for x in r] for r in t])
    index = prod(divisors)
    logger.debug(f"Quotient of {lattice.label}: divisors {divisors}, index {index}")
    return QuotientGroup(
        sublattice=rows,
        index=index,
        elementary_divisors=divisors,
        transform=t,
        transform_inv=[[int(x) for x in r] for r in t_inv],
    )


def orthogonal_sum(*lattices: Lattice, name: Optional[str] = None) -> Lattice:
    """
    正交和 Λ₁ ⊥ Λ₂ ⊥ …

    Raises:
        InputError: 各加项的 metric 不一致
    """
    if not lattices:
        raise DimensionMismatch("Orthogonal sum needs at least one summand")
    metric = lattices[0].metric
    if any(lat.metric != metric for lat in lattices):
        raise InputError("Summands of an orthogonal sum must share the same metric", code="MetricMismatch")
    ambient = sum(lat.ambient_dim for lat in lattices)
    basis = []
    offset = 0
    for lat in lattices:
        for row in lat.basis:
            basis.append([Fraction(0)] * offset + list(row) + [Fraction(0)] * (ambient - offset - lat.ambient_dim))
        offset += lat.ambient_dim
    mins = [lat.meta.min_norm2 for lat in lattices]
    meta = LatticeMeta(min_norm2=min(mins)) if all(m is not None for m in mins) else LatticeMeta()
    label = name or " ⊥ ".join(lat.label for lat in lattices)
    return make_lattice(basis, metric=metric, name=label, meta=meta)


def scale_lattice(lattice: Lattice, factor: Any) -> Lattice:
    """把内积乘以正有理数 factor（长度乘以 √factor）"""
    c = parse_rational(factor)
    if c <= 0:
        raise NotRational(f"Scale factor must be positive, got {c}")
    return make_lattice(lattice.basis, metric=lattice.metric * c, name=lattice.name)


def sublattice(lattice: Lattice, coords: Sequence[Sequence[int]], name: Optional[str] = None) -> Lattice:
    """由格坐标给出的子格（基 = coords·basis）"""
    rows = [[Fraction(x) for x in r] for r in coords]
    return make_lattice(mat_mul(rows, lattice.basis), metric=lattice.metric, name=name)


def sublattice_coordinates(sup: Lattice, sub: Lattice) -> RationalMatrix:
    """
    子格基在母格基下的整数坐标

    Raises:
        DimensionMismatch: 环境维数或 metric 不一致，或不在同一子空间
        InputError: 坐标不是整数（sub 不是 sup 的子格）
    """
    if sup.ambient_dim != sub.ambient_dim or sup.metric != sub.metric:
        raise DimensionMismatch("Lattices live in different ambient spaces")
    coeffs = coordinates_in_basis(sub.basis, sup.basis)
    if coeffs is None:
        raise DimensionMismatch("Sublattice does not lie in the span of the lattice")
    if any(x.denominator != 1 for row in coeffs for x in row):
        raise InputError("Given lattice is not a sublattice", code="NotASublattice")
    return coeffs


def lattice_from_generators(
    generators: Sequence[Sequence[Any]],
    metric: Any = 1,
    name: Optional[str] = None,
    meta: Optional[LatticeMeta] = None,
    reduce: bool = True,
) -> Lattice:
    """
    由（可能冗余的）生成元构造格：HNF 取基，再做 LLL 约化

    Raises:
        NotRational: 元素无法解析
    """
    try:
        rows = parse_matrix(generators)
    except ValueError as e:
        raise NotRational(str(e)) from e
    denom = matrix_denominator(rows)
    basis_int = row_lattice_basis([[int(x * denom) for x in row] for row in rows])
    basis = [[Fraction(x, denom) for x in row] for row in basis_int]
    lattice = make_lattice(basis, metric=metric, name=name, meta=meta)
    if reduce:
        lattice, _ = lll_reduce(lattice)
    return lattice


def gram_invariants(lattice: Lattice) -> Tuple[Fraction, Tuple[int, ...]]:
    """
    (scale, scale·gram 的初等因子)

    两个格的 Gram 相差幺模变换时该不变量相同
    """
    return lattice.scale, tuple(elementary_divisors(lattice.integral_gram()))


def construction_a(code: Sequence[Sequence[int]], name: Optional[str] = None) -> Lattice:
    """
    Construction A：{x/√2 : x ∈ ℤⁿ, x mod 2 ∈ C}

    以整数基 + metric 1/2 表示
    """
    n = len(code[0])
    generators = [list(w) for w in code if any(w)]
    generators += [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    return lattice_from_generators(generators, metric=Fraction(1, 2), name=name)
