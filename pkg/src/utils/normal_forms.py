"""
整数矩阵标准形工具模块

基于 sympy.matrices.normalforms 计算 Hermite 标准形（列式）与 Smith 标准形及其变换矩阵，
并提供整数核、生成元约化等格运算所需的辅助函数
"""
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_decomp
from sympy.polys.domains import ZZ

from src.utils.linalg import inverse, mat_mul

IntMatrix = List[List[int]]


def _to_int_rows(m: Matrix) -> IntMatrix:
    return [[int(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def hermite_form(rows: Sequence[Sequence[int]]) -> Tuple[IntMatrix, Optional[IntMatrix]]:
    """
    列式 Hermite 标准形 H = M·U

    Args:
        rows: 整数矩阵 M

    Returns:
        (H, U)：M 为非奇异方阵时 U 为幺模变换，否则 U 为 None（sympy 会丢弃零列）
    """
    m = Matrix(rows)
    h = hermite_normal_form(m)
    h_rows = _to_int_rows(h)
    if m.rows != m.cols or m.det() == 0:
        return h_rows, None
    u = inverse([[Fraction(x) for x in row] for row in rows])
    u = mat_mul(u, [[Fraction(x) for x in row] for row in h_rows])
    return h_rows, [[int(x) for x in row] for row in u]


def smith_form(rows: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix, IntMatrix, List[int]]:
    """
    Smith 标准形 D = S·M·T

    对角元取非负（必要时对 S 的行取反），满足 d₁ | d₂ | …

    Returns:
        (D, S, T, divisors)：divisors 为对角线上的初等因子（包含 0）
    """
    m = Matrix(rows)
    d, s, t = smith_normal_decomp(m, domain=ZZ)
    d_rows = _to_int_rows(d)
    s_rows = _to_int_rows(s)
    t_rows = _to_int_rows(t)
    k = min(len(d_rows), len(d_rows[0]) if d_rows else 0)
    for i in range(k):
        if d_rows[i][i] < 0:
            d_rows[i][i] = -d_rows[i][i]
            s_rows[i] = [-x for x in s_rows[i]]
    divisors = [d_rows[i][i] for i in range(k)]
    return d_rows, s_rows, t_rows, divisors


def elementary_divisors(rows: Sequence[Sequence[int]]) -> List[int]:
    """非零初等因子"""
    return [d for d in smith_form(rows)[3] if d != 0]


def integer_kernel(forms: Sequence[Sequence[int]]) -> IntMatrix:
    """
    整数核：所有满足 x·F = 0 的 x ∈ ℤᵐ 组成的格的一组基

    D = S·F·T，x·F = 0 ⇔ (x·S⁻¹)·D = 0，核由 S 中对应零初等因子的行张成

    Args:
        forms: m×k 整数矩阵 F（每列是一个线性型）

    Returns:
        核的基（行）
    """
    _, s_rows, _, divisors = smith_form(forms)
    r = sum(1 for d in divisors if d != 0)
    return [list(row) for row in s_rows[r:]]


def row_lattice_basis(generators: Sequence[Sequence[int]]) -> IntMatrix:
    """
    整数生成元张成的格的一组基（行）

    对生成元矩阵的转置取列式 HNF，非零列即为基向量
    """
    h, _ = hermite_form([list(col) for col in zip(*generators)])
    return [list(col) for col in zip(*h)]
