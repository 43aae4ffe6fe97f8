"""
精确线性代数工具模块

小规模有理数矩阵运算：乘法、转置、行列式、逆、秩、坐标求解、正定性判断
（行列式/逆/秩委托给 sympy 的 DomainMatrix(QQ)）
"""
from fractions import Fraction
from typing import List, Optional, Sequence

from sympy import Matrix, Rational
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from src.utils.rationals import RationalMatrix

Vector = Sequence[Fraction]
MatrixLike = Sequence[Sequence[Fraction]]


def to_domain(rows: MatrixLike) -> DomainMatrix:
    """转换为 QQ 上的 DomainMatrix"""
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    data = [[QQ(Fraction(v).numerator, Fraction(v).denominator) for v in row] for row in rows]
    return DomainMatrix(data, (n_rows, n_cols), QQ)


def from_domain(dm: DomainMatrix) -> RationalMatrix:
    """DomainMatrix 转回 Fraction 矩阵"""
    dm = dm.convert_to(QQ)
    return [[Fraction(int(e.numerator), int(e.denominator)) for e in row] for row in dm.to_list()]


def to_sympy(rows: MatrixLike) -> Matrix:
    return Matrix([[Rational(Fraction(v).numerator, Fraction(v).denominator) for v in row] for row in rows])


def identity(n: int) -> RationalMatrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(rows: MatrixLike) -> RationalMatrix:
    if not rows:
        return []
    return [list(col) for col in zip(*rows)]


def mat_mul(a: MatrixLike, b: MatrixLike) -> RationalMatrix:
    """矩阵乘法 a·b"""
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def vec_mat(v: Vector, m: MatrixLike) -> List[Fraction]:
    """行向量乘矩阵 v·m"""
    n_cols = len(m[0]) if m else 0
    out = [Fraction(0)] * n_cols
    for coeff, row in zip(v, m):
        if coeff:
            for j, x in enumerate(row):
                out[j] += coeff * x
    return out


def dot(u: Vector, v: Vector) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def quadratic_form(x: Vector, gram: MatrixLike) -> Fraction:
    """x·G·xᵀ"""
    return dot(vec_mat(x, gram), x)


def scale_matrix(m: MatrixLike, c: Fraction) -> RationalMatrix:
    return [[Fraction(x) * c for x in row] for row in m]


def determinant(m: MatrixLike) -> Fraction:
    if not m:
        return Fraction(1)
    d = to_domain(m).det()
    return Fraction(int(d.numerator), int(d.denominator))


def inverse(m: MatrixLike) -> RationalMatrix:
    """
    精确逆矩阵

    Raises:
        ZeroDivisionError: 矩阵奇异
    """
    dm = to_domain(m)
    if dm.det() == QQ.zero:
        raise ZeroDivisionError("Matrix is singular")
    return from_domain(dm.inv())


def rank(m: MatrixLike) -> int:
    if not m:
        return 0
    return to_domain(m).rank()


def is_positive_definite(m: MatrixLike) -> bool:
    """对称矩阵是否正定（精确）"""
    if not m:
        return False
    return bool(to_sympy(m).is_positive_definite)


def is_symmetric(m: MatrixLike) -> bool:
    n = len(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def coordinates_in_basis(rows: MatrixLike, basis: MatrixLike) -> Optional[RationalMatrix]:
    """
    求解 C·basis = rows

    basis 行满秩；rows 中的向量不在 basis 张成空间内时返回 None

    Args:
        rows: 待表示的向量（行）
        basis: 基（行）

    Returns:
        系数矩阵 C，或 None
    """
    bt = transpose(basis)
    gram_inv = inverse(mat_mul(basis, bt))
    coeffs = mat_mul(mat_mul(rows, bt), gram_inv)
    if mat_mul(coeffs, basis) != [[Fraction(x) for x in row] for row in rows]:
        return None
    return coeffs


def block_diagonal(blocks: Sequence[MatrixLike]) -> RationalMatrix:
    """分块对角矩阵"""
    size = sum(len(b) for b in blocks)
    out = [[Fraction(0)] * size for _ in range(size)]
    offset = 0
    for block in blocks:
        for i, row in enumerate(block):
            for j, x in enumerate(row):
                out[offset + i][offset + j] = Fraction(x)
        offset += len(block)
    return out
