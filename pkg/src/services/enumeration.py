"""
格向量枚举服务

在 LLL 约化后的整数 Gram 矩阵上做 Schnorr–Euchner 式深度优先枚举：
浮点 Cholesky 分解只用于剪枝（带相对余量，只会多访问节点），叶子处的范数用整数精确计算
"""
import logging
from fractions import Fraction
from math import inf
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.config import settings
from src.errors import DimensionMismatch, TooManyVertices
from src.models import Lattice
from src.services.lattice import lll_reduce
from src.utils.linalg import inverse
from src.utils.rationals import common_denominator, parse_rational

logger = logging.getLogger(__name__)

# 剪枝余量：partial > bound·(1 + REL) + ABS 时才剪掉
PRUNE_REL = 1e-9
PRUNE_ABS = 1e-12

Coordinates = Tuple[Fraction, ...]


class CosetEnumerator:
    """
    某个格上的陪集枚举器

    构造时完成一次 LLL 约化与 Cholesky 分解，之后可以对不同的平移 t 反复查询
    """

    def __init__(self, lattice: Lattice):
        self.lattice = lattice
        self.n = lattice.dim
        reduced, transform = lll_reduce(lattice)
        self._transform = [[Fraction(x) for x in row] for row in transform]
        self._transform_inv = inverse(self._transform)
        # 整数 Gram：norm² = yᵀ·A·y / (scale·d²)
        self._gram = reduced.integral_gram()
        self._scale = lattice.scale
        r = np.linalg.cholesky(np.array(self._gram, dtype=float)).T
        self._q = np.diag(r) ** 2
        self._mu = r / np.diag(r)[:, None]

    def _to_reduced(self, t: Sequence[Fraction]) -> List[Fraction]:
        return [sum((t[k] * self._transform_inv[k][j] for k in range(self.n)), Fraction(0)) for j in range(self.n)]

    def _to_original(self, y: Sequence[int], denom: int) -> Coordinates:
        out = []
        for j in range(self.n):
            value = sum((y[k] * self._transform[k][j] for k in range(self.n)), Fraction(0))
            out.append(value / denom)
        return tuple(out)

    def _exact_norm(self, y: Sequence[int]) -> int:
        total = 0
        for i in range(self.n):
            if y[i]:
                row = self._gram[i]
                total += y[i] * sum(row[j] * y[j] for j in range(self.n) if y[j])
        return total

    def _search(self, t: Sequence[Fraction], radius2: Optional[Fraction], skip_zero: bool, max_count: Optional[int]):
        """
        核心枚举

        radius2 为 None 时为最近点模式（保留全部最小值点，初始界为 ∞，首个叶子即 Babai 点）；
        否则为球模式（收集 norm² ≤ radius2 的全部点）

        Returns:
            (最小整数范数或 None, [(整数范数, y)], denom, 范数单位)
        """
        n = self.n
        t_red = self._to_reduced(t)
        denom = common_denominator(t_red)
        offsets = [int(x * denom) for x in t_red]
        # 整数范数单位：norm² = value / (scale·denom²)
        unit = self._scale * denom * denom
        q = self._q
        mu = self._mu

        float_bound = inf if radius2 is None else float(radius2) * float(self._scale)
        found: List[Tuple[int, Tuple[int, ...]]] = []
        y = [0] * n
        x = [0.0] * n
        state = {"best": float_bound, "best_int": None}

        def limit() -> float:
            return state["best"] * (1 + PRUNE_REL) + PRUNE_ABS

        def leaf():
            if skip_zero and not any(y):
                return
            value = self._exact_norm(y)
            if radius2 is not None:
                if Fraction(value, unit) <= radius2:
                    found.append((value, tuple(y)))
                    if max_count is not None and len(found) > max_count:
                        raise TooManyVertices(
                            f"More than {max_count} lattice vectors with norm² <= {radius2} in {self.lattice.label}"
                        )
                return
            best = state["best_int"]
            if best is None or value < best:
                state["best_int"] = value
                state["best"] = value / (denom * denom)
                found.clear()
                found.append((value, tuple(y)))
            elif value == best:
                found.append((value, tuple(y)))

        def descend(level: int, partial: float):
            center = -sum(mu[level][j] * x[j] for j in range(level + 1, n))
            step = denom
            # 候选值 yᵢ ∈ offsetᵢ + denom·ℤ，按与中心的距离由近到远交替取值
            base = offsets[level] + step * int(np.floor((center * denom - offsets[level]) / step))
            lo, hi = base, base + step
            while True:
                d_lo = abs(lo / denom - center)
                d_hi = abs(hi / denom - center)
                if d_lo <= d_hi:
                    candidate, distance = lo, d_lo
                    lo -= step
                else:
                    candidate, distance = hi, d_hi
                    hi += step
                value = partial + q[level] * distance * distance
                if value > limit():
                    return
                y[level] = candidate
                x[level] = candidate / denom
                if level == 0:
                    leaf()
                else:
                    descend(level - 1, value)

        descend(n - 1, 0.0)
        return state["best_int"], found, denom, unit

    def closest(self, t: Optional[Sequence] = None) -> Tuple[Fraction, List[Coordinates]]:
        """
        陪集 t + Λ 中的全部最短向量

        Args:
            t: 格坐标下的有理平移；None 或整数向量（陪集即 Λ 本身）时返回 Λ 的最短非零向量

        Returns:
            (最小范数², 按字典序排列的向量列表)
        """
        t_vec = self._parse_shift(t)
        skip_zero = all(v.denominator == 1 for v in t_vec)
        best, found, denom, unit = self._search(t_vec, None, skip_zero, None)
        vectors = sorted(self._to_original(y, denom) for _, y in found)
        return Fraction(best, unit), vectors

    def ball(self, radius2, max_count: Optional[int] = None) -> List[Tuple[Coordinates, Fraction]]:
        """
        范数² ≤ radius2 的全部格向量（含零向量）

        Raises:
            TooManyVertices: 超过 max_count
        """
        r2 = parse_rational(radius2)
        if r2 < 0:
            return []
        zero = [Fraction(0)] * self.n
        _, found, denom, unit = self._search(zero, r2, False, max_count)
        result = [(self._to_original(y, denom), Fraction(value, unit)) for value, y in found]
        return sorted(result)

    def _parse_shift(self, t: Optional[Sequence]) -> List[Fraction]:
        if t is None:
            return [Fraction(0)] * self.n
        values = [parse_rational(v) for v in t]
        if len(values) != self.n:
            raise DimensionMismatch(f"Shift has {len(values)} coordinates, lattice has rank {self.n}")
        return values


def shortest_vectors_in_coset(lattice: Lattice, t: Optional[Sequence] = None) -> Tuple[Fraction, List[Coordinates]]:
    """
    陪集 t + Λ 的全部最短向量（t = 0 时排除零向量）

    Raises:
        DimensionMismatch: t 的长度与秩不一致
    """
    return CosetEnumerator(lattice).closest(t)


def min_vectors(lattice: Lattice, cap_dim: Optional[int] = None) -> Tuple[Fraction, List[Tuple[int, ...]]]:
    """
    最短非零向量 (λ1², 向量列表)

    超过维数上限（默认 settings.cap_dim）且带元数据的格（Leech 或格文件中的 meta）直接使用元数据中的 λ1²，不做枚举
    """
    cap = settings.cap_dim if cap_dim is None else cap_dim
    if lattice.dim > cap and lattice.meta.min_norm2 is not None:
        logger.info(f"Using metadata for the minimum of {lattice.label}; enumeration skipped")
        return lattice.meta.min_norm2, []
    norm2, vectors = shortest_vectors_in_coset(lattice)
    return norm2, [tuple(int(x) for x in v) for v in vectors]


def min_norm2(lattice: Lattice) -> Fraction:
    """λ1²（有元数据时直接使用）"""
    if lattice.meta.min_norm2 is not None:
        return lattice.meta.min_norm2
    return min_vectors(lattice)[0]


def vectors_in_ball(
    lattice: Lattice, radius2, max_count: Optional[int] = None
) -> List[Tuple[Tuple[int, ...], Fraction]]:
    """
    球内全部格向量（格坐标 + 范数²），按坐标字典序

    Raises:
        TooManyVertices: 向量个数超过 max_count（默认 settings.max_vertices）
    """
    cap = settings.max_vertices if max_count is None else max_count
    found = CosetEnumerator(lattice).ball(radius2, max_count=cap)
    return [(tuple(int(x) for x in v), q) for v, q in found]
