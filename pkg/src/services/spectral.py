"""
谱下界服务

Vor(Λ) 的 Fourier 变换 𝓕(x) = Σ_u w_u·cos(2π u·x) 的多起点全局极小化，Hoffman 型下界 1 − M/min，
以及 Aₙ / Dₙ 的闭式临界值、E6/E7/E8 的参考临界值和 H8 相关的恒等式检验
"""
import logging
import math
from fractions import Fraction
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

import numpy as np
from scipy.optimize import minimize

from src.config import settings
from src.errors import BadDimension, InputError, UnknownName
from src.models import Lattice, RelevantVectorSet, SpectralResult
from src.services.catalog import catalog, parse_name
from src.services.enumeration import min_vectors
from src.services.lattice import construction_a, gram_invariants
from src.services.voronoi import relevant_vectors
from src.utils.codes import hamming_h8, weight

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

# 各 E 型格的 𝓕 临界值（伴随特征标的取值减去秩）
E_REFERENCE_VALUES: Dict[str, Tuple[Fraction, ...]] = {
    "E6": tuple(Fraction(v) for v in (-9, -8, 0, 8, 72)),
    "E7": tuple(Fraction(v) for v in (-14, -10, -9, -6, Fraction(-18, 5), -2, 18, 126)),
    "E8": tuple(
        Fraction(v) for v in (-16, -12, Fraction(-320, 27), Fraction(-185, 16), -11, -10, -8, -3, 16, 240)
    ),
}


def fourier_value(vectors: np.ndarray, x: Sequence[float], weights: Optional[np.ndarray] = None):
    """
    𝓕(x) = Σ_u w_u·cos(2π u·x) 及其梯度 −2π Σ_u w_u·sin(2π u·x)·u

    Args:
        vectors: m×d 矩阵，每行一个向量 u（与 x 同一坐标系）
        x: d 维点
        weights: 每个向量的权重（默认全为 1）

    Returns:
        (value, gradient)
    """
    values, grads = fourier_value_batch(vectors, np.asarray(x, dtype=float)[None, :], weights)
    return float(values[0]), grads[0]


def fourier_value_batch(vectors: np.ndarray, points: np.ndarray, weights: Optional[np.ndarray] = None):
    """对 k 个点同时求值：返回 (k,) 的值与 (k, d) 的梯度"""
    vectors = np.asarray(vectors, dtype=float)
    w = np.ones(len(vectors)) if weights is None else np.asarray(weights, dtype=float)
    phase = TWO_PI * points @ vectors.T
    values = np.cos(phase) @ w
    grads = -TWO_PI * (np.sin(phase) * w) @ vectors
    return values, grads


def class_weights(vor: RelevantVectorSet, weights: Optional[Mapping[int, float]]) -> np.ndarray:
    """
    把按 ± 类给出的权重展开到每个向量（类编号为 pair_representatives 的顺序）
    """
    if weights is None:
        return np.ones(vor.count)
    index = {v: i for i, v in enumerate(vor.pair_representatives())}
    out = []
    for v in vor.vectors:
        key = v if v in index else tuple(-x for x in v)
        out.append(float(weights.get(index[key], 1.0)))
    return np.array(out)


def _descend(
    vectors: np.ndarray,
    starts: np.ndarray,
    weights: np.ndarray,
    max_iter: int,
    grad_tol: float,
    armijo_c: float,
    shrink: float,
):
    """
    向量化的梯度下降 + 回溯线搜索（Armijo 条件）

    步长初值取 1/L（L = 4π² Σ w|u|² 为梯度的 Lipschitz 常数），每步成功后尝试放大一倍；
    梯度范数低于 grad_tol 的起点不再参与计算
    """
    lipschitz = TWO_PI ** 2 * float(weights @ np.sum(vectors ** 2, axis=1))
    y = starts.copy()
    step = np.full(len(y), 1.0 / max(lipschitz, 1e-300))
    values, grads = fourier_value_batch(vectors, y, weights)
    stalled = np.zeros(len(y), dtype=bool)
    for _ in range(max_iter):
        active = np.flatnonzero((np.linalg.norm(grads, axis=1) >= grad_tol) & ~stalled)
        if active.size == 0:
            break
        ya, va, ga = y[active], values[active], grads[active]
        sq = np.sum(ga ** 2, axis=1)
        trial_step = step[active] * 2.0
        pending = np.ones(active.size, dtype=bool)
        new_y, new_v, new_g = ya.copy(), va.copy(), ga.copy()
        for _ in range(60):
            idx = np.flatnonzero(pending)
            trial = ya[idx] - trial_step[idx, None] * ga[idx]
            tv, tg = fourier_value_batch(vectors, trial, weights)
            # 允许舍入误差量级的增长
            slack = 1e-15 * np.maximum(1.0, np.abs(va[idx]))
            ok = tv <= va[idx] - armijo_c * trial_step[idx] * sq[idx] + slack
            accepted = idx[ok]
            new_y[accepted], new_v[accepted], new_g[accepted] = trial[ok], tv[ok], tg[ok]
            pending[accepted] = False
            trial_step[idx[~ok]] *= shrink
            if not pending.any():
                break
        # 回溯失败的起点保持原位，不再迭代
        stalled[active[pending]] = True
        step[active] = np.where(pending, step[active], trial_step)
        y[active], values[active], grads[active] = new_y, new_v, new_g
    return y, values, grads


def _polish(vectors: np.ndarray, y0: np.ndarray, weights: np.ndarray, grad_tol: float):
    """scipy BFGS 精修单个起点"""

    def fun(y):
        value, grad = fourier_value(vectors, y, weights)
        return value, grad

    result = minimize(fun, y0, jac=True, method="BFGS", options={"gtol": grad_tol, "maxiter": 2000})
    value, grad = fourier_value(vectors, result.x, weights)
    return result.x, value, grad


def oracle_minimum(lattice: Lattice) -> Optional[Fraction]:
    """闭式或参考 oracle 给出的 min 𝓕（仅限目录中的 Zⁿ、Aₙ、Dₙ、E6、E7、E8）"""
    values = critical_values(lattice)
    return min(values) if values else None


def critical_values(lattice: Lattice) -> Optional[Set[Fraction]]:
    """目录格的 𝓕 临界值集合；未知时返回 None"""
    if not lattice.name:
        return None
    try:
        family, n = parse_name(lattice.name)
    except UnknownName:
        return None
    if family == "Z" and n:
        # 𝓕 = 2Σcos(2πyᵢ)
        return {Fraction(2 * (n - 2 * k)) for k in range(n + 1)}
    if family == "A" and n:
        return an_critical_values(n)
    if family == "D" and n and n >= 4:
        return dn_critical_values(n)
    if family == "E" and n in (6, 7, 8):
        return set(en_reference_values(f"E{n}"))
    return None


def minimize_fourier(
    vor: RelevantVectorSet,
    starts: Optional[int] = None,
    seed: Optional[int] = None,
    weights: Optional[Mapping[int, float]] = None,
    lattice: Optional[Lattice] = None,
    polish: Optional[bool] = None,
) -> SpectralResult:
    """
    多起点极小化 𝓕，在对偶基坐标 y ∈ [0,1)ⁿ 上进行（u·x = a·y，a 为 u 的整数坐标）

    Args:
        vor: 相关向量
        starts: 起点数（默认 64·n）
        seed: 随机种子（默认 settings.seed）
        weights: 按 ± 类的权重（默认均匀）
        lattice: 用于查找精确 oracle 的目录格
        polish: 对未收敛的起点做 BFGS 精修（默认 settings.spectral_polish）

    Returns:
        SpectralResult: certified 仅在与精确 oracle 吻合时为 True

    Raises:
        InputError: 起点数小于 1（InvalidStarts）
    """
    n = len(vor.vectors[0])
    count = settings.starts_per_dim * n if starts is None else starts
    if count < 1:
        raise InputError(f"starts must be >= 1, got {count}", code="InvalidStarts")
    seed_value = settings.seed if seed is None else seed
    do_polish = settings.spectral_polish if polish is None else polish

    a = np.array(vor.vectors, dtype=float)
    w = class_weights(vor, weights)
    total = float(w.sum())
    rng = np.random.default_rng(seed_value)
    y0 = rng.random((count, n))

    y, values, grads = _descend(
        a, y0, w, settings.gd_max_iter, settings.gd_grad_tol, settings.armijo_c, settings.armijo_shrink
    )
    norms = np.linalg.norm(grads, axis=1)
    if do_polish:
        for i in np.flatnonzero(norms >= settings.gd_grad_tol):
            y[i], values[i], g = _polish(a, y[i], w, settings.gd_grad_tol)
            norms[i] = np.linalg.norm(g)
    converged = norms < settings.gd_grad_tol
    logger.debug(f"Spectral descent: {int(converged.sum())}/{count} starts converged")

    # (值, 起点编号) 字典序最小者，与并行调度无关
    best = int(np.lexsort((np.arange(count), values))[0])
    min_value = float(values[best])
    minima = sorted({round(float(v), 9) for v in values[converged]})
    hoffman = 1.0 - total / min(min_value, -1e-12)
    hoffman_int = math.ceil(hoffman - settings.oracle_tol)

    oracle = None
    if lattice is not None and weights is None:
        exact = oracle_minimum(lattice)
        oracle = float(exact) if exact is not None else None
    certified = oracle is not None and abs(min_value - oracle) <= settings.oracle_tol
    if not certified:
        logger.warning(
            f"Spectral minimum {min_value:.9f} is not certified by an exact oracle; "
            f"the Hoffman number {hoffman:.6f} is a heuristic estimate"
        )

    return SpectralResult(
        lattice=lattice.label if lattice is not None else None,
        vor_count=vor.count,
        total_weight=total,
        min_value=min_value,
        argmin=tuple(float(v) for v in np.mod(y[best], 1.0)),
        hoffman=hoffman,
        hoffman_int=hoffman_int,
        starts_used=count,
        converged_count=int(converged.sum()),
        local_minima=tuple(minima),
        certified=certified,
        oracle_min=oracle,
        weighted=weights is not None,
        seed=seed_value,
    )


def spectral_bound(
    lattice: Lattice,
    vor: Optional[RelevantVectorSet] = None,
    starts: Optional[int] = None,
    seed: Optional[int] = None,
    weights: Optional[Mapping[int, float]] = None,
) -> SpectralResult:
    """计算（必要时先求 Vor(Λ)）并极小化 𝓕"""
    relevant = vor if vor is not None else relevant_vectors(lattice)
    result = minimize_fourier(relevant, starts=starts, seed=seed, weights=weights, lattice=lattice)
    logger.info(f"Spectral bound for {lattice.label}: min {result.min_value:.9f}, Hoffman {result.hoffman_int}")
    return result


def an_critical_values(n: int) -> Set[Fraction]:
    """Aₙ 的 𝓕 临界值 {n(n+1), −(n+1)}"""
    if n < 1:
        raise BadDimension(f"A_n needs n >= 1, got {n}")
    return {Fraction(n * (n + 1)), Fraction(-(n + 1))}


def dn_critical_values(n: int) -> Set[Fraction]:
    """
    Dₙ 的 𝓕 临界值

    对 n₁ + n₋₁ + n₀ = n（n₀ = 0，或 n₀ ≠ 1 且 |n₁ − n₋₁| < |n₀ − 1|）取
    2(n₁ − n₋₁)²/(1 − n₀) − 2n₁ − 2n₋₁；n 为奇数时另加 −2(n − 1)
    """
    if n < 4:
        raise BadDimension(f"D_n needs n >= 4, got {n}")
    values = set()
    for n_one in range(n + 1):
        for n_minus in range(n + 1 - n_one):
            n_zero = n - n_one - n_minus
            diff = n_one - n_minus
            if n_zero == 0 or (n_zero != 1 and abs(diff) < abs(n_zero - 1)):
                values.add(Fraction(2 * diff * diff, 1 - n_zero) - 2 * n_one - 2 * n_minus)
    if n % 2:
        values.add(Fraction(-2 * (n - 1)))
    return values


def en_reference_values(name: str) -> Tuple[Fraction, ...]:
    """
    E6 / E7 / E8 的 𝓕 临界值（升序）

    Raises:
        UnknownName: 不是 E6、E7、E8
    """
    key = name.strip()
    if key not in E_REFERENCE_VALUES:
        raise UnknownName(f"No reference critical values for {name!r}")
    return E_REFERENCE_VALUES[key]


def _weight_four_supports() -> List[Tuple[int, ...]]:
    return [tuple(i for i, b in enumerate(c) if b) for c in hamming_h8() if weight(c) == 4]


def e8_roots_from_h8() -> np.ndarray:
    """E8 的 240 个根：±√2·eᵢ 以及 (1/√2)·Σ_{j∈c} ±eⱼ（c 为 H8 的重量 4 码字）"""
    roots = []
    root2 = math.sqrt(2.0)
    for i in range(8):
        for s in (1.0, -1.0):
            v = np.zeros(8)
            v[i] = s * root2
            roots.append(v)
    for support in _weight_four_supports():
        for signs in product((1.0, -1.0), repeat=4):
            v = np.zeros(8)
            for j, s in zip(support, signs):
                v[j] = s / root2
            roots.append(v)
    return np.array(roots)


def e8_trig_identity_check(x: Sequence[float]) -> float:
    """
    |S(√2x/(2π)) + 16 − T(x)|，其中 S 为 E8 根的 Fourier 和，
    T(x) = 4Σcos²(xᵢ) + 16 Σ_{c} Π_{j∈c} cos(xⱼ)
    """
    x = np.asarray(x, dtype=float)
    s_value, _ = fourier_value(e8_roots_from_h8(), math.sqrt(2.0) * x / TWO_PI)
    cos_x = np.cos(x)
    t_value = 4.0 * float(np.sum(cos_x ** 2))
    t_value += 16.0 * sum(float(np.prod(cos_x[list(c)])) for c in _weight_four_supports())
    return abs(s_value + 16.0 - t_value)


def p_polynomial(points: np.ndarray) -> np.ndarray:
    """p(t) = Σtᵢ² + 4 Σ_{c} Π_{i∈c} tᵢ（c 为 H8 的重量 4 码字），逐行求值"""
    points = np.atleast_2d(points)
    value = np.sum(points ** 2, axis=1)
    for c in _weight_four_supports():
        value = value + 4.0 * np.prod(points[:, list(c)], axis=1)
    return value


def p_grid_minimum(points_per_axis: int = 5) -> Tuple[float, Tuple[float, ...]]:
    """p 在 [−1, 1]⁸ 的均匀网格上的最小值与最小点"""
    axis = np.linspace(-1.0, 1.0, points_per_axis)
    grid = np.stack(np.meshgrid(*([axis] * 8), indexing="ij"), axis=-1).reshape(-1, 8)
    values = p_polynomial(grid)
    best = int(np.argmin(values))
    return float(values[best]), tuple(float(v) for v in grid[best])


def construction_a_matches_e8() -> bool:
    """Construction A(H8) 与目录 E8 的 Gram 不变量相同且恰有 240 个最短向量"""
    lattice = construction_a(hamming_h8(), name="A(H8)")
    norm2, vectors = min_vectors(lattice)
    same = gram_invariants(lattice) == gram_invariants(catalog("E", 8))
    return same and norm2 == 2 and len(vectors) == 240
