"""
相关向量服务

Vor(Λ) 的陪集刻画：u 是相关向量当且仅当 ±u 是 u + 2Λ 中仅有的最短向量。
对 Λ/2Λ 的每个非零类 c 求 c/2 + Λ 的最短向量，恰为一对 ±w 时输出 ±2w
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence, Tuple

from src.config import settings
from src.errors import DimensionCapExceeded
from src.models import Lattice, RelevantVectorSet
from src.services.enumeration import CosetEnumerator

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)

ClassResult = List[Tuple[Tuple[int, ...], Fraction]]


def nonzero_classes(n: int) -> List[Tuple[int, ...]]:
    """Λ/2Λ 的 2ⁿ − 1 个非零类（0/1 坐标，字典序）"""
    return [c for c in product((0, 1), repeat=n) if any(c)]


def _relevant_in_classes(lattice: Lattice, classes: Sequence[Tuple[int, ...]]) -> List[ClassResult]:
    enumerator = CosetEnumerator(lattice)
    results = []
    for c in classes:
        norm2, vectors = enumerator.closest([HALF * x for x in c])
        if len(vectors) == 2:
            results.append([(tuple(int(2 * x) for x in v), 4 * norm2) for v in vectors])
        else:
            logger.debug(f"Class {c}: {len(vectors)} minimal vectors of norm² {4 * norm2}, not relevant")
            results.append([])
    return results


def _split(items: Sequence, parts: int) -> List[Sequence]:
    size = -(-len(items) // parts)
    return [items[i:i + size] for i in range(0, len(items), size)]


def relevant_vectors(
    lattice: Lattice,
    cap_dim: Optional[int] = None,
    workers: Optional[int] = None,
) -> RelevantVectorSet:
    """
    计算相关向量集合 Vor(Λ)

    Args:
        lattice: 格
        cap_dim: 维数上限（默认 settings.cap_dim）
        workers: 进程数（默认 settings.workers；1 = 串行）

    Returns:
        RelevantVectorSet: 按类顺序合并后再按字典序排列，与调度无关

    Raises:
        DimensionCapExceeded: 维数超过上限（Leech 等请使用目录元数据）
    """
    cap = settings.cap_dim if cap_dim is None else cap_dim
    n = lattice.dim
    if n > cap:
        raise DimensionCapExceeded(
            f"{lattice.label} has rank {n} > cap {cap}; the coset loop would need {2 ** n - 1} subproblems "
            f"(use lattice metadata for large lattices or raise --cap-dim)"
        )

    classes = nonzero_classes(n)
    pool_size = settings.workers if workers is None else workers
    logger.info(f"Computing relevant vectors of {lattice.label}: {len(classes)} cosets, {pool_size} worker(s)")

    if pool_size <= 1 or len(classes) < 2 * pool_size:
        per_class = _relevant_in_classes(lattice, classes)
    else:
        chunks = _split(classes, pool_size)
        with ProcessPoolExecutor(max_workers=pool_size) as executor:
            # map 按提交顺序返回，合并结果与调度无关
            parts = executor.map(_relevant_in_classes, [lattice] * len(chunks), chunks)
            per_class = [r for part in parts for r in part]

    pairs = [item for result in per_class for item in result]
    vor = RelevantVectorSet.from_pairs(pairs)
    logger.info(f"{lattice.label}: {vor.count} relevant vectors")
    return vor


def relevant_vectors_of_sum(parts: Sequence[RelevantVectorSet]) -> RelevantVectorSet:
    """
    正交和的相关向量：各加项的相关向量按块嵌入后取并

    Args:
        parts: 各加项的 RelevantVectorSet（顺序与 orthogonal_sum 的加项一致）
    """
    dims = [len(p.vectors[0]) if p.vectors else 0 for p in parts]
    total = sum(dims)
    pairs = []
    offset = 0
    for part, d in zip(parts, dims):
        for v, q in zip(part.vectors, part.norm2):
            pairs.append(((0,) * offset + tuple(v) + (0,) * (total - offset - d), q))
        offset += d
    return RelevantVectorSet.from_pairs(pairs)
