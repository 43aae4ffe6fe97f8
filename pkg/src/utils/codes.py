"""
二元线性码工具模块

扩展 Hamming 码 H8、缩短码、扩展 Golay 码，以及码字枚举与重量分布
"""
from itertools import product
from typing import Dict, List, Sequence, Tuple

Word = Tuple[int, ...]

# 扩展 Hamming 码 H8 的生成矩阵 [I | J - I]
H8_GENERATOR: Tuple[Word, ...] = (
    (1, 0, 0, 0, 0, 1, 1, 1),
    (0, 1, 0, 0, 1, 0, 1, 1),
    (0, 0, 1, 0, 1, 1, 0, 1),
    (0, 0, 0, 1, 1, 1, 1, 0),
)


def span_code(generator: Sequence[Sequence[int]]) -> List[Word]:
    """
    生成矩阵张成的全部码字（字典序）

    Args:
        generator: k×n 的 0/1 矩阵

    Returns:
        2ᵏ 个码字（生成矩阵行相关时去重）
    """
    n = len(generator[0])
    words = set()
    for coeffs in product((0, 1), repeat=len(generator)):
        word = [0] * n
        for c, row in zip(coeffs, generator):
            if c:
                word = [(a + b) % 2 for a, b in zip(word, row)]
        words.add(tuple(word))
    return sorted(words)


def hamming_h8() -> List[Word]:
    """扩展 Hamming 码 H8 的 16 个码字"""
    return span_code(H8_GENERATOR)


def weight(word: Sequence[int]) -> int:
    return sum(1 for x in word if x)


def weight_distribution(code: Sequence[Sequence[int]]) -> Dict[int, int]:
    dist: Dict[int, int] = {}
    for word in code:
        w = weight(word)
        dist[w] = dist.get(w, 0) + 1
    return dict(sorted(dist.items()))


def minimum_distance(code: Sequence[Sequence[int]]) -> int:
    """线性码的最小距离 = 最小非零重量"""
    return min(weight(w) for w in code if weight(w) > 0)


def shorten(code: Sequence[Sequence[int]], position: int = 0) -> List[Word]:
    """缩短码：保留该位置为 0 的码字并删除该位置"""
    return sorted(tuple(w[:position]) + tuple(w[position + 1:]) for w in code if w[position] == 0)


def even_weight_words(n: int) -> List[Word]:
    """长度 n 的全部偶重量 0/1 串（字典序）"""
    return [w for w in product((0, 1), repeat=n) if sum(w) % 2 == 0]


def cyclic_generator_rows(exponents: Sequence[int], length: int) -> List[Word]:
    """
    循环码的生成矩阵：g(x), x·g(x), …

    Args:
        exponents: 生成多项式 g(x) 中系数为 1 的幂次
        length: 码长
    """
    degree = max(exponents)
    rows = []
    for shift in range(length - degree):
        row = [0] * length
        for e in exponents:
            row[e + shift] = 1
        rows.append(tuple(row))
    return rows


def extend_by_parity(words: Sequence[Sequence[int]]) -> List[Word]:
    """在末尾添加奇偶校验位"""
    return [tuple(w) + (sum(w) % 2,) for w in words]


def golay_generator(exponents: Sequence[int]) -> List[Word]:
    """扩展 Golay 码 [24, 12, 8] 的生成矩阵（由长度 23 的循环 Golay 码扩展）"""
    return extend_by_parity(cyclic_generator_rows(exponents, 23))


def coset_index_map(ambient: Sequence[Word], code: Sequence[Word]) -> Dict[Word, int]:
    """
    把 ambient 中每个字映射到它所在 code 陪集的编号

    陪集按其在 ambient 中首次出现的顺序编号
    """
    code_set = [tuple(c) for c in code]
    index: Dict[Word, int] = {}
    next_index = 0
    for word in ambient:
        if word in index:
            continue
        for c in code_set:
            index[tuple((a + b) % 2 for a, b in zip(word, c))] = next_index
        next_index += 1
    return index
