"""
格目录服务

按名称构造标准格：Zⁿ、Aₙ、Aₙ*、Dₙ、Dₙ*、E6、E6*、E7、E7*、E8 与 Leech 格
"""
import json
import logging
import re
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

from src.config import settings
from src.errors import BadDimension, UnknownName
from src.models import Lattice, LatticeMeta
from src.services.lattice import dual, lattice_from_generators, lll_reduce, make_lattice, sublattice
from src.utils.codes import golay_generator
from src.utils.normal_forms import integer_kernel
from src.utils.rationals import common_denominator, parse_rational

logger = logging.getLogger(__name__)

FAMILIES = ("Z", "A", "A*", "D", "D*", "E", "E*", "Leech")

_NAME_PATTERN = re.compile(r"^(Z|A\*?|D\*?|E\*?|Leech)(n|\d+)?(\*?)$")


def parse_name(name: str, n: Optional[int] = None) -> Tuple[str, Optional[int]]:
    """
    解析目录名称

    接受 "A" + n、"An"、"A4"、"A4*"、"E8"、"Leech" 等写法

    Returns:
        (family, n)

    Raises:
        UnknownName: 无法识别的名称
    """
    match = _NAME_PATTERN.match(name.strip())
    if not match:
        raise UnknownName(f"Unknown catalog lattice: {name!r}")
    family, digits, star = match.groups()
    if star:
        if family.endswith("*"):
            raise UnknownName(f"Unknown catalog lattice: {name!r}")
        family += "*"
    if digits and digits != "n":
        embedded = int(digits)
        if n is not None and n != embedded:
            raise BadDimension(f"Conflicting dimensions in {name!r} and n={n}")
        n = embedded
    return family, n


def _unit(n: int, i: int, value=1) -> List[Fraction]:
    row = [Fraction(0)] * n
    row[i] = Fraction(value)
    return row


def _integer_lattice(n: int) -> Lattice:
    basis = [_unit(n, i) for i in range(n)]
    meta = LatticeMeta(min_norm2=1, relevant_norm2=(1,), relevant_count=2 * n, volume_squared=1)
    return make_lattice(basis, name=f"Z{n}", meta=meta)


def _root_a(n: int) -> Lattice:
    """Aₙ = {x ∈ ℤⁿ⁺¹ : Σ xₖ = 0}，基 eᵢ − eᵢ₊₁"""
    basis = [[Fraction(int(j == i) - int(j == i + 1)) for j in range(n + 1)] for i in range(n)]
    v0 = [Fraction(int(j == n) - int(j == 0)) for j in range(n + 1)]
    meta = LatticeMeta(
        min_norm2=2,
        relevant_norm2=(2,),
        relevant_count=n * (n + 1),
        volume_squared=n + 1,
        superbasis=[v0] + basis,
        source="v_i = e_i - e_(i+1), v_0 = e_(n+1) - e_1",
    )
    return make_lattice(basis, name=f"A{n}", meta=meta)


def _dual_a(n: int) -> Lattice:
    """Aₙ*：ℤⁿ⁺¹ 在超平面 Σ xₖ = 0 上的投影，基 vᵢ = 𝟙/(n+1) − eᵢ"""
    third = Fraction(1, n + 1)
    vectors = [[third - int(j == i) for j in range(n + 1)] for i in range(n + 1)]
    meta = LatticeMeta(
        min_norm2=Fraction(n, n + 1),
        relevant_count=2 ** (n + 1) - 2,
        volume_squared=Fraction(1, n + 1),
        superbasis=[vectors[n]] + vectors[:n],
        source="v_i = 1/(n+1) - e_i",
    )
    return make_lattice(vectors[:n], name=f"A{n}*", meta=meta)


def _root_d(n: int) -> Lattice:
    """Dₙ = {x ∈ ℤⁿ : Σ xₖ 偶}"""
    basis = [[Fraction(int(j == i) - int(j == i + 1)) for j in range(n)] for i in range(n - 1)]
    basis.append([Fraction(int(j >= n - 2)) for j in range(n)])
    meta = LatticeMeta(min_norm2=2, relevant_norm2=(2,), relevant_count=2 * n * (n - 1), volume_squared=4)
    return make_lattice(basis, name=f"D{n}", meta=meta)


def _dual_d(n: int) -> Lattice:
    """Dₙ* = ℤⁿ ∪ ((1/2, …, 1/2) + ℤⁿ)"""
    basis = [_unit(n, i) for i in range(n - 1)]
    basis.append([Fraction(1, 2)] * n)
    meta = LatticeMeta(
        min_norm2=min(Fraction(1), Fraction(n, 4)),
        relevant_count=2 * n + 2 ** n,
        volume_squared=Fraction(1, 4),
    )
    return make_lattice(basis, name=f"D{n}*", meta=meta)


def _e8_basis() -> List[List[Fraction]]:
    basis = [_unit(8, 0, 2)]
    for i in range(6):
        row = [Fraction(0)] * 8
        row[i] = Fraction(-1)
        row[i + 1] = Fraction(1)
        basis.append(row)
    basis.append([Fraction(1, 2)] * 8)
    return basis


def _root_e8() -> Lattice:
    meta = LatticeMeta(min_norm2=2, relevant_norm2=(2,), relevant_count=240, volume_squared=1)
    return make_lattice(_e8_basis(), name="E8", meta=meta)


def _e8_slice(n: int) -> Lattice:
    """
    E7 = {x ∈ E8 : x₇ = x₈}，E6 = {x ∈ E8 : x₆ = x₇ = x₈}

    E8 坐标上的线性型的整数核给出子格基，再做 LLL
    """
    e8 = _root_e8()
    equal_coords = list(range(n - 1, 8))
    forms = []
    for a, b in zip(equal_coords, equal_coords[1:]):
        column = [row[a] - row[b] for row in e8.basis]
        denom = common_denominator(column)
        forms.append([int(x * denom) for x in column])
    # forms 的每一项是一个线性型，转置为 8×k 矩阵
    kernel = integer_kernel([list(col) for col in zip(*forms)])
    counts = {7: 126, 6: 72}
    volumes = {7: 2, 6: 3}
    lattice = sublattice(e8, kernel)
    reduced, _ = lll_reduce(lattice)
    meta = LatticeMeta(
        min_norm2=2,
        relevant_norm2=(2,),
        relevant_count=counts[n],
        volume_squared=volumes[n],
        source=f"E8 vectors with equal coordinates {n}..8",
    )
    return make_lattice(reduced.basis, name=f"E{n}", meta=meta)


def _dual_e(n: int) -> Lattice:
    if n == 8:
        return _root_e8()
    lattice = dual(_e8_slice(n))
    mins = {7: Fraction(3, 2), 6: Fraction(4, 3)}
    counts = {6: 126}
    meta = LatticeMeta(min_norm2=mins[n], relevant_count=counts.get(n), volume_squared=_dual_volume(n))
    return make_lattice(lattice.basis, name=f"E{n}*", meta=meta)


def _dual_volume(n: int) -> Fraction:
    """Eₙ* 的 det(gram)"""
    return Fraction(1, {7: 2, 6: 3}[n])


def load_leech(path=None) -> Lattice:
    """
    从数据文件加载 Leech 格

    √8·Λ24 由 2c（c 为扩展 Golay 码的生成行）、4(eᵢ + eⱼ) 与 (−3, 1²³) 生成；
    以整数基 + metric 1/8 表示，HNF 取基后 det(gram) = 1
    """
    recipe_path = path or settings.leech_recipe_path()
    with open(recipe_path, "r", encoding="utf-8") as f:
        recipe = json.load(f)

    c_mult = recipe["codeword_multiplier"]
    e_mult = recipe["even_generator_multiplier"]
    generators = [[c_mult * x for x in row] for row in golay_generator(recipe["golay_polynomial_exponents"])]
    size = len(recipe["odd_generator"])
    for j in range(1, size):
        generators.append([e_mult * (int(k == 0) + int(k == j)) for k in range(size)])
    generators.append([e_mult * int(k in (1, 2)) for k in range(size)])
    generators.append(list(recipe["odd_generator"]))

    raw_meta = recipe.get("meta", {})
    meta = LatticeMeta(
        min_norm2=raw_meta.get("min_norm2"),
        relevant_norm2=raw_meta.get("relevant_norm2"),
        volume_squared=raw_meta.get("volume_squared"),
        source=raw_meta.get("source"),
    )
    lattice = lattice_from_generators(
        generators, metric=parse_rational(recipe["metric"]), name=recipe["name"], meta=meta, reduce=False
    )
    logger.info(f"Loaded Leech lattice from {recipe_path} (version {recipe.get('version')})")
    return lattice


@lru_cache(maxsize=None)
def _build(family: str, n: Optional[int]) -> Lattice:
    if family == "Leech":
        if n not in (None, 24):
            raise BadDimension("Leech lattice is 24-dimensional")
        return load_leech()
    if n is None:
        raise BadDimension(f"Catalog family {family} needs a dimension")
    if family in ("Z", "A", "A*") and n < 1:
        raise BadDimension(f"{family}{n}: dimension must be at least 1")
    if family in ("D", "D*") and n < 4:
        raise BadDimension(f"{family}{n}: D-series needs n >= 4")
    if family == "E" and n not in (6, 7, 8):
        raise BadDimension(f"E{n}: E-series exists for n = 6, 7, 8")
    if family == "E*" and n not in (6, 7, 8):
        raise BadDimension(f"E{n}*: E-series exists for n = 6, 7, 8")

    if family == "Z":
        return _integer_lattice(n)
    if family == "A":
        return _root_a(n)
    if family == "A*":
        return _dual_a(n)
    if family == "D":
        return _root_d(n)
    if family == "D*":
        return _dual_d(n)
    if family == "E":
        return _root_e8() if n == 8 else _e8_slice(n)
    return _dual_e(n)


def catalog(name: str, n: Optional[int] = None) -> Lattice:
    """
    目录格

    Args:
        name: 名称（Z、A、A*、D、D*、E、E*、Leech，或带维数的 "A4"、"E6*" 等）
        n: 维数

    Raises:
        UnknownName: 名称未知
        BadDimension: 维数不合法
    """
    family, dim = parse_name(name, n)
    return _build(family, dim)


def catalog_names() -> List[str]:
    """目录中可用的名称（用于 CLI 展示）"""
    return ["Zn", "An", "An*", "Dn (n>=4)", "Dn* (n>=4)", "E6", "E6*", "E7", "E7*", "E8", "Leech"]
