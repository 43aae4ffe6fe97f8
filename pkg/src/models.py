"""
数据模型定义

定义核心数据结构：Lattice、QuotientGroup、RelevantVectorSet、FiniteGraph、
着色/团/圈结果、QuotientColoring 证书、BoundReport、Superbasis、SpectralResult 以及运行元数据
"""
from datetime import datetime
from enum import Enum
from fractions import Fraction
from typing import Annotated, Any, Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, model_validator

from src.utils.rationals import format_rational, parse_rational

# 精确有理数：输入接受 int / "p/q" / 十进制字符串，输出为 "p/q" 字符串
Rational = Annotated[Fraction, BeforeValidator(parse_rational), PlainSerializer(format_rational, return_type=str)]
RationalRow = Tuple[Rational, ...]
IntRow = Tuple[int, ...]
Label = Union[IntRow, str]


class LatticeMeta(BaseModel):
    """格的附加元数据（目录数据或已发表的参考值）"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    min_norm2: Optional[Rational] = Field(None, description="最短非零向量的平方范数 λ1²")
    relevant_norm2: Optional[Tuple[Rational, ...]] = Field(None, description="相关向量的平方范数集合")
    relevant_count: Optional[int] = Field(None, description="相关向量个数")
    volume_squared: Optional[Rational] = Field(None, description="基本区域体积的平方 det(gram)")
    superbasis: Optional[Tuple[RationalRow, ...]] = Field(None, description="已知的钝角超基（环境坐标）")
    source: Optional[str] = Field(None, description="构造来源说明")


class Lattice(BaseModel):
    """
    格

    basis 的行是基向量（环境坐标，精确有理数）；gram = metric·basis·basisᵀ；
    scale 为使 scale·gram 成为整数矩阵的最小正整数
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: Optional[str] = Field(None, description="目录名称")
    basis: Tuple[RationalRow, ...] = Field(..., description="基矩阵（行向量）")
    metric: Rational = Field(default=Fraction(1), description="内积缩放因子")
    gram: Tuple[RationalRow, ...] = Field(..., description="Gram 矩阵")
    scale: Rational = Field(..., description="整数化缩放因子 s")
    meta: LatticeMeta = Field(default_factory=LatticeMeta, description="元数据")

    @model_validator(mode="after")
    def check_consistency(self) -> "Lattice":
        n = len(self.basis)
        if n == 0:
            raise ValueError("格的秩必须为正")
        m = len(self.basis[0])
        if any(len(row) != m for row in self.basis):
            raise ValueError("基矩阵各行长度不一致")
        if m < n:
            raise ValueError("环境维数不能小于秩")
        if self.metric <= 0:
            raise ValueError("metric 必须为正")
        if len(self.gram) != n or any(len(row) != n for row in self.gram):
            raise ValueError("Gram 矩阵形状错误")
        for i in range(n):
            for j in range(i, n):
                value = self.metric * sum(a * b for a, b in zip(self.basis[i], self.basis[j]))
                if self.gram[i][j] != value or self.gram[j][i] != value:
                    raise ValueError("gram 必须等于 metric·basis·basisᵀ")
        if self.scale <= 0 or any((self.scale * x).denominator != 1 for row in self.gram for x in row):
            raise ValueError("scale·gram 必须为整数矩阵")
        return self

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return len(self.basis[0])

    @property
    def label(self) -> str:
        return self.name or f"lattice(dim={self.dim})"

    def integral_gram(self) -> List[List[int]]:
        """scale·gram（整数矩阵）"""
        return [[int(self.scale * x) for x in row] for row in self.gram]

    def inner(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        """两个格坐标向量的内积"""
        total = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                row = self.gram[i]
                total += xi * sum((row[j] * yj for j, yj in enumerate(y) if yj), Fraction(0))
        return total

    def norm2(self, x: Sequence[Fraction]) -> Fraction:
        return self.inner(x, x)

    def ambient(self, x: Sequence[Fraction]) -> List[Fraction]:
        """格坐标 → 环境坐标（不含 metric）"""
        out = [Fraction(0)] * self.ambient_dim
        for c, row in zip(x, self.basis):
            if c:
                for j, v in enumerate(row):
                    out[j] += c * v
        return out


class NormalForms(BaseModel):
    """整数矩阵 M 的 Hermite / Smith 标准形"""

    model_config = ConfigDict(frozen=True)

    hermite: Tuple[IntRow, ...] = Field(..., description="列式 HNF，H = M·U")
    hermite_transform: Optional[Tuple[IntRow, ...]] = Field(None, description="U（仅非奇异方阵）")
    smith: Tuple[IntRow, ...] = Field(..., description="Smith 标准形 D = S·M·T")
    left: Tuple[IntRow, ...] = Field(..., description="S")
    right: Tuple[IntRow, ...] = Field(..., description="T")
    divisors: Tuple[int, ...] = Field(..., description="初等因子")


class QuotientGroup(BaseModel):
    """
    商群 Λ/Λ′

    由 Smith 分解 D = S·sub·T 得到：x 的陪集由 (x·T)ᵢ mod dᵢ 决定；
    陪集代表元按混合进制字典序排列（第一个分量最高位）
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    sublattice: Tuple[IntRow, ...] = Field(..., description="子格基（格坐标）")
    index: int = Field(..., description="|Λ/Λ′|")
    elementary_divisors: Tuple[int, ...] = Field(..., description="初等因子 d₁ | d₂ | …")
    transform: Tuple[IntRow, ...] = Field(..., description="右 Smith 变换 T")
    transform_inv: Tuple[IntRow, ...] = Field(..., description="T⁻¹")

    def class_vector(self, x: Sequence[int]) -> Tuple[int, ...]:
        """陪集在 ⊕ℤ/dᵢ 中的坐标"""
        n = len(self.elementary_divisors)
        out = []
        for i in range(n):
            yi = sum(int(x[k]) * self.transform[k][i] for k in range(n))
            out.append(yi % self.elementary_divisors[i])
        return tuple(out)

    def class_index(self, x: Sequence[int]) -> int:
        """陪集编号（混合进制）"""
        index = 0
        for r, d in zip(self.class_vector(x), self.elementary_divisors):
            index = index * d + r
        return index

    def digits(self, index: int) -> Tuple[int, ...]:
        """编号 → 混合进制数字"""
        out = []
        for d in reversed(self.elementary_divisors):
            out.append(index % d)
            index //= d
        return tuple(reversed(out))

    def representative(self, index: int) -> Tuple[int, ...]:
        """编号对应的陪集代表元（格坐标）"""
        r = self.digits(index)
        n = len(r)
        return tuple(sum(r[k] * self.transform_inv[k][j] for k in range(n)) for j in range(n))

    def reduce(self, x: Sequence[int]) -> Tuple[int, ...]:
        """把任意格向量映射到其陪集代表元（幂等，reduce(0) = 0）"""
        return self.representative(self.class_index(x))

    def coset_reps(self) -> List[Tuple[int, ...]]:
        return [self.representative(i) for i in range(self.index)]

    def contains(self, x: Sequence[int]) -> bool:
        return self.class_index(x) == 0


class RelevantVectorSet(BaseModel):
    """相关向量集合 Vor(Λ)（格坐标）"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    vectors: Tuple[IntRow, ...] = Field(..., description="相关向量（格坐标）")
    norm2: Tuple[Rational, ...] = Field(..., description="对应的平方范数")
    count: int = Field(..., description="向量个数")

    @model_validator(mode="after")
    def check_invariants(self) -> "RelevantVectorSet":
        if len(self.vectors) != self.count or len(self.norm2) != self.count:
            raise ValueError("count 与向量个数不一致")
        vector_set = set(self.vectors)
        for v in self.vectors:
            if not any(v):
                raise ValueError("相关向量不能为零向量")
            if tuple(-x for x in v) not in vector_set:
                raise ValueError(f"相关向量集合对取负不封闭: {v}")
        if self.vectors:
            n = len(self.vectors[0])
            if self.count > 2 * (2 ** n - 1):
                raise ValueError("相关向量个数超过 2(2ⁿ − 1)")
        return self

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[Sequence[int], Fraction]]) -> "RelevantVectorSet":
        """按向量字典序排列后构造"""
        ordered = sorted((tuple(int(x) for x in v), Fraction(q)) for v, q in pairs)
        return cls(vectors=[v for v, _ in ordered], norm2=[q for _, q in ordered], count=len(ordered))

    def as_set(self) -> set:
        return set(self.vectors)

    def max_norm2(self) -> Fraction:
        return max(self.norm2)

    def pair_representatives(self) -> List[IntRow]:
        """每对 ±v 中取字典序较大的一个"""
        return [v for v in self.vectors if v > tuple(-x for x in v)]


class FiniteGraph(BaseModel):
    """有限图（标签 + 规范排序的边表）"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: Optional[str] = Field(None, description="图名称")
    labels: Tuple[Label, ...] = Field(..., description="顶点标签")
    edges: Tuple[Tuple[int, int], ...] = Field(..., description="边 (i, j)，i < j，字典序")

    @model_validator(mode="after")
    def check_invariants(self) -> "FiniteGraph":
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise ValueError("顶点标签必须唯一")
        previous = None
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"图中不允许自环: {i}")
            if not (0 <= i < j < n):
                raise ValueError(f"边未规范化或越界: ({i}, {j})")
            if previous is not None and (i, j) <= previous:
                raise ValueError("边表必须严格按字典序排列")
            previous = (i, j)
        return self

    @classmethod
    def build(cls, labels: Sequence[Label], edges, name: Optional[str] = None) -> "FiniteGraph":
        """规范化边表（去重、排序、去掉 i > j 的重复）后构造"""
        canonical = sorted({(min(i, j), max(i, j)) for i, j in edges})
        return cls(name=name, labels=list(labels), edges=canonical)

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def adjacency(self) -> List[set]:
        adj: List[set] = [set() for _ in range(self.n_vertices)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def degrees(self) -> List[int]:
        return [len(a) for a in self.adjacency()]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n_vertices))
        g.add_edges_from(self.edges)
        return g

    def to_dimacs(self) -> str:
        """DIMACS 边表格式（顶点从 1 开始编号）"""
        lines = [f"p edge {self.n_vertices} {self.n_edges}"]
        lines.extend(f"e {i + 1} {j + 1}" for i, j in self.edges)
        return "\n".join(lines) + "\n"


class SolveStatus(str, Enum):
    """求解状态"""

    EXACT = "exact"  # 搜索完成
    BOUNDED = "bounded"  # 未搜索（预算为 0），只有上下界
    TIMEOUT = "timeout"  # 预算耗尽


class ColoringResult(BaseModel):
    """着色求解结果"""

    lower: int = Field(..., description="下界")
    upper: int = Field(..., description="上界（即 coloring 使用的颜色数）")
    coloring: Optional[Tuple[int, ...]] = Field(None, description="顶点 → 颜色")
    status: SolveStatus = Field(..., description="求解状态")
    nodes: int = Field(default=0, description="搜索节点数")

    @property
    def chromatic(self) -> Union[int, Tuple[int, int]]:
        if self.lower == self.upper:
            return self.upper
        return (self.lower, self.upper)


class CliqueResult(BaseModel):
    """最大团搜索结果"""

    vertices: Tuple[int, ...] = Field(..., description="团的顶点")
    complete: bool = Field(..., description="搜索是否完成（否则仅为下界）")
    nodes: int = Field(default=0, description="搜索节点数")

    @property
    def size(self) -> int:
        return len(self.vertices)


class CycleResult(BaseModel):
    """最长圈搜索结果"""

    length: int = Field(..., description="最长圈长度，无圈时为 0")
    cycle: Tuple[int, ...] = Field(default=(), description="圈上的顶点序列")
    complete: bool = Field(default=True, description="搜索是否完成")


class QuotientColoring(BaseModel):
    """
    周期着色证书：子格 + 商群上的颜色表

    colors[i] 为编号 i 的陪集（QuotientGroup 的混合进制顺序）的颜色
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    sublattice: Tuple[IntRow, ...] = Field(..., description="子格基（格坐标）")
    k: int = Field(..., description="颜色数")
    colors: Tuple[int, ...] = Field(..., description="陪集编号 → 颜色")
    note: Optional[str] = Field(None, description="构造说明")


class VerificationResult(BaseModel):
    """证书校验结果"""

    accepted: bool = Field(..., description="是否通过")
    reason: Optional[str] = Field(None, description="VorInSublattice / EdgeMonochromatic / BadColors")
    witness: Optional[Dict[str, Any]] = Field(None, description="反例")
    k: int = Field(default=0, description="证书颜色数")
    checks: int = Field(default=0, description="执行的检查次数")


class BoundEntry(BaseModel):
    """单个界及其来源"""

    value: int = Field(..., description="界的值")
    tag: str = Field(..., description="来源标签")
    proven: bool = Field(default=True, description="是否为已证明（证书或定理）的界")
    note: Optional[str] = Field(None, description="说明")
    certificate: Optional[QuotientColoring] = Field(None, description="支撑上界的证书")


class BoundReport(BaseModel):
    """χ(Λ) 的上下界报告"""

    lattice: str = Field(..., description="格名称")
    dim: int = Field(..., description="秩")
    lower: Optional[BoundEntry] = Field(None, description="最佳已证明下界")
    upper: Optional[BoundEntry] = Field(None, description="最佳上界")
    lowers: List[BoundEntry] = Field(default_factory=list, description="全部下界候选")
    uppers: List[BoundEntry] = Field(default_factory=list, description="全部上界候选")
    details: List[str] = Field(default_factory=list, description="审计记录")

    @property
    def exact(self) -> Optional[int]:
        if self.lower is None or self.upper is None:
            return None
        if self.lower.value == self.upper.value and self.upper.certificate is not None:
            return self.upper.value
        return None


class Superbasis(BaseModel):
    """钝角超基 v₀…v_n 与 Selling 参数"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    vectors: Tuple[RationalRow, ...] = Field(..., description="v₀…v_n（环境坐标）")
    selling: Tuple[RationalRow, ...] = Field(..., description="Selling 参数 vᵢ·vⱼ")

    @property
    def n(self) -> int:
        return len(self.vectors) - 1

    @property
    def strictly_obtuse(self) -> bool:
        size = len(self.vectors)
        return all(self.selling[i][j] < 0 for i in range(size) for j in range(i + 1, size))


class PackingBound(BaseModel):
    """球堆积下界"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    dim: int = Field(..., description="维数")
    value: int = Field(..., description="⌈(ρ/2)ⁿ·δ(Λ)/δₙ⌉")
    center_density_squared: Rational = Field(..., description="δ(Λ)²")
    optimal_density_squared: Rational = Field(..., description="δₙ²")
    ratio_squared: Rational = Field(..., description="((ρ/2)ⁿ·δ(Λ)/δₙ)²")
    source: str = Field(..., description="λ1² 与相关向量范数的来源")


class SpectralResult(BaseModel):
    """谱（Hoffman 型）下界结果"""

    lattice: Optional[str] = Field(None, description="格名称")
    vor_count: int = Field(..., description="|Vor(Λ)|")
    total_weight: float = Field(..., description="M = 𝓕(0)")
    min_value: float = Field(..., description="𝓕 的最小值估计")
    argmin: Tuple[float, ...] = Field(..., description="最小点（对偶基坐标，模 1）")
    hoffman: float = Field(..., description="1 − M/min")
    hoffman_int: int = Field(..., description="⌈hoffman⌉")
    starts_used: int = Field(..., description="起点数")
    converged_count: int = Field(..., description="收敛的起点数")
    local_minima: Tuple[float, ...] = Field(default=(), description="收敛局部极小值（去重）")
    certified: bool = Field(default=False, description="是否与精确 oracle 吻合")
    oracle_min: Optional[float] = Field(None, description="精确 oracle 最小值")
    weighted: bool = Field(default=False, description="是否使用非均匀权重")
    seed: int = Field(default=0, description="随机种子")


class FirstKindReport(BaseModel):
    """第一类 Voronoi 格的完整分析报告"""

    superbasis: Superbasis
    delaunay: FiniteGraph
    blocks: List[Tuple[int, ...]] = Field(..., description="双连通分支的顶点集")
    relevant: RelevantVectorSet
    cycle: Tuple[int, ...] = Field(..., description="最长圈")
    clique: List[IntRow] = Field(..., description="由最长圈构造的 Cayley 图团（格坐标）")
    lower: int = Field(..., description="下界 max(2, σ)")
    upper: Optional[int] = Field(None, description="上界（通过校验的块 mod 着色的颜色数），证书被拒绝时为空")
    certificate: QuotientColoring = Field(..., description="mod-(n+1) 证书")
    certificate_accepted: bool = Field(..., description="证书是否通过校验")

    @property
    def chromatic(self) -> Optional[int]:
        return self.lower if self.lower == self.upper else None


class RunStatus(str, Enum):
    """运行状态"""

    COMPLETED = "completed"
    FAILED = "failed"


class RunMetadata(BaseModel):
    """报告运行元数据（持久化到 JSON）"""

    run_id: str = Field(..., description="运行 ID (nanoid 12字符)")
    command: str = Field(..., description="命令行")
    status: RunStatus = Field(default=RunStatus.COMPLETED, description="运行状态")
    created_at: datetime = Field(default_factory=datetime.utcnow, description="创建时间")
    files: List[str] = Field(default_factory=list, description="报告文件（相对于运行目录）")
    error_message: Optional[str] = Field(None, description="错误信息")
