"""
输入输出文件的 Pydantic schemas

定义 CLI 读取的格 / 证书 / 超基 / 权重文件以及输出的响应模型
"""
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

from src.models import IntRow, LatticeMeta, QuotientColoring, Rational, RationalRow


class LatticeMetaFile(BaseModel):
    """格文件中的可选元数据：已知的 λ1² 与相关向量范数（超过维数上限时代替枚举）"""

    min_norm2: Optional[Rational] = Field(None, description="最短非零向量的平方范数 λ1²")
    relevant_norm2: Optional[List[Rational]] = Field(None, description="相关向量的平方范数")
    relevant_count: Optional[int] = Field(None, description="相关向量个数")

    @field_validator("min_norm2")
    @classmethod
    def check_positive(cls, v):
        if v is not None and v <= 0:
            raise ValueError("min_norm2 必须为正")
        return v

    def to_meta(self) -> LatticeMeta:
        return LatticeMeta(
            min_norm2=self.min_norm2,
            relevant_norm2=tuple(self.relevant_norm2) if self.relevant_norm2 else None,
            relevant_count=self.relevant_count,
            source="lattice file",
        )


class LatticeFile(BaseModel):
    """格文件：{"basis": [[...]], "metric": "1/2", "name": "...", "meta": {"min_norm2": ..., "relevant_norm2": [...]}}"""

    name: Optional[str] = Field(None, description="格名称")
    basis: List[RationalRow] = Field(..., description="基矩阵（行向量，元素为 int 或 \"p/q\"）")
    metric: Rational = Field(default=Fraction(1), description="内积缩放因子")
    meta: Optional[LatticeMetaFile] = Field(None, description="已知的格元数据")


class CertificateFile(BaseModel):
    """证书文件：{"sublattice": [[int]], "k": int, "colors": {"rep-index": color}}"""

    sublattice: List[IntRow] = Field(..., description="子格基（格坐标）")
    k: int = Field(..., description="颜色数")
    colors: Dict[int, int] = Field(..., description="陪集编号 → 颜色")
    note: Optional[str] = Field(None, description="构造说明")

    def to_coloring(self) -> QuotientColoring:
        """缺失的陪集编号按 −1 处理（由校验报告 BadColors）"""
        size = max(self.colors) + 1 if self.colors else 0
        colors = [self.colors.get(i, -1) for i in range(size)]
        return QuotientColoring(sublattice=self.sublattice, k=self.k, colors=colors, note=self.note)

    @classmethod
    def from_coloring(cls, cert: QuotientColoring) -> "CertificateFile":
        return cls(
            sublattice=list(cert.sublattice),
            k=cert.k,
            colors={i: c for i, c in enumerate(cert.colors)},
            note=cert.note,
        )


class SublatticeFile(BaseModel):
    """子格文件：{"sublattice": [[int]]}（格坐标）"""

    sublattice: List[IntRow] = Field(..., description="子格基（格坐标）")


class SuperbasisFile(BaseModel):
    """超基文件：{"vectors": [[...]]} 或 {"graph": {"vertices": n, "edges": [[i, j]]}}"""

    vectors: Optional[List[RationalRow]] = Field(None, description="v₀…vₙ（环境坐标）")
    vertices: Optional[int] = Field(None, description="Delaunay 图顶点数")
    edges: Optional[List[Tuple[int, int]]] = Field(None, description="Delaunay 图的边")

    @field_validator("edges")
    @classmethod
    def check_edges(cls, v):
        if v is not None and any(a == b for a, b in v):
            raise ValueError("自环不能作为 Delaunay 图的边")
        return v


class WeightsFile(BaseModel):
    """谱界权重：{"class-index": weight}，类编号为 ± 相关向量对的字典序编号"""

    weights: Dict[int, float] = Field(..., description="类编号 → 非负权重")

    @field_validator("weights")
    @classmethod
    def check_weights(cls, v):
        if any(w < 0 for w in v.values()):
            raise ValueError("权重必须非负")
        return v


class LatticeInfoResponse(BaseModel):
    """info 命令输出"""

    name: Optional[str] = Field(None, description="格名称")
    dim: int = Field(..., description="秩")
    ambient_dim: int = Field(..., description="环境维数")
    metric: Rational = Field(..., description="内积缩放因子")
    gram: List[RationalRow] = Field(..., description="Gram 矩阵")
    determinant: Rational = Field(..., description="det(gram)")
    min_norm2: Optional[Rational] = Field(None, description="λ1²")
    min_count: Optional[int] = Field(None, description="最短向量个数（元数据来源时为空）")


class VerifyResponse(BaseModel):
    """verify 命令输出"""

    lattice: str = Field(..., description="格名称")
    accepted: bool = Field(..., description="是否通过")
    k: int = Field(..., description="颜色数")
    reason: Optional[str] = Field(None, description="拒绝原因")
    witness: Optional[dict] = Field(None, description="反例")
    checks: int = Field(default=0, description="检查次数")


class ErrorResponse(BaseModel):
    """错误响应"""

    error: str = Field(..., description="错误码")
    detail: str = Field(..., description="错误详情")
