"""
配置管理模块

从环境变量加载应用配置
环境变量使用 LVC_ 前缀，例如 LVC_CAP_DIM=16
"""
from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """应用配置"""

    # 报告存储（--save 时使用）
    reports_root_dir: Path = Path("./reports")
    # 随包发布的数据文件（Leech 生成矩阵配方等）
    data_dir: Path = Path(__file__).resolve().parent / "data"

    # 枚举与图规模上限
    cap_dim: int = 14  # relevant_vectors 的维数上限（2ⁿ 个陪集子问题）
    max_vertices: int = 5000  # Cayley 球图顶点数上限
    max_quotient_index: int = 4096  # 商图顶点数上限
    subgraph_chi_max_vertices: int = 64  # 对球图做精确着色的顶点数上限

    # 分支定界预算（节点数，而非墙钟时间）
    budget_nodes: int = 10_000_000

    # 谱界多起点梯度下降
    seed: int = 0
    starts_per_dim: int = 64
    gd_max_iter: int = 10_000
    gd_grad_tol: float = 1e-10
    armijo_c: float = 1e-4
    armijo_shrink: float = 0.5
    oracle_tol: float = 1e-6
    spectral_polish: bool = True

    # 陪集循环的并行进程数（1 = 串行）
    workers: int = 1

    # 日志配置
    log_level: str = "WARNING"

    model_config = SettingsConfigDict(
        env_prefix="LVC_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )

    def leech_recipe_path(self) -> Path:
        """Leech 格生成配方文件路径"""
        return self.data_dir / "leech.json"


# 全局配置实例
settings = Settings()
