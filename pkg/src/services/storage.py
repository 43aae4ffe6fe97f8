"""
报告存储服务

负责 --save 运行结果的持久化和检索（使用文件系统 + JSON）
"""
import json
import logging
import shutil
from pathlib import Path
from typing import Any, List, Optional

from nanoid import generate

from src.config import settings
from src.models import RunMetadata, RunStatus

logger = logging.getLogger(__name__)


class ReportStorage:
    """报告存储服务"""

    def __init__(self, root_dir: Optional[Path] = None):
        """
        Args:
            root_dir: 报告根目录，默认使用配置中的 reports_root_dir（首次写入时创建）
        """
        self.root_dir = Path(root_dir or settings.reports_root_dir).resolve()

    def generate_run_id(self) -> str:
        """12 字符的 nanoid"""
        return generate(size=12)

    def create_run(self, command: str, run_id: Optional[str] = None) -> RunMetadata:
        """
        创建运行目录并写入元数据

        Raises:
            ValueError: 运行 ID 已存在
        """
        metadata = RunMetadata(run_id=run_id or self.generate_run_id(), command=command)
        run_dir = self.root_dir / metadata.run_id
        if run_dir.exists():
            raise ValueError(f"Run {metadata.run_id} already exists")
        run_dir.mkdir(parents=True, exist_ok=True)
        self._save_metadata(metadata)
        return metadata

    def write_report(self, metadata: RunMetadata, filename: str, payload: Any) -> Path:
        """
        写入一个报告文件（payload 为 JSON 可序列化对象或字符串）

        Returns:
            报告文件路径
        """
        path = self.root_dir / metadata.run_id / filename
        with open(path, "w", encoding="utf-8") as f:
            if isinstance(payload, str):
                f.write(payload)
            else:
                json.dump(payload, f, ensure_ascii=False, indent=2)
        if filename not in metadata.files:
            metadata.files.append(filename)
        self._save_metadata(metadata)
        logger.info(f"Saved {filename} to run {metadata.run_id}")
        return path

    def mark_failed(self, metadata: RunMetadata, error: str) -> None:
        metadata.status = RunStatus.FAILED
        metadata.error_message = error
        self._save_metadata(metadata)

    def get_run(self, run_id: str) -> Optional[RunMetadata]:
        """
        Returns:
            RunMetadata，不存在或元数据损坏时返回 None
        """
        metadata_path = self.root_dir / run_id / "metadata.json"
        if not metadata_path.exists():
            return None
        try:
            with open(metadata_path, "r", encoding="utf-8") as f:
                return RunMetadata(**json.load(f))
        except (OSError, ValueError):
            return None

    def list_runs(self, limit: Optional[int] = None) -> List[RunMetadata]:
        """
        列出所有运行，按创建时间倒序排列
        """
        runs: List[RunMetadata] = []
        if not self.root_dir.exists():
            return runs
        for run_dir in self.root_dir.iterdir():
            if not run_dir.is_dir():
                continue
            metadata = self.get_run(run_dir.name)
            # 跳过无效的元数据文件
            if metadata is not None:
                runs.append(metadata)
        runs.sort(key=lambda r: r.created_at, reverse=True)
        if limit:
            runs = runs[:limit]
        return runs

    def delete_run(self, run_id: str) -> bool:
        """删除运行目录及其所有文件"""
        run_dir = self.root_dir / run_id
        if not run_dir.exists():
            return False
        try:
            shutil.rmtree(run_dir)
            return True
        except OSError:
            return False

    def _save_metadata(self, metadata: RunMetadata) -> None:
        metadata_path = self.root_dir / metadata.run_id / "metadata.json"
        with open(metadata_path, "w", encoding="utf-8") as f:
            json.dump(metadata.model_dump(mode="json"), f, ensure_ascii=False, indent=2)

