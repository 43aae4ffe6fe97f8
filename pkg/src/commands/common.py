"""
命令公共部分

通用参数、格输入解析（JSON 文件或 catalog:名称:维数）、输出渲染与 --save 持久化
"""
import argparse
import json
import logging
from pathlib import Path
from typing import Any, Optional, Type, TypeVar

from pydantic import BaseModel, ConfigDict, Field

from src.errors import BadDimension, InputError
from src.models import Lattice
from src.schemas import LatticeFile
from src.services.catalog import catalog
from src.services.lattice import make_lattice
from src.services.storage import ReportStorage

logger = logging.getLogger(__name__)

SchemaT = TypeVar("SchemaT", bound=BaseModel)

CATALOG_PREFIX = "catalog:"


class CommandOutput(BaseModel):
    """命令结果：JSON 数据 + 可选的文本渲染"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    data: Any = Field(..., description="JSON 可序列化的结果")
    text: Optional[str] = Field(None, description="--format text 时的输出（为空时退回 JSON）")
    filename: str = Field(default="report.json", description="--save 时的报告文件名")
    exit_code: int = Field(default=0, description="进程退出码")


def common_options() -> argparse.ArgumentParser:
    """所有子命令共享的参数（作为 parents 使用）"""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--format", choices=["json", "text"], default="json", help="输出格式")
    parser.add_argument("--seed", type=int, default=None, help="随机种子（默认 LVC_SEED）")
    parser.add_argument("--budget-nodes", type=int, default=None, help="分支定界节点预算")
    parser.add_argument("--cap-dim", type=int, default=None, help="relevant_vectors 的维数上限")
    parser.add_argument("--workers", type=int, default=None, help="陪集循环的进程数")
    parser.add_argument("--save", action="store_true", help="把报告保存到 reports 目录")
    parser.add_argument("--reports-dir", type=Path, default=None, help="报告根目录（默认 LVC_REPORTS_ROOT_DIR）")
    parser.add_argument(
        "--log-level", default=None, choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="日志级别（输出到 stderr）"
    )
    return parser


def load_lattice(spec: str) -> Lattice:
    """
    解析格输入

    Args:
        spec: "catalog:A:4"、"catalog:E8"、"catalog:Leech" 或格 JSON 文件路径

    Raises:
        UnknownName / BadDimension: 目录名称或维数无效
        InputError: 文件不存在或无法解析
    """
    if spec.startswith(CATALOG_PREFIX):
        parts = spec[len(CATALOG_PREFIX):].split(":")
        if len(parts) > 2 or not parts[0]:
            raise InputError(f"Catalog spec must look like catalog:NAME[:n], got {spec!r}", code="UnknownName")
        n = None
        if len(parts) == 2:
            try:
                n = int(parts[1])
            except ValueError as e:
                raise BadDimension(f"Dimension must be an integer, got {parts[1]!r}") from e
        return catalog(parts[0], n)
    data = read_model(Path(spec), LatticeFile)
    meta = data.meta.to_meta() if data.meta is not None else None
    return make_lattice(data.basis, metric=data.metric, name=data.name or Path(spec).stem, meta=meta)


def read_model(path: Path, schema: Type[SchemaT]) -> SchemaT:
    """
    读取并校验 JSON 文件

    Raises:
        InputError: 文件不存在或不是合法 JSON
        pydantic.ValidationError: 内容不符合 schema
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
    except FileNotFoundError as e:
        raise InputError(f"File not found: {path}", code="FileNotFound") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}", code="InvalidJSON") from e
    return schema.model_validate(raw)


def render(output: CommandOutput, fmt: str) -> str:
    if fmt == "text" and output.text is not None:
        return output.text if output.text.endswith("\n") else output.text + "\n"
    return json.dumps(output.data, ensure_ascii=False, indent=2) + "\n"


def persist(args: argparse.Namespace, output: CommandOutput, rendered: str, command: str) -> None:
    """--save：创建运行目录并写入报告"""
    storage = report_storage(args)
    metadata = storage.create_run(command)
    if output.filename.endswith(".json"):
        storage.write_report(metadata, output.filename, output.data)
    else:
        storage.write_report(metadata, output.filename, rendered)
    logger.info(f"Report saved under run {metadata.run_id}")


def report_storage(args: argparse.Namespace) -> ReportStorage:
    return ReportStorage(args.reports_dir) if args.reports_dir else ReportStorage()


def persist_failure(args: argparse.Namespace, command: str, error: str) -> None:
    """--save：命令失败时也登记一次运行，状态为 failed"""
    storage = report_storage(args)
    metadata = storage.create_run(command)
    storage.mark_failed(metadata, error)
    logger.info(f"Failed run recorded as {metadata.run_id}")
