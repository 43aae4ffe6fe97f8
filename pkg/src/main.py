"""
lvc 命令行入口

Lattice Voronoi chromatic-number toolkit: bounds, certificates and spectral estimates.
退出码：0 成功，2 输入错误，3 超出预算，4 证书被拒绝
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from src.commands import register_bounds, register_first_kind, register_graph, register_lattice, register_runs
from src.commands.common import common_options, persist, persist_failure, render
from src.config import settings
from src.errors import InputError, LatticeToolError
from src.schemas import ErrorResponse

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lvc",
        description="Chromatic number of lattice Voronoi tessellations",
    )
    subparsers = parser.add_subparsers(dest="verb", required=True)
    parents = [common_options()]
    # 注册子命令
    register_lattice(subparsers, parents)
    register_graph(subparsers, parents)
    register_bounds(subparsers, parents)
    register_first_kind(subparsers, parents)
    register_runs(subparsers, parents)
    return parser


def _error(code: str, detail: str, exit_code: int) -> int:
    sys.stdout.write(json.dumps(ErrorResponse(error=code, detail=detail).model_dump(), ensure_ascii=False) + "\n")
    return exit_code


def run(argv: Optional[List[str]] = None) -> int:
    """
    执行一条命令

    Args:
        argv: 参数列表（默认 sys.argv[1:]）

    Returns:
        进程退出码
    """
    args_list = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(args_list)
    except SystemExit as e:
        # argparse 对未知参数退出码为 2
        return int(e.code or 0)

    logging.basicConfig(
        level=getattr(logging, (args.log_level or settings.log_level).upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    command = " ".join(["lvc"] + args_list)
    try:
        output = args.handler(args)
    except LatticeToolError as e:
        logger.error(f"{args.verb} failed: {e.code}: {e}")
        if args.save:
            persist_failure(args, command, f"{e.code}: {e.detail}")
        return _error(e.code, e.detail, e.exit_code)
    except ValidationError as e:
        if args.save:
            persist_failure(args, command, f"InvalidInput: {e}")
        return _error("InvalidInput", str(e), InputError.exit_code)

    rendered = render(output, args.format)
    sys.stdout.write(rendered)
    if args.save:
        persist(args, output, rendered, command)
    return output.exit_code


def main() -> None:
    """控制台脚本入口"""
    sys.exit(run())


if __name__ == "__main__":
    main()
