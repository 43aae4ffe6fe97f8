"""
运行记录命令：runs list|show|delete
"""
import argparse

from src.commands.common import CommandOutput, report_storage
from src.errors import InputError


def run_runs(args: argparse.Namespace) -> CommandOutput:
    storage = report_storage(args)
    if args.action == "list":
        runs = storage.list_runs(limit=args.limit)
        lines = [f"{r.run_id}  {r.status.value:<9}  {r.created_at:%Y-%m-%d %H:%M:%S}  {r.command}" for r in runs]
        return CommandOutput(
            data=[r.model_dump(mode="json") for r in runs],
            text="\n".join(lines) if lines else "no runs",
            filename="runs.json",
        )

    if not args.run_id:
        raise InputError(f"runs {args.action} needs a run id", code="MissingArgument")
    if args.action == "show":
        metadata = storage.get_run(args.run_id)
        if metadata is None:
            raise InputError(f"Run {args.run_id} not found", code="RunNotFound")
        text = f"{metadata.run_id} {metadata.status.value}: {metadata.command}"
        if metadata.error_message:
            text += f"\n  error: {metadata.error_message}"
        for name in metadata.files:
            text += f"\n  {name}"
        return CommandOutput(data=metadata.model_dump(mode="json"), text=text, filename="run.json")

    if not storage.delete_run(args.run_id):
        raise InputError(f"Run {args.run_id} not found", code="RunNotFound")
    return CommandOutput(data={"deleted": args.run_id}, text=f"deleted {args.run_id}", filename="run.json")


def register(subparsers, parents) -> None:
    """注册 runs 子命令"""
    parser = subparsers.add_parser("runs", parents=parents, help="查看或删除 --save 保存的运行")
    parser.add_argument("action", choices=["list", "show", "delete"], help="操作")
    parser.add_argument("run_id", nargs="?", default=None, help="运行 ID（show/delete）")
    parser.add_argument("--limit", type=int, default=None, help="list 最多列出的条数")
    parser.set_defaults(handler=run_runs)
