"""
第一类格命令：first-kind
"""
import argparse
from pathlib import Path

from src.commands.common import CATALOG_PREFIX, CommandOutput, load_lattice, read_model
from src.errors import InputError
from src.models import Superbasis
from src.schemas import SuperbasisFile
from src.services.first_kind import check_obtuse_superbasis, first_kind_report, superbasis_from_graph


def load_superbasis(spec: str) -> Superbasis:
    """
    超基输入：带超基元数据的目录格（catalog:A:3、catalog:A*:3），或超基 / Delaunay 图文件

    Raises:
        InputError: 目录格没有已知超基，或文件既无 vectors 也无 edges
    """
    if spec.startswith(CATALOG_PREFIX):
        lattice = load_lattice(spec)
        if lattice.meta.superbasis is None:
            raise InputError(f"{lattice.label} has no known obtuse superbasis", code="NoSuperbasis")
        return check_obtuse_superbasis(lattice.meta.superbasis)
    data = read_model(Path(spec), SuperbasisFile)
    if data.vectors is not None:
        return check_obtuse_superbasis(data.vectors)
    if data.edges is not None:
        vertices = data.vertices if data.vertices is not None else 1 + max(max(e) for e in data.edges)
        return superbasis_from_graph(vertices, data.edges)
    raise InputError("Superbasis file needs \"vectors\" or \"edges\"", code="MissingArgument")


def run_first_kind(args: argparse.Namespace) -> CommandOutput:
    sb = load_superbasis(args.superbasis)
    report = first_kind_report(sb, budget=args.budget_nodes)
    verdict = "accepted" if report.certificate_accepted else "REJECTED"
    text = "\n".join(
        [
            f"rank {sb.n}, Delaunay graph with {report.delaunay.n_edges} edges, blocks {report.blocks}",
            f"{report.relevant.count} relevant vectors from minimal cuts",
            f"longest cycle {list(report.cycle)} gives a clique of size {max(2, len(report.cycle))}",
            f"chromatic number in [{report.lower}, {report.upper if report.upper is not None else '?'}], "
            f"certificate k = {report.certificate.k} ({verdict})",
        ]
    )
    return CommandOutput(data=report.model_dump(mode="json"), text=text, filename="first_kind.json")


def register(subparsers, parents) -> None:
    """注册 first-kind 子命令"""
    parser = subparsers.add_parser("first-kind", parents=parents, help="第一类 Voronoi 格的完整分析")
    parser.add_argument("superbasis", help="catalog:A:n / catalog:A*:n 或超基 JSON 文件")
    parser.set_defaults(handler=run_first_kind)
