"""
界命令：chroma、verify、spectral、reproduce
"""
import argparse
from pathlib import Path

from src.commands.common import CommandOutput, load_lattice, read_model
from src.errors import CertificateRejected
from src.models import BoundEntry, BoundReport
from src.schemas import CertificateFile, SublatticeFile, VerifyResponse, WeightsFile
from src.services.bounds import verify_coloring
from src.services.pipeline import BoundPipeline
from src.services.spectral import spectral_bound
from src.services.voronoi import relevant_vectors
from src.utils.tables import render_table


def _pipeline(args: argparse.Namespace, with_spectral: bool = True) -> BoundPipeline:
    return BoundPipeline(
        budget=args.budget_nodes,
        seed=args.seed,
        starts=getattr(args, "starts", None),
        cap_dim=args.cap_dim,
        workers=args.workers,
        with_spectral=with_spectral,
    )


def _entry_line(kind: str, entry: BoundEntry) -> str:
    mark = "" if entry.proven else " [not proven]"
    cert = " [certificate verified]" if entry.certificate is not None else ""
    return f"  {kind} {entry.value:>5}  {entry.tag}{cert}{mark}" + (f"  ({entry.note})" if entry.note else "")


def format_report(report: BoundReport) -> str:
    lower = report.lower.value if report.lower else "?"
    upper = report.upper.value if report.upper else "?"
    lines = [f"{report.lattice} (rank {report.dim}): chromatic number in [{lower}, {upper}]"]
    if report.exact is not None:
        lines[0] += f" => χ = {report.exact}"
    lines.extend(_entry_line("lower", e) for e in report.lowers)
    lines.extend(_entry_line("upper", e) for e in report.uppers)
    lines.extend(f"  note: {d}" for d in report.details)
    return "\n".join(lines)


def run_chroma(args: argparse.Namespace) -> CommandOutput:
    lattice = load_lattice(args.lattice)
    sub = read_model(Path(args.sublattice), SublatticeFile).sublattice if args.sublattice else None
    report = _pipeline(args, with_spectral=not args.no_spectral).assemble_bounds(lattice, sublattice=sub)
    return CommandOutput(data=report.model_dump(mode="json"), text=format_report(report), filename="bounds.json")


def run_verify(args: argparse.Namespace) -> CommandOutput:
    lattice = load_lattice(args.lattice)
    cert = read_model(Path(args.certificate), CertificateFile).to_coloring()
    vor = relevant_vectors(lattice, cap_dim=args.cap_dim, workers=args.workers)
    verdict = verify_coloring(lattice, vor, cert)
    response = VerifyResponse(lattice=lattice.label, **verdict.model_dump())
    if verdict.accepted:
        text = f"accepted: {lattice.label} has chromatic number <= {cert.k} ({verdict.checks} checks)"
        exit_code = 0
    else:
        text = f"rejected ({verdict.reason}): {verdict.witness}"
        exit_code = CertificateRejected.exit_code
    return CommandOutput(data=response.model_dump(mode="json"), text=text, filename="verify.json", exit_code=exit_code)


def run_spectral(args: argparse.Namespace) -> CommandOutput:
    lattice = load_lattice(args.lattice)
    weights = read_model(Path(args.weights), WeightsFile).weights if args.weights else None
    vor = relevant_vectors(lattice, cap_dim=args.cap_dim, workers=args.workers)
    result = spectral_bound(lattice, vor, starts=args.starts, seed=args.seed, weights=weights)
    status = "certified by exact oracle" if result.certified else "heuristic estimate"
    text = (
        f"{lattice.label}: min 𝓕 = {result.min_value:.9f} over {result.starts_used} starts "
        f"({result.converged_count} converged), Hoffman bound {result.hoffman:.6f} -> {result.hoffman_int} ({status})"
    )
    return CommandOutput(data=result.model_dump(mode="json"), text=text, filename="spectral.json")


def run_reproduce(args: argparse.Namespace) -> CommandOutput:
    rows = _pipeline(args).reproduce(args.table)
    return CommandOutput(
        data=rows,
        text=render_table(rows, "text"),
        filename=f"{args.table}.json" if args.format == "json" else f"{args.table}.txt",
    )


def register(subparsers, parents) -> None:
    """注册 chroma / verify / spectral / reproduce 子命令"""
    chroma = subparsers.add_parser("chroma", parents=parents, help="汇总 χ(Λ) 的上下界")
    chroma.add_argument("lattice", help="catalog:NAME[:n] 或格 JSON 文件")
    chroma.add_argument("--starts", type=int, default=None, help="谱界起点数（默认 64·n）")
    chroma.add_argument("--sublattice", default=None, help="额外尝试的子格文件（商图着色作为证书）")
    chroma.add_argument("--no-spectral", action="store_true", help="跳过谱下界")
    chroma.set_defaults(handler=run_chroma)

    verify = subparsers.add_parser("verify", parents=parents, help="校验周期着色证书")
    verify.add_argument("certificate", help="证书 JSON 文件")
    verify.add_argument("--lattice", required=True, help="catalog:NAME[:n] 或格 JSON 文件")
    verify.set_defaults(handler=run_verify)

    spectral = subparsers.add_parser("spectral", parents=parents, help="谱（Hoffman 型）下界")
    spectral.add_argument("lattice", help="catalog:NAME[:n] 或格 JSON 文件")
    spectral.add_argument("--starts", type=int, default=None, help="起点数（默认 64·n）")
    spectral.add_argument("--weights", default=None, help="权重文件 {\"weights\": {\"类编号\": 权重}}")
    spectral.set_defaults(handler=run_spectral)

    reproduce = subparsers.add_parser("reproduce", parents=parents, help="重现汇总表")
    reproduce.add_argument("table", choices=["table1", "table2", "table3"], help="表格")
    reproduce.add_argument("--starts", type=int, default=None, help="谱界起点数（默认 64·n）")
    reproduce.set_defaults(handler=run_reproduce)
