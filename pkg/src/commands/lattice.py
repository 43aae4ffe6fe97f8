"""
格命令：info、vor、pack-bound、catalog
"""
import argparse

from src.commands.common import CommandOutput, load_lattice
from src.schemas import LatticeInfoResponse
from src.services.bounds import sphere_packing_lower_bound
from src.services.catalog import FAMILIES, catalog_names
from src.services.enumeration import min_vectors
from src.services.lattice import lattice_determinant
from src.services.voronoi import relevant_vectors
from src.utils.rationals import format_rational


def run_info(args: argparse.Namespace) -> CommandOutput:
    lattice = load_lattice(args.lattice)
    norm2, vectors = min_vectors(lattice, cap_dim=args.cap_dim)
    info = LatticeInfoResponse(
        name=lattice.name,
        dim=lattice.dim,
        ambient_dim=lattice.ambient_dim,
        metric=lattice.metric,
        gram=list(lattice.gram),
        determinant=lattice_determinant(lattice),
        min_norm2=norm2,
        min_count=len(vectors) or None,
    )
    text = (
        f"{lattice.label}: rank {info.dim} in dimension {info.ambient_dim}, "
        f"det {format_rational(info.determinant)}, min² {format_rational(norm2)}"
        + (f" ({len(vectors)} minimal vectors)" if vectors else "")
    )
    return CommandOutput(data=info.model_dump(mode="json"), text=text, filename="info.json")


def run_vor(args: argparse.Namespace) -> CommandOutput:
    lattice = load_lattice(args.lattice)
    vor = relevant_vectors(lattice, cap_dim=args.cap_dim, workers=args.workers)
    norms = sorted(set(vor.norm2))
    lines = [f"{lattice.label}: {vor.count} relevant vectors, norm² {', '.join(format_rational(q) for q in norms)}"]
    lines.extend(f"{list(v)}  {format_rational(q)}" for v, q in zip(vor.vectors, vor.norm2))
    return CommandOutput(data=vor.model_dump(mode="json"), text="\n".join(lines), filename="relevant_vectors.json")


def run_pack_bound(args: argparse.Namespace) -> CommandOutput:
    lattice = load_lattice(args.lattice)
    bound = sphere_packing_lower_bound(lattice)
    text = f"{lattice.label}: chromatic number >= {bound.value} (sphere packing, ratio² {bound.ratio_squared})"
    return CommandOutput(data=bound.model_dump(mode="json"), text=text, filename="pack_bound.json")


def run_catalog(args: argparse.Namespace) -> CommandOutput:
    names = catalog_names()
    return CommandOutput(data={"families": list(FAMILIES), "names": names}, text="\n".join(names))


def register(subparsers, parents) -> None:
    """注册 info / vor / pack-bound / catalog 子命令"""
    info = subparsers.add_parser("info", parents=parents, help="秩、行列式与最短向量")
    info.add_argument("lattice", help="catalog:NAME[:n] 或格 JSON 文件")
    info.set_defaults(handler=run_info)

    vor = subparsers.add_parser("vor", parents=parents, help="相关向量 Vor(Λ)")
    vor.add_argument("lattice", help="catalog:NAME[:n] 或格 JSON 文件")
    vor.set_defaults(handler=run_vor)

    pack = subparsers.add_parser("pack-bound", parents=parents, help="球堆积下界")
    pack.add_argument("lattice", help="catalog:NAME[:n] 或格 JSON 文件")
    pack.set_defaults(handler=run_pack_bound)

    names = subparsers.add_parser("catalog", parents=parents, help="列出目录中的格")
    names.set_defaults(handler=run_catalog)
