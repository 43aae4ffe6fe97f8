"""
图命令：graph --kind ball|quotient|coset-min|half-cube|delaunay
"""
import argparse
from pathlib import Path

from src.commands.common import CommandOutput, load_lattice, read_model
from src.commands.first_kind import load_superbasis
from src.errors import InputError
from src.models import FiniteGraph
from src.schemas import SublatticeFile
from src.services.first_kind import delaunay_graph
from src.services.graphs import cayley_ball, coset_min_vector_graph, half_cube_graph, quotient_graph
from src.services.voronoi import relevant_vectors
from src.utils.rationals import parse_rational

KINDS = ("ball", "quotient", "coset-min", "half-cube", "delaunay")


def _require(value, flag: str, kind: str):
    if value is None:
        raise InputError(f"graph --kind {kind} needs {flag}", code="MissingArgument")
    return value


def build_graph(args: argparse.Namespace) -> FiniteGraph:
    if args.kind == "half-cube":
        return half_cube_graph(_require(args.n, "--n", args.kind))
    if args.kind == "delaunay":
        return delaunay_graph(load_superbasis(_require(args.lattice, "a superbasis input", args.kind)))

    lattice = load_lattice(_require(args.lattice, "a lattice input", args.kind))
    if args.kind == "coset-min":
        sub = read_model(Path(_require(args.sublattice, "--sublattice", args.kind)), SublatticeFile).sublattice
        coset = [int(x) for x in args.coset.split(",")] if args.coset else None
        return coset_min_vector_graph(lattice, sub, coset)

    vor = relevant_vectors(lattice, cap_dim=args.cap_dim, workers=args.workers)
    if args.kind == "ball":
        radius2 = parse_rational(args.radius2) if args.radius2 is not None else vor.max_norm2()
        return cayley_ball(lattice, vor, radius2)
    sub = read_model(Path(_require(args.sublattice, "--sublattice", args.kind)), SublatticeFile).sublattice
    return quotient_graph(lattice, vor, sub)


def run_graph(args: argparse.Namespace) -> CommandOutput:
    graph = build_graph(args)
    if args.dimacs:
        dimacs = graph.to_dimacs()
        return CommandOutput(data={"dimacs": dimacs}, text=dimacs, filename="graph.dimacs")
    degrees = graph.degrees()
    text = (
        f"{graph.name}: {graph.n_vertices} vertices, {graph.n_edges} edges, "
        f"degree {min(degrees, default=0)}..{max(degrees, default=0)}"
    )
    return CommandOutput(data=graph.model_dump(mode="json"), text=text, filename="graph.json")


def register(subparsers, parents) -> None:
    """注册 graph 子命令"""
    parser = subparsers.add_parser("graph", parents=parents, help="构造有限图")
    parser.add_argument("lattice", nargs="?", help="catalog:NAME[:n]、格 JSON 文件或超基文件（delaunay）")
    parser.add_argument("--kind", choices=KINDS, default="ball", help="图的类型")
    parser.add_argument("--radius2", default=None, help="Cayley 球的半径平方（默认最长相关向量的范数²）")
    parser.add_argument("--sublattice", default=None, help="子格文件 {\"sublattice\": [[int]]}")
    parser.add_argument("--coset", default=None, help="陪集代表元，逗号分隔的格坐标")
    parser.add_argument("--n", type=int, default=None, help="半立方体维数")
    parser.add_argument("--dimacs", action="store_true", help="以 DIMACS 边表格式输出")
    parser.set_defaults(handler=run_graph)
