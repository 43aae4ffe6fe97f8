"""
CLI 子命令

每个模块提供 register(subparsers, parents)
"""
from .bounds import register as register_bounds
from .first_kind import register as register_first_kind
from .graph import register as register_graph
from .lattice import register as register_lattice
from .runs import register as register_runs

__all__ = [
    "register_bounds",
    "register_first_kind",
    "register_graph",
    "register_lattice",
    "register_runs",
]
