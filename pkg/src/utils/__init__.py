"""通用工具函数导出"""
from .rationals import (
    ceil_sqrt,
    format_rational,
    parse_matrix,
    parse_rational,
)
from .tables import render_table

__all__ = [
    "ceil_sqrt",
    "format_rational",
    "parse_matrix",
    "parse_rational",
    "render_table",
]
