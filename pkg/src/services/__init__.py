"""
Services module

提供核心计算服务
"""
from .pipeline import BoundPipeline, assemble_bounds
from .storage import ReportStorage

__all__ = [
    "BoundPipeline",
    "assemble_bounds",
    "ReportStorage",
]
