"""
测试公共 fixture

目录格的相关向量在整个会话内缓存，报告目录重定向到临时目录
"""
import pytest

from src.config import settings
from src.services.catalog import catalog
from src.services.voronoi import relevant_vectors


@pytest.fixture(autouse=True)
def isolated_reports(tmp_path, monkeypatch):
    """--save 与 ReportStorage 默认写入临时目录"""
    monkeypatch.setattr(settings, "reports_root_dir", tmp_path / "reports")
    return tmp_path / "reports"


@pytest.fixture(scope="session")
def vor_of():
    """按名称缓存 (格, 相关向量)"""
    cache = {}

    def get(name, n=None):
        key = (name, n)
        if key not in cache:
            lattice = catalog(name, n)
            cache[key] = (lattice, relevant_vectors(lattice))
        return cache[key]

    return get


@pytest.fixture(scope="session")
def e8(vor_of):
    return vor_of("E8")
