"""报告存储"""
import json

import pytest

from src.models import RunStatus
from src.services.storage import ReportStorage


@pytest.fixture
def storage(tmp_path):
    return ReportStorage(tmp_path / "runs")


def test_run_id_is_nanoid(storage):
    assert len(storage.generate_run_id()) == 12


def test_create_and_write(storage):
    metadata = storage.create_run("lvc chroma catalog:A:2")
    path = storage.write_report(metadata, "bounds.json", {"lower": 3, "lattice": "A₂"})
    assert json.loads(path.read_text(encoding="utf-8")) == {"lower": 3, "lattice": "A₂"}
    storage.write_report(metadata, "table.txt", "lattice\nA2\n")
    loaded = storage.get_run(metadata.run_id)
    assert loaded.files == ["bounds.json", "table.txt"]
    assert loaded.status == RunStatus.COMPLETED


def test_duplicate_run_id(storage):
    storage.create_run("lvc catalog", run_id="fixed-run-id")
    with pytest.raises(ValueError):
        storage.create_run("lvc catalog", run_id="fixed-run-id")


def test_mark_failed(storage):
    metadata = storage.create_run("lvc vor catalog:Leech")
    storage.mark_failed(metadata, "DimensionCapExceeded")
    loaded = storage.get_run(metadata.run_id)
    assert loaded.status == RunStatus.FAILED
    assert loaded.error_message == "DimensionCapExceeded"


def test_list_and_delete(storage):
    first = storage.create_run("lvc catalog")
    storage.create_run("lvc info catalog:E8")
    assert len(storage.list_runs()) == 2
    assert len(storage.list_runs(limit=1)) == 1
    assert storage.delete_run(first.run_id)
    assert not storage.delete_run(first.run_id)
    assert [r.command for r in storage.list_runs()] == ["lvc info catalog:E8"]


def test_corrupt_metadata_is_skipped(storage):
    metadata = storage.create_run("lvc catalog")
    (storage.root_dir / metadata.run_id / "metadata.json").write_text("{not json", encoding="utf-8")
    assert storage.get_run(metadata.run_id) is None
    assert storage.list_runs() == []


def test_missing_root(tmp_path):
    assert ReportStorage(tmp_path / "absent").list_runs() == []
