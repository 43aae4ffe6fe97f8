"""命令行：子命令、退出码与 --save"""
import json

from src.main import run
from src.schemas import CertificateFile
from src.services.bounds import certificate_from_function
from src.services.catalog import catalog
from src.services.storage import ReportStorage


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, out


def write_json(path, payload):
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


class TestLatticeCommands:
    def test_info(self, capsys):
        code, out = invoke(capsys, "info", "catalog:A:2")
        assert code == 0
        data = json.loads(out)
        assert data["determinant"] == "3"
        assert data["min_norm2"] == "2"
        assert data["min_count"] == 6

    def test_info_from_file(self, capsys, tmp_path):
        path = write_json(tmp_path / "hex.json", {"basis": [[1, 0], ["1/2", "3/4"]], "metric": 1})
        code, out = invoke(capsys, "info", path, "--format", "text")
        assert code == 0
        assert out.startswith("hex: rank 2")

    def test_vor_text(self, capsys):
        code, out = invoke(capsys, "vor", "catalog:D:4", "--format", "text")
        assert code == 0
        assert out.splitlines()[0] == "D4: 24 relevant vectors, norm² 2"

    def test_pack_bound(self, capsys):
        code, out = invoke(capsys, "pack-bound", "catalog:E8")
        assert code == 0
        assert json.loads(out)["value"] == 16

    def test_catalog(self, capsys):
        code, out = invoke(capsys, "catalog")
        assert code == 0
        assert "Leech" in json.loads(out)["names"]


class TestErrors:
    def test_unknown_name(self, capsys):
        code, out = invoke(capsys, "info", "catalog:B:3")
        assert code == 2
        assert json.loads(out)["error"] == "UnknownName"

    def test_rank_deficient_file(self, capsys, tmp_path):
        path = write_json(tmp_path / "flat.json", {"basis": [[1, 0], [2, 0]]})
        code, out = invoke(capsys, "info", path)
        assert code == 2
        assert json.loads(out)["error"] == "RankDeficient"

    def test_missing_file(self, capsys, tmp_path):
        code, out = invoke(capsys, "info", str(tmp_path / "nope.json"))
        assert code == 2
        assert json.loads(out)["error"] == "FileNotFound"

    def test_schema_violation(self, capsys, tmp_path):
        path = write_json(tmp_path / "bad.json", {"metric": 1})
        code, out = invoke(capsys, "info", path)
        assert code == 2
        assert json.loads(out)["error"] == "InvalidInput"

    def test_dimension_cap(self, capsys):
        code, out = invoke(capsys, "vor", "catalog:Z:6", "--cap-dim", "4")
        assert code == 3
        assert json.loads(out)["error"] == "DimensionCapExceeded"

    def test_unknown_verb(self, capsys):
        assert run(["frobnicate"]) == 2
        assert "invalid choice" in capsys.readouterr().err


class TestVerify:
    def test_accepted(self, capsys, tmp_path):
        cert = certificate_from_function(catalog("A", 2), [[3, 0], [-1, 1]], lambda rep: sum(rep) % 3)
        path = write_json(tmp_path / "cert.json", CertificateFile.from_coloring(cert).model_dump())
        code, out = invoke(capsys, "verify", path, "--lattice", "catalog:A:2")
        assert code == 0
        assert json.loads(out)["accepted"] is True

    def test_rejected(self, capsys, tmp_path):
        path = write_json(tmp_path / "cert.json", {"sublattice": [[2]], "k": 1, "colors": {"0": 0, "1": 0}})
        code, out = invoke(capsys, "verify", path, "--lattice", "catalog:Z:1")
        assert code == 4
        data = json.loads(out)
        assert data["accepted"] is False
        assert data["reason"] == "EdgeMonochromatic"


class TestBoundCommands:
    def test_chroma(self, capsys):
        code, out = invoke(capsys, "chroma", "catalog:A:4", "--no-spectral", "--format", "text")
        assert code == 0
        assert out.splitlines()[0] == "A4 (rank 4): chromatic number in [5, 5] => χ = 5"

    def test_spectral(self, capsys):
        code, out = invoke(capsys, "spectral", "catalog:A:2", "--starts", "16")
        assert code == 0
        data = json.loads(out)
        assert data["hoffman_int"] == 3
        assert data["certified"] is True

    def test_spectral_weights(self, capsys, tmp_path):
        path = write_json(tmp_path / "w.json", {"weights": {"0": 2.0}})
        code, out = invoke(capsys, "spectral", "catalog:Z:2", "--starts", "8", "--weights", path)
        assert code == 0
        assert json.loads(out)["weighted"] is True

    def test_first_kind(self, capsys):
        code, out = invoke(capsys, "first-kind", "catalog:A*:3")
        assert code == 0
        data = json.loads(out)
        assert (data["lower"], data["upper"]) == (4, 4)
        assert data["certificate_accepted"] is True

    def test_first_kind_from_graph(self, capsys, tmp_path):
        path = write_json(tmp_path / "c4.json", {"vertices": 4, "edges": [[0, 1], [1, 2], [2, 3], [0, 3]]})
        code, out = invoke(capsys, "first-kind", path)
        assert code == 0
        assert json.loads(out)["lower"] == 4

    def test_graph_half_cube_dimacs(self, capsys):
        code, out = invoke(capsys, "graph", "--kind", "half-cube", "--n", "4", "--dimacs", "--format", "text")
        assert code == 0
        assert out.splitlines()[0] == "p edge 8 24"

    def test_graph_needs_arguments(self, capsys):
        code, out = invoke(capsys, "graph", "--kind", "half-cube")
        assert code == 2
        assert json.loads(out)["error"] == "MissingArgument"

    def test_reproduce_table3_is_byte_stable(self, capsys):
        first = invoke(capsys, "reproduce", "table3", "--format", "text")
        second = invoke(capsys, "reproduce", "table3", "--format", "text")
        assert first == second
        assert first[0] == 0


def test_save_writes_report(capsys, tmp_path):
    reports = tmp_path / "runs"
    code, _ = invoke(capsys, "pack-bound", "catalog:Z:2", "--save", "--reports-dir", str(reports))
    assert code == 0
    runs = ReportStorage(reports).list_runs()
    assert len(runs) == 1
    assert runs[0].files == ["pack_bound.json"]
    assert json.loads((reports / runs[0].run_id / "pack_bound.json").read_text(encoding="utf-8"))["value"] == 2


def test_spectral_rejects_zero_starts(capsys):
    """--starts 0 是输入错误，退出码 2"""
    code, out = invoke(capsys, "spectral", "catalog:A:2", "--starts", "0")
    assert code == 2
    assert json.loads(out)["error"] == "InvalidStarts"


class TestLatticeFileMeta:
    """格文件中的 meta 在超过维数上限时代替枚举"""

    META = {"basis": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "name": "cube", "meta": {"min_norm2": "1", "relevant_norm2": ["1"]}}

    def test_info_uses_meta_above_cap(self, capsys, tmp_path):
        path = write_json(tmp_path / "cube.json", self.META)
        code, out = invoke(capsys, "info", path, "--cap-dim", "2")
        assert code == 0
        data = json.loads(out)
        assert data["min_norm2"] == "1"
        assert data["min_count"] is None

    def test_info_enumerates_below_cap(self, capsys, tmp_path):
        path = write_json(tmp_path / "cube.json", self.META)
        code, out = invoke(capsys, "info", path)
        assert code == 0
        assert json.loads(out)["min_count"] == 6

    def test_pack_bound_uses_meta(self, capsys, tmp_path):
        path = write_json(tmp_path / "cube.json", self.META)
        code, out = invoke(capsys, "pack-bound", path, "--cap-dim", "2")
        assert code == 0
        data = json.loads(out)
        assert data["value"] == 2
        assert data["source"] == "lattice metadata"

    def test_meta_min_norm_must_be_positive(self, capsys, tmp_path):
        path = write_json(tmp_path / "cube.json", {**self.META, "meta": {"min_norm2": "0"}})
        code, out = invoke(capsys, "info", path)
        assert code == 2
        assert json.loads(out)["error"] == "InvalidInput"


class TestRuns:
    def test_failed_command_is_recorded(self, capsys, tmp_path):
        reports = tmp_path / "runs"
        code, _ = invoke(capsys, "vor", "catalog:Z:6", "--cap-dim", "4", "--save", "--reports-dir", str(reports))
        assert code == 3
        runs = ReportStorage(reports).list_runs()
        assert len(runs) == 1
        assert runs[0].status.value == "failed"
        assert runs[0].error_message.startswith("DimensionCapExceeded")
        assert runs[0].files == []

    def test_failed_input_is_recorded(self, capsys, tmp_path):
        reports = tmp_path / "runs"
        path = write_json(tmp_path / "bad.json", {"metric": 1})
        code, _ = invoke(capsys, "info", path, "--save", "--reports-dir", str(reports))
        assert code == 2
        runs = ReportStorage(reports).list_runs()
        assert [r.status.value for r in runs] == ["failed"]
        assert runs[0].error_message.startswith("InvalidInput")

    def test_list_show_delete(self, capsys, tmp_path):
        reports = str(tmp_path / "runs")
        invoke(capsys, "pack-bound", "catalog:Z:2", "--save", "--reports-dir", reports)
        code, out = invoke(capsys, "runs", "list", "--reports-dir", reports)
        assert code == 0
        listed = json.loads(out)
        assert len(listed) == 1
        run_id = listed[0]["run_id"]

        code, out = invoke(capsys, "runs", "show", run_id, "--reports-dir", reports)
        assert code == 0
        assert json.loads(out)["files"] == ["pack_bound.json"]

        code, out = invoke(capsys, "runs", "delete", run_id, "--reports-dir", reports)
        assert code == 0
        assert json.loads(out) == {"deleted": run_id}
        code, out = invoke(capsys, "runs", "list", "--reports-dir", reports, "--format", "text")
        assert out == "no runs\n"

    def test_show_unknown_run(self, capsys, tmp_path):
        code, out = invoke(capsys, "runs", "show", "nope", "--reports-dir", str(tmp_path))
        assert code == 2
        assert json.loads(out)["error"] == "RunNotFound"

    def test_show_needs_id(self, capsys):
        code, out = invoke(capsys, "runs", "show")
        assert code == 2
        assert json.loads(out)["error"] == "MissingArgument"
