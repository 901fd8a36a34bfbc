import json
import math

import pytest

from tetexport import cli, export


def read(path):
    with open(path) as f:
        return json.load(f)


def test_cusp_map_by_volume():
    sym = [[0], [1], [2]]
    assert export.cusp_map_by_volume([1.0, 2.0, 3.0],
                                     [1.0, 2.0, 3.0], sym) == [0, 1, 2]
    assert export.cusp_map_by_volume([2.0, 3.0, 1.0],
                                     [1.0, 2.0, 3.0], sym) == [1, 2, 0]
    assert export.cusp_map_by_volume([1.0, 2.0],
                                     [1.0, 2.5], sym) is None
    assert export.cusp_map_by_volume([1.0], [1.0, 1.0], sym) is None


def test_cusp_map_tie_breaks_consistently():
    out = export.cusp_map_by_volume([2.0, 2.0], [2.0, 2.0], [[0, 1]])
    assert sorted(out) == [0, 1]


def test_cutoff_validation():
    with pytest.raises(export.ExportError):
        export.export({"manifolds": [], "cutoff": 0.0, "out_dir": "/tmp/x"})
    with pytest.raises(export.ExportError):
        export.export({"manifolds": [], "cutoff": 0.15, "out_dir": "/tmp/x"})


def test_rejects_cusp_count_mismatch(tmp_path):
    record = {"name": "bad",
              "signatures": ["cPcbbbiht", "eLMkbcddddedde"]}
    with pytest.raises(export.ExportError):
        export.export_manifold(record, str(tmp_path))


def test_export_end_to_end(tmp_path):
    manifest = {
        "manifolds": [
            {"name": "fig8", "census_index": None,
             "signatures": ["cPcbbbiht", "cPcbbbiht"]},
        ],
        "cutoff": 0.05,
    }
    doc = export.export(manifest, out_dir=str(tmp_path))

    assert doc == read(tmp_path / "manifest.json")
    assert doc["export_cutoff"] == 0.05
    (entry,) = doc["manifolds"]
    assert entry["name"] == "fig8"
    assert entry["num_cusps"] == 1
    assert len(entry["triangulations"]) == 2

    hom = read(tmp_path / entry["homology_matrix"])
    assert hom["rows"] * hom["cols"] == len(hom["entries"])

    for tri in entry["triangulations"]:
        glue = read(tmp_path / tri["gluing_table"])
        assert glue["tets"] == 2
        assert tri["cusp_map"] == [0]
        for cusp, rel in tri["diagrams"].items():
            diag = read(tmp_path / rel)
            assert diag["cusp_at_infinity"] == int(cusp)
            m = complex(*diag["meridian"])
            l = complex(*diag["longitude"])
            area = abs((m.conjugate() * l).imag)
            assert area == pytest.approx(2.0 * diag["cusp_volume"],
                                         abs=1e-9)
            assert max(h["diameter"] for h in diag["horoballs"]) \
                == pytest.approx(1.0, abs=1e-9)
            assert diag["cusp_volume"] == pytest.approx(math.sqrt(3.0),
                                                        abs=1e-9)

    meta = read(tmp_path / "fig8" / "meta.json")
    assert meta["num_cusps"] == 1
    assert meta["triangulations"][0]["maximal_cusp_volumes"] \
        == pytest.approx([math.sqrt(3.0)])


def test_cli_export(tmp_path, capsys):
    manifest_path = tmp_path / "manifest_in.json"
    manifest_path.write_text(json.dumps(
        {"manifolds": [{"name": "fig8", "signatures": ["cPcbbbiht"]}],
         "cutoff": 0.05}))
    out_dir = tmp_path / "out"
    code = cli.main(["export", str(manifest_path),
                     "--out-dir", str(out_dir)])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["exported"] == ["fig8"]
    assert (out_dir / "manifest.json").exists()


def test_cli_reports_errors(tmp_path, capsys):
    code = cli.main(["export", str(tmp_path / "missing.json")])
    out = json.loads(capsys.readouterr().out)
    assert code == 1
    assert "error" in out


def test_export_is_deterministic(tmp_path):
    manifest = {"manifolds": [{"name": "fig8",
                               "signatures": ["cPcbbbiht"]}],
                "cutoff": 0.05}
    a = export.export(manifest, out_dir=str(tmp_path / "a"))
    b = export.export(manifest, out_dir=str(tmp_path / "b"))
    assert a == b
    assert read(tmp_path / "a" / "fig8" / "tri0_cusp0.json") \
        == read(tmp_path / "b" / "fig8" / "tri0_cusp0.json")
