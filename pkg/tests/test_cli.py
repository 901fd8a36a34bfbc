import json
import math

import pytest

from tetsym import cli
from tetsym.constants import DSEQ_236_2222, DSEQ_O4

HEX_M = complex(0.5, math.sqrt(3.0) / 2.0)
SQUARE_M = 1j

FIG8_TABLE = {
    "name": "cPcbbbiht",
    "tets": 2,
    "gluings": [
        [[1, [0, 1, 2, 3]], [1, [1, 2, 0, 3]], [1, [1, 0, 3, 2]], [1, [3, 0, 2, 1]]],
        [[0, [0, 1, 2, 3]], [0, [1, 3, 2, 0]], [0, [2, 0, 1, 3]], [0, [1, 0, 3, 2]]],
    ],
}


def packing_doc(m, num_cusps=1):
    balls = [[(a * m + b).real, (a * m + b).imag]
             for a in range(3) for b in range(3)]
    big_m = 3.0 * m
    area = abs((big_m.conjugate() * 3.0).imag)
    return {
        "manifold": "synthetic",
        "cusp_at_infinity": 0,
        "num_cusps": num_cusps,
        "meridian": [big_m.real, big_m.imag],
        "longitude": [3.0, 0.0],
        "cusp_volume": area / 2.0,
        "export_cutoff": 0.05,
        "horoballs": [{"center": c, "diameter": 1.0, "cusp": 0}
                      for c in balls],
    }


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_validate_ok(tmp_path, capsys):
    path = write(tmp_path, "ref.json", DSEQ_236_2222.to_json())
    code, out = run(capsys, ["validate", path])
    assert code == 0
    assert out["ok"] is True
    assert out["violations"] == []


def test_validate_reports_violations(tmp_path, capsys):
    doc = DSEQ_236_2222.to_json()
    doc["entries"][0] = 5
    path = write(tmp_path, "bad.json", doc)
    code, out = run(capsys, ["validate", path])
    assert code == 2
    assert out["ok"] is False
    assert len(out["violations"]) > 0


def test_cusps_reference_orbifold(tmp_path, capsys):
    path = write(tmp_path, "ref.json", DSEQ_236_2222.to_json())
    code, out = run(capsys, ["cusps", path])
    assert code == 0
    assert len(out["cusps"]) == 2
    assert [0, 1, 3, 4] in out["cusps"]


def test_cusps_rejects_invalid(tmp_path, capsys):
    doc = DSEQ_236_2222.to_json()
    doc["entries"][0] = 5
    path = write(tmp_path, "bad.json", doc)
    code, out = run(capsys, ["cusps", path])
    assert code == 1
    assert out["ok"] is False


def test_covers_identity(tmp_path, capsys):
    path = write(tmp_path, "o4.json", DSEQ_O4.to_json())
    code, out = run(capsys, ["covers", path, path])
    assert code == 0
    assert out["count"] >= 1
    assert list(range(DSEQ_O4.n)) in [c["phi"] for c in out["covers"]]
    for cover in out["covers"]:
        assert cover["cusp_covers"]


def test_covers_none_when_smaller(tmp_path, capsys):
    up = write(tmp_path, "o4.json", DSEQ_O4.to_json())
    down = write(tmp_path, "ref.json", DSEQ_236_2222.to_json())
    code, out = run(capsys, ["covers", up, down])
    assert code == 2
    assert out["count"] == 0


def test_orbifoldize_fig8(tmp_path, capsys):
    path = write(tmp_path, "fig8.json", FIG8_TABLE)
    code, out = run(capsys, ["orbifoldize", path])
    assert code == 0
    assert out["sequence"]["n"] == 24
    assert out["num_manifold_cusps"] == 1
    assert set(out["manifold_cusp_of_class"]) == {0}


def test_symtest_strong(tmp_path, capsys):
    hexp = write(tmp_path, "hex.json", packing_doc(HEX_M))
    sqp = write(tmp_path, "square.json", packing_doc(SQUARE_M))
    code, out = run(capsys, ["symtest", hexp, "strong"])
    assert (code, out["result"]) == (0, True)
    code, out = run(capsys, ["symtest", sqp, "strong"])
    assert (code, out["result"]) == (2, False)


def test_symtest_order6_no_other_cusps(tmp_path, capsys):
    hexp = write(tmp_path, "hex.json", packing_doc(HEX_M))
    code, out = run(capsys, ["symtest", hexp, "order6"])
    assert code == 2
    assert out["axes"] == []


def test_symtest_exhaustive_c0(tmp_path, capsys):
    hexp = write(tmp_path, "hex.json", packing_doc(HEX_M))
    code, out = run(capsys, ["--exhaustive-c0", "symtest", hexp, "strong"])
    assert code == 0
    assert len(out["per_c0"]) == 9
    assert out["c0_disagreement"] is False


def test_homology_link_check(tmp_path, capsys):
    zero = write(tmp_path, "zero.json",
                 {"rows": 2, "cols": 2, "entries": [0, 0, 0, 0]})
    code, out = run(capsys, ["homology", zero, "2"])
    assert code == 0
    assert out["homology_link"] is True
    torsion = write(tmp_path, "torsion.json",
                    {"rows": 2, "cols": 2, "entries": [2, 0, 0, 0]})
    code, out = run(capsys, ["homology", torsion, "2"])
    assert code == 2
    assert out["homology_link"] is False
    assert 2 in out["divisors"]


def test_missing_file_reports_error(capsys):
    code, out = run(capsys, ["validate", "/nonexistent/file.json"])
    assert code == 1
    assert "error" in out


def classify_fixture(tmp_path):
    write(tmp_path, "square.json", packing_doc(SQUARE_M, num_cusps=2))
    write(tmp_path, "fig8_gluing.json", FIG8_TABLE)
    manifest = {
        "export_cutoff": 0.05,
        "manifolds": [
            {"name": "beta", "census_index": None, "num_cusps": 2,
             "triangulations": [
                 {"gluing_table": "fig8_gluing.json",
                  "diagrams": {"0": "square.json"},
                  "cusp_map": [0, 1]},
             ]},
            {"name": "alpha", "census_index": 5, "num_cusps": 2,
             "triangulations": [
                 {"gluing_table": "fig8_gluing.json",
                  "diagrams": {"0": "square.json"},
                  "cusp_map": [0, 1]},
             ]},
        ],
    }
    write(tmp_path, "manifest.json", manifest)


def test_classify_synthetic(tmp_path, capsys):
    classify_fixture(tmp_path)
    code, out = run(capsys, ["classify", str(tmp_path)])
    assert code == 0
    report = out["classification"]
    # indexed manifolds come first
    assert [r["manifold"] for r in report] == ["alpha", "beta"]
    for entry in report:
        assert entry["cusps"]["0"]["verdict"] == "NOT_EXCEPTIONAL"
        assert entry["cusps"]["1"]["verdict"] == "UNRESOLVED"


def test_classify_is_byte_stable(tmp_path, capsys):
    classify_fixture(tmp_path)
    cli.main(["classify", str(tmp_path)])
    first = capsys.readouterr().out
    cli.main(["classify", str(tmp_path)])
    second = capsys.readouterr().out
    assert first == second
