import csv
import json
import subprocess
import sys

import networkx as nx
import pytest

from multiwheels.bundle import check_bundle, verify
from multiwheels.cli import main, predicted_n, sweep_specs
from multiwheels.specs import SpecError, build


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- spec literals -----------------------------------------------------------------------


@pytest.mark.parametrize(
    "text,n,m",
    [
        ("w:1rr-1rr-1rr", 7, 12),
        ("w:1-1-1", 7, 12),
        ("w:1rr-3ss-3sr", 15, 28),
        ("g:q=2", 11, 20),
        ("p:c=1;s=1,1,2", 9, 16),
        ("u:1,2,1", 10, 18),
        ("O-", 6, 11),
        ("K5", 5, 10),
        ("W5", 6, 10),
        ("C7", 7, 7),
        ("nonplanar", 9, 16),
    ],
)
def test_spec_literals(text, n, m):
    g = build(text).graph
    assert (g.n, g.m) == (n, m)


@pytest.mark.parametrize(
    "text,pos",
    [("w:1rr-1rr", 2), ("w:1rr+1rr", 5), ("w:", 2), ("p:c=1;s=1,,1", 10), ("g:q=x", 2), ("zzz", 0), ("", 0), ("K1x", 0)],
)
def test_spec_errors_report_position(text, pos):
    with pytest.raises(SpecError) as exc:
        build(text)
    assert exc.value.pos == pos
    assert f"position {pos}" in str(exc.value)


def test_predicted_vertex_counts():
    for s in sweep_specs("plane", 2) + sweep_specs("grotzsch", 3) + sweep_specs("projective", 2, cmax=2)[:40]:
        assert predicted_n(s) == build(s).graph.n


# -- construct ---------------------------------------------------------------------------


def test_construct_graph6_base(capsys):
    code, out, _ = run(capsys, "construct", "w:1rr-1rr-1rr", "--format", "graph6")
    assert code == 0
    g = nx.from_graph6_bytes(out.strip().encode())
    assert (g.number_of_nodes(), g.number_of_edges()) == (7, 12)


def test_construct_even_sections_is_input_error(capsys):
    code, _, err = run(capsys, "construct", "w:1rr-1rr")
    assert code == 2 and "position" in err


def test_construct_grotzsch_with_embedding(tmp_path, capsys):
    out = tmp_path / "g2.json"
    code, _, _ = run(capsys, "construct", "g:q=2", "--with-embedding", "--out", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    assert len(doc["embedding"]["faces"]) == 10
    code, text, _ = run(capsys, "embed", "--check", str(out))
    res = json.loads(text)
    assert code == 0 and res["euler_characteristic"] == 1 and res["projective_quadrangulation"]


def test_construct_dot_and_json_configuration(capsys):
    code, out, _ = run(capsys, "construct", "w:1rr-1rr-1rr", "--format", "dot")
    assert code == 0 and "style=dashed" in out
    code, out, _ = run(capsys, "construct", "p:c=1;s=1,1,2")
    doc = json.loads(out)
    assert len(doc["configuration"]["constituents"]) == 4


def test_construct_planar_embedding_fallback(capsys):
    code, out, _ = run(capsys, "construct", "w:1rr-1rr-3rr", "--with-embedding")
    assert code == 0 and "embedding" in json.loads(out)
    code, _, _ = run(capsys, "construct", "grotzsch", "--with-embedding")
    assert code == 2


def test_embed_rejects_broken_face_list(tmp_path, capsys):
    path = tmp_path / "bad.json"
    run(capsys, "construct", "g:q=2", "--with-embedding", "--out", str(path))
    doc = json.loads(path.read_text())
    doc["embedding"]["faces"].append(doc["embedding"]["faces"][0])
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "embed", "--check", str(path))
    assert code == 1 and json.loads(out)["rule"] == "edge-multiplicity"


# -- verify ------------------------------------------------------------------------------


def test_verify_base_all_checks_pass(capsys):
    code, out, _ = run(capsys, "verify", "base")
    doc = json.loads(out)
    assert code == 0 and doc["pass"]
    assert set(doc["checks"]) == {"color", "critical", "planar", "quad", "bracket"}
    assert check_bundle(doc) == []


def test_verify_nonplanar_color_fails(capsys):
    code, out, _ = run(capsys, "verify", "nonplanar", "--checks", "color")
    doc = json.loads(out)
    assert code == 1 and doc["checks"]["color"]["chromatic_number"] == 3


def test_verify_empty_file_is_input_error(tmp_path, capsys):
    empty = tmp_path / "empty.g6"
    empty.write_text("")
    code, _, err = run(capsys, "verify", str(empty))
    assert code == 2 and "empty" in err


def test_verify_unknown_check_is_input_error(capsys):
    code, _, _ = run(capsys, "verify", "base", "--checks", "color,colour")
    assert code == 2


def test_verify_quad_without_embedding_fails(capsys):
    code, out, _ = run(capsys, "verify", "W5", "--checks", "quad")
    assert code == 1 and json.loads(out)["checks"]["quad"]["reason"] == "no embedding supplied"


def test_verify_reads_graph6_file(tmp_path, capsys):
    path = tmp_path / "o.g6"
    run(capsys, "construct", "O", "--format", "graph6", "--out", str(path))
    code, out, _ = run(capsys, "verify", str(path), "--checks", "color")
    assert code == 1 and json.loads(out)["checks"]["color"]["chromatic_number"] == 3


def test_bundle_hash_is_stable_and_excludes_timestamp():
    c = build("g:q=2")
    a = verify(c.graph, spec=c.spec, family=c.family, embedding=c.embedding, timestamp="2020-01-01")
    b = verify(c.graph, spec=c.spec, family=c.family, embedding=c.embedding, timestamp="2030-01-01")
    da, db = a.to_json(), b.to_json()
    assert da["sha256"] == db["sha256"]
    strip = lambda d: json.dumps({k: v for k, v in d.items() if k != "timestamp"}, sort_keys=True)
    assert strip(da) == strip(db)


def test_tampered_bundle_is_caught():
    c = build("base")
    doc = json.loads(json.dumps(verify(c.graph, spec=c.spec, embedding=c.embedding).to_json()))
    assert check_bundle(doc) == []
    col = doc["checks"]["color"]["coloring"]
    col["1"] = col["0"] = 0
    problems = check_bundle(doc)
    assert "hash mismatch" in problems and any(p.startswith("color") for p in problems)


# -- sweep -------------------------------------------------------------------------------


def test_sweep_small_cap_is_empty(capsys, tmp_path):
    code, out, _ = run(capsys, "sweep", "plane", "--cap", "5", "--out", str(tmp_path))
    assert code == 0 and out.splitlines()[-1].startswith("0 rows")
    rows = list(csv.DictReader((tmp_path / "sweep_plane.csv").open()))
    assert rows == []
    assert (tmp_path / "sweep_plane.png").stat().st_size > 0


def test_sweep_cap_needs_acknowledgement(capsys):
    code, _, err = run(capsys, "sweep", "plane", "--cap", "40")
    assert code == 2 and "--allow-large" in err


def test_sweep_plane_writes_all_formats(capsys, tmp_path):
    code, out, _ = run(capsys, "sweep", "plane", "--qmax", "2", "--out", str(tmp_path))
    assert code == 0
    doc = json.loads((tmp_path / "sweep_plane.json").read_text())
    assert len(doc["rows"]) == 8 and all(r["pass"] and r["planar"] for r in doc["rows"])
    rows = list(csv.DictReader((tmp_path / "sweep_plane.csv").open()))
    assert [r["spec"] for r in rows] == [r["spec"] for r in doc["rows"]]


def test_sweep_marks_nondefault_sections(capsys, tmp_path):
    code, _, _ = run(capsys, "sweep", "plane", "--qmax", "1", "--types", "rr,ss", "--checks", "color", "--out", str(tmp_path))
    rows = json.loads((tmp_path / "sweep_plane.json").read_text())["rows"]
    assert len(rows) == 8
    assert all(r["nondefault"] == ("ss" in r["spec"]) for r in rows)


def test_sweep_parallel_keeps_spec_order(capsys):
    specs = sweep_specs("plane", 2)
    from multiwheels.cli import run_sweep

    serial = run_sweep(specs, ("color",), 1)
    parallel = run_sweep(specs, ("color",), 2)
    assert serial == parallel


def test_minor_command(capsys):
    code, out, _ = run(capsys, "minor", "--pattern", "O-", "--host", "base", "--expect", "present")
    assert code == 0 and json.loads(out)["found"]
    code, out, _ = run(capsys, "minor", "--pattern", "O", "--host", "base", "--expect", "present")
    assert code == 1


def test_report_writes_figures_and_tables(tmp_path, capsys):
    code, out, _ = run(capsys, "report", "--out", str(tmp_path), "base", "w:1rr-1rr-3rr")
    assert code == 0
    names = {p.name for p in tmp_path.iterdir()}
    assert {"report.csv", "report.json", "base.png", "base.dot", "base.bundle.json"} <= names
    assert (tmp_path / "w_1rr_1rr_3rr.png").stat().st_size > 0


def test_usage_error_exit_code(capsys):
    assert main([]) == 2
    assert main(["construct"]) == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "multiwheels", "construct", "K4", "--format", "graph6"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "C~"


def test_verify_all_contractions_flag(capsys):
    code, out, _ = run(capsys, "verify", "K4", "--checks", "critical", "--all-contractions")
    drops = json.loads(out)["checks"]["critical"]["contraction_drops"]
    assert code == 0 and len(drops) == 6 and set(drops.values()) == {3}
    code, out, _ = run(capsys, "verify", "base", "--checks", "critical")
    assert list(json.loads(out)["checks"]["critical"]["contraction_drops"]) == ["thick"]
