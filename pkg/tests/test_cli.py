"""Command-line front end: outputs, file formats, exit codes."""

from __future__ import annotations

import subprocess
import sys

import pytest

from idcodes import (
    Graph,
    load_graph,
    parse_graph,
    serialize_graph,
)
from idcodes.cli import main


def write_graph(tmp_path, name: str, g: Graph) -> str:
    p = tmp_path / name
    p.write_text(serialize_graph(g))
    return str(p)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def test_verify_identifying_code(tmp_path, capsys):
    gp = write_graph(tmp_path, "p5.graph", path_graph(5))
    cp = tmp_path / "c.code"
    cp.write_text("0 2 4\n")
    assert main(["verify", gp, "--code", str(cp)]) == 0
    out = capsys.readouterr().out
    assert "identifying code of size 3" in out
    assert "holds" in out


def test_verify_violations_and_exit_one(tmp_path, capsys):
    gp = write_graph(tmp_path, "k2.graph", Graph(2, [(0, 1)]))
    cp = tmp_path / "c.code"
    cp.write_text("0 1\n")
    assert main(["verify", gp, "--code", str(cp)]) == 1
    out = capsys.readouterr().out
    assert "unseparated 0 1" in out


def test_verify_code_out_of_range(tmp_path, capsys):
    gp = write_graph(tmp_path, "p3.graph", path_graph(3))
    cp = tmp_path / "c.code"
    cp.write_text("0 9\n")
    assert main(["verify", gp, "--code", str(cp)]) == 4


def test_exact_output(tmp_path, capsys):
    gp = write_graph(tmp_path, "p5.graph", path_graph(5))
    assert main(["exact", gp]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "gamma 3"
    assert out[1].startswith("code ")
    assert out[3] == "optimal yes"


def test_exact_on_twins_exits_domain(tmp_path, capsys):
    gp = write_graph(tmp_path, "k2.graph", Graph(2, [(0, 1)]))
    assert main(["exact", gp]) == 4


def test_construct_certificate_file(tmp_path, capsys):
    gp = write_graph(tmp_path, "c6.graph", cycle_graph(6))
    out = tmp_path / "c6.cert"
    assert main(["construct", gp, "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("idcodes-certificate v1\n")
    assert "code-size 3" in text
    assert "verified yes" in text


def test_construct_rejects_triangles(tmp_path, capsys):
    g = Graph(3, [(0, 1), (1, 2), (0, 2)])
    gp = write_graph(tmp_path, "t.graph", g)
    assert main(["construct", gp]) == 4


def test_parse_error_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.graph"
    p.write_text("3 1\nnot an edge\n")
    assert main(["construct", str(p)]) == 3
    assert main(["construct", str(tmp_path / "missing.graph")]) == 3


def test_usage_error_exit_code(tmp_path):
    with pytest.raises(SystemExit) as ei:
        main(["verify", "nowhere.graph"])  # --code is required
    assert ei.value.code == 4


def test_near_construct_with_deletions_file(tmp_path, capsys):
    g = Graph(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
    gp = write_graph(tmp_path, "net.graph", g)
    dp = tmp_path / "dels.txt"
    dp.write_text("# the triangle edge\n0 1\n")
    out = tmp_path / "net.cert"
    assert main(["near-construct", gp, str(dp), "--out", str(out)]) == 0
    assert "CorollaryPatch" in out.read_text()


def test_family_stdout_and_directory(tmp_path, capsys):
    assert main(["family", "T3"]) == 0
    out = capsys.readouterr().out
    assert "T3" in out and "code " in out
    outdir = tmp_path / "fam"
    assert main(["family", "all", "--out", str(outdir)]) == 0
    files = sorted(p.name for p in outdir.glob("*.graph"))
    assert len(files) == 15
    manifest = (outdir / "manifest.tsv").read_text().splitlines()
    assert manifest[0] == "tag\tn\tm\tgamma\tcode"
    assert len(manifest) == 16
    # Every emitted pair re-verifies through the CLI.
    for gf in files:
        cf = gf.replace(".graph", ".code")
        code = main(
            ["verify", str(outdir / gf), "--code", str(outdir / cf)]
        )
        assert code == 0
        capsys.readouterr()


def test_family_unknown_tag():
    assert main(["family", "T99"]) == 4


def test_random_roundtrip_and_determinism(tmp_path, capsys):
    out1 = tmp_path / "a.graph"
    out2 = tmp_path / "b.graph"
    assert main(["random", "12", "--seed", "9", "--out", str(out1)]) == 0
    assert main(["random", "12", "--seed", "9", "--out", str(out2)]) == 0
    assert out1.read_text() == out2.read_text()
    g = load_graph(str(out1))
    assert g.n == 12
    assert parse_graph(serialize_graph(g)) == g


def test_random_to_stdout(capsys):
    assert main(["random", "8", "--seed", "1"]) == 0
    g = parse_graph(capsys.readouterr().out)
    assert g.n == 8


def test_report_over_directory(tmp_path, capsys):
    d = tmp_path / "batch"
    d.mkdir()
    (d / "c6.graph").write_text(serialize_graph(cycle_graph(6)))
    (d / "p7.graph").write_text(serialize_graph(path_graph(7)))
    net = Graph(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
    (d / "net.graph").write_text(serialize_graph(net))
    tsv = tmp_path / "table.tsv"
    assert main(["report", str(d), "--out", str(tsv)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].split() == [
        "file", "n", "m", "delta", "code_size", "bound_num", "bound_den",
        "slack", "gamma", "status",
    ]
    assert [line.split()[0] for line in out[1:]] == [
        "c6.graph", "net.graph", "p7.graph",
    ]
    assert all(line.split()[-1] == "ok" for line in out[1:])
    rows = tsv.read_text().splitlines()
    assert len(rows) == 4
    # gamma column filled at these sizes, slack never positive
    for row in rows[1:]:
        cols = row.split("\t")
        assert int(cols[7]) <= 0
        assert cols[8] != "-"


def test_report_empty_directory(tmp_path, capsys):
    d = tmp_path / "empty"
    d.mkdir()
    assert main(["report", str(d)]) == 0


def test_console_entry_point(tmp_path):
    gp = write_graph(tmp_path, "p5.graph", path_graph(5))
    proc = subprocess.run(
        [sys.executable, "-m", "idcodes.cli", "exact", gp],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("gamma 3")
