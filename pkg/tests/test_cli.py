import subprocess
import sys

import pytest

from tdgraph.cli import main

EXAMPLE_TEXT = "3 2 1\n1 4 ; 9 10\n2 3 ; 5 6\n7 12\n"


def kv(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line)


@pytest.fixture
def artifact(tmp_path, capsys):
    rep = tmp_path / "ex.txt"
    rep.write_text(EXAMPLE_TEXT)
    out = tmp_path / "ex.tdg"
    assert main(["build", "--input", str(rep), "--output", str(out)]) == 0
    capsys.readouterr()
    return out


def test_build_report(tmp_path, capsys):
    rep = tmp_path / "ex.txt"
    rep.write_text(EXAMPLE_TEXT)
    assert main(["build", "--input", str(rep), "--output", str(tmp_path / "a.tdg")]) == 0
    report = kv(capsys.readouterr().out)
    assert report["permutations"] == "3"
    assert int(report["bits.total"]) > 0
    assert "reference" in report and "bits.labels" in report


def test_build_is_byte_identical(tmp_path, capsys):
    rep = tmp_path / "ex.txt"
    rep.write_text(EXAMPLE_TEXT)
    for name in ("a", "b"):
        main(["build", "--input", str(rep), "--output", str(tmp_path / name)])
    assert (tmp_path / "a").read_bytes() == (tmp_path / "b").read_bytes()


def test_queries(artifact, capsys):
    assert main(["query", "--input", str(artifact), "adj", "1", "2"]) == 0
    assert capsys.readouterr().out == "true\n"
    main(["query", "--input", str(artifact), "adj", "2", "3"])
    assert capsys.readouterr().out == "false\n"
    main(["query", "--input", str(artifact), "neighbor", "1"])
    assert capsys.readouterr().out == "2 3\n"
    main(["query", "--input", str(artifact), "deg", "3"])
    assert capsys.readouterr().out == "1\n"


def test_query_stats(artifact, capsys):
    main(["query", "--input", str(artifact), "--stats", "neighbor", "1"])
    out = kv(capsys.readouterr().out)
    assert out["stats.reports"] == "4"


def test_isolated_vertex_degree(tmp_path, capsys):
    rep = tmp_path / "iso.txt"
    rep.write_text("2 1 1\n1 2\n\n")
    art = tmp_path / "iso.tdg"
    main(["build", "--input", str(rep), "--output", str(art)])
    capsys.readouterr()
    main(["query", "--input", str(art), "deg", "2"])
    assert capsys.readouterr().out == "0\n"


def test_single_vertex_build(tmp_path, capsys):
    rep = tmp_path / "one.txt"
    rep.write_text("1 1 1\n1 2\n")
    assert main(["build", "--input", str(rep), "--output", str(tmp_path / "one.tdg")]) == 0
    assert kv(capsys.readouterr().out)["bits.labels"] == "0"


def test_exit_codes(artifact, tmp_path, capsys):
    assert main(["query", "--input", str(artifact), "deg", "9"]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("2 1 2\n1 2 3\n1 2 3 4\n")
    assert main(["build", "--input", str(bad), "--output", str(tmp_path / "x")]) == 2
    assert "line 2" in capsys.readouterr().err
    corrupt = tmp_path / "corrupt.tdg"
    blob = bytearray(artifact.read_bytes())
    blob[30] ^= 1
    corrupt.write_bytes(bytes(blob))
    assert main(["query", "--input", str(corrupt), "adj", "1", "2"]) == 2
    assert "checksum" in capsys.readouterr().err
    assert main(["query", "--input", str(artifact), "adj", "1"]) == 1
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 1


def test_enumerate(capsys):
    assert main(["enumerate", "--n", "3", "--m", "2", "--d", "1", "--t", "1"]) == 0
    out = capsys.readouterr().out
    assert "3 specs, 3 distinct" in out
    assert kv(out)["injective"] == "true"
    assert main(["enumerate", "--n", "9", "--m", "2", "--d", "1", "--t", "3", "--budget", "10"]) == 2


def test_gen_random_is_deterministic(capsys):
    main(["gen", "random", "--n", "20", "--t", "2", "--d", "2", "--seed", "5"])
    first = capsys.readouterr().out
    main(["gen", "random", "--n", "20", "--t", "2", "--d", "2", "--seed", "5"])
    assert capsys.readouterr().out == first
    assert first.startswith("20 2 2\n")


def test_gen_lowerbound_from_spec(tmp_path, capsys):
    spec = tmp_path / "spec.txt"
    spec.write_text("3 2 1 1\n1 2\n")
    assert main(["gen", "lowerbound", "--input", str(spec)]) == 0
    lines = [ln for ln in capsys.readouterr().out.splitlines() if not ln.startswith("#")]
    assert lines == ["3 1 1", "1 2", "3 4", "1 4"]


def test_bmm(tmp_path, capsys):
    eye = tmp_path / "eye.txt"
    eye.write_text("3 3\n100\n010\n001\n")
    assert main(["bmm", str(eye)]) == 0
    assert capsys.readouterr().out == "3 3\n100\n010\n001\n"
    b = tmp_path / "b.txt"
    b.write_text("2 2\n11\n00\n")
    c = tmp_path / "c.txt"
    c.write_text("2 3\n100\n001\n")
    out = tmp_path / "bc.txt"
    assert main(["bmm", str(b), str(c), "--output", str(out)]) == 0
    assert out.read_text() == "2 3\n101\n000\n"


def test_bench(capsys):
    assert main(["bench", "--n", "64", "128", "--t", "2", "--d", "2", "--queries", "50", "--kernel", "python"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[0].split() == ["kernel", "n", "t", "d", "build_ms", "adj_ns", "neighbor_ns", "bits", "bits_per_dtn_log_n"]
    assert len(rows) == 3


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tdgraph", "enumerate", "--n", "2", "--m", "1", "--d", "1", "--t", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert "1 specs, 1 distinct" in res.stdout
