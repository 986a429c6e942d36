import json
import subprocess
import sys

import pytest

from graphonlab.cli import main
from graphonlab.reports import payload_bytes


def run(*argv):
    return main(list(argv))


def test_generate_linegraph_density(tmp_path, capsys):
    star, lg = tmp_path / "s.el", tmp_path / "l.el"
    assert run("generate", "star", "--n", "100", "--out", str(star)) == 0
    assert run("linegraph", str(star), "--out", str(lg)) == 0
    capsys.readouterr()
    assert run("density", str(lg)) == 0
    assert capsys.readouterr().out.split()[0] == "1"


def test_density_json_carries_manifest(tmp_path):
    g, out = tmp_path / "c.el", tmp_path / "d.json"
    run("generate", "complete", "--n", "9", "--out", str(g))
    assert run("density", str(g), "--line", "--out", str(out)) == 0
    doc = json.loads(out.read_text())
    assert doc["payload"]["density"]["exact"] == "2/5"
    assert {"seed", "rng_algorithm", "toolkit_version", "timestamp", "parameters"} <= set(doc["manifest"])


def test_graphon_commands(tmp_path, capsys):
    bd, c = tmp_path / "bd.sg", tmp_path / "c.sg"
    run("graphon", "blockdiag", "1/2,1/2", "--out", str(bd))
    run("graphon", "constant", "1", "--out", str(c))
    capsys.readouterr()
    assert run("cutnorm", str(bd), "--diff", str(c)) == 0
    assert capsys.readouterr().out.split()[0] == "1/2"
    assert run("homdensity", "--pattern", "triangle", str(bd)) == 0
    assert capsys.readouterr().out.split()[0] == "1/4"
    assert run("sample", str(bd), "--n", "20", "--seed", "1") == 0
    assert capsys.readouterr().out.startswith("graphonlab-edgelist v1")


def test_sqcheck_family(capsys):
    assert run("sqcheck", "--family", "star", "--ns", "100,200,300,400,500") == 0
    out = capsys.readouterr().out
    assert "sq_class = holds" in out and "line_density_class = dense" in out


@pytest.mark.parametrize("argv,code", [
    (["generate", "regular", "--n", "5", "--r", "3"], 2),
    (["density", "/nonexistent/file.el"], 2),
    (["generate", "cycle", "--n", "2"], 3),
    (["experiment", "stars", "--k", "5", "--n-per-star", "500"], 4),
    (["generate", "pa", "--n", "10", "--s0", "2", "--alpha", "1"], 3),
])
def test_exit_codes(argv, code, capsys):
    assert run(*argv) == code
    assert "error" in capsys.readouterr().err


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.el"
    bad.write_text("graphonlab-edgelist v1\nn 3\n0 q\n")
    assert run("density", str(bad)) == 2
    assert "3" in capsys.readouterr().err


def test_argparse_error_exit_code():
    with pytest.raises(SystemExit) as info:
        run("generate", "nonsense")
    assert info.value.code == 2


def test_experiment_determinism(tmp_path):
    out = tmp_path / "a.json"
    args = ["experiment", "stars", "--k", "1,2", "--n-per-star", "30", "--seeds", "0:3",
            "--out", str(out)]
    run(*args)
    first = out.read_text()
    run(*args)
    assert payload_bytes(json.loads(first)) == payload_bytes(json.loads(out.read_text()))


def test_csv_output(tmp_path):
    out = tmp_path / "er.csv"
    run("experiment", "er", "--ns", "50,200", "--replicates", "4", "--format", "csv", "--out", str(out))
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# manifest ")
    assert lines[1].startswith("n,c,")
    assert lines[2].split(",")[7] == "NA"


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "graphonlab.cli", "generate", "path", "--n", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[:2] == ["graphonlab-edgelist v1", "n 4"]
