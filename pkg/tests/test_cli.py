"""Command-line front end: formats, exit codes, cache and config handling."""
import csv
import io
import json
import os

import pytest

from mapenum import cli
from mapenum.appell import CheckReport


@pytest.fixture(autouse=True)
def cache(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv(cli.CACHE_ENV, str(d))
    return d


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_counts_csv_and_cache(capsys, cache):
    code, out, _ = run(capsys, "counts", "-j", "3", "-g", "0", "--max-vertices", "10")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["value_num"] for r in rows][:2] == ["12", "5184"]
    assert rows[0]["note"].endswith("table=2")
    files = list(cache.iterdir())
    assert len(files) == 1 and files[0].read_text() == out
    assert not [f for f in cache.iterdir() if f.name.endswith(".tmp")]
    # second call is served from the cache, byte-identical
    code, out2, _ = run(capsys, "counts", "-j", "3", "-g", "0", "--max-vertices", "10")
    assert out2 == out and len(list(cache.iterdir())) == 1


def test_counts_all_modes_json(capsys):
    code, out, _ = run(capsys, "counts", "-j", "3", "-g", "1", "--max-vertices", "4", "--modes", "all",
                       "--format", "json", "--no-cache")
    assert code == 0
    doc = json.loads(out)
    by = {(d["mode"], d["vertices"]): d["value"] for d in doc}
    assert by[("closed-form", 4)] == "4536" == by[("oracle", 4)]
    assert by[("residue-faithful", 4)] == "9720"
    assert any(d["table_value"] == "3/2" for d in doc)


def test_counts_usage_errors(capsys):
    assert run(capsys, "counts", "-j", "3", "-g", "4")[0] == 2
    assert run(capsys, "counts")[0] == 2
    assert run(capsys, "counts", "-j", "3", "--format", "svg")[0] == 2
    assert run(capsys, "counts", "-j", "3", "--max-vertices", "0")[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_output_file_atomic(capsys, tmp_path):
    target = tmp_path / "out" / "t.csv"
    code, out, _ = run(capsys, "counts", "-j", "5", "--max-vertices", "4", "-o", str(target), "--no-cache")
    assert code == 0 and out == ""
    assert target.read_text().startswith("valence,genus")


def test_config_file_and_precedence(capsys, tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("# defaults\nvalence = 5\nmax-vertices = 4\nformat = json\n")
    code, out, _ = run(capsys, "counts", "--config", str(cfg), "--no-cache")
    assert code == 0 and json.loads(out)[0]["valence"] == 5
    code, out, _ = run(capsys, "counts", "--config", str(cfg), "--format", "csv", "-j", "3", "--no-cache")
    assert code == 0 and out.startswith("valence,") and "\n3,0,2," in out
    cfg.write_text("nonsense = 1\n")
    assert run(capsys, "counts", "-j", "3", "--config", str(cfg))[0] == 2
    cfg.write_text("modes = sideways\n")
    assert run(capsys, "counts", "-j", "3", "--config", str(cfg))[0] == 2
    cfg.write_text("just a line\n")
    assert run(capsys, "counts", "-j", "3", "--config", str(cfg))[0] == 2


def test_series_outputs(capsys):
    code, out, _ = run(capsys, "series", "-j", "3", "--name", "e1", "-M", "3", "--no-cache")
    doc = json.loads(out)
    assert code == 0 and doc["coefficients"] == ["0", "3/2", "189", "26892"]
    code, out, _ = run(capsys, "series", "-j", "4", "--name", "e0", "-M", "2", "--format", "csv", "--no-cache")
    assert out.splitlines()[:3] == ["power,coeff_num,coeff_den,coeff", "0,0,1,0", "1,-2,1,-2"]
    for name in ("y0", "z0", "u0", "e0", "e1-table", "e2", "f1", "h1", "h2"):
        assert run(capsys, "series", "-j", "3", "--name", name, "-M", "3", "--no-cache")[0] == 0
    assert run(capsys, "series", "-j", "5", "--name", "e2", "--no-cache")[0] == 2
    assert run(capsys, "series", "-j", "4", "--name", "y0", "--no-cache")[0] == 2


def test_curve_svg_and_csv(capsys):
    code, out, _ = run(capsys, "curve", "-j", "5")
    assert code == 0 and out.startswith("<svg") and "turning point" in out and "Shat = 0" in out
    code, out, _ = run(capsys, "curve", "-j", "3", "--format", "csv", "--samples", "5")
    assert "3/2,2/1029" in out
    code, out, _ = run(capsys, "curve", "-j", "3", "--y-range", "2", "1")
    assert code == 0 and "polyline" not in out
    assert run(capsys, "curve", "-j", "4")[0] == 2
    assert run(capsys, "curve", "-j", "3", "--format", "json")[0] == 2


def test_asymptotics(capsys):
    code, out, _ = run(capsys, "asymptotics", "--what", "critical")
    rows = dict(line.split(",")[:2] for line in out.splitlines()[1:])
    assert code == 0 and rows["z0c"].startswith("1.7320508075688772")
    assert all(line.endswith("float precision=64") for line in out.splitlines()[1:])
    code, out, _ = run(capsys, "asymptotics", "--what", "zeta", "--format", "json")
    assert len(json.loads(out)) == 6
    code, out, _ = run(capsys, "asymptotics", "--what", "ratios", "-g", "2", "--kind", "eg", "--mmin", "3",
                       "--mmax", "6", "--precision", "80")
    assert code == 0 and "float precision=80" in out
    assert run(capsys, "asymptotics", "-j", "4")[0] == 2


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "-j", "3", "-n", "4", "--no-cache")
    doc = json.loads(out)
    assert code == 0 and doc["connected_by_genus"] == [5184, 4536] and doc["disconnected"] == 675
    code, out, _ = run(capsys, "oracle", "-j", "4", "-n", "1", "--format", "csv", "--seed", "7", "--no-cache")
    assert "4,1,0,1,1" in out
    assert run(capsys, "oracle", "-j", "3", "-n", "3")[0] == 2
    assert run(capsys, "oracle", "-j", "3", "-n", "10")[0] == 2


def test_verify_pass_and_fail(capsys, monkeypatch):
    code, out, _ = run(capsys, "verify", "--suite", "tables")
    assert code == 0 and out.count("[PASS]") == 6
    from mapenum import suites

    def broken(args):
        yield CheckReport("always fails", False, ["deliberate"])
    monkeypatch.setitem(suites.SUITES, "tables", broken)
    code, out, _ = run(capsys, "verify", "--suite", "tables")
    assert code == 1 and "[FAIL] always fails" in out and "first failure" in out


def test_verify_adjudication_report(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "adjudicate-genus1")
    assert code == 0 and "verdict: the full-mode e1" in out


def test_cache_key_and_atomic_write(tmp_path):
    a = cli.cache_key({"cmd": "x", "j": 3})
    assert a == cli.cache_key({"j": 3, "cmd": "x"}) and a != cli.cache_key({"cmd": "x", "j": 5})
    p = tmp_path / "d" / "f.txt"
    cli.atomic_write(p, "hello")
    assert p.read_text() == "hello" and os.listdir(p.parent) == ["f.txt"]


def test_version(capsys):
    assert cli.main(["--version"]) == 0
