import io
import json
import subprocess
import sys

import pytest

from weyltype.cli import dispatch


def run(*argv):
    out = io.StringIO()
    code = dispatch(list(argv), out)
    return code, out.getvalue()


def test_growth_csv():
    code, out = run("growth", "--preset", "poly3", "--n", "6", "--format", "csv")
    assert code == 0
    assert out == "n,dim\n1,4\n2,10\n3,20\n4,35\n5,56\n6,84\n"


def test_iso_text():
    code, out = run("iso", "--rank", "1", "--p1", "2", "--t1", "T", "--p2", "-2", "--t2", "T")
    assert code == 0 and "ISO" in out and "NOT" not in out


def test_center_weyl():
    code, out = run("center", "--preset", "weyl", "--degree", "5")
    assert code == 0 and "basis: {1}" in out


def test_json_report_schema():
    code, out = run("gkdim", "--preset", "weyl", "--n", "6", "--format", "json")
    report = json.loads(out)
    assert code == 0
    assert report["schema"] == "report_v1"
    assert report["results"]["table"]["dims"] == [3, 6, 10, 15, 21, 28]
    assert report["results"]["estimate"]["value"] == 2 and report["exact"]
    assert json.loads(json.dumps(report)) == report


def test_exit_codes():
    assert run("confluence", "--preset", "nonconfluent")[0] == 1
    assert run("confluence", "--preset", "so3")[0] == 0
    assert run("growth", "--preset", "nope")[0] == 2
    assert run("growth", "--bogus")[0] == 2
    assert run("center", "--preset", "poly3", "--degree", "3", "--cap", "5")[0] == 3
    assert run("growth", "--preset", "poly3", "--n", "8", "--cap", "30")[0] == 3
    assert run("center", "--format", "csv", "--preset", "weyl")[0] == 2


def test_bad_document_exit_code(tmp_path):
    f = tmp_path / "bad.alg.json"
    f.write_text('{"mode": "pbw", "generators": ["x"], "oops": 1}')
    assert run("parse", "--file", str(f))[0] == 2


@pytest.mark.parametrize("argv", [
    ["properties"],
    ["na-center", "--preset", "na-example-31"],
    ["na-growth", "--preset", "weyl", "--n", "3"],
    ["flexibility", "--preset", "weyl"],
    ["injectivity", "--preset", "weyl"],
    ["ore", "--preset", "ore-paper"],
    ["ore", "--preset", "solvable2", "--sigma", "x=x + 1", "--delta", "x=-2*y"],
    ["tensor", "--preset", "poly1", "--other", "poly2"],
    ["specialize", "--preset", "na-example-31"],
    ["specialize", "--preset", "weyltype-r1", "--value", "2"],
    ["automorphism", "--preset", "weyl", "--scale", "x=2", "--scale", "d=1/2"],
    ["parse", "--preset", "so3", "--emit"],
])
def test_commands_succeed(argv):
    code, out = run(*argv, "--format", "json")
    assert code == 0, out
    assert json.loads(out)["command"] == argv[0]


def test_kappa_seed_file(tmp_path):
    f = tmp_path / "seed.json"
    f.write_text('["1", "x"]')
    code, out = run("flexibility", "--preset", "weyl", "--kappa-seed", str(f), "--format", "json")
    assert code == 0 and not json.loads(out)["results"]["flexible"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "weyltype", "iso", "--p1", "1", "--t1", "a",
                           "--p2", "1", "--t2", "b"], capture_output=True, text=True)
    assert proc.returncode == 0 and "NOT ISO" in proc.stdout
