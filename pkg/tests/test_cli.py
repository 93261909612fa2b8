import io
import json
import re
import subprocess
import sys
from fractions import Fraction

import pytest

from fpoly.cli import run
from fpoly.gallery import example3_graph
from fpoly.graph_core import format_graph, parse_graph

EX1 = "vertex a 2\nvertex b 2\nedge a b 2\n"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def fractions_in(doc):
    if isinstance(doc, dict):
        for v in doc.values():
            yield from fractions_in(v)
    elif isinstance(doc, list):
        for v in doc:
            yield from fractions_in(v)
    elif isinstance(doc, str) and re.fullmatch(r"-?\d+/\d+", doc):
        yield doc


def test_gallery_verify_example1():
    code, out, _ = call("gallery", "verify", "example1")
    assert code == 0
    assert "PASS: x = (2, 0) satisfies the system without unit bounds" in out
    assert "outside the f-matching polytope" in out
    assert "FAIL" not in out


def test_params_example3(files):
    g = files("ex3.graph", format_graph(example3_graph(1)))
    code, out, _ = call("params", g)
    assert code == 0
    assert "delta_star: 3/2\n" in out
    assert "gamma_star: 5/3\n" in out


def test_qcheck_member_point(files):
    g = files("ex1.graph", EX1)
    x = files("x.point", "0 1\n1 1\n")
    code, out, _ = call("qcheck", g, x, "--variant", "edmonds-f")
    assert code == 0
    assert "0 violations" in out
    code, out, _ = call("member", g, x)
    assert code == 0 and "verdict: member" in out


def test_rejected_point_exits_1(files):
    g = files("ex1.graph", EX1)
    x = files("x.point", "0 2\n1 0\n")
    code, out, _ = call("member", g, x)
    assert code == 1 and "non-member" in out
    code, out, _ = call("qcheck", g, x, "--variant", "q-unit")
    assert code == 1 and "1 violations" in out
    code, _, _ = call("qcheck", g, x, "--variant", "q")
    assert code == 0


def test_json_schema_and_rationals_roundtrip(files):
    g = files("ex3.graph", format_graph(example3_graph(1)))
    for cmd in (["params", g], ["frac-index", g], ["bounds", g], ["index", g]):
        code, out, _ = call(*cmd, "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == f"fpoly.{cmd[0]}/1"
        for s in fractions_in(doc):
            q = Fraction(s)
            assert f"{q.numerator}/{q.denominator}" == s
    doc = json.loads(call("frac-index", g, "--format", "json")[1])
    assert doc["chi_star_f"] == "5/3"
    assert sum(Fraction(w["weight"]) for w in doc["weights"]) == Fraction(5, 3)


def test_decimal_flag(files):
    g = files("ex3.graph", format_graph(example3_graph(1)))
    out = call("params", g, "--decimal")[1]
    assert "gamma_star: 5/3  (approx 1.66667)" in out
    doc = json.loads(call("params", g, "--decimal", "--format", "json")[1])
    assert doc["gamma_star"] == "5/3" and abs(doc["gamma_star_approx"] - 5 / 3) < 1e-12


def test_output_is_byte_stable(files):
    g = files("ex1.graph", EX1)
    assert call("bounds", g, "--format", "json") == call("bounds", g, "--format", "json")


@pytest.mark.parametrize("argv_text", [
    ("params", None),
    ("params", "vertex a 1\nedge a a\n"),
    ("nonsense", None),
])
def test_errors_exit_2(files, argv_text):
    cmd, text = argv_text
    path = files("bad.graph", text) if text is not None else "/nonexistent/graph"
    code, _, err = call(cmd, path)
    assert code == 2
    if cmd == "params":
        assert err.startswith("fpoly: error:")


def test_malformed_point_and_cap(files):
    g = files("ex1.graph", EX1)
    bad = files("bad.point", "0 0.5\n")
    assert call("member", g, bad)[0] == 2
    big = files("big.graph", "vertex a 1\nvertex b 1\nedge a b 21\n")
    code, _, err = call("index", big)
    assert code == 2 and "cap" in err
    assert call("index", big, "--cap-edges", "21")[0] == 0


def test_gallery_list_and_unknown():
    code, out, _ = call("gallery", "list")
    assert code == 0 and "c4_chord" in out
    assert call("gallery", "verify", "petersen")[0] == 2
    assert call("gallery", "verify", "example2", "--k", "4")[0] == 2


def test_sweep_command():
    code, out, _ = call("sweep", "--count", "3", "--seed", "5", "--format", "json",
                        "--max-edges", "4", "--no-hunt")
    doc = json.loads(out)
    assert code == 0 and doc["failures"] == [] and doc["instances_tested"] == 7


def test_console_entry_point(tmp_path):
    p = tmp_path / "g.graph"
    p.write_text(EX1)
    res = subprocess.run([sys.executable, "-m", "fpoly", "index", str(p)],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "chi_f: 1" in res.stdout
    assert parse_graph(p.read_text()).edge_count == 2
