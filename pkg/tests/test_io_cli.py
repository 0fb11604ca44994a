import io
import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sftgroups import cli
from sftgroups.classify import catalog_group
from sftgroups.io import ParseError, catalog_file, format_pattern, parse_pattern, write_catalog
from sftgroups.pattern import PatternGroup, minimize, restriction_order
from sftgroups.tree import REVERSED, TreeAutomorphism

FIXTURES = Path(__file__).parent / "fixtures"


def run(*argv):
    out = io.StringIO()
    code = cli.main([str(a) for a in argv], out)
    return code, out.getvalue()


@pytest.fixture
def p123(tmp_path):
    path = tmp_path / "P_123.patgrp"
    path.write_text(catalog_file("P_123").read_text())
    return path


def write(tmp_path, text, name="g.patgrp"):
    path = tmp_path / name
    path.write_text(text)
    return path


# -- parsing ---------------------------------------------------------------

@pytest.mark.parametrize("text,line,column", [
    ("", 1, 1),
    ("2\nleafperms:\n", 1, 1),
    ("2 x\nleafperms:\n", 1, 3),
    ("2 2\n", 2, 1),
    ("2 2\nperms:\n", 2, 1),
    ("2 2\nleafperms:\n(1,2)(3,\n", 3, 6),
    ("2 2\nleafperms:\n  (1,2\n", 3, 3),
    ("# comment\n2 2\nleafperms:\n(1,5)\n", 4, 1),
    ("2 2\nleafperms:\n(1,3)\n", 3, 1),
    ("2 1\ngenerators:\n2 1\n0 0\n", 4, 1),
    ("2 1\ngenerators:\n2 2\n1 0\n", 3, 1),
    ("2 2\ngenerators:\n2 2\n1 0\n", 3, 1),
])
def test_parse_errors_locate_the_problem(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_pattern(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert str(info.value).startswith(f"line {line}, column {column}: ")


def test_malformed_cycle_message():
    with pytest.raises(ParseError) as info:
        parse_pattern("2 2\nleafperms:\n(1,2)(3,\n")
    assert "malformed cycle notation" in info.value.reason


def test_generators_section():
    text = "2 2  # binary, depth 2\ngenerators:\n2 2\n1 0\n0 1\n0 1\n\n2 2\n0 1\n1 0\n1 0\n"
    Q = parse_pattern(text)
    assert len(Q) == 4 and Q.is_abelian()


def test_empty_leafperms_is_trivial():
    assert parse_pattern("2 3\nleafperms:\n").is_trivial()


portraits3 = st.lists(st.sampled_from([(0, 1), (1, 0)]), min_size=7, max_size=7)


@settings(max_examples=40, deadline=None)
@given(st.lists(portraits3, min_size=0, max_size=3), st.sampled_from(["leafperms", "generators"]))
def test_format_round_trip(portraits, style):
    Q = PatternGroup(2, 3, [TreeAutomorphism(2, 3, p) for p in portraits])
    assert parse_pattern(format_pattern(Q, style)) == Q


def test_reversed_numbering_round_trip():
    Q = catalog_group((2, 1, 3))
    text = format_pattern(Q, numbering=REVERSED)
    assert parse_pattern(text, REVERSED) == Q
    assert text != format_pattern(Q)


def test_write_catalog(tmp_path):
    paths = write_catalog(tmp_path)
    assert len(paths) == 32
    for p in paths:
        assert p.read_text() == catalog_file(p.stem).read_text()


# -- CLI -------------------------------------------------------------------

def test_analyze_json_snapshot(p123):
    code, text = run("analyze", p123, "--format", "json")
    assert code == cli.EXIT_OK
    assert json.loads(text) == json.loads((FIXTURES / "P_123_analyze.json").read_text())


def test_analyze_human(p123):
    code, text = run("analyze", p123)
    assert code == 0
    assert "verdict: FG (level 6)" in text
    assert "= 4096 * 32^(k + ... + k^(n-4))" in text
    assert "Hausdorff dimension: 5/8" in text


def test_analyze_undecided(p123):
    code, text = run("analyze", p123, "--max-n", 5)
    assert code == cli.EXIT_UNDECIDED
    assert "Undecided up to level 5" in text


def test_analyze_trivial_and_csv(tmp_path):
    path = write(tmp_path, "2 2\nleafperms:\n(1,2)\n")
    code, text = run("analyze", path, "--format", "csv")
    assert code == 0
    assert text.splitlines()[1].startswith("0,2,1,1,Trivial,")


@pytest.mark.parametrize("argv", [
    ["analyze", "missing.patgrp"],
    ["analyze", "BAD"],
    ["analyze", "GOOD", "--max-n", "1"],
    ["analyze", "GOOD", "--max-n", "0"],
    ["restrict", "GOOD", "--level", "1"],
    ["nonsense"],
])
def test_input_errors(tmp_path, capsys, argv):
    bad = write(tmp_path, "2 2\nleafperms:\n(1,2\n", "bad.patgrp")
    good = write(tmp_path, "2 2\nleafperms:\n(1,3)(2,4)\n", "good.patgrp")
    argv = [{"BAD": bad, "GOOD": good}.get(a, a) for a in argv]
    assert run(*argv)[0] == cli.EXIT_INPUT


def test_parse_error_message_on_stderr(tmp_path, capsys):
    bad = write(tmp_path, "2 2\nleafperms:\n(1,2\n")
    run("analyze", bad)
    assert "line 3, column 1" in capsys.readouterr().err


def test_census_commands(tmp_path):
    code, text = run("census", "--depth", 2, "--format", "csv", "--jobs", 1)
    assert code == 0 and len(text.strip().splitlines()) == 7
    code, text = run("census", "--depth", 3, "--max-n", 3, "--jobs", 1)
    assert code == cli.EXIT_UNDECIDED and "undecided:       10" in text
    assert run("census", "--depth", 4)[0] == cli.EXIT_SCALE
    out = tmp_path / "census.json"
    code, _ = run("census", "--depth", 2, "--format", "json", "--output", out, "--jobs", 1)
    assert code == 0 and json.loads(out.read_text())["minimal_count"] == 6


def test_census_of_files(tmp_path, p123):
    other = write(tmp_path, catalog_file("P_111").read_text(), "P_111.patgrp")
    code, text = run("census", "--groups", p123, other, "--format", "json", "--jobs", 1)
    data = json.loads(text)
    assert code == 0 and data["verdicts"]["FG"] == {"6": 2}
    small = write(tmp_path, "2 2\nleafperms:\n(1,3)(2,4)\n", "small.patgrp")
    assert run("census", "--groups", p123, small)[0] == cli.EXIT_INPUT


def test_catalog_listing():
    code, text = run("catalog", "depth4")
    assert code == 0 and len(text.splitlines()) == 32 and text.startswith("P_111\t")


def test_minimize_is_idempotent(tmp_path):
    path = write(tmp_path, "2 3\nleafperms:\n(1,5)(2,6)(3,7)(4,8)\n(1,2)(5,6)\n")
    code, text = run("minimize", path)
    assert code == 0
    Q = parse_pattern(text)
    assert Q == minimize(parse_pattern(path.read_text())) and len(Q) == 2
    again = write(tmp_path, text, "again.patgrp")
    assert run("minimize", again)[1] == text
    code, text = run("minimize", path, "--style", "generators")
    assert parse_pattern(text) == Q


def test_restrict_matches_formula(p123):
    code, text = run("restrict", p123, "--level", 5, "--format", "json")
    data = json.loads(text)
    assert code == 0
    assert data["order"] == data["formula"] == restriction_order(catalog_group((1, 2, 3)), 5) == 4194304


def test_graph_and_dot(tmp_path):
    path = write(tmp_path, "2 2\nleafperms:\n(1,2)(3,4)\n(1,3)(2,4)\n")
    code, text = run("graph", path, "--format", "json")
    assert code == 0 and json.loads(text) == {"vertices": 4, "arcs": 16, "stuck": 0}
    code, text = run("graph", path, "--dot")
    assert text.startswith("digraph") and text.count("->") == 16
    stuck = write(tmp_path, "2 2\nleafperms:\n(1,2)\n", "stuck.patgrp")
    assert "some letter: 1" in run("graph", stuck)[1]


def test_hausdorff(p123, tmp_path):
    assert run("hausdorff", p123)[1].strip() == "5/8"
    finite = write(tmp_path, "2 2\nleafperms:\n(1,3)(2,4)\n")
    assert run("hausdorff", finite)[1].strip() == "0"


def test_console_entry_point(p123):
    proc = subprocess.run([sys.executable, "-m", "sftgroups.cli", "hausdorff", str(p123)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "5/8"
    proc = subprocess.run([sys.executable, "-m", "sftgroups.cli", "census", "--depth", "9"],
                          capture_output=True, text=True)
    assert proc.returncode == cli.EXIT_SCALE and "error:" in proc.stderr
