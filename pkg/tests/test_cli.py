import io

import pytest

from conftest import CORPUS
from dectree import invariants as inv
from dectree.cli import main
from dectree.textio import parse

EIGHT = str(CORPUS / "split_eight_arrows.dtree")
EN = str(CORPUS / "ensplit_five_vertices.dtree")
UNIT = str(CORPUS / "decomposition_unit.dtree")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def keyed(text):
    return dict(line.split(": ", 1) for line in text.splitlines() if ": " in line)


def test_invariants_of_eight_arrow_tree(capsys):
    code, out, _ = run(capsys, "invariants", EIGHT)
    assert code == 0
    assert out.splitlines() == ["M: -9", "F: 5", "g: 3", "delta: 7"]


def test_invariants_per_node_and_degree(capsys):
    code, out, _ = run(capsys, "invariants", UNIT, "--per-node")
    values = keyed(out)
    assert code == 0 and values["root"] == "v0"
    assert int(values["deg"]) == int(values["N[v0]"])


def test_validate(capsys, tmp_path):
    assert run(capsys, "validate", EIGHT)[:2] == (0, "valid\n")
    bad = tmp_path / "bad.dtree"
    bad.write_text("vertex v\narrow a f=1\narrow b f=1\nedge v a qA=2\nedge v b qA=4\n")
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1 and out.startswith("clause (vi) at v:")


def test_split_writes_two_files(capsys, tmp_path):
    prefix = str(tmp_path / "eight")
    code, out, _ = run(capsys, "split", EIGHT, "--edge", "b,c", "-o", prefix)
    values = keyed(out)
    assert code == 0 and values["degree"] == "3"
    first, second = (parse(open(values[k]).read()) for k in ("first", "second"))
    assert (inv.multiplicity(first), inv.gcd_sum(first)) == (0, 6)
    assert (inv.multiplicity(second), inv.gcd_sum(second)) == (-9, 5)


def test_split_default_prefix_next_to_input(capsys, tmp_path):
    src = tmp_path / "ex.dtree"
    src.write_text(open(EIGHT).read())
    code, out, _ = run(capsys, "split", str(src), "--edge", "b,c")
    assert code == 0 and keyed(out)["first"] == str(tmp_path / "ex.split.1.dtree")


def test_ensplit_reports_type(capsys, tmp_path):
    code, out, _ = run(capsys, "ensplit", EN, "--edge", "B,C", "-o", str(tmp_path / "en"))
    values = keyed(out)
    assert code == 0 and (values["degree"], values["type"]) == ("2", "0")


def test_split_at_vertex(capsys, tmp_path):
    code, out, _ = run(capsys, "split", EIGHT, "--vertex", "c", "--part", "b;d,g", "-o", str(tmp_path / "v"))
    assert code == 0 and "degree" in keyed(out)


def test_simplify(capsys, tmp_path):
    code, out, _ = run(capsys, "simplify", EIGHT)
    t = parse(out)
    assert code == 0 and (inv.multiplicity(t), inv.gcd_sum(t)) == (-9, 5)
    target = tmp_path / "s.dtree"
    assert run(capsys, "simplify", EIGHT, "-o", str(target))[0] == 0
    assert parse(target.read_text()) == t


def test_subtree(capsys):
    code, out, _ = run(capsys, "subtree", UNIT, "--arrows", "a1,a6")
    sub = parse(out)
    assert code == 0 and sorted(sub.tree.nonzero_arrows) == ["a1", "a6"]


def test_decompose(capsys, tmp_path):
    code, out, _ = run(capsys, "decompose", UNIT, "-o", str(tmp_path / "p"))
    values = keyed(out)
    assert code == 0 and values["balanced"] == "yes"
    assert values["g"] == values["rhs"]
    assert len(list(tmp_path.glob("p.*.dtree"))) == 2


def test_check(capsys):
    code, out, _ = run(capsys, "check", "--suite", "parity", "--seed", "4", "--count", "200")
    values = keyed(out)
    assert code == 0 and values["failures"] == "0" and values["count"] == "200"
    code, out, _ = run(capsys, "check", "--list")
    assert code == 0 and "genus-formula:" in out


def test_dot(capsys):
    code, out, _ = run(capsys, "dot", EIGHT)
    assert code == 0 and out.startswith("digraph")


def test_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(open(EIGHT).read()))
    assert run(capsys, "invariants", "-")[1].startswith("M: -9")


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["split", EIGHT],
        ["split", EIGHT, "--edge", "b"],
        ["split", EIGHT, "--vertex", "c"],
        ["split", EIGHT, "--vertex", "c", "--part", "b"],
        ["invariants", "/no/such/file.dtree"],
        ["check"],
        ["check", "--suite", "nope"],
        ["subtree", UNIT, "--arrows", ","],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["split", EIGHT, "--edge", "b,zz"],
        ["split", EIGHT, "--vertex", "c", "--part", "b;d"],
        ["subtree", EIGHT, "--arrows", "a0"],
        ["subtree", UNIT, "--arrows", "P0z"],
        ["decompose", EIGHT],
    ],
)
def test_domain_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err.startswith(f"dectree {argv[0]}:")


def test_invalid_input_file_exits_1(capsys, tmp_path):
    bad = tmp_path / "bad.dtree"
    bad.write_text("vertex v\nvertex v\n")
    code, _, err = run(capsys, "invariants", str(bad))
    assert code == 1 and "line 2" in err


def test_help_exits_0(capsys):
    assert run(capsys, "--help")[0] == 0
