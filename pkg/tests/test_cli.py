import json
import subprocess
import sys

import pytest

from qcohom.abelian import FinAbGroup
from qcohom.cli import QuerySpec, UsageError, group_from_record, group_record, run
from qcohom.catalog import Theory
from qcohom.coefficients import OPAQUE

from reference_table import REFERENCE


def out(capsys, argv):
    code = run(argv)
    cap = capsys.readouterr()
    return code, cap.out.strip(), cap.err


def test_group_singular(capsys):
    code, text, _ = out(capsys, ["group", "--theory", "SingZ", "--p", "4", "--q", "4", "--s", "1", "--i", "4"])
    assert code == 0 and text == '{"free_rank":2,"torsion":[]}'


def test_group_symbolic_only(capsys):
    argv = ["group", "--theory", "I", "--n", "5", "--i", "3", "--j", "3", "--l", "0", "--symbolic-only"]
    assert out(capsys, argv)[:2] == (0, "I^0(F)")


def test_group_opaque_record(capsys):
    code, text, _ = out(capsys, ["group", "--theory", "MW", "--n", "4", "--i", "2", "--j", "3", "--l", "1"])
    rec = json.loads(text)
    assert code == 0 and rec["opaque"] is True and "K^MW_1(F)" in rec["symbolic"]
    assert group_from_record(rec) is OPAQUE


def test_group_chow_witt(capsys):
    code, text, _ = out(capsys, ["group", "--theory", "CW", "--n", "5", "--i", "0", "--l", "0", "--field", "fq:3"])
    assert code == 0 and group_from_record(json.loads(text)) == FinAbGroup(1, (2,))


@pytest.mark.parametrize("g", [FinAbGroup(), FinAbGroup(3), FinAbGroup(1, (2, 4)), FinAbGroup(0, (2, 2, 6))])
def test_record_roundtrip(g):
    assert group_from_record(json.loads(json.dumps(group_record(g)))) == g


def test_table_sing_markdown(capsys):
    code, text, _ = out(capsys, ["table", "sing", "--p", "4", "--q", "5", "--format", "md"])
    assert code == 0
    lines = {ln.split(" | ")[0].lstrip("| "): ln for ln in text.splitlines() if ln.startswith("| Z")}
    for row, cells in REFERENCE[(4, 5)].items():
        assert lines[row] == "| " + " | ".join([row] + cells) + " |"


def test_table_formats(capsys):
    _, csv_text, _ = out(capsys, ["table", "CW", "--n", "4", "--field", "fq:3", "--format", "csv"])
    assert csv_text.splitlines()[0] == "l,0,1,2,3,4"
    assert "⊕" not in csv_text and "Z + Z/2" in csv_text
    _, js, _ = out(capsys, ["table", "I", "--n", "3", "--window", "1", "--format", "json", "--symbolic-only"])
    rows = json.loads(js)
    assert len(rows) == 4 and rows[0]["0"] == "I^0(F)"


def test_ring_commands(capsys):
    assert out(capsys, ["ring", "mul", "--theory", "Chow", "--n", "4", "--a", "y", "--b", "y"])[1] == "x^2*y"
    code, text, _ = out(capsys, ["ring", "basis", "--theory", "Chow", "--n", "4", "--i", "2", "--format", "json"])
    assert json.loads(text)["basis"] == ["x^2", "y"]
    code, text, _ = out(capsys, ["ring", "show", "--theory", "SingZ", "--p", "3", "--q", "4"])
    assert code == 0 and "xi" in text


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["group", "--theory", "SingZ", "--p", "4"],
    ["group", "--theory", "I", "--n", "4", "--i", "1", "--j", "9"],
    ["table", "sing", "--p", "5", "--q", "4"],
    ["group", "--theory", "SingZ", "--p", "1", "--q", "1", "--i", "0", "--unknown"],
])
def test_usage_errors(capsys, argv):
    code, _, err = out(capsys, argv)
    assert code == 1 and "qcohom verify all|cellular" in err


def test_bad_field_is_an_error(capsys):
    code, _, err = out(capsys, ["group", "--theory", "I", "--n", "4", "--i", "0", "--field", "fq:4"])
    assert code == 1 and err


def test_window_flag(capsys):
    assert out(capsys, ["group", "--theory", "I", "--n", "4", "--i", "1", "--j", "9", "--window", "8"])[0] == 0


def test_query_spec_validation():
    with pytest.raises(UsageError):
        QuerySpec(Theory.CW, i=0).validate()
    assert QuerySpec(Theory.I, n=4, i=1, twist=3).validate().twist == 1


def test_realize_check(capsys):
    code, text, _ = out(capsys, ["realize-check", "--n", "5"])
    assert code == 0 and "isomorphism=yes" in text


def test_verify_exit_codes_and_determinism(capsys):
    first = out(capsys, ["verify", "mw"])
    second = out(capsys, ["verify", "mw"])
    assert first[0] == 0 and first == second
    code, text, _ = out(capsys, ["verify", "cw", "--format", "json"])
    results = json.loads(text)
    assert code == (0 if all(r["ok"] for r in results) else 2)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qcohom", "group", "--theory", "Chow", "--n", "4", "--i", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout) == {"free_rank": 2, "torsion": []}
