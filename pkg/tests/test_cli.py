import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from scrollunproj.cli import main, parse_points, UsageError

SCHEMA = json.loads((resources.files("scrollunproj") / "data" / "report.schema.json").read_text())


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--json")
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_scroll_pass():
    code, doc = run_json("scroll", "1", "1")
    assert code == 0
    assert doc["status"] == "pass"
    assert doc["results"]["dimension"] == 3
    assert doc["results"]["hilbert"][:3] == [1, 4, 9]


def test_scroll_json_for_two_two():
    code, doc = run_json("scroll", "2", "2", "--field", "fp:32003")
    assert code == 0
    assert doc["inputs"]["field"] == "fp:32003"
    assert len(doc["results"]["presentation"]["Q"]) == 6


def test_text_and_json_agree_on_status():
    _, text = run("scroll", "1", "2")
    _, doc = run_json("scroll", "1", "2")
    assert text.strip().endswith(f"status: {doc['status']}")


@pytest.mark.parametrize(
    "argv",
    [
        ["scroll", "1", "0"],
        ["scroll", "2", "2", "--field", "fp:10"],
        ["unproject", "1", "2"],
        ["unproject", "1", "2", "--f", "x02^2"],
        ["unproject", "1", "2", "--points", "1:2:3"],
        ["unproject", "1", "2", "--f", "x12 + 1"],
        ["lattice", "chain", "--D", "0"],
        ["lattice", "elementary", "-1"],
        ["lattice", "horikawa", "3", "2"],
        ["verify-all", "--grid", "m<=x"],
        ["verify-all", "--criteria", "11"],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    assert run(*argv)[0] == 2


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as info:
        main(["lattice", "nonsense"])
    assert info.value.code == 2


def test_unproject_points_classifies():
    code, doc = run_json("unproject", "1", "2", "--points", "0:1")
    assert code == 0
    assert doc["results"]["classification"]["tag"] == "F(1,3)"


def test_unproject_degree_two_uses_golden():
    code, doc = run_json("unproject", "1", "2", "--f", "x12^2")
    assert code == 0
    assert doc["results"]["golden_key"] == "m=1,n=2,k=2,f=b^2,field=q"
    assert doc["results"]["checks"]["Hilbert table matches golden"]


def test_unproject_not_a_domain():
    code, text = run("unproject", "1", "1", "--f", "x00")
    assert code == 1
    assert "not a domain" in text
    code, doc = run_json("unproject", "1", "1", "--f", "x00")
    assert doc["status"] == "fail" and doc["results"]["diagnosis"] == "not a domain"


def test_unproject_rees_reports_all_three_booleans():
    code, doc = run_json("unproject", "1", "1", "--f", "x11", "--rees")
    rees = doc["results"]["rees"]
    assert rees["eliminate_to_base"]["equal"]
    assert rees["eliminate_to_unprojection"]["result_contained_in_target"]
    assert rees["specialisation"]["equal"]
    # containment of Q2 fails, which makes the run partial
    assert doc["status"] == "partial" and code == 1


def test_lattice_commands():
    code, doc = run_json("lattice", "chain", "--D", "2")
    assert code == 0
    assert doc["results"]["gamma_hat_sq"] == -2
    assert doc["results"]["singularities"] == ["1/2(1,1)", "A1"]
    code, doc = run_json("lattice", "elementary", "2", "--on-delta0")
    assert doc["results"]["d_new"] == 3
    code, doc = run_json("lattice", "horikawa", "2", "3")
    assert (doc["results"]["pg"], doc["results"]["Ksq"]) == (7, 11)


def test_verify_all_subset():
    code, doc = run_json("verify-all", "--grid", "m<=1 n<=2 k<=2", "--criteria", "1,2,3,7")
    assert code == 0
    assert [c["number"] for c in doc["results"]["criteria"]] == [1, 2, 3, 7]


def test_verify_all_prime_field_subset():
    code, doc = run_json("verify-all", "--grid", "m<=1 n<=2 k<=2", "--criteria", "1,4,9", "--field", "fp:32003")
    assert code == 0


def test_update_golden_writes_provenance(tmp_path, monkeypatch):
    from scrollunproj import verify

    target = tmp_path / "golden.json"
    monkeypatch.setattr(verify, "golden_path", lambda: target)
    code, doc = run_json("verify-all", "--grid", "m<=1 n<=1 k<=2", "--criteria", "9", "--update-golden")
    assert code == 0
    data = json.loads(target.read_text())
    assert "created" in data["provenance"] and "generator" in data["provenance"]
    assert "m=1,n=1,k=2,f=a^2,field=q" in data["hilbert"]


def test_parse_points():
    assert parse_points("0:1^2, 1/2:-1") == [((0, 1), 2), ((0.5, -1), 1)]
    with pytest.raises(UsageError):
        parse_points("1:x")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "scrollunproj", "lattice", "elementary", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "F_1 -> F_0" in proc.stdout
