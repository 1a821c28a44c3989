import json
import subprocess
import sys

import pytest

from tropfan import jsonio
from tropfan.cli import main
from tropfan.fan import dataset
from tropfan.relu import network
from tropfan.tropical import SignomialParams, TropicalRationalParams, signomial

RUNNING_THETA = {
    "num": {"terms": [{"a": "0", "s": ["-1", "1"]}, {"a": "0", "s": ["0", "0"]}]},
    "den": {"terms": [{"a": "-1", "s": ["3/2", "1/2"]}, {"a": "-2", "s": ["0", "2"]}]},
}
TWO_POINTS = {"points": [["0", "0"], ["1", "0"]]}
DIAG4 = {"points": [["0", "0"], ["1", "1"], ["2", "2"], ["3", "3"]]}


@pytest.fixture()
def files(tmp_path):
    theta = tmp_path / "theta.json"
    theta.write_text(json.dumps(RUNNING_THETA))
    data = tmp_path / "data.json"
    data.write_text(json.dumps(TWO_POINTS))
    diag = tmp_path / "diag.json"
    diag.write_text(json.dumps(DIAG4))
    net = tmp_path / "net.json"
    net.write_text(json.dumps({"layers": [{"W": [["2", "-3"]], "c": ["1"]}]}))
    return tmp_path


def run_cli(args, capsys):
    rc = main(args)
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_pattern_command(files, capsys):
    rc, out, _ = run_cli(
        ["pattern", "--theta", str(files / "theta.json"), "--data", str(files / "data.json")],
        capsys,
    )
    assert rc == 0
    assert json.loads(out) == {"neighbors": [[1, 2], [3]]}


def test_eval_command(files, capsys):
    rc, out, _ = run_cli(
        ["eval", "--theta", str(files / "theta.json"), "--data", str(files / "data.json")],
        capsys,
    )
    assert rc == 0
    doc = json.loads(out)
    assert doc == {"signs": "+,-", "values": ["1", "-1/2"]}


def test_levels_command_diag4(files, capsys):
    rc, out, err = run_cli(
        [
            "levels", "--data", str(files / "diag.json"), "--target", "+,-,-,+",
            "--n", "2", "--m", "2", "--k", "0,1",
        ],
        capsys,
    )
    assert rc == 0
    doc = json.loads(out)
    assert doc["levels"]["0"]["count"] == 8
    assert sorted(len(c["patterns"]) for c in doc["levels"]["0"]["components"]) == [4, 4]
    assert all(edge["dim"] == 11 for edge in doc["levels"]["0"]["adjacency"])
    assert "#" in err  # progress lines stay on stderr


def test_components_command(files, capsys):
    rc, out, _ = run_cli(
        [
            "components", "--data", str(files / "diag.json"), "--target", "+,-,-,+",
            "--n", "2", "--m", "2", "--k", "0",
        ],
        capsys,
    )
    assert rc == 0
    assert json.loads(out)["count"] == 8


def test_boundary_svg_deterministic(files, capsys, tmp_path):
    svg1 = tmp_path / "a.svg"
    svg2 = tmp_path / "b.svg"
    for target in (svg1, svg2):
        rc, out, _ = run_cli(
            [
                "boundary", "--theta", str(files / "theta.json"), "--svg", str(target),
                "--window", "-3,3,-3,3", "--data", str(files / "data.json"),
            ],
            capsys,
        )
        assert rc == 0
        assert json.loads(out)["edges"] == [
            {"i": 1, "j": 3, "sign_mixed": True},
            {"i": 1, "j": 4, "sign_mixed": True},
            {"i": 2, "j": 3, "sign_mixed": True},
        ]
    assert svg1.read_bytes() == svg2.read_bytes()


def test_relu_convert_command(files, capsys):
    rc, out, _ = run_cli(
        ["relu-convert", "--net", str(files / "net.json"), "--prune"], capsys
    )
    assert rc == 0
    doc = json.loads(out)
    assert doc["n"] == 2 and doc["m"] == 1 and doc["bound_m"] == 1
    theta = jsonio.rational_from_json(doc["theta"])
    assert set(theta.num.terms) == set(signomial([(1, (2, 0)), (0, (0, 3))]).terms)


def test_check_axioms_command(files, capsys):
    rc, out, _ = run_cli(
        ["check-axioms", "--data", str(files / "data.json"), "--n", "1", "--m", "1"],
        capsys,
    )
    assert rc == 0
    doc = json.loads(out)
    assert doc["patterns"]["all_passed"]
    assert doc["covectors"]["all_passed"]


def test_path_command(files, capsys, tmp_path):
    line = tmp_path / "line.json"
    line.write_text(json.dumps({"points": [["1"], ["2"], ["3"], ["4"], ["5"]]}))
    rc, out, _ = run_cli(
        ["path", "--data", str(line), "--target", "+,+,+,+,+", "--start", "-,-,-,-,-"],
        capsys,
    )
    assert rc == 0
    doc = json.loads(out)
    assert doc["length"] == 6
    assert doc["separations"] == [5, 4, 3, 2, 1, 0]


def test_error_is_json_on_stderr(files, capsys):
    rc, out, err = run_cli(
        ["pattern", "--theta", str(files / "missing.json"), "--data", str(files / "data.json")],
        capsys,
    )
    assert rc == 2 and out == ""
    doc = json.loads(err)
    assert doc["error"] and doc["message"]


def test_cap_error_code(files, capsys):
    rc, out, err = run_cli(
        [
            "dichotomies", "--data", str(files / "diag.json"), "--n", "3", "--m", "3",
            "--cap", "1",
        ],
        capsys,
    )
    assert rc == 1
    assert json.loads(err)["error"] == "cap_exceeded"


def test_out_flag_writes_file(files, capsys, tmp_path):
    out_file = tmp_path / "report.json"
    rc, out, _ = run_cli(
        [
            "pattern", "--theta", str(files / "theta.json"),
            "--data", str(files / "data.json"), "--out", str(out_file),
        ],
        capsys,
    )
    assert rc == 0 and out == ""
    assert json.loads(out_file.read_text()) == {"neighbors": [[1, 2], [3]]}


def test_installed_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "tropfan.cli", "pattern", "--theta", str(files / "theta.json"),
         "--data", str(files / "data.json")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"neighbors": [[1, 2], [3]]}


def test_worker_count_does_not_change_output(files, capsys):
    outs = []
    for workers in ("1", "2"):
        rc, out, _ = run_cli(
            [
                "enum-fan", "--data", str(files / "diag.json"), "--n", "2", "--m", "2",
                "--workers", workers, "--cap", "2000",
            ],
            capsys,
        )
        assert rc == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_json_roundtrips(files):
    theta = jsonio.rational_from_json(jsonio.loads(json.dumps(RUNNING_THETA)))
    assert jsonio.rational_from_json(jsonio.rational_to_json(theta)) == theta
    data = jsonio.dataset_from_json(TWO_POINTS)
    assert jsonio.dataset_from_json(jsonio.dataset_to_json(data)) == data
    net = network([((("2", "-3"),), ("1",))])
    assert jsonio.network_from_json(jsonio.network_to_json(net)) == net
    from tropfan.fan import pattern_of

    pattern = pattern_of(theta, data)
    assert jsonio.pattern_from_json(jsonio.pattern_to_json(pattern), pattern.N) == pattern


def test_json_decimal_literals_are_exact():
    from fractions import Fraction

    from tropfan.rationals import rat

    doc = jsonio.loads('{"x": 1.5, "y": "3/2"}')
    assert doc["x"] == Fraction(3, 2) == rat(doc["y"])
    assert isinstance(doc["x"], Fraction)  # never a binary float
