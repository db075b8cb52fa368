"""Command-line interface: outputs, formats, determinism, exit codes."""

import json
import math
import subprocess
import sys

import pytest

from radialcenters.cli import main
from radialcenters.geometry import body_from_dict


@pytest.fixture
def square_file(tmp_path):
    path = tmp_path / "square.json"
    path.write_text(json.dumps(
        {"vertices": [[-1, -1], [1, -1], [1, 1], [-1, 1]]}))
    return str(path)


@pytest.fixture
def equilateral_file(tmp_path):
    pts = [[math.cos(math.pi / 2 + 2 * math.pi * k / 3),
            math.sin(math.pi / 2 + 2 * math.pi * k / 3)] for k in range(3)]
    path = tmp_path / "equilateral.json"
    path.write_text(json.dumps({"vertices": pts}))
    return str(path)


@pytest.fixture
def scalene_file(tmp_path):
    path = tmp_path / "scalene.json"
    path.write_text(json.dumps({"vertices": [[0, 0], [4, 0], [0, 3]]}))
    return str(path)


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_center_square(capsys, square_file):
    code, out, _ = run_cli(capsys, ["center", "--family", "riesz", "--param", "4",
                                    "--body", square_file])
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["point"][0]) < 1e-8 and abs(payload["point"][1]) < 1e-8
    assert payload["uniqueness_guaranteed"] is True


def test_classify_equilateral(capsys, equilateral_file):
    code, out, _ = run_cli(capsys, ["classify", "--body", equilateral_file])
    assert code == 0
    assert json.loads(out)["classification"] == "BalancedEquilateral"


def test_balance_scalene_not_balanced(capsys, scalene_file):
    code, out, _ = run_cli(capsys, ["balance", "--body", scalene_file,
                                    "--at", "centroid"])
    assert code == 0
    payload = json.loads(out)
    assert payload["balanced"] is False
    assert payload["sup_residual"] > 1e-2


def test_potential_value_and_gradient(capsys, square_file):
    code, out, _ = run_cli(capsys, ["potential", "--family", "poisson", "--param", "1",
                                    "--at", "0,0", "--body", square_file])
    assert code == 0
    payload = json.loads(out)
    assert 0 < payload["value"] < 1
    assert abs(payload["gradient"][0]) < 1e-9


def test_locus_csv(capsys, square_file):
    code, out, _ = run_cli(capsys, ["locus", "--family", "riesz", "--range", "3:20:5",
                                    "--body", square_file, "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "param,x,y,grad_norm"
    assert len(lines) == 6


def test_svg_output(capsys, square_file, tmp_path):
    out_path = tmp_path / "drawingardır.svg"
    code, out, _ = run_cli(capsys, ["center", "--family", "riesz", "--param", "4",
                                    "--body", square_file, "--format", "svg",
                                    "--out", str(out_path)])
    assert code == 0
    text = out_path.read_text()
    assert text.startswith("<?xml")
    assert "<svg" in text and "</svg>" in text


def test_determinism(capsys, scalene_file):
    _, out1, _ = run_cli(capsys, ["balance", "--body", scalene_file, "--at", "0.9,0.8"])
    _, out2, _ = run_cli(capsys, ["balance", "--body", scalene_file, "--at", "0.9,0.8"])
    assert out1 == out2
    _, out1, _ = run_cli(capsys, ["generate-asym"])
    _, out2, _ = run_cli(capsys, ["generate-asym"])
    assert out1 == out2


def test_generate_asym_round_trips(capsys):
    code, out, _ = run_cli(capsys, ["generate-asym"])
    assert code == 0
    body = body_from_dict(json.loads(out))
    assert body.is_convex()


def test_missing_body_file_is_domain_error(capsys, tmp_path):
    code, out, err = run_cli(capsys, ["classify", "--body", str(tmp_path / "nope.json")])
    assert code == 1
    assert out == ""
    payload = json.loads(err)
    assert "error" in payload and "message" in payload


def test_invalid_body_is_domain_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"vertices": [[0, 0], [1, 0], [2, 0], [1, 1]]}))
    code, _, err = run_cli(capsys, ["classify", "--body", str(bad)])
    assert code == 1
    assert json.loads(err)["error"] == "InvalidBody"


def test_bad_arguments_exit_two():
    proc = subprocess.run(
        [sys.executable, "-m", "radialcenters.cli", "bogus-command"],
        capture_output=True, text=True)
    assert proc.returncode == 2
    proc = subprocess.run(
        [sys.executable, "-m", "radialcenters.cli", "center", "--family", "riesz"],
        capture_output=True, text=True)
    assert proc.returncode == 2


def test_bad_range_is_config_error(capsys, square_file):
    code, _, err = run_cli(capsys, ["locus", "--family", "riesz", "--range", "oops",
                                    "--body", square_file])
    assert code == 1
    assert "range" in json.loads(err)["message"]


def test_help_lists_subcommands():
    proc = subprocess.run(
        [sys.executable, "-m", "radialcenters.cli", "--help"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    for cmd in ("potential", "center", "locus", "balance", "classify",
                "generate-asym", "limits", "concavity-check"):
        assert cmd in proc.stdout


def test_concavity_check(capsys, scalene_file):
    code, out, _ = run_cli(capsys, ["concavity-check", "--body", scalene_file])
    assert code == 0
    payload = json.loads(out)
    assert payload["all_passed"] is True
    assert len(payload["checks"]) >= 6
