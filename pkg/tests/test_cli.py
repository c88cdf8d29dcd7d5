import csv
import io
import json
import subprocess
import sys

import pytest

from inceheun import cli

GSWE = ["--equation", "ince_gswe", "--B1", "0.6+0.1i", "--B2", "1.3", "--B3", "0.4", "--z0", "1", "--q", "0.8"]
DCHE = ["--equation", "ince_dche", "--B1", "0.7", "--B2", "1.3-0.2i", "--B3", "0.4", "--q", "0.8"]


def run(argv, capsys):
    code = cli.run(argv)
    out = capsys.readouterr().out
    return code, out


def test_parse_complex():
    assert cli.parse_complex("1.5-0.25i") == 1.5 - 0.25j
    assert cli.parse_complex("-3i") == -3j
    assert cli.parse_complex("i") == 1j
    assert cli.parse_complex("1e-3+2e-2j") == 1e-3 + 2e-2j
    with pytest.raises(cli.InvalidParams):
        cli.parse_complex("abc")


def test_grid_points():
    g = cli.grid_points(1 + 0j, 2 + 0j, 3, "real-line")
    assert list(g) == [1, 1.5, 2]
    c = cli.grid_points(2 + 0j, 0j, 4, "circle")
    assert all(abs(abs(z) - 2) < 1e-15 for z in c)
    with pytest.raises(cli.InvalidParams):
        cli.grid_points(1j, 2 + 0j, 3, "real-line")


def test_to_json_stable():
    s = cli.to_json({"b": 1 + 2j, "a": [0.1, float("nan")]})
    assert s.startswith('{"a"') and "null" in s
    assert json.loads(s)["b"] == [1, 2]


def test_eval_json(capsys):
    code, out = run(["eval", "--family", "InceGswe-nu-1"] + GSWE + ["--start", "0.3", "--stop", "0.6", "--count", "4"], capsys)
    assert code == 0
    d = json.loads(out)
    assert len(d["points"]) == 4 and d["solution"]["family"] == "InceGswe-nu-1"


def test_eval_csv_columns(capsys):
    code, out = run(["eval", "--family", "InceDche-nu-1", "--format", "csv"] + DCHE + ["--count", "3"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["index", "re_z", "im_z", "re_U", "im_U", "tail_estimate"]
    assert len(rows) == 4


def test_outside_domain_exit_code(capsys):
    code, out = run(["eval", "--family", "InceGswe-nu-1", "--variant", "infinity"] + GSWE
                    + ["--start", "0.3", "--stop", "0.5", "--count", "2"], capsys)
    assert code == 2
    assert json.loads(out)["error"]["type"] == "OutsideDomain"


def test_applicability_error_names_sibling(capsys):
    p = ["--equation", "ince_gswe", "--B1", "0.3", "--B2", "-1", "--B3", "0.2", "--z0", "1", "--q", "0.5"]
    code, out = run(["eval", "--family", "InceGswe-T1"] + p, capsys)
    assert code == 2
    assert json.loads(out)["error"]["sibling"] == "InceGswe-T3"


def test_bad_arguments_exit_two(capsys):
    assert run(["eval"] + GSWE, capsys)[0] == 2
    assert run(["eval", "--family", "InceGswe-nu-1", "--B1", "zz"], capsys)[0] == 2
    assert run(["frobnicate"], capsys)[0] == 2


def test_char_and_coeffs(capsys):
    code, out = run(["char", "--equation", "mathieu", "--family", "W1", "--q", "1", "--count", "2"], capsys)
    assert code == 0
    roots = json.loads(out)["roots"]
    assert abs(roots[0]["a"][0] + 0.4551386041) < 1e-9
    code, out = run(["coeffs", "--family", "InceDche-nu-1", "--n", "8"] + DCHE, capsys)
    d = json.loads(out)
    assert code == 0 and d["n_min"] == -8 and d["recurrence_residual"] < 1e-12
    b0 = [c for c in d["coefficients"] if c["n"] == 0][0]
    assert b0["b"] == [1, 0]


def test_mathieu_and_transform(capsys):
    code, out = run(["mathieu", "--family", "W3", "--q", "1", "--count", "5"], capsys)
    d = json.loads(out)
    assert code == 0 and d["periodicity_gap"] < 1e-10 and d["parity_gap"] < 1e-12
    code, out = run(["transform", "--rule", "T1"] + GSWE, capsys)
    d = json.loads(out)
    assert code == 0 and d["target"]["B1"] == pytest.approx([-2.6, -0.1])
    code, out = run(["transform", "--equation", "ince_dche", "--degenerate", "--B1", "0", "--B2", "1.3",
                     "--B3", "0.2", "--q", "0.7"], capsys)
    assert code == 0 and json.loads(out)["case"] == "modified-Bessel"


def test_scatter(capsys):
    code, out = run(["scatter", "--alpha1", "1", "--alpha2", "0.5", "--count", "4"], capsys)
    d = json.loads(out)
    assert code == 0 and d["case"] == "inverse6" and d["characteristic_residual"] < 1e-10
    assert max(m["radial_residual"]["max"] for m in d["members"]) < 1e-8


def test_verify_output_file(tmp_path, capsys):
    f = tmp_path / "v.json"
    code, out = run(["verify", "--family", "InceDche-nu-1", "--points", "8", "--output", str(f)] + DCHE, capsys)
    assert code == 0 and out == ""
    reps = json.loads(f.read_text())["reports"]
    assert len(reps) == 2 and all(r["ode_residual"]["max"] < 1e-8 for r in reps)


def test_verify_deterministic_subprocess():
    cmd = [sys.executable, "-m", "inceheun", "verify", "--family", "InceGswe-nu-1", "--points", "8"] + GSWE
    outs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    assert outs[0] == outs[1] and outs[0]


def test_subcommand_defaults_are_independent():
    ap = cli.build_parser()
    e = ap.parse_args(["eval"])
    m = ap.parse_args(["mathieu"])
    assert e.start == 0.5 and e.family is None
    assert m.start == 0 and m.stop == pytest.approx(3.141592653589793)
