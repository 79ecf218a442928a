import io
import json
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hmsphere.cli import main, sweep_grid
from hmsphere.curvature import Params
from hmsphere.existence import solve_for_period
from hmsphere.io import (
    PROFILE_HEADER,
    SWEEP_HEADER,
    certificate_to_dict,
    csv_text,
    disk_svg,
    read_csv,
    validate_certificate,
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=5, max_size=5), max_size=20))
def test_csv_round_trip_is_byte_identical(rows):
    text = csv_text(SWEEP_HEADER, rows)
    header, back = read_csv(io.StringIO(text))
    assert header == list(SWEEP_HEADER)
    assert back == [[float(x) for x in r] for r in rows]
    assert csv_text(header, back) == text


def test_certificate_documents_validate():
    p = Params(5, 4, 1.0)
    cert = certificate_to_dict(solve_for_period(p, 2 * math.pi / 3), k=3)
    validate_certificate(cert)
    assert cert["status"] == "certified"
    miss = certificate_to_dict(solve_for_period(Params(5, 4, 20.0), 2 * math.pi / 3), k=3)
    validate_certificate(miss)
    assert miss["status"] == "unreachable"
    broken = dict(cert)
    del broken["C_star"]
    with pytest.raises(jsonschema.ValidationError):
        validate_certificate(broken)
    json.dumps(cert, allow_nan=False)


def test_svg_is_well_formed():
    pts = [(0.5 * math.cos(t / 10), 0.5 * math.sin(t / 10)) for t in range(63)]
    root = ET.fromstring(disk_svg(pts, title="circle"))
    assert root.tag.endswith("svg")
    assert any(el.tag.endswith("path") for el in root.iter())


def test_sweep_grid_endpoints_and_monotone():
    grid = sweep_grid(1.0, 1.001, 100.0, 30)
    assert grid[0] == 1.001 and grid[-1] == 100.0
    assert all(a < b for a, b in zip(grid, grid[1:]))
    assert sweep_grid(1.0, 2.0, 3.0, 1) == [2.0]


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "analyze", "--n", "5", "--m", "4", "--H", "1", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["v0"] == pytest.approx((1 / 24) ** 0.2, rel=1e-12)
    assert doc["A"] == pytest.approx(math.pi / 2, rel=1e-14)
    assert doc["B"] == pytest.approx(2 * math.pi / math.sqrt(3), rel=1e-12)
    assert doc["closed_form"]["max_rel_diff"] < 1e-10
    assert doc["B_rel_diff"] < 1e-10


def test_analyze_text_and_bad_arguments(capsys):
    code, out, _ = run(capsys, "analyze", "--n", "3", "--m", "2", "--H", "0.5")
    assert code == 0 and out.startswith("n ")
    assert run(capsys, "analyze", "--n", "5", "--m", "5", "--H", "1")[0] == 2
    assert run(capsys, "analyze", "--n", "5", "--m", "2", "--H", "-1")[0] == 2
    assert run(capsys, "analyze", "--n", "5", "--m", "4")[0] == 2


def test_scalar_curvature_input(capsys):
    code, out, _ = run(capsys, "analyze", "--n", "3", "--m", "2", "--R", "9", "--json")
    assert code == 0
    # R = n(n-1)(1 + H_2)
    assert json.loads(out)["H"] == pytest.approx(0.5, rel=1e-15)
    # negative H_2 is outside the supported range
    assert run(capsys, "analyze", "--n", "3", "--m", "2", "--R", "5")[0] == 2
    assert run(capsys, "analyze", "--n", "3", "--m", "1", "--R", "5")[0] == 2


def test_sweep_csv(capsys, tmp_path):
    out = tmp_path / "sweep.csv"
    code, _, _ = run(capsys, "sweep", "--n", "5", "--m", "4", "--H", "1", "--samples", "20", "--out", str(out))
    assert code == 0
    header, rows = read_csv(out.open())
    assert header == list(SWEEP_HEADER)
    assert len(rows) == 20
    assert abs(rows[0][4] - 3.627599) < 1e-2
    assert all(r[1] < r[2] for r in rows)
    assert run(capsys, "sweep", "--n", "5", "--m", "4", "--H", "1", "--c-min", "5", "--c-max", "4")[0] == 2
    assert run(capsys, "sweep", "--n", "5", "--m", "4", "--H", "1", "--c-min", "1.0")[0] == 2


def test_solve_exit_codes(capsys):
    code, out, _ = run(capsys, "solve", "--n", "5", "--m", "4", "--H", "1", "--k", "3")
    assert code == 0
    doc = json.loads(out)
    validate_certificate(doc)
    assert doc["residual"] < 1e-9
    code, out, err = run(capsys, "solve", "--n", "5", "--m", "4", "--H", "20", "--k", "3")
    assert code == 3
    assert json.loads(out)["status"] == "unreachable"
    assert "unreachable" in err
    assert run(capsys, "solve", "--n", "5", "--m", "4", "--H", "1")[0] == 2


def test_profile_files(capsys, tmp_path):
    out, svg = tmp_path / "prof.csv", tmp_path / "prof.svg"
    code, _, _ = run(
        capsys, "profile", "--n", "5", "--m", "4", "--H", "1", "--k", "3",
        "--tol-ode", "1e-12", "--out", str(out), "--svg", str(svg),
    )
    assert code == 0
    header, rows = read_csv(out.open())
    assert header == list(PROFILE_HEADER)
    assert len(rows) == 3 * 200 + 1
    closure = json.loads((tmp_path / "prof.csv.closure.json").read_text())
    assert closure["complete"] is True
    assert abs(closure["delta_theta"]) < 1e-4
    ET.fromstring(svg.read_text())


def test_profile_to_stdout_puts_closure_on_stderr(capsys):
    code, out, err = run(capsys, "profile", "--n", "3", "--m", "2", "--H", "0.5", "--C", "5", "--samples", "10")
    assert code == 0
    assert out.splitlines()[0].split(",") == list(PROFILE_HEADER)
    assert "delta_theta" in json.loads(err)
    assert run(capsys, "profile", "--n", "3", "--m", "2", "--H", "0.5")[0] == 2
    assert run(capsys, "profile", "--n", "5", "--m", "4", "--H", "20", "--k", "3")[0] == 3


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "limits")
    assert code == 0
    assert "checks passed" in out
    assert run(capsys, "verify", "--suite", "nonsense")[0] == 2


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "hmsphere", "analyze", "--n", "5", "--m", "4", "--H", "1", "--json"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(out.stdout)["m"] == 4
