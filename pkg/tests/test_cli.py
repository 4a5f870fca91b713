import csv
import json
import os
import subprocess
import sys

import pytest

from diracwell import WellConfig, find_eigenstates
from diracwell.cli import main


@pytest.fixture()
def workdir(tmp_path, monkeypatch):
    monkeypatch.setenv("DIRACWELL_OUTPUT_DIR", str(tmp_path))
    return tmp_path


def read_csv(path):
    with open(path, newline="") as handle:
        return list(csv.DictReader(handle))


# ------------------------------------------------------------------- solve

def test_solve_writes_two_state_table(workdir):
    out = workdir / "states.csv"
    assert main(["solve", "--radius-nm", "10", "--potential-ev", "0.01",
                 "--l", "0", "--output", str(out)]) == 0
    rows = read_csv(out)
    assert [r["n"] for r in rows] == ["1", "2"]
    assert abs(float(rows[0]["E_kin_meV"]) - 1.53) <= 0.01
    states = find_eigenstates(WellConfig(10.0, 0.01))
    assert float(rows[1]["E_kin_meV"]) == states[1].energy_kinetic_mev
    header = open(out).readline().strip()
    assert header == ("l,n,E_kin_meV,zeta_per_m,xi_per_m,ln_kappa,log10_kappa,"
                      "skin_depth_nm,boundary_residual")


def test_solve_stdout_and_manifest(workdir, capsys):
    assert main(["solve", "--potential-ev", "0.01"]) == 0
    captured = capsys.readouterr()
    assert captured.out.startswith("l,n,E_kin_meV")
    manifest = json.loads((workdir / "solve.manifest.json").read_text())
    assert manifest["command"] == "solve"
    assert manifest["config"]["potential_ev"] == 0.01
    assert len(manifest["states_solved"]) == 2
    assert manifest["tool_version"]
    assert manifest["constants_used"]["hbar_c_ev_nm"] == 197.3269804
    assert "created_utc" in manifest


def test_solve_max_states(workdir):
    out = workdir / "one.csv"
    assert main(["solve", "--potential-ev", "10", "--max-states", "1",
                 "--output", str(out)]) == 0
    rows = read_csv(out)
    assert len(rows) == 1
    assert abs(float(rows[0]["E_kin_meV"]) - 2.18) <= 0.01


def test_solve_deterministic_output(workdir):
    a, b = workdir / "a.csv", workdir / "b.csv"
    argv = ["solve", "--potential-ev", "0.01"]
    assert main(argv + ["--output", str(a)]) == 0
    assert main(argv + ["--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_solve_json_mirror(workdir):
    out = workdir / "states.json"
    assert main(["solve", "--potential-ev", "0.01", "--format", "json",
                 "--output", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["columns"][0] == "l"
    assert len(payload["rows"]) == 2
    assert abs(payload["rows"][0]["E_kin_meV"] - 1.53) <= 0.01


def test_solve_usage_errors(workdir):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--potential-ev", "600000"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--potential-ev", "0.01", "--radius-nm", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--potential-ev", "0.01", "--l", "-1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["solve"])  # missing required flag
    assert exc.value.code == 2


# ------------------------------------------------------------------ table1

def test_table1_passes_and_flags_rows(workdir):
    out = workdir / "bench.csv"
    assert main(["table1", "--output", str(out)]) == 0
    rows = read_csv(out)
    assert len(rows) == 4
    assert all(r["row_pass"] == "true" for r in rows)
    assert [float(r["potential_ev"]) for r in rows] == [0.01, 0.1, 1.0, 10.0]


def test_table1_negative_control(workdir):
    out = workdir / "bench_bad.csv"
    assert main(["table1", "--electron-rest-energy-ev", "400000",
                 "--output", str(out)]) == 1
    rows = read_csv(out)
    assert any(r["row_pass"] == "false" for r in rows)
    manifest = json.loads((workdir / "bench_bad.csv.manifest.json").read_text())
    assert manifest["constants_used"]["electron_rest_energy_ev"] == 400000.0


# ------------------------------------------------------------------- field

def test_field_schema_and_row_order(workdir):
    out = workdir / "field.csv"
    assert main(["field", "--potential-ev", "0.01", "--rmax-nm", "30",
                 "--samples", "50", "--phi-samples", "2", "--output", str(out)]) == 0
    header = open(out).readline().strip()
    assert header == ("rho_nm,phi_rad,re_psi1,im_psi1,re_psi4,im_psi4,"
                      "j_rho,j_phi,j_z,charge_density,region")
    rows = read_csv(out)
    assert len(rows) == 100
    # phi-major ordering: first block all phi=0, rho ascending
    assert all(float(r["phi_rad"]) == 0.0 for r in rows[:50])
    rho_first = [float(r["rho_nm"]) for r in rows[:50]]
    assert rho_first == sorted(rho_first)
    assert float(rows[50]["phi_rad"]) > 0.0
    regions = {r["region"] for r in rows}
    assert regions == {"inside", "outside"}
    # no jump at the wall beyond what the 0.61 nm grid step itself explains
    inside = [r for r in rows[:50] if r["region"] == "inside"]
    outside = [r for r in rows[:50] if r["region"] == "outside"]
    assert abs(float(outside[0]["re_psi1"]) - float(inside[-1]["re_psi1"])) < 0.1


def test_field_normalized_units(workdir):
    raw = workdir / "raw.csv"
    si = workdir / "si.csv"
    base = ["field", "--potential-ev", "0.01", "--samples", "20"]
    assert main(base + ["--output", str(raw)]) == 0
    assert main(base + ["--normalize", "unit-charge", "--output", str(si)]) == 0
    raw_rows, si_rows = read_csv(raw), read_csv(si)
    # same circulation sign, different scale
    i = 10
    assert float(raw_rows[i]["j_phi"]) > 0.0
    assert float(si_rows[i]["j_phi"]) > 0.0
    assert float(si_rows[i]["j_phi"]) != float(raw_rows[i]["j_phi"])


def test_field_excited_state_selector(workdir):
    out = workdir / "excited.csv"
    assert main(["field", "--potential-ev", "0.01", "--state", "l0n2",
                 "--samples", "10", "--output", str(out)]) == 0
    assert len(read_csv(out)) == 10


def test_field_unknown_state_lists_available(workdir, capsys):
    assert main(["field", "--potential-ev", "0.01", "--state", "l0n9"]) == 1
    err = capsys.readouterr().err
    assert "l0n9" in err
    assert "l0n1" in err and "l0n2" in err


def test_field_usage_errors(workdir):
    with pytest.raises(SystemExit) as exc:
        main(["field", "--potential-ev", "0.01", "--samples", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["field", "--potential-ev", "0.01", "--state", "n1l0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["field", "--potential-ev", "0.01", "--phi-samples", "0"])
    assert exc.value.code == 2


# ------------------------------------------------------------------- sweep

def test_sweep_default_grid(workdir):
    out = workdir / "sweep.csv"
    assert main(["sweep", "--output", str(out)]) == 0
    rows = read_csv(out)
    assert [float(r["potential_ev"]) for r in rows] == [0.01, 0.1, 1.0, 10.0]
    targets = (2.00e8, 2.26e8, 2.36e8, 2.39e8)
    for row, target in zip(rows, targets):
        assert abs(float(row["zeta_per_m"]) / target - 1.0) < 0.01
    fractions = [float(r["outside_fraction"]) for r in rows]
    assert fractions == sorted(fractions, reverse=True)
    # per-depth eigenstate tables alongside the report
    for tag in ("0p01", "0p1", "1", "10"):
        assert (workdir / f"sweep_u{tag}.csv").exists()
    manifest = json.loads((workdir / "sweep.csv.manifest.json").read_text())
    assert len(manifest["output_paths"]) >= 5


def test_sweep_descending_input_auto_sorted(workdir):
    out = workdir / "rev.csv"
    assert main(["sweep", "--potentials", "10,0.01", "--output", str(out)]) == 0
    rows = read_csv(out)
    assert [float(r["potential_ev"]) for r in rows] == [0.01, 10.0]
    manifest = json.loads((workdir / "rev.csv.manifest.json").read_text())
    assert "potentials auto-sorted ascending" in manifest["notes"]


def test_sweep_single_potential(workdir):
    out = workdir / "one.csv"
    assert main(["sweep", "--potentials", "0.01", "--output", str(out)]) == 0
    assert len(read_csv(out)) == 1


def test_sweep_usage_errors(workdir):
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--potentials", "abc"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--potentials", ","])
    assert exc.value.code == 2


# ----------------------------------------------------------------- plumbing

def test_unknown_command_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "diracwell.cli", "--version"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "diracwell" in proc.stdout


def test_manifest_written_next_to_output(workdir):
    out = workdir / "deep" / "nested" / "states.csv"
    assert main(["solve", "--potential-ev", "0.01", "--output", str(out)]) == 0
    manifest_path = str(out) + ".manifest.json"
    assert os.path.exists(manifest_path)
    manifest = json.loads(open(manifest_path).read())
    assert str(out) in manifest["output_paths"]
    assert manifest_path in manifest["output_paths"]
