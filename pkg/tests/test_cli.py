import json

import pytest

from fermichip import cli
from fermichip.density import read_raster


def run(argv):
    return cli.main([str(a) for a in argv])


# -- thermo -----------------------------------------------------------------------------

def test_thermo_report(tmp_path):
    out = tmp_path / "report.json"
    code = run(
        ["thermo", "--species", "K40", "--n-atoms", "4e4", "--fbar-hz", "315",
         "--t-over-tf", "0.2", "--out", out]
    )
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["fermi_energy_uk"] == pytest.approx(0.939, rel=2e-3)
    assert doc["t_over_tf"] == pytest.approx(0.2)
    assert doc["fugacity"] > 1.0


def test_thermo_json_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["thermo", "--species", "Rb87", "--n-atoms", "1e5", "--fbar-hz", "220",
            "--temperature-uk", "0.5"]
    assert run(args + ["--out", a]) == 0
    assert run(args + ["--out", b]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_thermo_scan_csv(tmp_path):
    scan = tmp_path / "scan.csv"
    code = run(
        ["thermo", "--species", "K40", "--n-atoms", "4e4", "--fx-hz", "823",
         "--fy-hz", "46", "--fz-hz", "823", "--t-over-tf", "0.2",
         "--out", tmp_path / "r.json", "--scan-out", scan,
         "--scan-min", "0.1", "--scan-max", "2.0", "--scan-points", "5"]
    )
    assert code == 0
    lines = scan.read_text().strip().splitlines()
    assert lines[0] == "T_over_TF,Z,mu_over_EF,E_per_N_over_EF,n0_lambda3"
    assert len(lines) == 6


def test_thermo_missing_trap_is_config_error(tmp_path):
    code = run(["thermo", "--species", "K40", "--n-atoms", "4e4", "--t-over-tf", "0.2"])
    assert code == cli.EXIT_CONFIG


# -- density / tof ------------------------------------------------------------------------

def test_density_profile_csv(tmp_path):
    out = tmp_path / "profile.csv"
    code = run(
        ["density", "--species", "K40", "--n-atoms", "4e4", "--fx-hz", "823",
         "--fy-hz", "46", "--fz-hz", "823", "--t-over-tf", "0.2",
         "--axis", "y", "--extent-um", "120", "--points", "41", "--out", out]
    )
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "y_m,density_m3"
    assert len(lines) == 42


def test_tof_raster_and_fit_roundtrip(tmp_path):
    img = tmp_path / "img.raster"
    code = run(
        ["tof", "--species", "K40", "--n-atoms", "4e4", "--fx-hz", "823",
         "--fy-hz", "46", "--fz-hz", "823", "--t-over-tf", "0.1",
         "--time-ms", "10", "--nx", "48", "--ny", "48", "--pitch-um", "10",
         "--noise-frac", "0.02", "--seed", "7", "--out", img]
    )
    assert code == 0
    values, pitch = read_raster(img)
    assert values.shape == (48, 48)
    assert pitch == pytest.approx(10e-6)

    fit_out = tmp_path / "fit.json"
    code = run(["fit", "--image", img, "--model", "both", "--out", fit_out])
    assert code == 0
    doc = json.loads(fit_out.read_text())
    assert doc["fermi-dirac"]["params"]["N"] == pytest.approx(4e4, rel=0.05)
    assert doc["chi2_ratio_gauss_over_fd"] > 1.5


# -- trap / dress ---------------------------------------------------------------------------

def test_trap_report(tmp_path):
    out = tmp_path / "trap.json"
    code = run(["trap", "--geometry", "toronto-split-trap", "--species", "Rb87", "--out", out])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["b0_gauss"] == pytest.approx(1.214, abs=1e-4)
    freqs = doc["frequencies_hz"]
    assert freqs[0] == pytest.approx(13.7, rel=0.05)
    assert freqs[1] == pytest.approx(1230.0, rel=0.02)


def test_trap_unknown_geometry(tmp_path):
    assert run(["trap", "--geometry", "no-such-trap"]) == cli.EXIT_CONFIG


def test_dress_preset(tmp_path):
    prefix = tmp_path / "dw"
    code = run(["dress", "--preset", "rb-doublewell", "--out-prefix", prefix,
                "--points", "2048"])
    assert code == 0
    doc = json.loads((tmp_path / "dw_report.json").read_text())
    assert doc["species"]["Rb87"]["topology"] == "double"
    assert doc["species"]["K40"]["topology"] == "single"
    assert doc["species"]["Rb87"]["separation_um"] == pytest.approx(4.5, abs=1.0)
    rb_csv = (tmp_path / "dw_rb87.csv").read_text().splitlines()
    assert rb_csv[0] == "position_um,u_eff_khz,delta_khz,rabi_khz"
    assert len(rb_csv) == 2049


# -- evap -------------------------------------------------------------------------------------

@pytest.mark.parametrize(
    "preset,v_um3,n_max",
    [
        ("libbrecht-loop", 305.0, 1.77e4),
        ("ioffe-c", 0.419, 0.374),
        ("reichel-z", 1.289e7, 1.15e7),
        ("toronto-z", 2.861e7, 2.263e7),
    ],
)
def test_evap_presets(tmp_path, preset, v_um3, n_max):
    out = tmp_path / f"{preset}.json"
    assert run(["evap", "--preset", preset, "--out", out]) == 0
    doc = json.loads(out.read_text())
    assert doc["v_eff_um3"] == pytest.approx(v_um3, rel=5e-3)
    assert doc["n_max"] == pytest.approx(n_max, rel=5e-3)


def test_evap_rho0_override(tmp_path):
    out = tmp_path / "evap.json"
    assert run(["evap", "--preset", "reichel-z", "--rho0", "1e-7", "--out", out]) == 0
    doc = json.loads(out.read_text())
    assert doc["n_max"] == pytest.approx(1.15e6, rel=5e-3)


# -- run (config file) --------------------------------------------------------------------------

def test_run_config(tmp_path):
    out = tmp_path / "evap.json"
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"command": "evap", "params": {"preset": "ioffe-c", "out": str(out)}}))
    assert run(["run", "--config", cfg]) == 0
    assert json.loads(out.read_text())["n_max"] < 1.0


def test_run_config_rejects_unknown_keys(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"command": "evap", "params": {"preset": "ioffe-c"}, "x": 1}))
    assert run(["run", "--config", cfg]) == cli.EXIT_CONFIG


def test_run_config_rejects_unknown_command(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"command": "explode"}))
    assert run(["run", "--config", cfg]) == cli.EXIT_CONFIG


def test_unknown_flag_exits_2():
    with pytest.raises(SystemExit) as err:
        run(["evap", "--preset", "reichel-z", "--bogus", "1"])
    assert err.value.code == 2


# -- paper-check --------------------------------------------------------------------------------

def test_paper_check_table(tmp_path, capsys):
    out = tmp_path / "table.json"
    code = run(["paper-check", "--out", out])
    # one known-divergent row (zero-temperature energy per particle), so the
    # table reports failure; everything else must pass
    assert code == cli.EXIT_BENCH_FAIL
    rows = json.loads(out.read_text())
    failed = [r["name"] for r in rows if not r["passed"]]
    assert failed == ["c2-zero-t-energy"]
    assert len(rows) > 35
    text = capsys.readouterr().out
    assert "PASS" in text and "FAIL" in text


# -- deterministic JSON writer ------------------------------------------------------------------

def test_json_format_17_digits(tmp_path):
    path = tmp_path / "x.json"
    cli.write_json(path, {"a": 1.0 / 3.0, "b": [1, 2.5], "c": {"n": None, "t": True}})
    text = path.read_text()
    assert "0.33333333333333331" in text
    assert '"t": true' in text
    assert '"n": null' in text
