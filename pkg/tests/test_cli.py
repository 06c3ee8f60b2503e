"""CLI subcommands: exit codes, determinism, report and CSV schemas."""
import json

import numpy as np
import pytest

from sspaceform import cli
from sspaceform.curve import CurveTrace, frenet_apparatus
from sspaceform.manifold import ModelParams


def write_config(path, body):
    path.write_text(body)
    return str(path)


CATENARY_CFG = """
[manifold]
m = 2
s = 2

[curve]
source = builtin:catenary
window = -2:2
step = 1e-3

[weight]
c1 = 1.0

[expect]
verdict = proper-f-biharmonic
"""


@pytest.fixture(scope="module")
def catenary_cfg(tmp_path_factory):
    d = tmp_path_factory.mktemp("cfg")
    return write_config(d / "catenary.ini", CATENARY_CFG)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_catenary_exit_ok(catenary_cfg, tmp_path):
    rep = tmp_path / "report.json"
    code = cli.main(["verify", "--config", catenary_cfg,
                     "--report", str(rep), "--csv", str(tmp_path / "s.csv")])
    assert code == cli.EXIT_OK
    data = json.loads(rep.read_text())
    assert data["report"]["verdict"] == "proper-f-biharmonic"
    assert data["report"]["case"] == "II"
    assert data["version"]
    assert data["config_hash"]
    assert "seed" in data and "tolerances" in data


def test_verify_deterministic_reports(catenary_cfg, tmp_path):
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert cli.main(["verify", "--config", catenary_cfg, "--report", str(r1)]) == 0
    assert cli.main(["verify", "--config", catenary_cfg, "--report", str(r2)]) == 0
    assert r1.read_bytes() == r2.read_bytes()


def test_verify_verdict_mismatch_exit_1(catenary_cfg):
    code = cli.main(["verify", "--config", catenary_cfg,
                     "--expect", "biharmonic"])
    assert code == cli.EXIT_VERDICT_MISMATCH


def test_verify_config_error_exit_2(tmp_path):
    bad = write_config(tmp_path / "bad.ini", """
[manifold]
m = 0
s = 2

[curve]
source = builtin:catenary
""")
    assert cli.main(["verify", "--config", bad]) == cli.EXIT_CONFIG
    missing = write_config(tmp_path / "missing.ini", "[manifold]\nm = 2\ns = 2\n")
    assert cli.main(["verify", "--config", missing]) == cli.EXIT_CONFIG
    assert cli.main(["verify", "--config", str(tmp_path / "nope.ini")]) \
        == cli.EXIT_CONFIG
    unknown = write_config(tmp_path / "unknown.ini", """
[manifold]
m = 2
s = 2

[curve]
source = builtin:spiral
""")
    assert cli.main(["verify", "--config", unknown]) == cli.EXIT_CONFIG


def test_verify_geodesic(tmp_path):
    cfg = write_config(tmp_path / "geo.ini", """
[manifold]
m = 2
s = 2

[curve]
source = builtin:geodesic

[weight]
constant = 2.0

[expect]
verdict = harmonic/geodesic
""")
    assert cli.main(["verify", "--config", cfg]) == cli.EXIT_OK


def test_verify_csv_schema(catenary_cfg, tmp_path):
    csv_path = tmp_path / "samples.csv"
    cli.main(["verify", "--config", catenary_cfg, "--csv", str(csv_path),
              "--report", str(tmp_path / "r.json")])
    lines = csv_path.read_text().splitlines()
    header = lines[0].split(",")
    assert header[:4] == ["t", "k1", "k2", "k3"]
    assert "g_phiT_V2" in header and "eq1" in header and "g_tau3_phiT" in header
    # full-precision scientific notation round-trips losslessly
    row = lines[1].split(",")
    assert float(row[0]) == -2.0


def test_verify_r6_example_honest_verdict(tmp_path):
    # the configured r6 scalar data is not realizable: the spec'd order-4
    # synthesis drifts off slant and the verdict is honestly 'none'
    cfg = write_config(tmp_path / "r6.ini", """
[manifold]
m = 2
s = 2

[curve]
source = builtin:r6-example
window = -2:2
step = 2e-3

[weight]
c1 = 1.0
""")
    rep = tmp_path / "r.json"
    code = cli.main(["verify", "--config", cfg, "--report", str(rep)])
    assert code == cli.EXIT_OK   # default expectation is 'any'
    data = json.loads(rep.read_text())
    assert data["report"]["verdict"] == "none"
    assert not data["slant"]["is_slant"]
    code = cli.main(["verify", "--config", cfg, "--report", str(rep),
                     "--expect", "proper-f-biharmonic"])
    assert code == cli.EXIT_VERDICT_MISMATCH


def test_verify_case2_order3(tmp_path):
    cfg = write_config(tmp_path / "c2.ini", """
[manifold]
m = 2
s = 2

[curve]
source = builtin:case2-order3
window = -1.5:1.5
step = 1e-3

[weight]
c1 = 1.0

[expect]
verdict = proper-f-biharmonic
""")
    assert cli.main(["verify", "--config", cfg,
                     "--report", str(tmp_path / "r.json")]) == cli.EXIT_OK


# ---------------------------------------------------------------------------
# synth
# ---------------------------------------------------------------------------

def test_synth_writes_loadable_trace(tmp_path):
    out = tmp_path / "circle.csv"
    code = cli.main(["synth", "--builtin", "circle", "--out", str(out),
                     "--window", "0:3", "--step", "1e-3"])
    assert code == cli.EXIT_OK
    tr = CurveTrace.from_csv(ModelParams(2, 2), out)
    tr.meta["sampled"] = True
    fd = frenet_apparatus(tr)
    assert fd.order == 2
    assert np.max(np.abs(fd.curvatures[0][5:-5] - 1.0)) < 1e-5


def test_synth_coarse_step_exit_3(tmp_path):
    code = cli.main(["synth", "--builtin", "r6-example",
                     "--out", str(tmp_path / "r6.csv"), "--step", "0.5"])
    assert code == cli.EXIT_NUMERICAL


def test_synth_steering_window_exit_3(tmp_path):
    # r6-steered on a window beyond the feasibility bound
    code = cli.main(["synth", "--builtin", "case2-order3",
                     "--out", str(tmp_path / "x.csv"), "--window", "0:1"])
    assert code == cli.EXIT_CONFIG or code == cli.EXIT_OK  # window contains 0
    code = cli.main(["synth", "--builtin", "geodesic",
                     "--out", str(tmp_path / "g.csv"), "--verify"])
    assert code == cli.EXIT_OK


def test_synth_unknown_builtin(tmp_path):
    with pytest.raises(SystemExit):
        cli.main(["synth", "--builtin", "moebius",
                  "--out", str(tmp_path / "x.csv")])


def test_synth_verify_roundtrip(tmp_path):
    rep = tmp_path / "rep.json"
    code = cli.main(["synth", "--builtin", "catenary",
                     "--out", str(tmp_path / "cat.csv"),
                     "--window", "-2:2", "--verify", "--report", str(rep)])
    assert code == cli.EXIT_OK
    data = json.loads(rep.read_text())
    assert data["report"]["verdict"] == "proper-f-biharmonic"


# ---------------------------------------------------------------------------
# ode
# ---------------------------------------------------------------------------

def test_ode_case_iii_reference(tmp_path):
    out = tmp_path / "ode.csv"
    code = cli.main(["ode", "--case", "iii", "--c2", "1", "--c3", "4",
                     "--c4", "0", "--range", "-2:2:0.001",
                     "--out", str(out)])
    assert code == cli.EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "t,y,residual,domain_ok"
    t, y, res, okf = lines[1].split(",")
    assert float(t) == -2.0
    assert abs(float(y) - 1.0 / 6.0) < 1e-12
    assert float(res) < 1e-10
    assert okf == "1"


def test_ode_degenerate_exit_3():
    assert cli.main(["ode", "--case", "iii", "--c3", "0",
                     "--range", "-2:2:0.01"]) == cli.EXIT_NUMERICAL


def test_ode_case_i_nowhere_real_exit_3():
    assert cli.main(["ode", "--case", "i", "--c3", "1", "--lambda", "1",
                     "--range", "-2:2:0.01"]) == cli.EXIT_NUMERICAL


def test_ode_bad_range_exit_2():
    assert cli.main(["ode", "--case", "iii", "--c3", "4",
                     "--range", "2:-2:0.01"]) == cli.EXIT_CONFIG
    assert cli.main(["ode", "--case", "i", "--c3", "1",
                     "--range", "-1:1:0.01"]) == cli.EXIT_CONFIG  # lambda missing


def test_tolerance_profile_env(catenary_cfg, tmp_path, monkeypatch):
    monkeypatch.setenv("SSPACEFORM_TOLERANCES", "loose")
    assert cli.main(["verify", "--config", catenary_cfg,
                     "--report", str(tmp_path / "r.json")]) == cli.EXIT_OK
    monkeypatch.setenv("SSPACEFORM_TOLERANCES", "bogus")
    assert cli.main(["verify", "--config", catenary_cfg]) == cli.EXIT_CONFIG


# ---------------------------------------------------------------------------
# additional source/weight paths
# ---------------------------------------------------------------------------

def test_verify_csv_sourced_curve(tmp_path):
    # synth writes a trace CSV; verify consumes it as a sampled curve
    out = tmp_path / "cat.csv"
    assert cli.main(["synth", "--builtin", "catenary", "--out", str(out),
                     "--window", "-1.5:1.5"]) == cli.EXIT_OK
    cfg = write_config(tmp_path / "fromcsv.ini", f"""
[manifold]
m = 2
s = 2

[curve]
source = csv:{out}

[weight]
c1 = 1.0

[expect]
verdict = proper-f-biharmonic
""")
    rep = tmp_path / "r.json"
    assert cli.main(["verify", "--config", cfg, "--report", str(rep)]) \
        == cli.EXIT_OK
    data = json.loads(rep.read_text())
    assert data["report"]["verdict"] == "proper-f-biharmonic"


def test_verify_sampled_weight_csv(tmp_path):
    # weight supplied as a sampled (t, f) table
    ts = np.linspace(-2, 2, 801)
    fcsv = tmp_path / "weight.csv"
    with open(fcsv, "w") as fh:
        fh.write("t,f\n")
        for t in ts:
            fh.write(f"{t:.16e},{(1 + t * t) ** 1.5:.16e}\n")
    cfg = write_config(tmp_path / "wcsv.ini", f"""
[manifold]
m = 2
s = 2

[curve]
source = builtin:catenary
window = -2:2
step = 1e-3

[weight]
csv = {fcsv}

[expect]
verdict = proper-f-biharmonic
""")
    assert cli.main(["verify", "--config", cfg,
                     "--report", str(tmp_path / "r.json")]) == cli.EXIT_OK


def test_weight_sections_mutually_exclusive(tmp_path):
    cfg = write_config(tmp_path / "two.ini", """
[manifold]
m = 2
s = 2

[curve]
source = builtin:catenary

[weight]
c1 = 1.0
constant = 2.0
""")
    assert cli.main(["verify", "--config", cfg]) == cli.EXIT_CONFIG


def test_verify_r6_steered_builtin(tmp_path):
    # the best-possible realization synthesizes on its feasible window and
    # is honestly not f-biharmonic (eq 4 fails)
    cfg = write_config(tmp_path / "steer.ini", """
[manifold]
m = 2
s = 2

[curve]
source = builtin:r6-steered
step = 2e-3

[weight]
c1 = 1.0
""")
    rep = tmp_path / "r.json"
    assert cli.main(["verify", "--config", cfg, "--report", str(rep)]) \
        == cli.EXIT_OK
    data = json.loads(rep.read_text())
    assert data["slant"]["is_slant"]
    assert data["report"]["verdict"] == "none"
    assert data["report"]["residuals"]["eq4"] > 0.5
