import json
import math
import os
from pathlib import Path

import pytest

import rds

CONFIGS = Path(os.environ.get("RDS_CONFIG_DIR", Path(__file__).resolve().parents[2] / "configs"))


def load(name):
    return json.loads((CONFIGS / name).read_text())


def test_classify_examples():
    v = rds.classify(rds.Params(1, 2, 3, alpha=1, beta=1, gamma=3))
    assert v["verdict"] == "GlobalTheorem1"
    assert v["rationale"] == "alpha+beta<gamma"
    assert v["gamma_star"] == pytest.approx(7 / 3)
    v = rds.classify(rds.Params(1, 2, 3, alpha=2, beta=2, gamma=4, dim=2))
    assert v["verdict"] == "Open"


def test_params_validate():
    with pytest.raises(ValueError):
        rds.Params(0, 1, 1, 1, 1, 1)


def test_equilibrium_and_oracle():
    p = rds.Params(1, 1, 1, 1, 1, 1)
    u, v, w = rds.equilibrium(p, 4.0, 0.0)
    assert (u, v, w) == pytest.approx((1.0, 1.0, 1.0), abs=1e-12)
    u, v, w = rds.ode_oracle(2.0, 2.0, 0.0, p, 40.0, 0.01)
    assert u == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(rds.InfeasibleInvariants):
        rds.equilibrium(p, 1.0, 2.0)


def test_grid_operators():
    g = rds.Grid(1, 16)
    assert g.spacing == pytest.approx(1 / 16)
    assert rds.laplacian_apply([2.0] * 16, g, 1.0) == [0.0] * 16
    f = [float(i % 3) for i in range(16)]
    out = rds.heat_step_implicit(f, g, 1.0, 0.1)
    assert sum(out) == pytest.approx(sum(f), rel=1e-12)
    assert rds.norm_p([1.0, -2.0, 3.0, -4.0], rds.Grid(1, 4), math.inf) == 4.0
    with pytest.raises(ZeroDivisionError):
        rds.smoothing_ratio([0.0] * 16, g, 1.0, 0.1, 1.0, math.inf)


def test_run_equilibrium_scenario():
    cfg = load("equilibrium.json")
    cfg.pop("outputs")
    r = rds.run_scenario(cfg)
    assert r["status"] == "ReachedT"
    assert r["t_stop"] == 1.0
    assert max(rec["mass_drift"] for rec in r["records"]) <= 1e-10
    assert r["u"] == pytest.approx([1.0] * 64, abs=1e-12)


def test_run_surrogate_blows_up():
    r = rds.run_scenario(CONFIGS / "surrogate_blowup.json")
    assert r["status"] == "BlowUpSuspected"
    assert r["t_stop"] < 1.0


def test_config_errors():
    cfg = load("equilibrium.json")
    cfg["contrl"] = {}
    with pytest.raises(rds.ConfigError):
        rds.run_scenario(cfg)


def test_normalize_is_idempotent():
    once = rds.normalize_config(json.dumps(load("theorem1.json")))
    assert rds.normalize_config(once) == once
    assert json.loads(once)["grid"]["bc"] == "neumann"


def test_commands(tmp_path):
    cfg = load("equilibrium.json")
    cfg["outputs"] = {"series_path": "series.csv"}
    path = tmp_path / "eq.json"
    path.write_text(json.dumps(cfg))
    code, out, err = rds.cmd_run(str(path))
    assert code == 0
    assert out == "status=ReachedT t_stop=1\n"
    header = (tmp_path / "series.csv").read_text().splitlines()[0]
    assert header == "t,dt,linf_u,linf_v,linf_w,l1_mass,mass_drift,uv_drift,min_uvw"
    code, out, _ = rds.cmd_classify(str(path), quiet=True)
    assert code == 0 and out == ""
    code, out, _ = rds.cmd_convergence(str(CONFIGS / "convergence.json"))
    assert code == 0 and out.startswith("temporal_order=")
