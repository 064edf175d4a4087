import math

import numpy as np
import pytest

import vfstab


def test_describing_function_limits():
    assert vfstab.describing_function(0.1, 0.5) == 1.0
    x = vfstab.invert_describing_function(0.5, 0.5)
    assert vfstab.describing_function(x, 0.5) == pytest.approx(0.5)


def test_loop_gain_structure():
    loop = vfstab.build_loop_gain(vfstab.PlantParameters(), vfstab.AdmittanceParams(0.6, 1.0))
    assert len(loop.num) == 7
    assert len(loop.den) == 9
    assert abs(loop(10.0)) > 0.0


def test_delay_produces_limit_cycle():
    plant = vfstab.PlantParameters()
    adm = vfstab.AdmittanceParams(0.6, 1.0)
    plant.t0 = 0.0
    assert not vfstab.predict_limit_cycle(plant, adm).exists
    plant.t0 = 0.012
    lc = vfstab.predict_limit_cycle(plant, adm)
    assert lc.exists
    assert 1.0 < lc.frequency_hz < 5.0


def test_simulation_and_spectrum():
    cfg = vfstab.RunConfig()
    cfg.T = 5.0
    trace = vfstab.simulate(cfg)
    assert len(trace) == 10001
    assert np.all(np.isfinite(trace.F_tau))
    assert vfstab.effort(trace) > 0.0
    freqs, mags = vfstab.amplitude_spectrum(np.sin(2 * math.pi * 5.0 * np.arange(4096) * 1e-3), 1e-3)
    assert freqs[np.argmax(mags)] == pytest.approx(5.0, abs=0.25)


def test_config_round_trip_and_errors():
    cfg = vfstab.RunConfig()
    cfg.set("adm.m=0.45")
    again = vfstab.parse_config(cfg.resolved())
    assert again.adm.m == 0.45
    with pytest.raises(vfstab.ConfigError):
        vfstab.parse_config("adm.mass = 3\n")


def test_run_command(tmp_path):
    cfg = vfstab.RunConfig()
    cfg.output_dir = str(tmp_path)
    code, out, err = vfstab.run("analyze", cfg)
    assert code == 0, err
    assert (tmp_path / "prediction.csv").exists()
    assert (tmp_path / "resolved.cfg").exists()
    cfg.set("adm.b=-1")
    code, _, err = vfstab.run("analyze", cfg)
    assert code == 1
    assert "adm.b" in err


def test_sensitivity_curve_anchor():
    rel_p, rel_d = vfstab.sensitivity_d(vfstab.PlantParameters(), vfstab.AdmittanceParams(0.6, 1.0), "r")
    assert rel_p[10] == 0.0 and rel_d[10] == 0.0
    assert rel_d[0] == pytest.approx(1.0, rel=1e-9)
