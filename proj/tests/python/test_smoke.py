import math

import pytest

import hfemto


def test_config_defaults_and_overrides():
    cfg = hfemto.config()
    assert cfg["M"] == 20
    assert hfemto.config(M_s=4)["M_s"] == 4
    assert hfemto.config(deployment="cluster")["lambda_f"] == pytest.approx(
        math.pi * 50**2 * 0.00127 * 1e-5, rel=1e-12)
    assert "lambda_out" in hfemto.config_keys()


def test_bad_config_raises():
    with pytest.raises(hfemto.ConfigError):
        hfemto.config({"bogus": 1})
    with pytest.raises(ValueError):
        hfemto.config(alpha=2.0)


def test_analyze_defaults():
    out = hfemto.analyze(thresholds=[0.01, 1.0, 100.0])
    assert out["T"] == [0.01, 1.0, 100.0]
    assert out["Z_m"][1] == pytest.approx(0.361049180051632, rel=1e-8)
    assert out["Z_f"][1] == pytest.approx(0.014694600065329744, rel=1e-8)
    assert out["rates"]["tau_m"] == pytest.approx(1.8819092079955717, rel=1e-6)
    assert out["rates"]["tau_f"] == pytest.approx(7.925303715041194, rel=1e-6)


def test_simulate_is_deterministic():
    a = hfemto.simulate(snapshots=2, seed=7, window_half_width=800.0, thresholds=[0.1, 1.0, 10.0])
    b = hfemto.simulate(snapshots=2, seed=7, window_half_width=800.0, thresholds=[0.1, 1.0, 10.0])
    assert a["Z_m"] == b["Z_m"]
    assert a["Z_f"] == b["Z_f"]
    assert a["diagnostics"]["snapshots"] == 2
    assert all(0.0 <= z <= 1.0 for z in a["Z_m"] + a["Z_f"])


def test_simulate_rejects_unknown_boundary():
    with pytest.raises(ValueError):
        hfemto.simulate(snapshots=1, boundary="mirror")


def test_sweep_trends():
    rows = hfemto.sweep("Ms", range(0, 21))
    assert len(rows) == 21
    taus = [r["tau_s"] for r in rows]
    taun = [r["tau_n"] for r in rows]
    assert all(b <= a + 1e-12 for a, b in zip(taus, taus[1:]))
    assert all(b >= a - 1e-12 for a, b in zip(taun, taun[1:]))
    with pytest.raises(ValueError):
        hfemto.sweep("Ms", [])


def test_compare():
    t = [0.1, 1.0, 10.0]
    d = hfemto.compare(t, [0.1, 0.2, 0.3], [0.1, 0.25, 0.3])
    assert d["sup"] == pytest.approx(0.05)
    assert hfemto.compare(t, [0.1, 0.2, 0.3], [0.1, 0.2, 0.3])["sup"] == 0.0


def test_busy_probabilities():
    assert hfemto.p_busy_f() == pytest.approx(0.46979675614070243, rel=1e-10)
    assert hfemto.p_busy_m() == pytest.approx(0.48344875066357285, rel=1e-10)
