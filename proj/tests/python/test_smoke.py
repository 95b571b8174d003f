import csv
import io
import math

import numpy as np
import pytest

import coopnoma as cn


def config(**overrides):
    c = cn.SystemConfig()
    for key, value in overrides.items():
        setattr(c, key, value)
    return c


def test_defaults_are_valid():
    c = cn.SystemConfig()
    assert cn.validate_config(c) == []
    assert c.num_relays == 2
    assert c.duplex == cn.DuplexMode.FD
    assert c == cn.SystemConfig()


def test_validate_config_reports_ordering():
    problems = cn.validate_config(config(a1=0.6, a2=0.4))
    assert len(problems) == 1
    assert "a1 <= a2" in problems[0]


def test_thresholds():
    t = cn.compute_thresholds(config(snr_db=10.0))
    assert t.feasible
    assert t.tau == pytest.approx(9.135606e-3, rel=1e-6)
    assert t.xi == pytest.approx(0.5)


def test_srs_power_structure():
    one = cn.srs_outage(config(num_relays=1))
    three = cn.srs_outage(config(num_relays=3))
    assert three == pytest.approx(one**3, rel=1e-12)


def test_trs_routes_agree():
    for snr in (10.0, 30.0, 50.0):
        c = config(snr_db=snr, num_relays=3, omega_li_db=-20.0)
        assert cn.trs_outage(c) == pytest.approx(cn.trs_outage_product_form(c), abs=1e-12)
        b = cn.theta1_conditional(c)
        assert 0.0 <= b.theta1 <= 1.0


def test_exact_outage_dispatch():
    c = config()
    assert cn.exact_outage(c, cn.Scheme.SRS) == cn.srs_outage(c)
    assert cn.exact_outage(c, cn.Scheme.RRS_TRS) == cn.rrs_outage(c, cn.Scheme.TRS)
    with pytest.raises(ValueError):
        cn.exact_outage(c, cn.Scheme.OMA)


def test_hd_diversity_order():
    d = cn.diversity_order_estimate(config(duplex=cn.DuplexMode.HD, num_relays=3), cn.Scheme.SRS, (35.0, 45.0))
    assert d.usable
    assert d.slope == pytest.approx(3.0, abs=0.3)


def test_fd_floor_asymptote():
    c = config(snr_db=60.0)
    assert cn.asymptotic_outage(c, cn.Scheme.SRS) == pytest.approx(cn.srs_outage(c), rel=0.05)


def test_throughput_identity():
    assert cn.throughput(0.25, 1.0, 0.1) == (1 - 0.25) * (1.0 + 0.1)


def test_numerics():
    assert cn.exp_integral_ei(-1.0) == pytest.approx(-0.21938393439552, abs=1e-12)
    with pytest.raises(ValueError):
        cn.exp_integral_ei(1.0)
    xs = np.geomspace(1e-3, 5.0, 20)
    exact = np.array([cn.disc_cdf_exact(x, 2.0, 2.0) for x in xs])
    cheb = np.array([cn.disc_cdf_chebyshev(x, order=201) for x in xs])
    assert np.max(np.abs(exact - cheb)) < 1e-4
    assert np.all(np.diff(exact) > 0)


def test_monte_carlo_matches_closed_form():
    c = config(snr_db=30.0)
    est = cn.estimate_outage(cn.Scheme.SRS, c, trials=200_000, seed=7)
    assert est.trials == 200_000
    assert est.stderr == pytest.approx(math.sqrt(est.p_hat * (1 - est.p_hat) / est.trials))
    assert abs(est.p_hat - cn.srs_outage(c)) <= max(0.01, 3 * est.stderr)


def test_monte_carlo_is_thread_independent():
    c = config(snr_db=20.0, num_relays=3, omega_li_db=-20.0)
    a = cn.estimate_outage(cn.Scheme.TRS, c, trials=50_000, seed=11, threads=1, chunk_size=4096)
    b = cn.estimate_outage(cn.Scheme.TRS, c, trials=50_000, seed=11, threads=3, chunk_size=4096)
    assert a.outages == b.outages


def test_sweep_csv():
    spec = cn.figure_preset("fig2")
    spec.trials = 2000
    spec.snr_grid_db = [0.0, 30.0]
    text = cn.sweep_csv(spec)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 2 * 2 * 2 + 2
    assert {r["scheme"] for r in rows} == {"SRS", "RRS_SRS", "OMA"}
    assert text == cn.sweep_csv(spec, threads=2)


def test_bad_specs_raise():
    spec = cn.figure_preset("fig2")
    spec.schemes = []
    assert cn.validate_spec(spec)[0].startswith("schemes")
    with pytest.raises(cn.SpecError):
        cn.sweep_csv(spec)
    with pytest.raises(ValueError, match="fig2"):
        cn.figure_preset("fig99")
