"""Delay grids, decay fitting, and the simulated measurement loop."""

import numpy as np
import pytest

from tlscontrol import (
    Dc,
    DelayGrid,
    MeasurementSettings,
    P1Curve,
    Triangle,
    Zero,
    default_settings,
    fit_exponential,
    make_delays,
    measure_t1,
    run_t1_measurement,
)
from tlscontrol.rng import stream

from conftest import make_world

T1_TRUE = 1000.0


def _noiseless_curve(a=1.0, b=0.0, t1=T1_TRUE, n=101, t_max=4000.0, shots=400):
    t = np.geomspace(10.0, t_max, n)
    return P1Curve(t, a * np.exp(-t / t1) + b, np.full(n, shots))


# ------------------------------------------------------------------- grids


def test_make_delays_log_midpoint():
    np.testing.assert_allclose(
        make_delays(DelayGrid("log", 3, 1.0, 100.0)), [1.0, 10.0, 100.0], rtol=1e-12
    )


def test_make_delays_linear():
    np.testing.assert_allclose(
        make_delays(DelayGrid("linear", 5, 0.5, 2.5)), [0.5, 1.0, 1.5, 2.0, 2.5], rtol=1e-12
    )


def test_make_delays_constant_ratio():
    d = make_delays(DelayGrid("log", 101, 10.0, 12000.0))
    assert d.size == 101
    assert d[0] == pytest.approx(10.0, rel=1e-12)
    assert d[-1] == pytest.approx(12000.0, rel=1e-12)
    ratios = d[1:] / d[:-1]
    np.testing.assert_allclose(ratios, ratios[0], rtol=1e-12)


@pytest.mark.parametrize(
    "kw",
    [
        {"spacing": "log", "n_points": 1, "t_min": 1.0, "t_max": 2.0},
        {"spacing": "log", "n_points": 5, "t_min": 0.0, "t_max": 2.0},
        {"spacing": "log", "n_points": 5, "t_min": 3.0, "t_max": 2.0},
        {"spacing": "cubic", "n_points": 5, "t_min": 1.0, "t_max": 2.0},
    ],
)
def test_delay_grid_validation(kw):
    with pytest.raises(ValueError):
        DelayGrid(**kw)


def test_default_settings_shapes():
    slow = default_settings("ac")
    assert (slow.grid.spacing, slow.grid.n_points) == ("log", 101)
    assert (slow.shots, slow.duration_s) == (400, 600.0)
    fast = default_settings("fast_random")
    assert fast.grid.n_points == 25
    assert fast.duration_s == 150.0
    with pytest.raises(ValueError):
        default_settings("champion")


# -------------------------------------------------------------------- fits


def test_fit_noiseless_exact():
    fit = fit_exponential(_noiseless_curve())
    assert fit.converged
    assert fit.t1 == pytest.approx(T1_TRUE, rel=1e-6)
    assert fit.amplitude == pytest.approx(1.0, rel=1e-6)
    assert fit.offset == pytest.approx(0.0, abs=1e-8)


def test_fit_noiseless_with_readout_floor():
    fit = fit_exponential(_noiseless_curve(a=0.97, b=0.02))
    assert fit.converged
    assert fit.t1 == pytest.approx(T1_TRUE, rel=1e-6)
    assert fit.offset == pytest.approx(0.02, rel=1e-4)


def test_fit_scale_equivariance():
    base = _noiseless_curve()
    c = 7.3
    scaled = P1Curve(base.delays * c, base.p1, base.shots)
    f0 = fit_exponential(base)
    f1 = fit_exponential(scaled)
    assert f1.t1 == pytest.approx(c * f0.t1, rel=1e-9)


def test_fit_flat_curve_not_converged():
    n = 20
    curve = P1Curve(np.geomspace(10, 4000, n), np.ones(n), np.full(n, 400))
    fit = fit_exponential(curve)
    assert not fit.converged
    assert fit.t1 is None


def test_fit_rejects_short_curves():
    curve = P1Curve(np.array([1.0, 2.0, 3.0]), np.full(3, 0.5), np.full(3, 400))
    with pytest.raises(ValueError):
        fit_exponential(curve)


def test_fit_recovery_under_shot_noise():
    # 400 shots x 101 log delays: median error < 3% and stderr calibrated
    rng = stream(31, 4)
    t = np.geomspace(10.0, 4.0 * T1_TRUE, 101)
    p_true = np.exp(-t / T1_TRUE)
    t1s, errs = [], []
    for _ in range(500):
        p_hat = rng.binomial(400, p_true) / 400.0
        fit = fit_exponential(P1Curve(t, p_hat, np.full(t.size, 400)))
        assert fit.converged
        t1s.append(fit.t1)
        errs.append(fit.t1_stderr)
    t1s = np.asarray(t1s)
    assert np.median(np.abs(t1s - T1_TRUE)) / T1_TRUE < 0.03
    scatter = t1s.std(ddof=1)
    assert scatter / 1.5 < np.median(errs) < scatter * 1.5


# ------------------------------------------------------------ measurements


def test_zero_rate_world_yields_flat_curve():
    world = make_world(gamma0=0.0, temperature_mk=0.0, read_err_e=0.0, read_err_g=0.0)
    curve, fit = run_t1_measurement(
        world, Zero(), DelayGrid("log", 21, 10.0, 4000.0), shots_per_point=200, duration_s=60.0
    )
    np.testing.assert_array_equal(curve.p1, 1.0)
    assert not fit.converged


def test_constant_rate_world_recovers_t1():
    world = make_world(gamma0=1e-3, read_err_e=0.0, read_err_g=0.0, seed=8)
    curve, fit = run_t1_measurement(
        world, Zero(), DelayGrid("log", 101, 10.0, 4000.0), shots_per_point=100_000,
        duration_s=600.0,
    )
    assert fit.converged
    assert fit.t1 == pytest.approx(T1_TRUE, rel=0.01)


def test_wall_clock_advances_exactly():
    world = make_world(gamma0=1e-3)
    before = world.clock_s
    run_t1_measurement(
        world, Dc(2.0), DelayGrid("log", 25, 10.0, 4000.0), shots_per_point=50,
        duration_s=150.0,
    )
    assert world.clock_s == pytest.approx(before + 150.0, rel=1e-12)


def test_measurement_deterministic():
    curves = []
    for _ in range(2):
        world = make_world(gamma0=1e-3, seed=12)
        curve, _ = run_t1_measurement(
            world, Dc(0.0), DelayGrid("log", 25, 10.0, 4000.0), shots_per_point=100,
            duration_s=60.0,
        )
        curves.append(curve)
    np.testing.assert_array_equal(curves[0].p1, curves[1].p1)


def test_rng_footprint_same_for_all_controls():
    # a measurement consumes one phase draw plus one block per delay point,
    # independent of waveform kind, so interleaves stay aligned
    worlds = [make_world(gamma0=1e-3, seed=5) for _ in range(2)]
    grid = DelayGrid("log", 11, 10.0, 1000.0)
    run_t1_measurement(worlds[0], Dc(1.0), grid, shots_per_point=40, duration_s=10.0)
    run_t1_measurement(worlds[1], Triangle(vpp=16.0, f_ac=0.1), grid, shots_per_point=40,
                       duration_s=10.0)
    assert worlds[0].rng.random() == worlds[1].rng.random()


def test_expected_population_monotone_for_fixed_rate():
    # noiseless channel expectation decreases with delay when the rate is fixed
    e_e, e_g, rate = 0.02, 0.01, 1e-3
    t = make_delays(DelayGrid("log", 101, 10.0, 4000.0))
    surv = np.exp(-rate * t)
    p = (1.0 - e_e) * surv + e_g * (1.0 - surv)
    assert np.all(np.diff(p) < 0)
    assert p[0] <= 1.0 - e_e and p[-1] >= e_g


def test_measure_t1_wrapper_uses_settings():
    world = make_world(gamma0=1e-3, seed=3)
    settings = MeasurementSettings(DelayGrid("log", 25, 10.0, 4000.0), 50, 150.0)
    curve, _ = measure_t1(world, Dc(0.0), settings)
    assert curve.delays.size == 25
    assert world.clock_s == pytest.approx(150.0, rel=1e-12)
    np.testing.assert_array_equal(curve.shots, 50)


# ------------------------------------------------- dense-grid rate average


def test_harmonic_average_t1_constant_bias():
    from tlscontrol import TlsDefect, harmonic_average_t1
    from tlscontrol.decay import gamma_tls

    defect = TlsDefect(epsilon0=0.0, delta0=4.7, dipole_gain=0.1, g_bare=0.1,
                       gamma2=6.283185307179586, diff_sigma=0.0, diff_tau=1.0)
    world = make_world(defects=(defect,), gamma0=1e-3, seed=0)
    # constant bias: the average is just the rate at that bias
    expected = 1.0 / (1e-3 + gamma_tls(world.qubit, world.bath, 2.0))
    assert harmonic_average_t1(world, Dc(2.0)) == pytest.approx(expected, rel=1e-12)


def test_harmonic_average_t1_triangle_matches_voltage_grid():
    from tlscontrol import TlsDefect, harmonic_average_t1
    from tlscontrol.decay import gamma_tls

    defect = TlsDefect(epsilon0=4.153, delta0=2.0, dipole_gain=0.05, g_bare=0.132,
                       gamma2=6.283185307179586, diff_sigma=0.0, diff_tau=1.0)
    world = make_world(defects=(defect,), gamma0=1e-3, seed=0)
    control = Triangle(vpp=16.0, f_ac=0.1)
    # a triangle dwells uniformly in voltage, so time sampling must agree
    # with an explicit uniform voltage grid
    v = np.linspace(-8.0, 8.0, 40001)
    expected = 1.0 / np.mean(1e-3 + gamma_tls(world.qubit, world.bath, v))
    assert harmonic_average_t1(world, control, n_grid=40000) == pytest.approx(expected, rel=1e-4)


def test_harmonic_average_t1_rejects_empty_grid():
    from tlscontrol import harmonic_average_t1

    with pytest.raises(ValueError):
        harmonic_average_t1(make_world(), Dc(0.0), n_grid=0)
