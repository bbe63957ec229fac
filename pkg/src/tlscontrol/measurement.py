"""Simulated T1 measurements: delay grids, shot sampling, decay fits.

One measurement excites the qubit, waits one of ``n_points`` delays,
reads out, and repeats until every delay has ``shots_per_point`` Bernoulli
outcomes.  Shots are spread uniformly over the measurement's wall-clock
duration so a slow control waveform is sampled asynchronously, and the
bath diffuses between delay points.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import curve_fit

from .bath import advance_diffusion
from .decay import Dc, Triangle, WaveformSpec, Zero, gamma_lz, gamma_qp, gamma_tls, waveform_voltage
from .world import World


@dataclass(frozen=True)
class DelayGrid:
    """Readout-delay schedule in microseconds."""

    spacing: str  # "log" or "linear"
    n_points: int
    t_min: float
    t_max: float

    def __post_init__(self):
        if self.spacing not in ("log", "linear"):
            raise ValueError(f"spacing must be 'log' or 'linear', got {self.spacing!r}")
        if self.n_points < 2:
            raise ValueError("n_points must be at least 2")
        if not (0 < self.t_min < self.t_max):
            raise ValueError("delays require 0 < t_min < t_max")


def make_delays(grid: DelayGrid) -> np.ndarray:
    """Strictly increasing delay vector for the grid, us."""
    if grid.spacing == "log":
        return np.geomspace(grid.t_min, grid.t_max, grid.n_points)
    return np.linspace(grid.t_min, grid.t_max, grid.n_points)


@dataclass(frozen=True)
class MeasurementSettings:
    grid: DelayGrid
    shots: int = 400
    duration_s: float = 600.0

    def __post_init__(self):
        if self.shots < 1:
            raise ValueError("shots must be positive")
        if self.duration_s <= 0:
            raise ValueError("duration_s must be positive")


# Long log grids for the slow settings, a short one for fast-random; the
# champion fine grid is built per measurement from the coarse estimate.
def default_settings(kind: str) -> MeasurementSettings:
    if kind in ("no_control", "ac"):
        return MeasurementSettings(DelayGrid("log", 101, 10.0, 4000.0), 400, 600.0)
    if kind in ("fast_random", "optimizer"):
        return MeasurementSettings(DelayGrid("log", 25, 10.0, 4000.0), 400, 150.0)
    raise ValueError(f"no default settings for kind {kind!r}")


@dataclass(frozen=True)
class P1Curve:
    """Estimated excited-state population per delay."""

    delays: np.ndarray
    p1: np.ndarray
    shots: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.delays, dtype=float)
        p = np.asarray(self.p1, dtype=float)
        s = np.asarray(self.shots)
        if not (d.shape == p.shape == s.shape):
            raise ValueError("delays, p1 and shots must have matching shapes")
        if (p < 0).any() or (p > 1).any():
            raise ValueError("p1 must lie in [0, 1]")
        object.__setattr__(self, "delays", d)
        object.__setattr__(self, "p1", p)
        object.__setattr__(self, "shots", s)


@dataclass(frozen=True)
class T1Fit:
    """Result of a weighted exponential fit ``A exp(-t/T1) + B``."""

    t1: float | None
    t1_stderr: float | None
    amplitude: float | None
    offset: float | None
    converged: bool
    residual_rms: float | None = None


def _model(t, a, t1, b):
    return a * np.exp(-t / t1) + b


def _initial_guess(t, p, t1_lo, t1_hi):
    a0 = p[0] - p[-1]
    b0 = float(np.clip(p[-1], -0.099, 0.499))
    # log-slope over the first decade of delays seeds T1
    mask = (t <= 10.0 * t[0]) & (p - b0 > max(a0 * 0.05, 1e-6))
    if mask.sum() >= 2:
        slope = np.polyfit(t[mask], np.log(p[mask] - b0), 1)[0]
        t1_0 = -1.0 / slope if slope < 0 else t1_hi / 10.0
    else:
        t1_0 = t[len(t) // 2]
    return (
        float(np.clip(a0, 1e-6, 1.2)),
        float(np.clip(t1_0, t1_lo, t1_hi)),
        b0,
    )


def fit_exponential(curve: P1Curve) -> T1Fit:
    """Weighted nonlinear least squares for the decay constant.

    Points are weighted by the binomial variance ``p(1-p)/shots`` with p
    clamped away from 0 and 1.  The decay constant is bounded to
    ``[t_min/10, 100 t_max]``, the amplitude to (0, 1.2] and the offset to
    [-0.1, 0.5].  A curve with no visible decay, an optimizer failure, or a
    singular curvature matrix yields ``converged=False`` rather than a
    sentinel value.
    """
    t = curve.delays
    p = curve.p1
    shots = np.asarray(curve.shots, dtype=float)
    if t.size < 4:
        raise ValueError("need at least 4 points to fit a decay")

    t1_lo, t1_hi = t[0] / 10.0, 100.0 * t[-1]
    if p[0] - p[-1] < 1e-3:
        return T1Fit(None, None, None, None, False)

    pc = np.clip(p, 0.5 / shots, 1.0 - 0.5 / shots)
    sigma = np.sqrt(pc * (1.0 - pc) / shots)
    p0 = _initial_guess(t, p, t1_lo, t1_hi)
    bounds = ([1e-9, t1_lo, -0.1], [1.2, t1_hi, 0.5])
    try:
        popt, pcov = curve_fit(
            _model,
            t,
            p,
            p0=p0,
            sigma=sigma,
            absolute_sigma=True,
            bounds=bounds,
            maxfev=20000,
            xtol=1e-13,
            ftol=1e-13,
        )
    except (RuntimeError, ValueError):
        return T1Fit(None, None, None, None, False)

    a, t1, b = (float(x) for x in popt)
    var = float(pcov[1, 1])
    if not np.isfinite(var) or var < 0:
        return T1Fit(None, None, None, None, False)
    # a decay constant pinned to the search boundary is a failed fit
    if t1 <= t1_lo * (1 + 1e-3) or t1 >= t1_hi * (1 - 1e-3):
        return T1Fit(None, None, None, None, False)
    rms = float(np.sqrt(np.mean((p - _model(t, *popt)) ** 2)))
    return T1Fit(t1, float(np.sqrt(var)), a, b, True, rms)


def _assignment_probability(q, p_survive):
    # readout channel: excited read correctly with 1-err_e, ground
    # misread as excited with err_g
    return (1.0 - q.read_err_e) * p_survive + q.read_err_g * (1.0 - p_survive)


def run_t1_measurement(
    world: World,
    control: WaveformSpec,
    grid: DelayGrid,
    shots_per_point: int = 400,
    duration_s: float = 600.0,
) -> tuple[P1Curve, T1Fit]:
    """Simulate one complete T1 measurement and fit it.

    The waveform phase is drawn once per measurement; each shot freezes the
    instantaneous bias for its full excite-wait-read round.  The bath
    diffuses once per delay point and the world clock advances by exactly
    ``duration_s``.
    """
    if shots_per_point < 1:
        raise ValueError("shots_per_point must be positive")
    if duration_s <= 0:
        raise ValueError("duration_s must be positive")

    q = world.qubit
    delays = make_delays(grid)
    n = delays.size
    phase = float(world.rng.random())
    dt_point = duration_s / n
    gqp = gamma_qp(world.temperature_mk, q)
    bias_constant = not isinstance(control, Triangle)

    n_total = n * shots_per_point
    p1 = np.empty(n)
    for k, t_k in enumerate(delays):
        if bias_constant:
            bias = waveform_voltage(control, 0.0, phase)
        else:
            j = k * shots_per_point + np.arange(shots_per_point)
            t_shot = (j + 0.5) / n_total * duration_s
            bias = waveform_voltage(control, t_shot, phase)
        rate = q.gamma0 + gamma_tls(q, world.bath, bias) + gqp
        if isinstance(control, Triangle):
            rate = rate + gamma_lz(q, world.bath, control)
        p_click = _assignment_probability(q, np.exp(-rate * t_k))
        clicks = world.rng.random(shots_per_point) < p_click
        p1[k] = clicks.sum() / shots_per_point
        advance_diffusion(world.bath, dt_point)

    curve = P1Curve(delays, p1, np.full(n, shots_per_point))
    return curve, fit_exponential(curve)


def measure_t1(world: World, control: WaveformSpec, settings: MeasurementSettings):
    """Convenience wrapper applying a settings bundle."""
    return run_t1_measurement(world, control, settings.grid, settings.shots, settings.duration_s)


def harmonic_average_t1(world: World, control: WaveformSpec, n_grid: int = 10000) -> float:
    """Harmonic-average decay time 1/<Gamma> over one bias-waveform period.

    Samples the waveform at ``n_grid`` uniformly spaced times (the dwell
    distribution of the bias), evaluates the static decay rate at each
    frozen bias against the current bath state, and returns the reciprocal
    mean rate.  This is the decay time a measurement much slower than the
    drive period averages toward.  Sweep-induced transitions are not
    included; for slow drives they are orders of magnitude below the
    static channels.
    """
    if n_grid < 1:
        raise ValueError("n_grid must be positive")
    q = world.qubit
    period_s = 1.0 / control.f_ac if isinstance(control, Triangle) else 1.0
    t = (np.arange(n_grid) + 0.5) / n_grid * period_s
    bias = waveform_voltage(control, t, 0.0)
    rates = np.asarray(q.gamma0 + gamma_tls(q, world.bath, bias) + gamma_qp(world.temperature_mk, q))
    return float(1.0 / rates.mean())
