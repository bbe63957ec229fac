"""Campaign statistics and model fits.

Operates on sequences of records (or bare numbers); nothing here touches a
world or an RNG, so every function is a pure summary of its inputs.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .decay import QubitSpec, gamma_qp


def harmonic_mean(values) -> float:
    """n / sum(1/x). Rejects empty input and nonpositive values."""
    x = np.asarray(values, dtype=float)
    if x.size == 0:
        raise ValueError("harmonic mean of empty input")
    if (x <= 0).any():
        raise ValueError("harmonic mean requires positive values")
    return x.size / float((1.0 / x).sum())


def cumulative_hmean(values) -> np.ndarray:
    """Running harmonic mean: element k averages values[0..k]."""
    x = np.asarray(values, dtype=float)
    if x.size == 0:
        raise ValueError("cumulative harmonic mean of empty input")
    if (x <= 0).any():
        raise ValueError("cumulative harmonic mean requires positive values")
    return np.arange(1, x.size + 1) / np.cumsum(1.0 / x)


def n_effective(sigma_fr: float, sigma_ac: float) -> float:
    """Averaging gain (sigma_fr / sigma_ac)^2 of the slow sweep."""
    if sigma_fr < 0:
        raise ValueError("sigma_fr must be nonnegative")
    if sigma_ac <= 0:
        raise ValueError("sigma_ac must be positive")
    return (sigma_fr / sigma_ac) ** 2


def quality_factor(f_q_ghz: float, t1_us: float) -> float:
    """Q = omega_q * T1 = 2 pi f_q T1 (dimensionless)."""
    if f_q_ghz <= 0 or t1_us <= 0:
        raise ValueError("frequency and t1 must be positive")
    return 2.0 * math.pi * f_q_ghz * 1e3 * t1_us


@dataclass
class KindStats:
    count: int
    excluded: int
    mean_us: float | None = None
    hmean_us: float | None = None
    std_us: float | None = None


@dataclass
class AnalysisReport:
    """Per-kind statistics of one qubit's campaign."""

    qubit_id: str
    kinds: dict = field(default_factory=dict)  # kind -> KindStats
    n_eff: float | None = None
    q_per_kind: dict = field(default_factory=dict)
    f_q_ghz: float | None = None


def _t1_series(records, kind):
    return [r.t1_us for r in records if r.kind == kind and r.converged and r.t1_us]


def report_from_records(records, f_q_ghz: float | None = None) -> AnalysisReport:
    """Summarize one qubit's records kind by kind.

    Non-converged fits are excluded from every statistic but counted.
    ``n_eff`` compares fast-random and slow-sweep scatter when both are
    present; quality factors (from the harmonic mean) need ``f_q_ghz``.
    """
    qubit_ids = {r.qubit_id for r in records}
    if len(qubit_ids) > 1:
        raise ValueError(f"records mix qubit_ids {sorted(qubit_ids)}; analyze per qubit")
    report = AnalysisReport(qubit_id=qubit_ids.pop() if qubit_ids else "", f_q_ghz=f_q_ghz)

    present = []
    for r in records:
        if r.kind not in present:
            present.append(r.kind)
    for kind in present:
        total = sum(1 for r in records if r.kind == kind)
        t1 = _t1_series(records, kind)
        stats = KindStats(count=len(t1), excluded=total - len(t1))
        if t1:
            arr = np.asarray(t1)
            stats.mean_us = float(arr.mean())
            stats.hmean_us = harmonic_mean(arr)
            stats.std_us = float(arr.std(ddof=1)) if arr.size > 1 else 0.0
            if f_q_ghz is not None:
                report.q_per_kind[kind] = quality_factor(f_q_ghz, stats.hmean_us)
        report.kinds[kind] = stats

    fr = report.kinds.get("fast_random")
    ac = report.kinds.get("ac")
    if fr and ac and fr.std_us is not None and ac.std_us:
        report.n_eff = n_effective(fr.std_us, ac.std_us)
    return report


def fit_q_vs_frequency(f_q_ghz, q_values, exclude=()) -> tuple:
    """Ordinary least squares of Q against frequency.

    ``exclude`` lists indices left out of the fit (manually flagged
    outliers); all points stay in the inputs so the caller can plot them.
    Returns (slope_per_ghz, intercept).
    """
    f = np.asarray(f_q_ghz, dtype=float)
    q = np.asarray(q_values, dtype=float)
    if f.shape != q.shape:
        raise ValueError("frequency and Q arrays must match")
    mask = np.ones(f.size, dtype=bool)
    for i in exclude:
        mask[i] = False
    if mask.sum() < 2:
        raise ValueError("need at least 2 included points")
    slope, intercept = np.polyfit(f[mask], q[mask], 1)
    return float(slope), float(intercept)


def fit_sigma_vs_mu(mu, sigma) -> float:
    """Through-origin slope sum(x y) / sum(x^2) of scatter versus mean."""
    x = np.asarray(mu, dtype=float)
    y = np.asarray(sigma, dtype=float)
    if x.shape != y.shape or x.size == 0:
        raise ValueError("mu and sigma arrays must match and be nonempty")
    denom = float((x * x).sum())
    if denom == 0:
        raise ValueError("all mu are zero")
    return float((x * y).sum()) / denom


@dataclass
class TemperatureFit:
    """Result of the activated-loss fit Gamma(T) = Gamma0 + Gamma_qp(T; gap)."""

    gamma0_per_us: float
    gap_ghz: float
    converged: bool
    residuals_per_us: np.ndarray  # measured - model rate, every input point
    n_base: int
    n_fit: int


# Temperature bands: points below T_BASE pin the residual rate; only points
# at or above T_FIT constrain the gap.
T_BASE_MK = 40.0
T_FIT_MK = 135.0


def _golden_section(f, lo, hi, rel_tol=1e-4):
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > rel_tol * abs((a + b) / 2.0):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (a + b) / 2.0


def fit_temperature_model(
    temperatures_mk,
    t1_us,
    f_q_ghz: float,
    gap_lo_ghz: float = 10.0,
    gap_hi_ghz: float = 100.0,
) -> TemperatureFit:
    """Fit the superconducting gap to T1-versus-temperature data.

    The residual rate is fixed to the inverse of the mean T1 below 40 mK;
    the gap is then the only free parameter, found by golden-section search
    minimizing squared rate error on points at or above 135 mK.  Residuals
    are reported for every input point, so systematic misfit at
    intermediate temperatures stays visible rather than being absorbed.
    """
    T = np.asarray(temperatures_mk, dtype=float)
    t1 = np.asarray(t1_us, dtype=float)
    if T.shape != t1.shape or T.size == 0:
        raise ValueError("temperature and t1 arrays must match and be nonempty")
    if (T < 0).any():
        raise ValueError("temperatures must be nonnegative")
    if (t1 <= 0).any():
        raise ValueError("t1 values must be positive")
    if not (0 < gap_lo_ghz < gap_hi_ghz):
        raise ValueError("gap bracket must satisfy 0 < lo < hi")

    base = T < T_BASE_MK
    hot = T >= T_FIT_MK
    if not base.any():
        raise ValueError(f"no points below {T_BASE_MK} mK to pin gamma0")
    if not hot.any():
        raise ValueError(f"no points at or above {T_FIT_MK} mK to constrain the gap")

    gamma0 = 1.0 / float(t1[base].mean())
    rates = 1.0 / t1

    def sse(gap):
        probe = QubitSpec(f_q=f_q_ghz, gamma0=gamma0, gap=gap)
        model = np.array([gamma0 + gamma_qp(Ti, probe) for Ti in T[hot]])
        return float(((rates[hot] - model) ** 2).sum())

    gap = _golden_section(sse, gap_lo_ghz, gap_hi_ghz)
    # an optimum pinned to the bracket edge means the bracket failed
    span = gap_hi_ghz - gap_lo_ghz
    converged = (gap - gap_lo_ghz) > 1e-3 * span and (gap_hi_ghz - gap) > 1e-3 * span

    probe = QubitSpec(f_q=f_q_ghz, gamma0=gamma0, gap=gap)
    model_all = np.array([gamma0 + gamma_qp(Ti, probe) for Ti in T])
    return TemperatureFit(
        gamma0_per_us=gamma0,
        gap_ghz=gap,
        converged=converged,
        residuals_per_us=rates - model_all,
        n_base=int(base.sum()),
        n_fit=int(hot.sum()),
    )
