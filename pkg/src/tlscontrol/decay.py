"""Relaxation channels and control waveforms.

The total energy-relaxation rate of the qubit is a sum of independent
channels: a constant residual loss, Lorentzian exchange with every bath
defect, thermal quasiparticle loss, and (while the electrode is swept)
Landau-Zener excitation transfer at level crossings.  Rates are in 1/us,
energies in GHz, couplings in rad/us.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .bath import BathState, TlsDefect
from .units import KB_OVER_H_GHZ_PER_MK, TWO_PI, rad_per_us_from_ghz


@dataclass(frozen=True)
class QubitSpec:
    """Fixed-frequency transmon parameters.

    Attributes
    ----------
    f_q : float
        Qubit transition frequency, GHz.
    gamma0 : float
        Residual (TLS- and quasiparticle-free) loss rate, 1/us.
    gap : float
        Superconducting gap of the electrode material over h, GHz.
    read_err_e : float
        Probability of reading ground given the qubit survived excited.
    read_err_g : float
        Probability of reading excited given the qubit decayed.
    chi : float
        Dispersive shift chi/2pi, kHz. Metadata only.
    kappa : float
        Readout linewidth kappa/2pi, kHz. Metadata only.
    """

    f_q: float
    gamma0: float = 4e-4
    gap: float = 43.5
    read_err_e: float = 0.02
    read_err_g: float = 0.01
    chi: float = 200.0
    kappa: float = 100.0

    def __post_init__(self):
        if self.f_q <= 0:
            raise ValueError("f_q must be positive")
        if self.gamma0 < 0:
            raise ValueError("gamma0 must be nonnegative")
        if self.gap <= 0:
            raise ValueError("gap must be positive")
        for name in ("read_err_e", "read_err_g"):
            v = getattr(self, name)
            if not 0 <= v < 0.5:
                raise ValueError(f"{name} must lie in [0, 0.5)")


@dataclass(frozen=True)
class Zero:
    """Grounded electrode (the no-control setting)."""


@dataclass(frozen=True)
class Dc:
    """Constant electrode voltage, volts."""

    voltage: float


@dataclass(frozen=True)
class Triangle:
    """Symmetric triangle sweep around 0 V.

    ``vpp`` is the full peak-to-peak span, ``f_ac`` the repetition rate in
    Hz.  At phase 0 the waveform starts at 0 V rising, reaches +vpp/2 a
    quarter period in and -vpp/2 at three quarters.  The phase is drawn
    uniformly at each measurement start, modeling a generator that is
    asynchronous with the pulse sequencer.
    """

    vpp: float
    f_ac: float

    def __post_init__(self):
        if self.vpp < 0:
            raise ValueError("vpp must be nonnegative")
        if self.f_ac <= 0:
            raise ValueError("f_ac must be positive")


WaveformSpec = Union[Zero, Dc, Triangle]


def waveform_voltage(w: WaveformSpec, t_s, phase: float = 0.0):
    """Electrode voltage at wall time ``t_s`` seconds.

    ``phase`` in [0, 1) shifts the triangle origin by ``phase`` of a period.
    Accepts scalar or array times.
    """
    t = np.asarray(t_s, dtype=float)
    if isinstance(w, Zero):
        out = np.zeros(t.shape)
    elif isinstance(w, Dc):
        out = np.full(t.shape, w.voltage)
    else:
        u = np.mod(t * w.f_ac + phase, 1.0)
        # piecewise: /\ with zeros at u=0, 1/2 and extrema at 1/4, 3/4
        tri = np.where(u < 0.25, 4.0 * u, np.where(u < 0.75, 2.0 - 4.0 * u, 4.0 * u - 4.0))
        out = 0.5 * w.vpp * tri
    return float(out) if t.ndim == 0 else out


def gamma_tls(q: QubitSpec, bath: BathState, bias) -> float:
    """TLS-induced relaxation rate at the given electrode bias, 1/us.

    Sums a Lorentzian exchange term over all defects,
    ``2 g_eff^2 gamma2 / (gamma2^2 + delta^2)`` with detuning
    ``delta = 2pi*1e3*(f_q - splitting)`` in rad/us.  ``bias`` may be a
    scalar or an array of voltages; an empty bath contributes 0.
    """
    b = np.asarray(bias, dtype=float)
    if len(bath) == 0:
        return 0.0 if b.ndim == 0 else np.zeros(b.shape)
    cols = bath.columns()
    eps = cols["epsilon0"] + cols["dipole_gain"] * b[..., None] + bath.xi
    splitting = np.hypot(eps, cols["delta0"])
    g_eff = cols["g_bare"] * cols["delta0"] / splitting
    delta = rad_per_us_from_ghz(q.f_q - splitting)
    rate = (2.0 * g_eff**2 * cols["gamma2"] / (cols["gamma2"] ** 2 + delta**2)).sum(axis=-1)
    return float(rate) if b.ndim == 0 else rate


def gamma_qp(temperature_mk: float, q: QubitSpec) -> float:
    """Thermal quasiparticle relaxation rate, 1/us.

    Equilibrium quasiparticle density ``x_qp = sqrt(2 pi kT / gap) *
    exp(-gap / kT)`` drives relaxation at ``x_qp * (w_q / pi) *
    sqrt(2 gap / (hbar w_q))``.  Exactly 0 at zero temperature; negligible
    below ~40 mK for a 43.5 GHz gap and steeply activated above 100 mK.
    """
    if temperature_mk < 0:
        raise ValueError("temperature must be nonnegative")
    if temperature_mk == 0.0:
        return 0.0
    kbt = KB_OVER_H_GHZ_PER_MK * temperature_mk  # GHz
    x_qp = math.sqrt(TWO_PI * kbt / q.gap) * math.exp(-q.gap / kbt)
    # w_q/pi = 2e3*f_q in 1/us; 2*gap/(hbar*w_q) = 2*gap/f_q dimensionless
    return x_qp * 2e3 * q.f_q * math.sqrt(2.0 * q.gap / q.f_q)


def lz_crossing_probability(g_eff: float, sweep_rate: float) -> float:
    """Excitation-transfer probability for one swept level crossing.

    ``1 - exp(-2 pi g_eff^2 / v)`` with ``g_eff`` in rad/us and the
    splitting sweep rate ``v`` in rad/us per us.  Approaches 1 for slow
    sweeps (adiabatic) and 2 pi g_eff^2 / v for fast ones.
    """
    if sweep_rate <= 0:
        raise ValueError("sweep_rate must be positive")
    return -math.expm1(-TWO_PI * g_eff**2 / sweep_rate)


def gamma_lz(q: QubitSpec, bath: BathState, w: Triangle) -> float:
    """Relaxation rate from swept level crossings, 1/us.

    A defect whose splitting equals ``f_q`` at some voltage inside the sweep
    span is traversed twice per period per bias root, so it contributes
    ``2 f_ac P_LZ`` per root.  The local sweep rate is
    ``|d splitting/dV| * 2 vpp f_ac`` converted from GHz/s to rad/us per us.
    Both bias roots of the quadrature form count separately.
    """
    if not isinstance(w, Triangle):
        raise ValueError("gamma_lz requires a triangle sweep")
    if len(bath) == 0 or w.vpp == 0.0:
        return 0.0
    cols = bath.columns()
    delta0 = cols["delta0"]
    gain = cols["dipole_gain"]
    crossable = (delta0 < q.f_q) & (gain != 0.0)
    if not crossable.any():
        return 0.0
    eps_root = np.sqrt(q.f_q**2 - delta0[crossable] ** 2)
    center = cols["epsilon0"][crossable] + bath.xi[crossable]
    g = gain[crossable]
    # splitting at a crossing is f_q, so the coupling and slope are fixed
    g_eff = cols["g_bare"][crossable] * delta0[crossable] / q.f_q
    slope = eps_root / q.f_q * np.abs(g)  # |dE/dV| in GHz/V
    # GHz/s -> rad/us per us carries 2pi*1e3 (GHz->rad/us) and 1e-6 (s->us)
    v_sweep = slope * (2.0 * w.vpp * w.f_ac) * TWO_PI * 1e-3

    total = 0.0
    for sign in (1.0, -1.0):
        v_root = (sign * eps_root - center) / g
        hit = np.abs(v_root) <= 0.5 * w.vpp
        if hit.any():
            p = -np.expm1(-TWO_PI * g_eff[hit] ** 2 / v_sweep[hit])
            total += float((2.0 * w.f_ac * 1e-6 * p).sum())
    return total


def gamma_total(
    q: QubitSpec,
    bath: BathState,
    control_voltage,
    temperature_mk: float,
    sweep: Triangle | None = None,
):
    """Total relaxation rate at a frozen bias, 1/us.

    Channels add independently; the Landau-Zener term enters only while a
    sweep is running.  ``control_voltage`` may be an array.
    """
    rate = q.gamma0 + gamma_tls(q, bath, control_voltage) + gamma_qp(temperature_mk, q)
    if sweep is not None:
        rate = rate + gamma_lz(q, bath, sweep)
    return rate


class GaussianSurvival(NamedTuple):
    value: float
    valid: bool


def gaussian_average_survival(mu: float, sigma: float, t: float) -> GaussianSurvival:
    """Survival averaged over a Gaussian rate ensemble.

    For Gamma ~ N(mu, sigma^2) the exact average is
    ``<exp(-Gamma t)> = exp(-mu t + sigma^2 t^2 / 2)``.  The expression
    stops behaving like a survival probability once the unphysical negative-
    rate tail dominates; the ``valid`` flag is False for
    ``t >= 2 mu / sigma^2``.  Always at least ``exp(-mu t)`` (Jensen).
    """
    if mu <= 0:
        raise ValueError("mu must be positive")
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    if t < 0:
        raise ValueError("t must be nonnegative")
    value = math.exp(-mu * t + 0.5 * sigma**2 * t**2)
    valid = True if sigma == 0.0 else t < 2.0 * mu / sigma**2
    return GaussianSurvival(value, valid)
