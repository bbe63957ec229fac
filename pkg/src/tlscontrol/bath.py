"""Two-level-system bath: sampling, bias response, spectral diffusion.

Each defect follows the standard tunneling model.  Its splitting responds to
the shared electrode voltage through a per-defect dipole gain, and its
asymmetry energy wanders as an Ornstein-Uhlenbeck process (spectral
diffusion).  All energies are in GHz, couplings and dephasing rates in
rad/us, diffusion amplitudes in GHz and correlation times in seconds.
"""

from dataclasses import dataclass, field

import numpy as np

from . import rng as rngmod


@dataclass(frozen=True)
class TlsDefect:
    """Static parameters of one two-level fluctuator.

    Attributes
    ----------
    epsilon0 : float
        Zero-bias asymmetry energy, GHz. May be negative.
    delta0 : float
        Tunneling energy, GHz. Sets the minimum splitting.
    dipole_gain : float
        Asymmetry shift per volt of electrode bias, GHz/V.
    g_bare : float
        Bare transverse coupling to the qubit, rad/us.
    gamma2 : float
        Defect dephasing rate, rad/us.
    diff_sigma : float
        Stationary spectral-diffusion amplitude, GHz.
    diff_tau : float
        Spectral-diffusion correlation time, seconds.
    """

    epsilon0: float
    delta0: float
    dipole_gain: float
    g_bare: float
    gamma2: float
    diff_sigma: float
    diff_tau: float

    def __post_init__(self):
        if self.delta0 <= 0:
            raise ValueError("delta0 must be positive")
        if self.g_bare < 0:
            raise ValueError("g_bare must be nonnegative")
        if self.gamma2 <= 0:
            raise ValueError("gamma2 must be positive")
        if self.diff_sigma < 0:
            raise ValueError("diff_sigma must be nonnegative")
        if self.diff_tau <= 0:
            raise ValueError("diff_tau must be positive")


@dataclass(frozen=True)
class BathConfig:
    """Sampling distributions for a defect ensemble near one qubit.

    Distributions are tuning knobs, not physical claims: defaults are chosen
    so a qubit at ``f_center`` relaxes on a millisecond scale with
    order-unity fluctuations across voltage.

    Attributes
    ----------
    f_center : float
        Center of the splitting window (the qubit frequency), GHz.
    n_tls : int
        Number of defects.
    window : float
        Half-width of the zero-bias splitting window, GHz.
    delta0_range : tuple
        Log-uniform range for the tunneling energy, GHz.
    dipole_gain_scale : float
        Std of the normal dipole-gain distribution, GHz/V.
    g_range : tuple
        Log-uniform range for the bare coupling, rad/us.
    gamma2_range : tuple
        Log-uniform range for the dephasing rate, rad/us.
    diff_sigma_range : tuple
        Log-uniform range for the diffusion amplitude, GHz.
    diff_tau_range : tuple
        Log-uniform range for the diffusion correlation time, s.
    """

    f_center: float
    n_tls: int = 600
    window: float = 0.5
    delta0_range: tuple = (0.1, None)  # None -> f_center
    dipole_gain_scale: float = 0.02
    g_range: tuple = (0.018849555921538759, 0.12566370614359174)  # 3..20 kHz * 2pi
    gamma2_range: tuple = (3.141592653589793, 12.566370614359172)  # 0.5..2 MHz * 2pi
    diff_sigma_range: tuple = (1e-3, 30e-3)
    diff_tau_range: tuple = (1e2, 1e5)

    def __post_init__(self):
        if self.f_center <= 0:
            raise ValueError("f_center must be positive")
        if self.n_tls < 0:
            raise ValueError("n_tls must be nonnegative")
        if self.window <= 0:
            raise ValueError("window must be positive")
        for name in ("g_range", "gamma2_range", "diff_sigma_range", "diff_tau_range"):
            lo, hi = getattr(self, name)
            if not (0 < lo <= hi):
                raise ValueError(f"{name} must satisfy 0 < lo <= hi")

    def resolved_delta0_range(self) -> tuple:
        lo, hi = self.delta0_range
        if hi is None:
            hi = self.f_center
        if not (0 < lo <= hi):
            raise ValueError("delta0_range must satisfy 0 < lo <= hi")
        return (lo, hi)


@dataclass
class BathState:
    """Mutable state of one bath on one experiment timeline.

    Owned by a single timeline and advanced sequentially; the diffusion
    stream position is part of the state, so two timelines must not share
    one instance.
    """

    defects: list
    xi: np.ndarray
    clock_s: float
    rng: np.random.Generator
    seed: int = 0
    _cols: dict = field(default=None, repr=False, compare=False)

    def __len__(self):
        return len(self.defects)

    def columns(self) -> dict:
        """Static defect parameters as arrays, cached.

        Valid because defects are immutable after sampling; only ``xi`` and
        the clock evolve.
        """
        if self._cols is None:
            d = self.defects
            self._cols = {
                "epsilon0": np.array([t.epsilon0 for t in d], dtype=float),
                "delta0": np.array([t.delta0 for t in d], dtype=float),
                "dipole_gain": np.array([t.dipole_gain for t in d], dtype=float),
                "g_bare": np.array([t.g_bare for t in d], dtype=float),
                "gamma2": np.array([t.gamma2 for t in d], dtype=float),
                "diff_sigma": np.array([t.diff_sigma for t in d], dtype=float),
                "diff_tau": np.array([t.diff_tau for t in d], dtype=float),
            }
        return self._cols


def _log_uniform(gen: np.random.Generator, lo: float, hi: float) -> float:
    if lo == hi:
        return lo
    return float(np.exp(gen.uniform(np.log(lo), np.log(hi))))


def sample_bath(config: BathConfig, seed: int) -> BathState:
    """Draw a defect ensemble and its initial diffusion offsets.

    Zero-bias splittings are uniform in ``[f_center - window,
    f_center + window]``; the tunneling energy is log-uniform and resampled
    until it does not exceed the target splitting, which fixes
    ``|epsilon0| = sqrt(E^2 - delta0^2)`` up to a random sign.  Initial
    diffusion offsets are drawn from the stationary law N(0, diff_sigma^2).

    Deterministic: identical (config, seed) produce identical ensembles and
    an identically positioned diffusion stream.
    """
    gen = rngmod.stream(seed, rngmod.BATH_SAMPLE)
    d0_lo, d0_hi = config.resolved_delta0_range()
    lo_e = config.f_center - config.window
    if lo_e <= 0:
        raise ValueError("splitting window extends below zero frequency")

    defects = []
    xi0 = np.empty(config.n_tls, dtype=float)
    for i in range(config.n_tls):
        e_target = gen.uniform(lo_e, config.f_center + config.window)
        delta0 = _log_uniform(gen, d0_lo, d0_hi)
        while delta0 > e_target:
            delta0 = _log_uniform(gen, d0_lo, d0_hi)
        sign = 1.0 if gen.random() < 0.5 else -1.0
        epsilon0 = sign * float(np.sqrt(max(e_target**2 - delta0**2, 0.0)))
        gain = float(gen.normal(0.0, config.dipole_gain_scale))
        g_bare = _log_uniform(gen, *config.g_range)
        gamma2 = _log_uniform(gen, *config.gamma2_range)
        dsig = _log_uniform(gen, *config.diff_sigma_range)
        dtau = _log_uniform(gen, *config.diff_tau_range)
        defects.append(
            TlsDefect(
                epsilon0=epsilon0,
                delta0=delta0,
                dipole_gain=gain,
                g_bare=g_bare,
                gamma2=gamma2,
                diff_sigma=dsig,
                diff_tau=dtau,
            )
        )
        xi0[i] = gen.normal(0.0, dsig)

    return BathState(
        defects=defects,
        xi=xi0,
        clock_s=0.0,
        rng=rngmod.stream(seed, rngmod.BATH_DIFFUSION),
        seed=int(seed),
    )


def tls_splitting(defect: TlsDefect, bias: float, xi: float) -> float:
    """Instantaneous splitting sqrt((eps0 + gain*V + xi)^2 + delta0^2), GHz.

    Never falls below ``delta0`` for any bias or diffusion offset.
    """
    eps = defect.epsilon0 + defect.dipole_gain * bias + xi
    return float(np.hypot(eps, defect.delta0))


def transverse_coupling(defect: TlsDefect, splitting: float) -> float:
    """Effective transverse coupling g_bare * delta0 / splitting, rad/us."""
    if splitting < defect.delta0:
        raise ValueError("splitting below delta0 is unreachable")
    return defect.g_bare * defect.delta0 / splitting


def advance_diffusion(state: BathState, dt_s: float) -> BathState:
    """Advance every diffusion offset by ``dt_s`` seconds, in place.

    Uses the exact Ornstein-Uhlenbeck update
    ``xi' = xi*exp(-dt/tau) + sigma*sqrt(1 - exp(-2dt/tau))*n`` with
    independent standard normals, so any step size is unbiased and the
    stationary law N(0, sigma^2) is preserved.  One normal per defect is
    consumed even when ``dt_s`` is 0.
    """
    if dt_s < 0:
        raise ValueError("dt_s must be nonnegative")
    n = len(state.defects)
    draws = state.rng.standard_normal(n)
    if n:
        cols = state.columns()
        decay = np.exp(-dt_s / cols["diff_tau"])
        noise = cols["diff_sigma"] * np.sqrt(-np.expm1(-2.0 * dt_s / cols["diff_tau"]))
        state.xi = state.xi * decay + noise * draws
    state.clock_s += dt_s
    return state


def bath_to_dict(state: BathState) -> dict:
    """Self-describing snapshot of a bath, JSON-compatible.

    Includes the diffusion stream state so a loaded snapshot replays the
    exact trajectory the original would have produced.
    """
    bit_state = state.rng.bit_generator.state
    return {
        "schema": "tls-bath/1",
        "seed": state.seed,
        "clock_s": state.clock_s,
        "xi_ghz": [float(x) for x in state.xi],
        "defects": [
            {
                "epsilon0_ghz": d.epsilon0,
                "delta0_ghz": d.delta0,
                "dipole_gain_ghz_per_v": d.dipole_gain,
                "g_bare_rad_per_us": d.g_bare,
                "gamma2_rad_per_us": d.gamma2,
                "diff_sigma_ghz": d.diff_sigma,
                "diff_tau_s": d.diff_tau,
            }
            for d in state.defects
        ],
        "rng_state": _jsonable_rng_state(bit_state),
    }


def bath_from_dict(doc: dict) -> BathState:
    """Inverse of :func:`bath_to_dict`."""
    if doc.get("schema") != "tls-bath/1":
        raise ValueError(f"unsupported bath schema: {doc.get('schema')!r}")
    defects = [
        TlsDefect(
            epsilon0=d["epsilon0_ghz"],
            delta0=d["delta0_ghz"],
            dipole_gain=d["dipole_gain_ghz_per_v"],
            g_bare=d["g_bare_rad_per_us"],
            gamma2=d["gamma2_rad_per_us"],
            diff_sigma=d["diff_sigma_ghz"],
            diff_tau=d["diff_tau_s"],
        )
        for d in doc["defects"]
    ]
    gen = rngmod.stream(doc["seed"], rngmod.BATH_DIFFUSION)
    gen.bit_generator.state = _rng_state_from_jsonable(doc["rng_state"])
    return BathState(
        defects=defects,
        xi=np.array(doc["xi_ghz"], dtype=float),
        clock_s=float(doc["clock_s"]),
        rng=gen,
        seed=int(doc["seed"]),
    )


def _jsonable_rng_state(state: dict) -> dict:
    out = {}
    for k, v in state.items():
        if isinstance(v, dict):
            out[k] = _jsonable_rng_state(v)
        elif isinstance(v, np.ndarray):
            out[k] = [int(x) for x in v]
        else:
            out[k] = v
    return out


def _rng_state_from_jsonable(doc: dict) -> dict:
    out = {}
    for k, v in doc.items():
        if isinstance(v, dict):
            out[k] = _rng_state_from_jsonable(v)
        elif isinstance(v, list):
            out[k] = np.array(v, dtype=np.uint64)
        else:
            out[k] = v
    return out
