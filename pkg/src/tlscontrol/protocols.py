"""Measurement campaigns: interleaving, optimization, sweeps.

Each protocol drives one :class:`~tlscontrol.world.World` along a single
wall-clock timeline, emitting one :class:`T1Record` per measurement in
execution order.  Records therefore have nondecreasing ``wall_time_s``
within a campaign.
"""

from dataclasses import dataclass

import numpy as np

from .bath import advance_diffusion
from .decay import Dc, Triangle, Zero
from .measurement import DelayGrid, MeasurementSettings, default_settings, measure_t1
from .world import World

CONTROL_KINDS = ("no_control", "fast_random", "ac", "optimizer", "champion")

DEFAULT_CYCLE = ("ac", "no_control", "fast_random", "fast_random", "fast_random", "fast_random")

# Fast-random and optimizer redraws share one fixed uniform law.
RANDOM_VOLTAGE_SPAN = 8.0


@dataclass(frozen=True)
class T1Record:
    """One fitted T1 value with its control context."""

    wall_time_s: float
    qubit_id: str
    kind: str
    temperature_mk: float
    t1_us: float | None
    t1_stderr_us: float | None
    converged: bool
    seed: int
    voltage_v: float | None = None
    f_ac_hz: float | None = None
    vpp_v: float | None = None

    def __post_init__(self):
        if self.kind not in CONTROL_KINDS:
            raise ValueError(f"unknown control kind {self.kind!r}")
        if self.wall_time_s < 0:
            raise ValueError("wall_time_s must be nonnegative")


@dataclass(frozen=True)
class ScheduleSpec:
    """Interleaved-cycle schedule.

    ``cycle`` is the per-cycle measurement composition; the default mirrors
    one slow-sweep, one grounded, and four fast-random measurements per
    cycle.  An optional single break pauses acquisition (diffusion keeps
    running) once the cumulative active time passes
    ``break_after_active_s``.
    """

    n_cycles: int
    cycle: tuple = DEFAULT_CYCLE
    ac: Triangle = Triangle(vpp=16.0, f_ac=0.1)
    break_after_active_s: float | None = None
    break_s: float = 0.0
    settings: dict | None = None

    def __post_init__(self):
        if self.n_cycles < 1:
            raise ValueError("n_cycles must be positive")
        if not self.cycle:
            raise ValueError("cycle composition must not be empty")
        for kind in self.cycle:
            if kind not in ("ac", "no_control", "fast_random"):
                raise ValueError(f"cycle cannot contain kind {kind!r}")
        if self.break_s < 0:
            raise ValueError("break_s must be nonnegative")

    def settings_for(self, kind: str) -> MeasurementSettings:
        if self.settings and kind in self.settings:
            return self.settings[kind]
        return default_settings(kind)

    def cycle_duration_s(self) -> float:
        return sum(self.settings_for(k).duration_s for k in self.cycle)

    def total_active_hours(self) -> float:
        return self.n_cycles * self.cycle_duration_s() / 3600.0

    @classmethod
    def from_active_hours(cls, hours: float, **kwargs):
        """Schedule whose active time best approximates ``hours``."""
        probe = cls(n_cycles=1, **kwargs)
        n = max(1, round(hours * 3600.0 / probe.cycle_duration_s()))
        return cls(n_cycles=n, **kwargs)


def draw_random_voltage(rng: np.random.Generator) -> float:
    """Fresh uniform voltage on [-8, +8] V."""
    return float(rng.uniform(-RANDOM_VOLTAGE_SPAN, RANDOM_VOLTAGE_SPAN))


def _record(world: World, kind: str, fit, **control) -> T1Record:
    return T1Record(
        wall_time_s=world.clock_s,
        qubit_id=world.qubit_id,
        kind=kind,
        temperature_mk=world.temperature_mk,
        t1_us=fit.t1 if fit.converged else None,
        t1_stderr_us=fit.t1_stderr if fit.converged else None,
        converged=fit.converged,
        seed=world.seed,
        **control,
    )


def run_interleave(world: World, schedule: ScheduleSpec) -> list:
    """Cycle through the schedule's controls on one timeline.

    Emits exactly ``n_cycles * len(cycle)`` records in composition order.
    Every fast-random measurement draws a fresh voltage.  When a break is
    configured, it is inserted once, after the first measurement that
    pushes the cumulative active time past the threshold.
    """
    records = []
    active_s = 0.0
    break_pending = schedule.break_after_active_s is not None and schedule.break_s > 0
    for _ in range(schedule.n_cycles):
        for kind in schedule.cycle:
            settings = schedule.settings_for(kind)
            if kind == "ac":
                control = schedule.ac
                extra = {"f_ac_hz": schedule.ac.f_ac, "vpp_v": schedule.ac.vpp}
            elif kind == "no_control":
                control = Zero()
                extra = {"voltage_v": 0.0}
            else:
                v = draw_random_voltage(world.rng)
                control = Dc(v)
                extra = {"voltage_v": v}
            _, fit = measure_t1(world, control, settings)
            active_s += settings.duration_s
            records.append(_record(world, kind, fit, **extra))
            if break_pending and active_s >= schedule.break_after_active_s:
                advance_diffusion(world.bath, schedule.break_s)
                break_pending = False
    return records


def run_optimizer(
    world: World,
    threshold_us: float = 1000.0,
    max_measurements: int = 50,
    settings: MeasurementSettings | None = None,
    measure=None,
) -> list:
    """Hold-or-redraw voltage search.

    Measures T1 at a held voltage; keeps the voltage whenever the result
    exceeds ``threshold_us`` and redraws uniformly otherwise.  A fit that
    does not converge counts as below threshold.  ``measure`` may replace
    the default fast-random-style measurement; it receives ``(world,
    voltage_v)`` and returns ``(t1_us or None, t1_stderr_us or None)``.
    """
    if max_measurements < 1:
        raise ValueError("max_measurements must be positive")
    if settings is None:
        settings = default_settings("optimizer")

    def _default_measure(w, voltage):
        _, fit = measure_t1(w, Dc(voltage), settings)
        return (fit.t1, fit.t1_stderr) if fit.converged else (None, None)

    measure = measure or _default_measure
    records = []
    voltage = draw_random_voltage(world.rng)
    for _ in range(max_measurements):
        t1, stderr = measure(world, voltage)
        converged = t1 is not None
        records.append(
            T1Record(
                wall_time_s=world.clock_s,
                qubit_id=world.qubit_id,
                kind="optimizer",
                temperature_mk=world.temperature_mk,
                t1_us=t1,
                t1_stderr_us=stderr,
                converged=converged,
                seed=world.seed,
                voltage_v=voltage,
            )
        )
        if not (converged and t1 > threshold_us):
            voltage = draw_random_voltage(world.rng)
    return records


def champion_fine_grid(coarse_t1_us: float, n_points: int = 100) -> DelayGrid:
    """Linear delay grid out to four times a coarse decay-time estimate."""
    if coarse_t1_us <= 0:
        raise ValueError("coarse_t1_us must be positive")
    t_max = 4.0 * coarse_t1_us
    return DelayGrid("linear", n_points, t_max / n_points, t_max)


def run_champion(
    world: World,
    coarse_threshold_us: float = 2000.0,
    n_rounds: int = 20,
    coarse_settings: MeasurementSettings | None = None,
    fine_n_points: int = 100,
    fine_shots: int = 400,
    fine_duration_s: float = 600.0,
) -> list:
    """Hunt for exceptional voltages.

    Each round measures a fresh random voltage with the coarse fast-random
    settings; a result above ``coarse_threshold_us`` triggers a fine scan
    at the held voltage with ``fine_n_points`` linear delays up to four
    times the coarse estimate.  Fine-scan records carry kind "champion".
    """
    if n_rounds < 1:
        raise ValueError("n_rounds must be positive")
    if coarse_settings is None:
        coarse_settings = default_settings("fast_random")

    records = []
    for _ in range(n_rounds):
        voltage = draw_random_voltage(world.rng)
        _, fit = measure_t1(world, Dc(voltage), coarse_settings)
        records.append(_record(world, "fast_random", fit, voltage_v=voltage))
        if fit.converged and fit.t1 > coarse_threshold_us:
            fine = MeasurementSettings(
                champion_fine_grid(fit.t1, fine_n_points), fine_shots, fine_duration_s
            )
            _, fine_fit = measure_t1(world, Dc(voltage), fine)
            records.append(_record(world, "champion", fine_fit, voltage_v=voltage))
    return records


def run_ac_sweep(
    world: World,
    vpp_list,
    f_ac_list,
    rounds: int = 4,
    settings: MeasurementSettings | None = None,
) -> dict:
    """Slow-sweep T1 across a Cartesian (vpp, f_ac) grid.

    Cells are visited round-robin so slow bath drift averages over the grid
    symmetrically rather than biasing late cells.  Returns records grouped
    by cell; every record also carries its cell parameters.
    """
    if rounds < 1:
        raise ValueError("rounds must be positive")
    if settings is None:
        settings = default_settings("ac")
    cells = [(float(v), float(f)) for v in vpp_list for f in f_ac_list]
    if not cells:
        raise ValueError("sweep grid must not be empty")
    groups = {cell: [] for cell in cells}
    for _ in range(rounds):
        for vpp, f_ac in cells:
            _, fit = measure_t1(world, Triangle(vpp=vpp, f_ac=f_ac), settings)
            groups[(vpp, f_ac)].append(
                _record(world, "ac", fit, f_ac_hz=f_ac, vpp_v=vpp)
            )
    return groups


def run_temperature_sweep(
    world: World,
    temperatures_mk,
    kinds=("ac",),
    rounds: int = 2,
    settings: dict | None = None,
    ac: Triangle = Triangle(vpp=16.0, f_ac=0.1),
) -> dict:
    """Repeat measurements across stage temperatures.

    The stage temperature is set instantaneously per point (no thermal
    dynamics); temperatures are visited round-robin.  Returns records
    grouped by temperature.
    """
    temps = [float(T) for T in temperatures_mk]
    if not temps:
        raise ValueError("temperature list must not be empty")
    if any(T < 0 for T in temps):
        raise ValueError("temperatures must be nonnegative")
    for kind in kinds:
        if kind not in ("ac", "no_control", "fast_random"):
            raise ValueError(f"temperature sweep cannot run kind {kind!r}")
    if rounds < 1:
        raise ValueError("rounds must be positive")

    def settings_for(kind):
        if settings and kind in settings:
            return settings[kind]
        return default_settings(kind)

    groups = {T: [] for T in temps}
    for _ in range(rounds):
        for T in temps:
            world.temperature_mk = T
            for kind in kinds:
                if kind == "ac":
                    control, extra = ac, {"f_ac_hz": ac.f_ac, "vpp_v": ac.vpp}
                elif kind == "no_control":
                    control, extra = Zero(), {"voltage_v": 0.0}
                else:
                    v = draw_random_voltage(world.rng)
                    control, extra = Dc(v), {"voltage_v": v}
                _, fit = measure_t1(world, control, settings_for(kind))
                groups[T].append(_record(world, kind, fit, **extra))
    return groups
