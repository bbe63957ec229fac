"""Configuration loading, validation, and world construction.

One JSON document configures a campaign.  Every field has a default, so the
minimal config is ``{"qubit": {"f_q_ghz": 4.5}}`` (or even ``{}``).  Keys
carry their unit as a suffix; quantities quoted in kHz or MHz are converted
to the internal rad/us convention here and nowhere else.  Unknown keys and
constraint violations are rejected with the offending field path.
"""

import json
from dataclasses import dataclass
from pathlib import Path

from .bath import BathConfig, sample_bath
from .decay import QubitSpec, Triangle
from .measurement import DelayGrid, MeasurementSettings
from .protocols import ScheduleSpec
from .rng import PROTOCOL, stream
from .units import rad_per_us_from_khz, rad_per_us_from_mhz
from .world import World

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    """Invalid configuration; the message names the field path."""


def _positive(x):
    return x > 0


def _nonnegative(x):
    return x >= 0


def _fraction(x):
    return 0 <= x < 0.5


@dataclass(frozen=True)
class _Field:
    default: object
    kind: str  # number | int | str | bool | number_list | str_list
    nullable: bool = False
    check: object = None
    describe: str = ""


_MEASURE_FIELDS = lambda n_points, duration_s: {  # noqa: E731
    "spacing": _Field("log", "str", check=lambda s: s in ("log", "linear"), describe="log or linear"),
    "n_points": _Field(n_points, "int", check=lambda n: n >= 4, describe=">= 4"),
    "t_min_us": _Field(10.0, "number", check=_positive, describe="> 0"),
    "t_max_us": _Field(4000.0, "number", check=_positive, describe="> 0"),
    "shots": _Field(400, "int", check=_positive, describe="> 0"),
    "duration_s": _Field(duration_s, "number", check=_positive, describe="> 0"),
}

_SCHEMA = {
    "schema_version": _Field(SCHEMA_VERSION, "int"),
    "qubit": {
        "f_q_ghz": _Field(4.7, "number", check=_positive, describe="> 0"),
        "gamma0_per_us": _Field(4e-4, "number", check=_nonnegative, describe=">= 0"),
        "gap_ghz": _Field(43.5, "number", check=_positive, describe="> 0"),
        "read_err_e": _Field(0.02, "number", check=_fraction, describe="in [0, 0.5)"),
        "read_err_g": _Field(0.01, "number", check=_fraction, describe="in [0, 0.5)"),
        "chi_khz": _Field(200.0, "number", check=_positive, describe="> 0"),
        "kappa_khz": _Field(100.0, "number", check=_positive, describe="> 0"),
    },
    "bath": {
        "n_tls": _Field(600, "int", check=_nonnegative, describe=">= 0"),
        "window_ghz": _Field(0.5, "number", check=_positive, describe="> 0"),
        "delta0_min_ghz": _Field(0.1, "number", check=_positive, describe="> 0"),
        "delta0_max_ghz": _Field(None, "number", nullable=True, check=_positive, describe="> 0 or null for f_q"),
        "dipole_gain_scale_ghz_per_v": _Field(0.02, "number", check=_nonnegative, describe=">= 0"),
        "g_min_khz": _Field(3.0, "number", check=_positive, describe="> 0"),
        "g_max_khz": _Field(20.0, "number", check=_positive, describe="> 0"),
        "gamma2_min_mhz": _Field(0.5, "number", check=_positive, describe="> 0"),
        "gamma2_max_mhz": _Field(2.0, "number", check=_positive, describe="> 0"),
        "diff_sigma_min_mhz": _Field(1.0, "number", check=_positive, describe="> 0"),
        "diff_sigma_max_mhz": _Field(30.0, "number", check=_positive, describe="> 0"),
        "diff_tau_min_s": _Field(100.0, "number", check=_positive, describe="> 0"),
        "diff_tau_max_s": _Field(1e5, "number", check=_positive, describe="> 0"),
    },
    "protocol": {
        "ac": {
            "f_ac_hz": _Field(0.1, "number", check=_positive, describe="> 0"),
            "vpp_v": _Field(16.0, "number", check=_nonnegative, describe=">= 0"),
        },
        "interleave": {
            "n_cycles": _Field(40, "int", check=_positive, describe="> 0"),
            "active_hours": _Field(None, "number", nullable=True, check=_positive, describe="> 0 or null"),
            "break_after_active_s": _Field(None, "number", nullable=True, check=_nonnegative, describe=">= 0 or null"),
            "break_s": _Field(0.0, "number", check=_nonnegative, describe=">= 0"),
        },
        "optimize": {
            "threshold_us": _Field(1000.0, "number", check=_positive, describe="> 0"),
            "max_measurements": _Field(50, "int", check=_positive, describe="> 0"),
        },
        "champion": {
            "coarse_threshold_us": _Field(2000.0, "number", check=_positive, describe="> 0"),
            "n_rounds": _Field(20, "int", check=_positive, describe="> 0"),
            "fine_n_points": _Field(100, "int", check=lambda n: n >= 4, describe=">= 4"),
            "fine_shots": _Field(400, "int", check=_positive, describe="> 0"),
            "fine_duration_s": _Field(600.0, "number", check=_positive, describe="> 0"),
        },
        "ac_sweep": {
            "vpp_v": _Field([8.0, 16.0], "number_list", check=_nonnegative, describe=">= 0"),
            "f_ac_hz": _Field([0.1, 1.0, 4.0], "number_list", check=_positive, describe="> 0"),
            "rounds": _Field(4, "int", check=_positive, describe="> 0"),
        },
        "temperature_sweep": {
            "temperatures_mk": _Field(
                [10.0, 20.0, 30.0, 50.0, 75.0, 100.0, 120.0, 135.0, 142.0, 150.0],
                "number_list",
                check=_nonnegative,
                describe=">= 0",
            ),
            "kinds": _Field(
                ["ac"],
                "str_list",
                check=lambda s: s in ("ac", "no_control", "fast_random"),
                describe="ac, no_control or fast_random",
            ),
            "rounds": _Field(2, "int", check=_positive, describe="> 0"),
        },
        "measure": {
            "no_control": _MEASURE_FIELDS(101, 600.0),
            "ac": _MEASURE_FIELDS(101, 600.0),
            "fast_random": _MEASURE_FIELDS(25, 150.0),
        },
    },
    "run": {
        "seed": _Field(0, "int", check=_nonnegative, describe=">= 0"),
        "qubit_id": _Field("q0", "str"),
        "temperature_mk": _Field(10.0, "number", check=_nonnegative, describe=">= 0"),
        "out_dir": _Field("out", "str"),
        "record_format": _Field("jsonl", "str", check=lambda s: s == "jsonl", describe="jsonl"),
    },
}


def _check_leaf(field: _Field, value, path: str):
    if value is None:
        if field.nullable:
            return None
        raise ConfigError(f"{path}: must not be null")
    if field.kind in ("number_list", "str_list"):
        if not isinstance(value, list):
            raise ConfigError(f"{path}: expected a list")
        return [
            _check_scalar(field, v, f"{path}[{i}]")
            for i, v in enumerate(value)
        ]
    return _check_scalar(field, value, path)


def _check_scalar(field: _Field, value, path: str):
    kind = field.kind.replace("_list", "")
    if kind == "number":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{path}: expected a number")
        value = float(value)
    elif kind == "int":
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{path}: expected an integer")
    elif kind == "str":
        if not isinstance(value, str):
            raise ConfigError(f"{path}: expected a string")
    elif kind == "bool":
        if not isinstance(value, bool):
            raise ConfigError(f"{path}: expected a boolean")
    if field.check is not None and not field.check(value):
        hint = f" ({field.describe})" if field.describe else ""
        raise ConfigError(f"{path}: invalid value {value!r}{hint}")
    return value


def _resolve_node(schema: dict, user, path: str) -> dict:
    if user is None:
        user = {}
    if not isinstance(user, dict):
        raise ConfigError(f"{path or 'config'}: expected an object")
    for key in user:
        if key not in schema:
            where = f"{path}.{key}" if path else key
            raise ConfigError(f"unknown key: {where}")
    out = {}
    for key, node in schema.items():
        child_path = f"{path}.{key}" if path else key
        if isinstance(node, dict):
            out[key] = _resolve_node(node, user.get(key), child_path)
        else:
            value = user.get(key, node.default)
            out[key] = _check_leaf(node, value, child_path)
    return out


def _cross_checks(doc: dict):
    if doc["schema_version"] != SCHEMA_VERSION:
        raise ConfigError(
            f"schema_version: expected {SCHEMA_VERSION}, got {doc['schema_version']}"
        )
    pairs = [
        ("bath.g_min_khz", "bath.g_max_khz"),
        ("bath.gamma2_min_mhz", "bath.gamma2_max_mhz"),
        ("bath.diff_sigma_min_mhz", "bath.diff_sigma_max_mhz"),
        ("bath.diff_tau_min_s", "bath.diff_tau_max_s"),
    ]
    for lo_path, hi_path in pairs:
        lo = _dig(doc, lo_path)
        hi = _dig(doc, hi_path)
        if lo > hi:
            raise ConfigError(f"{hi_path}: must be >= {lo_path}")
    d0_max = doc["bath"]["delta0_max_ghz"]
    if d0_max is None:
        d0_max = doc["qubit"]["f_q_ghz"]  # null defers to the qubit frequency
    if doc["bath"]["delta0_min_ghz"] > d0_max:
        raise ConfigError("bath.delta0_max_ghz: must be >= bath.delta0_min_ghz")
    if doc["bath"]["window_ghz"] >= doc["qubit"]["f_q_ghz"]:
        raise ConfigError("bath.window_ghz: must be smaller than qubit.f_q_ghz")
    for kind in ("no_control", "ac", "fast_random"):
        m = doc["protocol"]["measure"][kind]
        if m["t_min_us"] >= m["t_max_us"]:
            raise ConfigError(f"protocol.measure.{kind}.t_max_us: must exceed t_min_us")
    sweep = doc["protocol"]["ac_sweep"]
    if not sweep["vpp_v"] or not sweep["f_ac_hz"]:
        raise ConfigError("protocol.ac_sweep: sweep lists must not be empty")
    if not doc["protocol"]["temperature_sweep"]["temperatures_mk"]:
        raise ConfigError("protocol.temperature_sweep.temperatures_mk: must not be empty")


def _dig(doc: dict, dotted: str):
    node = doc
    for part in dotted.split("."):
        node = node[part]
    return node


def resolve(user_config: dict) -> dict:
    """Fill defaults, reject unknown keys, check every constraint.

    Returns the fully materialized document (user units).  Resolving a
    resolved document is the identity, which is what lets a manifest's
    embedded config reproduce its campaign.
    """
    doc = _resolve_node(_SCHEMA, user_config, "")
    _cross_checks(doc)
    return doc


def load_config(path) -> "RunConfig":
    """Read and resolve a JSON config file."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ConfigError(f"cannot read config: {e}") from None
    try:
        user = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: invalid JSON: {e}") from None
    if not isinstance(user, dict):
        raise ConfigError("config: top level must be a single object")
    return RunConfig(resolve(user))


@dataclass
class RunConfig:
    """Resolved configuration plus constructors for simulation objects."""

    resolved: dict

    @property
    def seed(self) -> int:
        return self.resolved["run"]["seed"]

    def qubit(self) -> QubitSpec:
        q = self.resolved["qubit"]
        return QubitSpec(
            f_q=q["f_q_ghz"],
            gamma0=q["gamma0_per_us"],
            gap=q["gap_ghz"],
            read_err_e=q["read_err_e"],
            read_err_g=q["read_err_g"],
            chi=q["chi_khz"],
            kappa=q["kappa_khz"],
        )

    def bath_config(self) -> BathConfig:
        b = self.resolved["bath"]
        return BathConfig(
            f_center=self.resolved["qubit"]["f_q_ghz"],
            n_tls=b["n_tls"],
            window=b["window_ghz"],
            delta0_range=(b["delta0_min_ghz"], b["delta0_max_ghz"]),
            dipole_gain_scale=b["dipole_gain_scale_ghz_per_v"],
            g_range=(
                rad_per_us_from_khz(b["g_min_khz"]),
                rad_per_us_from_khz(b["g_max_khz"]),
            ),
            gamma2_range=(
                rad_per_us_from_mhz(b["gamma2_min_mhz"]),
                rad_per_us_from_mhz(b["gamma2_max_mhz"]),
            ),
            diff_sigma_range=(
                1e-3 * b["diff_sigma_min_mhz"],
                1e-3 * b["diff_sigma_max_mhz"],
            ),
            diff_tau_range=(b["diff_tau_min_s"], b["diff_tau_max_s"]),
        )

    def measurement_settings(self, kind: str) -> MeasurementSettings:
        key = "fast_random" if kind == "optimizer" else kind
        if key not in self.resolved["protocol"]["measure"]:
            raise ConfigError(f"protocol.measure.{key}: unknown measurement kind")
        m = self.resolved["protocol"]["measure"][key]
        return MeasurementSettings(
            DelayGrid(m["spacing"], m["n_points"], m["t_min_us"], m["t_max_us"]),
            m["shots"],
            m["duration_s"],
        )

    def ac_waveform(self) -> Triangle:
        ac = self.resolved["protocol"]["ac"]
        return Triangle(vpp=ac["vpp_v"], f_ac=ac["f_ac_hz"])

    def schedule(self) -> ScheduleSpec:
        p = self.resolved["protocol"]["interleave"]
        kwargs = dict(
            ac=self.ac_waveform(),
            break_after_active_s=p["break_after_active_s"],
            break_s=p["break_s"],
            settings={k: self.measurement_settings(k) for k in ("ac", "no_control", "fast_random")},
        )
        if p["active_hours"] is not None:
            return ScheduleSpec.from_active_hours(p["active_hours"], **kwargs)
        return ScheduleSpec(n_cycles=p["n_cycles"], **kwargs)

    def build_world(self, seed: int | None = None) -> World:
        """Sample a fresh world; ``seed`` overrides the configured one."""
        seed = self.seed if seed is None else int(seed)
        run = self.resolved["run"]
        return World(
            qubit=self.qubit(),
            bath=sample_bath(self.bath_config(), seed),
            temperature_mk=run["temperature_mk"],
            rng=stream(seed, PROTOCOL),
            qubit_id=run["qubit_id"],
            seed=seed,
        )


def default_config() -> RunConfig:
    return RunConfig(resolve({}))
