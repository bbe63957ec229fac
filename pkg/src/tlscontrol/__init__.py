"""TLS-limited transmon relaxation under electric-field TLS control."""

from .analysis import (
    AnalysisReport,
    TemperatureFit,
    cumulative_hmean,
    fit_q_vs_frequency,
    fit_sigma_vs_mu,
    fit_temperature_model,
    harmonic_mean,
    n_effective,
    quality_factor,
    report_from_records,
)
from .bath import (
    BathConfig,
    BathState,
    TlsDefect,
    advance_diffusion,
    sample_bath,
    tls_splitting,
    transverse_coupling,
)
from .config import ConfigError, RunConfig, default_config, load_config, resolve
from .decay import (
    Dc,
    QubitSpec,
    Triangle,
    WaveformSpec,
    Zero,
    gamma_lz,
    gamma_qp,
    gamma_tls,
    gamma_total,
    gaussian_average_survival,
    lz_crossing_probability,
    waveform_voltage,
)
from .measurement import (
    DelayGrid,
    MeasurementSettings,
    P1Curve,
    T1Fit,
    default_settings,
    fit_exponential,
    harmonic_average_t1,
    make_delays,
    measure_t1,
    run_t1_measurement,
)
from .protocols import (
    ScheduleSpec,
    T1Record,
    champion_fine_grid,
    draw_random_voltage,
    run_ac_sweep,
    run_champion,
    run_interleave,
    run_optimizer,
    run_temperature_sweep,
)
from .records import (
    config_hash,
    read_manifest,
    read_records,
    record_to_dict,
    write_manifest,
    write_records,
)
from .world import World

__version__ = "0.1.0"
