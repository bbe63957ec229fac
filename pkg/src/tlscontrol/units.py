"""Unit conventions shared across the package.

Internal convention: times in microseconds (wall clock bookkeeping in
seconds), frequencies and energies in GHz, rates and couplings in rad/us,
temperatures in mK, voltages in volts.  User-facing inputs quoted in MHz or
kHz are converted once at the configuration boundary; no function below the
boundary mixes units.
"""

import math

TWO_PI = 2.0 * math.pi

# Boltzmann constant over Planck constant, GHz per mK.
KB_OVER_H_GHZ_PER_MK = 0.0208366


def rad_per_us_from_ghz(f_ghz: float) -> float:
    """Angular rate in rad/us for a frequency quoted in GHz."""
    return TWO_PI * 1e3 * f_ghz


def rad_per_us_from_mhz(f_mhz: float) -> float:
    """Angular rate in rad/us for a frequency quoted in MHz."""
    return TWO_PI * f_mhz


def rad_per_us_from_khz(f_khz: float) -> float:
    """Angular rate in rad/us for a frequency quoted in kHz."""
    return TWO_PI * 1e-3 * f_khz


def mhz_from_rad_per_us(w: float) -> float:
    return w / TWO_PI


def per_us_from_per_s(rate_per_s: float) -> float:
    return 1e-6 * rate_per_s
