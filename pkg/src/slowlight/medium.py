"""Parameter records for the vapor cell and the optical fields.

All rates are angular (rad/s) internally.  Quantities quoted in Hz are
converted at the boundary with :func:`hz`.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from typing import NamedTuple

import numpy as np

from .errors import InvalidParameterError, ValidationError

C_LIGHT = 299_792_458.0  # m/s
TWO_PI = 2.0 * np.pi

# Rabi calibration for the Rb D1 drive transition: Omega/2pi = 1 MHz * sqrt(I [mW/cm^2])
RABI_CAL_HZ = 1.0e6


def hz(f):
    """Convert a frequency in Hz to an angular rate in rad/s."""
    return TWO_PI * f


@dataclass(frozen=True)
class AtomicMedium:
    """Three-level vapor and cell.

    Attributes
    ----------
    N : atomic number density, m^-3
    wavelength : probe wavelength, m
    gamma_r : radiative decay rate a -> b, rad/s
    gamma : homogeneous half-width of the optical transitions, rad/s
    gamma_bc : ground-state coherence decay rate, rad/s
    delta_omega_D : Doppler half-width, rad/s
    omega_cb : ground-state hyperfine splitting, rad/s
    L : cell length, m
    """

    N: float = 2.0e18
    wavelength: float = 795.0e-9
    gamma_r: float = hz(3.0e6)
    gamma: float = hz(150.0e6)
    gamma_bc: float = hz(1.0e3)
    delta_omega_D: float = hz(270.0e6)
    omega_cb: float = hz(6.8347e9)
    L: float = 0.025

    @property
    def k(self) -> float:
        return TWO_PI / self.wavelength

    @property
    def nu(self) -> float:
        """Angular carrier frequency of the probe."""
        return TWO_PI * C_LIGHT / self.wavelength

    def with_(self, **changes) -> "AtomicMedium":
        return replace(self, **changes)


@dataclass(frozen=True)
class DriveConfig:
    power: float = 4.3e-3  # W
    beam_diameter: float = 2.0e-3  # m
    Delta_d: float = 0.0  # rad/s
    k_d: float = TWO_PI / 795.0e-9  # rad/m

    @property
    def rabi(self) -> float:
        return rabi_from_power(self.power, self.beam_diameter)


@dataclass(frozen=True)
class ProbeConfig:
    Delta_p: float = 0.0  # rad/s
    k_p: float = TWO_PI / 795.0e-9  # rad/m
    mod_freq: float = 1.0e3  # Hz
    mod_depth: float = 0.5
    power_fraction: float = 0.05

    def two_photon_detuning(self, drive: DriveConfig) -> float:
        return self.Delta_p - drive.Delta_d


class ValidationIssue(NamedTuple):
    field: str
    message: str


def intensity_mw_cm2(power, beam_diameter):
    """Flat-top beam intensity in mW/cm^2 for a power in W and a diameter in m."""
    if np.any(np.asarray(beam_diameter) <= 0):
        raise InvalidParameterError(f"beam_diameter must be positive, got {beam_diameter}")
    area = np.pi * (np.asarray(beam_diameter) / 2.0) ** 2
    return 0.1 * np.asarray(power) / area  # W/m^2 -> mW/cm^2


def rabi_from_power(power, beam_diameter, calibration_hz=RABI_CAL_HZ):
    """Drive Rabi frequency (rad/s) from beam power (W) and diameter (m).

    Uses ``Omega/2pi = calibration_hz * sqrt(I)`` with ``I`` in mW/cm^2 over a
    flat-top beam.  Works elementwise on arrays.
    """
    if np.any(np.asarray(power) < 0):
        raise InvalidParameterError(f"power must be nonnegative, got {power}")
    omega = TWO_PI * calibration_hz * np.sqrt(intensity_mw_cm2(power, beam_diameter))
    return float(omega) if np.ndim(omega) == 0 else omega


def power_from_rabi(omega, beam_diameter, calibration_hz=RABI_CAL_HZ):
    """Inverse of :func:`rabi_from_power`."""
    intensity = (np.asarray(omega) / (TWO_PI * calibration_hz)) ** 2
    area = np.pi * (beam_diameter / 2.0) ** 2
    return intensity * area / 0.1


def eta(medium: AtomicMedium) -> float:
    """Dimensionless coupling 3 lambda^3 N / (8 pi^2)."""
    return 3.0 * medium.wavelength**3 * medium.N / (8.0 * np.pi**2)


def validate(medium: AtomicMedium | None = None, drive: DriveConfig | None = None,
             probe: ProbeConfig | None = None) -> list[ValidationIssue]:
    """Collect every invariant violation; an empty list means valid."""
    issues: list[ValidationIssue] = []

    def check(ok, name, message):
        if not ok:
            issues.append(ValidationIssue(name, message))

    if medium is not None:
        for f in fields(medium):
            value = getattr(medium, f.name)
            if not np.isfinite(value):
                issues.append(ValidationIssue(f.name, "must be finite"))
        check(medium.N >= 0, "N", "density must be nonnegative")
        for name in ("wavelength", "gamma_r", "gamma", "delta_omega_D", "omega_cb", "L"):
            check(getattr(medium, name) > 0, name, "must be strictly positive")
        # gamma_bc = 0 is the idealized lossless-coherence limit
        check(medium.gamma_bc >= 0, "gamma_bc", "must be nonnegative")
        check(medium.gamma_bc < medium.gamma, "gamma_bc",
              "ground coherence must outlive optical coherence (gamma_bc < gamma)")
    if drive is not None:
        check(drive.power >= 0, "power", "must be nonnegative")
        check(drive.beam_diameter > 0, "beam_diameter", "must be strictly positive")
        check(drive.k_d > 0, "k_d", "must be strictly positive")
        check(np.isfinite(drive.Delta_d), "Delta_d", "must be finite")
    if probe is not None:
        check(0.0 <= probe.mod_depth <= 1.0, "mod_depth", "must lie in [0, 1]")
        check(probe.mod_depth == 0 or probe.mod_freq > 0, "mod_freq",
              "must be positive when modulation is enabled")
        check(probe.power_fraction >= 0, "power_fraction", "must be nonnegative")
        check(probe.k_p > 0, "k_p", "must be strictly positive")
        check(np.isfinite(probe.Delta_p), "Delta_p", "must be finite")
    return issues


def require_valid(medium=None, drive=None, probe=None) -> None:
    issues = validate(medium, drive, probe)
    if issues:
        raise ValidationError(issues)


PAPER_BASELINE = AtomicMedium()

PRESETS: dict[str, AtomicMedium] = {
    "paper-baseline": PAPER_BASELINE,
    # no Doppler averaging: homogeneous width is the radiative one
    "cold": PAPER_BASELINE.with_(gamma=hz(3.0e6)),
    "narrow-gbc-40Hz": PAPER_BASELINE.with_(gamma_bc=hz(40.0)),
}

PRESET_DOPPLER: dict[str, str] = {
    "paper-baseline": "lorentzian",
    "cold": "cold",
    "narrow-gbc-40Hz": "gaussian",
}


def preset(name: str) -> AtomicMedium:
    try:
        return PRESETS[name]
    except KeyError:
        raise InvalidParameterError(
            f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


# Units shown by the ``info`` command and accepted in config files.
PARAMETER_UNITS = {
    "N": ("density_cm3", "cm^-3", 1e-6),
    "wavelength": ("wavelength_nm", "nm", 1e9),
    "gamma_r": ("gamma_r_hz", "Hz (gamma_r/2pi)", 1 / TWO_PI),
    "gamma": ("gamma_hz", "Hz (gamma/2pi)", 1 / TWO_PI),
    "gamma_bc": ("gamma_bc_hz", "Hz (gamma_bc/2pi)", 1 / TWO_PI),
    "delta_omega_D": ("doppler_hwhm_hz", "Hz (delta_omega_D/2pi)", 1 / TWO_PI),
    "omega_cb": ("hyperfine_hz", "Hz (omega_cb/2pi)", 1 / TWO_PI),
    "L": ("length_cm", "cm", 100.0),
}
