"""Scenario configuration: defaults, presets and the key = value file format.

The file is INI-style (``configparser``).  Rates are given in Hz
(``gamma_bc_hz = 1000`` means gamma_bc/2pi = 1 kHz) and converted to rad/s
here.  Every section and key is optional.

.. code-block:: ini

    [medium]
    preset = paper-baseline       ; paper-baseline | cold | narrow-gbc-40Hz
    density_cm3 = 2e12
    wavelength_nm = 795
    gamma_r_hz = 3e6
    gamma_hz = 150e6
    gamma_bc_hz = 1000
    doppler_hwhm_hz = 270e6
    hyperfine_hz = 6.8347e9
    length_cm = 2.5

    [drive]
    beam_diameter_mm = 2
    power_min_mw = 0.1
    power_max_mw = 10
    power_points = 40
    powers_mw = 0.5, 1, 2         ; explicit list, overrides min/max/points
    beat_power_mw = 4.3
    rabi_calibration_hz = 1e6     ; Omega/2pi per sqrt(mW/cm^2)

    [probe]
    mod_freq_hz = 1000
    mod_depth = 0.5
    power_fraction = 0.05

    [model]
    doppler = lorentzian          ; cold | lorentzian | gaussian
    slices = 64
    depletion = yes
    drive_absorption_scale = 0.05

    [beat]
    shift_hz = 50e6
    shifted_amplitude = 0.1       ; relative to the drive field amplitude
    window_hz = 200e6             ; half-width around the hyperfine splitting
    attenuate = no

    [fit]
    seed = 0
    free = gamma_bc

    [output]
    dir = out
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import InvalidParameterError, ValidationError
from .medium import (PARAMETER_UNITS, PRESET_DOPPLER, RABI_CAL_HZ, AtomicMedium,
                     DriveConfig, ProbeConfig, ValidationIssue, preset, validate)
from .propagation import DEFAULT_DRIVE_ABSORPTION_SCALE, DEFAULT_SLICES
from .susceptibility import doppler_model

DOPPLER_CHOICES = ("cold", "lorentzian", "gaussian")
FIT_PARAMETERS = ("gamma_bc", "rabi_cal", "N")


def default_powers(p_min=0.1e-3, p_max=10e-3, n=40):
    """Log-spaced drive powers in W."""
    return tuple(float(p) for p in np.geomspace(p_min, p_max, n))


@dataclass(frozen=True)
class ScenarioConfig:
    medium: AtomicMedium = field(default_factory=lambda: preset("paper-baseline"))
    preset: str | None = "paper-baseline"
    doppler: str = "lorentzian"
    powers: tuple = field(default_factory=default_powers)  # W
    beam_diameter: float = 2.0e-3  # m
    rabi_calibration_hz: float = RABI_CAL_HZ
    probe: ProbeConfig = field(default_factory=ProbeConfig)
    n_slices: int = DEFAULT_SLICES
    depletion: bool = True
    drive_absorption_scale: float = DEFAULT_DRIVE_ABSORPTION_SCALE
    beat_power: float = 4.3e-3  # W
    shift_hz: float = 50.0e6
    shifted_amplitude: float = 0.1
    beat_window_hz: float = 200.0e6
    beat_attenuate: bool = False
    seed: int = 0
    free: tuple = ("gamma_bc",)
    output_dir: str = "out"

    def model(self):
        return doppler_model(self.doppler, self.medium)

    def drive(self, power: float) -> DriveConfig:
        return DriveConfig(power=power, beam_diameter=self.beam_diameter,
                           k_d=self.medium.k)

    @property
    def absorption_scale(self) -> float:
        return self.drive_absorption_scale if self.depletion else 0.0

    def with_(self, **changes) -> "ScenarioConfig":
        return replace(self, **changes)

    def issues(self) -> list[ValidationIssue]:
        out = validate(self.medium, self.drive(max(self.powers, default=0.0)), self.probe)
        if not self.powers:
            out.append(ValidationIssue("powers", "sweep must not be empty"))
        if any(p < 0 for p in self.powers):
            out.append(ValidationIssue("powers", "powers must be nonnegative"))
        if self.doppler not in DOPPLER_CHOICES:
            out.append(ValidationIssue("doppler", f"must be one of {DOPPLER_CHOICES}"))
        if self.n_slices < 1:
            out.append(ValidationIssue("n_slices", "must be >= 1"))
        if self.drive_absorption_scale < 0:
            out.append(ValidationIssue("drive_absorption_scale", "must be nonnegative"))
        unknown = set(self.free) - set(FIT_PARAMETERS)
        if unknown:
            out.append(ValidationIssue("free", f"unknown fit parameters {sorted(unknown)}"))
        return out

    def validated(self) -> "ScenarioConfig":
        problems = self.issues()
        if problems:
            raise ValidationError(problems)
        return self


def from_preset(name: str, **overrides) -> ScenarioConfig:
    cfg = ScenarioConfig(medium=preset(name), preset=name, doppler=PRESET_DOPPLER[name])
    return cfg.with_(**overrides)


def _floats(text):
    return [float(x) for x in text.replace(";", ",").split(",") if x.strip()]


def parse_config(text: str) -> ScenarioConfig:
    """Build a :class:`ScenarioConfig` from key = value text."""
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise InvalidParameterError(f"cannot parse configuration: {exc}") from None

    def get(section, key, conv=float, default=None):
        if parser.has_option(section, key):
            raw = parser.get(section, key)
            try:
                return parser.getboolean(section, key) if conv is bool else conv(raw)
            except ValueError:
                raise InvalidParameterError(f"[{section}] {key}: bad value {raw!r}") from None
        return default

    name = get("medium", "preset", str, "paper-baseline")
    cfg = from_preset(name)
    changes = {}
    for attr, (key, _unit, to_display) in PARAMETER_UNITS.items():
        value = get("medium", key)
        if value is not None:
            changes[attr] = value / to_display
    medium = cfg.medium.with_(**changes) if changes else cfg.medium

    powers = cfg.powers
    if parser.has_option("drive", "powers_mw"):
        powers = tuple(p * 1e-3 for p in _floats(parser.get("drive", "powers_mw")))
    elif any(parser.has_option("drive", k) for k in ("power_min_mw", "power_max_mw", "power_points")):
        powers = default_powers(get("drive", "power_min_mw", default=0.1) * 1e-3,
                                get("drive", "power_max_mw", default=10.0) * 1e-3,
                                get("drive", "power_points", int, 40))

    probe = ProbeConfig(
        k_p=medium.k,
        mod_freq=get("probe", "mod_freq_hz", default=1.0e3),
        mod_depth=get("probe", "mod_depth", default=0.5),
        power_fraction=get("probe", "power_fraction", default=0.05),
    )
    free = get("fit", "free", str, None)
    return cfg.with_(
        medium=medium,
        preset=name if not changes else None,
        doppler=get("model", "doppler", str, cfg.doppler).lower(),
        powers=powers,
        beam_diameter=get("drive", "beam_diameter_mm", default=2.0) * 1e-3,
        rabi_calibration_hz=get("drive", "rabi_calibration_hz", default=RABI_CAL_HZ),
        beat_power=get("drive", "beat_power_mw", default=4.3) * 1e-3,
        probe=probe,
        n_slices=get("model", "slices", int, DEFAULT_SLICES),
        depletion=get("model", "depletion", bool, True),
        drive_absorption_scale=get("model", "drive_absorption_scale",
                                   default=DEFAULT_DRIVE_ABSORPTION_SCALE),
        shift_hz=get("beat", "shift_hz", default=50.0e6),
        shifted_amplitude=get("beat", "shifted_amplitude", default=0.1),
        beat_window_hz=get("beat", "window_hz", default=200.0e6),
        beat_attenuate=get("beat", "attenuate", bool, False),
        seed=get("fit", "seed", int, 0),
        free=tuple(s.strip() for s in free.split(",") if s.strip()) if free is not None else cfg.free,
        output_dir=get("output", "dir", str, "out"),
    )


def load_config(path) -> ScenarioConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InvalidParameterError(f"cannot read config {path}: {exc}") from None
    return parse_config(text)
