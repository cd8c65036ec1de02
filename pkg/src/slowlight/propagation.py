"""Probe envelope propagation through the driven cell.

Envelopes live in the frame moving at ``c``, so every delay reported here is
the delay relative to free-space propagation.  A baseband frequency ``f`` of
the envelope (numpy FFT convention, ``exp(+2j*pi*f*t)``) sits at two-photon
detuning ``delta_c + 2*pi*f``; the slice response is
``exp(1j * k/2 * chi(delta) * dz)``.  Only the first envelope derivative is
kept, so group-velocity dispersion broadening is outside the model.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (DriveOpaqueError, InvalidParameterError, NoModulationError,
                     PhaseAmbiguityError, WindowTooShortError)
from .medium import C_LIGHT, RABI_CAL_HZ, AtomicMedium, DriveConfig, eta, rabi_from_power
from .susceptibility import (Cold, DopplerModel, Gaussian, Lorentzian, chi_closed_form,
                             chi_velocity_integral, dispersion_summary)

DEFAULT_SLICES = 64
DEFAULT_DRIVE_ABSORPTION_SCALE = 0.05


@dataclass(frozen=True)
class EnvelopeSignal:
    samples: np.ndarray
    sample_rate: float  # Hz
    carrier_delta: float = 0.0  # two-photon detuning of the carrier, rad/s

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=complex)
        n = samples.size
        if samples.ndim != 1 or n < 2 or n & (n - 1):
            raise InvalidParameterError("envelope length must be a power of two >= 2")
        if not self.sample_rate > 0:
            raise InvalidParameterError("sample_rate must be positive")
        object.__setattr__(self, "samples", samples)

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def duration(self) -> float:
        return self.n / self.sample_rate

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.n) / self.sample_rate

    @property
    def freqs(self) -> np.ndarray:
        return np.fft.fftfreq(self.n, d=1.0 / self.sample_rate)

    @property
    def intensity(self) -> np.ndarray:
        return np.abs(self.samples) ** 2

    def to_csv(self, path) -> Path:
        path = Path(path)
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["time_s", "re", "im"])
            for t, z in zip(self.times, self.samples):
                writer.writerow([repr(float(t)), repr(float(z.real)), repr(float(z.imag))])
        return path

    @classmethod
    def from_csv(cls, path, carrier_delta=0.0) -> "EnvelopeSignal":
        with Path(path).open(newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if [h.strip() for h in header] != ["time_s", "re", "im"]:
                raise InvalidParameterError(f"unexpected envelope header {header}")
            rows = np.array([[float(x) for x in row] for row in reader if row])
        dt = np.diff(rows[:, 0])
        if dt.size == 0 or not np.allclose(dt, dt[0], rtol=1e-9, atol=0):
            raise InvalidParameterError("envelope samples must be uniformly spaced")
        return cls(rows[:, 1] + 1j * rows[:, 2], 1.0 / dt[0], carrier_delta)


def am_signal(n, sample_rate, f_mod, depth=0.5, carrier_delta=0.0) -> EnvelopeSignal:
    """Carrier with sinusoidal field-amplitude modulation ``1 + depth*cos(2 pi f t)``."""
    t = np.arange(n) / sample_rate
    return EnvelopeSignal(1.0 + depth * np.cos(2.0 * np.pi * f_mod * t), sample_rate, carrier_delta)


@dataclass(frozen=True)
class CellProfile:
    """Per-slice drive and dispersion along the cell (uniform slices)."""

    length: float
    omega: np.ndarray
    v_g: np.ndarray
    alpha: np.ndarray
    n_g: np.ndarray
    drive_power: np.ndarray = field(default=None)

    def __post_init__(self):
        for name in ("omega", "v_g", "alpha", "n_g"):
            object.__setattr__(self, name, np.atleast_1d(np.asarray(getattr(self, name), float)))
        if self.n_slices < 1:
            raise InvalidParameterError("profile needs at least one slice")

    @property
    def n_slices(self) -> int:
        return self.omega.size

    @property
    def dz(self) -> float:
        return self.length / self.n_slices

    @property
    def total_delay(self) -> float:
        """Delay relative to vacuum, sum of dz * n_g / c."""
        return float(np.sum(self.n_g) * self.dz / C_LIGHT)

    @property
    def transmission(self) -> float:
        """Probe intensity transmission exp(-2 sum alpha dz)."""
        return float(np.exp(-2.0 * np.sum(self.alpha) * self.dz))


def _chi(medium, omega, model, delta):
    # Lorentzian and cold models have exact closed forms for k_p = k_d
    if isinstance(model, Gaussian):
        return chi_velocity_integral(medium, omega, 0.0, delta, model=model).value
    return chi_closed_form(medium, omega, 0.0, delta, doppler_width=model.width).value


def _model_or_default(medium, model):
    return Lorentzian(medium.delta_omega_D) if model is None else model


def uniform_profile(medium: AtomicMedium, omega: float, model: DopplerModel | None = None,
                    n_slices: int = DEFAULT_SLICES) -> CellProfile:
    model = _model_or_default(medium, model)
    s = dispersion_summary(medium, omega, model)
    ones = np.ones(n_slices)
    return CellProfile(medium.L, omega * ones, s.v_g * ones, s.alpha * ones, s.n_g * ones)


def transfer_function(medium: AtomicMedium, omega: float, model: DopplerModel | None,
                      mod_freqs, length: float | None = None, carrier_delta: float = 0.0):
    """Complex envelope response at baseband frequencies ``mod_freqs`` (Hz).

    The phase slope ``d(arg H)/d(2 pi f)`` near zero is ``-T_g`` and
    ``|H(0)| = exp(-alpha L)``.
    """
    model = _model_or_default(medium, model)
    length = medium.L if length is None else length
    delta = carrier_delta + 2.0 * np.pi * np.asarray(mod_freqs, dtype=float)
    return np.exp(0.5j * medium.k * _chi(medium, omega, model, delta) * length)


def apply_response(signal: EnvelopeSignal, response) -> EnvelopeSignal:
    """Multiply the envelope spectrum by ``response`` sampled on ``signal.freqs``."""
    out = np.fft.ifft(np.fft.fft(signal.samples) * response)
    return EnvelopeSignal(out, signal.sample_rate, signal.carrier_delta)


def propagate_envelope(signal: EnvelopeSignal, medium: AtomicMedium, profile: CellProfile,
                       model: DopplerModel | None = None) -> EnvelopeSignal:
    """Pass ``signal`` through every slice of ``profile`` in order."""
    model = _model_or_default(medium, model)
    if not np.isclose(profile.length, medium.L, rtol=1e-9, atol=0):
        raise InvalidParameterError(
            f"profile length {profile.length} m does not match cell length {medium.L} m")
    if profile.total_delay > 0.5 * signal.duration:
        raise WindowTooShortError(
            f"delay {profile.total_delay:.3g} s exceeds half the {signal.duration:.3g} s window")
    delta = signal.carrier_delta + 2.0 * np.pi * signal.freqs
    exponent = np.zeros(signal.n, dtype=complex)
    # identical slices share one evaluation
    omegas, inverse = np.unique(profile.omega, return_inverse=True)
    slice_exp = [0.5j * medium.k * _chi(medium, w, model, delta) * profile.dz for w in omegas]
    for j in inverse:
        exponent += slice_exp[j]
    return apply_response(signal, np.exp(exponent))


def drive_absorption(medium: AtomicMedium, drive: DriveConfig, model: DopplerModel,
                     scale: float = DEFAULT_DRIVE_ABSORPTION_SCALE) -> float:
    """Drive field absorption coefficient (m^-1): scaled two-level resonant absorption.

    ``scale`` stands for the fraction of population left on the drive
    transition by optical pumping; it is not calibrated against data.
    """
    return 0.5 * drive.k_d * eta(medium) * medium.gamma_r / (medium.gamma + model.width) * scale


def drive_depletion_profile(medium: AtomicMedium, drive: DriveConfig,
                            model: DopplerModel | None = None,
                            n_slices: int = DEFAULT_SLICES,
                            absorption_scale: float = DEFAULT_DRIVE_ABSORPTION_SCALE,
                            calibration_hz: float = RABI_CAL_HZ) -> CellProfile:
    """March the drive power through ``n_slices`` slices and evaluate each slice.

    Each slice is evaluated at the drive power of its midpoint.  A zero
    ``absorption_scale`` gives a uniform profile.
    """
    if n_slices < 1:
        raise InvalidParameterError("n_slices must be >= 1")
    model = _model_or_default(medium, model)
    alpha_d = drive_absorption(medium, drive, model, absorption_scale)
    step = np.exp(-2.0 * alpha_d * medium.L / n_slices)
    edges = np.empty(n_slices + 1)
    edges[0] = drive.power
    for j in range(n_slices):
        edges[j + 1] = edges[j] * step
    if drive.power > 0 and edges[-1] < 1e-6 * drive.power:
        raise DriveOpaqueError(
            f"drive power falls to {edges[-1] / drive.power:.3g} of its input inside the cell")
    power = np.sqrt(edges[:-1] * edges[1:])
    omega = np.atleast_1d(rabi_from_power(power, drive.beam_diameter, calibration_hz))
    s = dispersion_summary(medium, omega, model)
    return CellProfile(medium.L, omega, s.v_g, s.alpha, s.n_g, power)


def average_group_velocity(profile: CellProfile, L: float | None = None) -> float:
    """Cell length over total transit time (harmonic mean of slice velocities)."""
    L = profile.length if L is None else L
    transit = np.sum(profile.dz / profile.v_g) * (L / profile.length)
    return float(L / transit)


def _tone(signal: EnvelopeSignal, f_mod: float) -> complex:
    basis = np.exp(-2j * np.pi * f_mod * signal.times)
    return complex(np.mean(signal.intensity * basis))


def am_delay_extract(input: EnvelopeSignal, output: EnvelopeSignal, f_mod: float) -> float:
    """Delay (s) of the intensity-modulation tone at ``f_mod`` between two signals.

    The tone phase is unwrapped assuming a nonnegative delay.  Delays beyond
    half a modulation period are ambiguous and raise
    :class:`PhaseAmbiguityError`.
    """
    if not f_mod > 0:
        raise InvalidParameterError("f_mod must be positive")
    tones = []
    for sig, name in ((input, "input"), (output, "output")):
        tone = _tone(sig, f_mod)
        if abs(tone) <= 1e-9 * np.mean(sig.intensity) or abs(tone) == 0:
            raise NoModulationError(f"no tone at {f_mod} Hz in the {name} signal")
        tones.append(tone)
    lag = (-np.angle(tones[1] / tones[0])) % (2.0 * np.pi)
    if lag > 2.0 * np.pi * (1.0 - 1e-12):
        lag = 0.0
    delay = lag / (2.0 * np.pi * f_mod)
    if delay > 0.5 / f_mod:
        raise PhaseAmbiguityError(
            f"delay {delay:.3g} s is ambiguous at {f_mod} Hz; use a lower modulation frequency",
            delay=delay)
    return float(delay)
