"""Raman coupling of the probe (anti-Stokes) and new (Stokes) fields, and the
RF beat spectrum seen by a square-law detector."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

import numpy as np

from .errors import GainOverflowError, InvalidParameterError
from .medium import C_LIGHT

MAX_GAIN_EXPONENT = 50.0


def xi(omega, omega_cb):
    """Parametric coupling rate Omega^2 / omega_cb in s^-1."""
    if not np.all(np.asarray(omega_cb) > 0):
        raise InvalidParameterError("omega_cb must be positive")
    return np.asarray(omega) ** 2 / omega_cb if np.ndim(omega) else omega**2 / omega_cb


@dataclass(frozen=True)
class TwoModeState:
    E_p: complex
    E_n: complex

    @property
    def ratio(self) -> float:
        """|E_n| / |E_p|."""
        return abs(self.E_n) / abs(self.E_p) if self.E_p != 0 else float("nan")

    @property
    def hyperbolic_invariant(self) -> float:
        return abs(self.E_p) ** 2 - abs(self.E_n) ** 2


def stokes_evolution(E_p0: complex, xi: float, T_g: float) -> TwoModeState:
    """Lossless, phase-matched two-mode evolution over a group delay ``T_g``.

    E_p = E_p0 cosh(xi T_g) and conj(E_n) = i E_p0 sinh(xi T_g).
    """
    if T_g < 0:
        raise InvalidParameterError("T_g must be nonnegative")
    return evolve_by_gain(E_p0, xi * T_g)


def evolve_by_gain(E_p0: complex, gain: float) -> TwoModeState:
    """Same as :func:`stokes_evolution` with the exponent ``xi*T_g`` given directly."""
    if gain > MAX_GAIN_EXPONENT:
        raise GainOverflowError(f"gain exponent {gain:.3g} exceeds {MAX_GAIN_EXPONENT:g}")
    E_p0 = complex(E_p0)
    E_p = E_p0 * np.cosh(gain)
    E_n = np.conj(1j * E_p0 * np.sinh(gain))
    return TwoModeState(complex(E_p), complex(E_n))


def phasematch_delta(k_p, k_n, k_d, n_g):
    """Two-photon detuning (k_p + k_n - 2 k_d) c / n_g that restores phase matching."""
    if n_g == 0:
        raise InvalidParameterError("phase matching is undefined for n_g = 0")
    return (k_p + k_n - 2.0 * k_d) * C_LIGHT / n_g


@dataclass(frozen=True)
class FieldLine:
    label: str
    offset: float  # optical frequency offset from the drive, Hz
    amplitude: float


@dataclass(frozen=True)
class BeatPeak:
    frequency: float  # Hz
    power: float
    contributors: tuple  # sorted label pairs


@dataclass(frozen=True)
class BeatSpectrum:
    peaks: tuple

    def __len__(self):
        return len(self.peaks)

    @property
    def frequencies(self):
        return np.array([p.frequency for p in self.peaks])

    def peak_near(self, frequency, tol=1.0):
        for p in self.peaks:
            if abs(p.frequency - frequency) <= tol:
                return p
        return None

    def to_csv(self, path) -> Path:
        path = Path(path)
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["freq_hz", "power", "contributors"])
            for p in self.peaks:
                writer.writerow([repr(p.frequency), repr(p.power),
                                 ";".join("x".join(pair) for pair in p.contributors)])
        return path


def synthesize_beat_spectrum(fields, window, merge_tol: float = 1.0) -> BeatSpectrum:
    """Pairwise beat notes of ``fields`` falling inside ``window = (f_lo, f_hi)``.

    Each pair beats at the absolute difference of its offsets with power
    ``(a_i a_j)^2``.  Beats within ``merge_tol`` Hz of each other are merged
    by adding their powers, and the contributing pairs are listed.
    """
    fields = list(fields)
    labels = [f.label for f in fields]
    if len(set(labels)) != len(labels):
        raise InvalidParameterError(f"field labels must be unique: {labels}")
    lo, hi = window
    beats = []
    for a, b in combinations(fields, 2):
        f = abs(a.offset - b.offset)
        if lo <= f <= hi:
            beats.append((f, (a.amplitude * b.amplitude) ** 2, tuple(sorted((a.label, b.label)))))
    beats.sort(key=lambda x: (x[0], x[2]))
    merged = []
    for f, power, pair in beats:
        if merged and f - merged[-1][0] <= merge_tol:
            last = merged[-1]
            last[1] += power
            last[2].append(pair)
        else:
            merged.append([f, power, [pair]])
    return BeatSpectrum(tuple(BeatPeak(float(f), float(pw), tuple(sorted(pairs)))
                              for f, pw, pairs in merged))
