"""Figure-reproduction runs: delay/velocity sweeps, the four-curve velocity
comparison, the Raman beat spectrum, and parameter fitting to delay data."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.optimize import minimize

from .config import FIT_PARAMETERS, ScenarioConfig, default_powers
from .errors import InvalidParameterError, SlowLightError
from .medium import C_LIGHT, TWO_PI, DriveConfig, hz, rabi_from_power
from .propagation import average_group_velocity, drive_absorption, drive_depletion_profile
from .raman import FieldLine, evolve_by_gain, synthesize_beat_spectrum, xi
from .susceptibility import dispersion_summary

OPAQUE_BELOW = 0.1  # intensity transmission; "absorption > 90%"


@dataclass(frozen=True)
class SweepRow:
    power: float  # W
    omega: float  # input Rabi frequency, rad/s
    T_g: float  # delay relative to vacuum, s
    v_g: float  # average group velocity, m/s
    transmission: float
    opaque: bool
    error: str = ""


def _row(power, omega, profile):
    transmission = profile.transmission
    return SweepRow(power, omega, profile.total_delay, average_group_velocity(profile),
                    transmission, bool(transmission < OPAQUE_BELOW))


def run_power_sweep(config: ScenarioConfig) -> list[SweepRow]:
    """Delay, average velocity and transmission for every configured drive power.

    Errors in one row (opaque drive, quadrature failure) are recorded in that
    row and the sweep continues.
    """
    config.validated()
    model = config.model()
    rows = []
    for power in config.powers:
        omega = rabi_from_power(power, config.beam_diameter, config.rabi_calibration_hz)
        try:
            profile = drive_depletion_profile(config.medium, config.drive(power), model,
                                              config.n_slices, config.absorption_scale,
                                              config.rabi_calibration_hz)
        except SlowLightError as exc:
            nan = float("nan")
            rows.append(SweepRow(power, omega, nan, nan, nan, False,
                                 f"{type(exc).__name__}: {exc}"))
            continue
        rows.append(_row(power, omega, profile))
    return rows


def model_delays(medium, powers, beam_diameter, model, n_slices=64, absorption_scale=0.05,
                 calibration_hz=1e6):
    """Vectorized total delay for an array of drive powers (NaN if the drive is absorbed).

    Same physics as :func:`run_power_sweep`, evaluated in one pass; used by the fit.
    """
    powers = np.asarray(powers, dtype=float)
    alpha_d = drive_absorption(medium, DriveConfig(k_d=medium.k), model, absorption_scale)
    decay = np.exp(-2.0 * alpha_d * medium.L * (np.arange(n_slices) + 0.5) / n_slices)
    omega = rabi_from_power(powers[:, None] * decay[None, :], beam_diameter, calibration_hz)
    n_g = np.asarray(dispersion_summary(medium, np.atleast_2d(omega), model).n_g)
    delays = n_g.sum(axis=-1) * (medium.L / n_slices) / C_LIGHT
    if np.exp(-2.0 * alpha_d * medium.L) < 1e-6:
        delays = np.where(powers > 0, np.nan, delays)
    return delays


# --- four-curve velocity comparison ----------------------------------------

FIG3_POWERS = default_powers(0.01e-3, 10e-3, 40)
FIG3_CURVES = ("a", "b", "c", "d")


@dataclass(frozen=True)
class Fig3Result:
    powers: tuple
    curves: dict  # label -> list[SweepRow]
    descriptions: dict


def run_figure3(config: ScenarioConfig | None = None, powers=FIG3_POWERS) -> Fig3Result:
    """Group velocity vs drive power for Lorentzian (a), Gaussian (b), cold (c)
    averaging and for the hot Gaussian case with gamma_bc/2pi = 40 Hz (d).

    Velocities are local (no drive depletion), as for a calculated curve at a
    given intensity.
    """
    config = ScenarioConfig() if config is None else config
    hot = config.medium
    base = config.with_(powers=tuple(powers), depletion=False)
    setups = {
        "a": (base.with_(doppler="lorentzian"), "lorentzian averaging"),
        "b": (base.with_(doppler="gaussian"), "gaussian averaging"),
        "c": (base.with_(doppler="cold", medium=hot.with_(gamma=hot.gamma_r)),
              "no averaging, radiative width"),
        "d": (base.with_(doppler="gaussian", medium=hot.with_(gamma_bc=hz(40.0))),
              "gaussian, gamma_bc/2pi = 40 Hz"),
    }
    curves = {label: run_power_sweep(cfg) for label, (cfg, _) in setups.items()}
    return Fig3Result(tuple(powers), curves, {k: v[1] for k, v in setups.items()})


# --- beat spectrum --------------------------------------------------------

@dataclass(frozen=True)
class BeatResult:
    spectrum: object
    state: object
    gain: float  # xi * T_g (slice sum when the drive is depleted)
    T_g: float
    fields: tuple


def run_beat_scenario(config: ScenarioConfig) -> BeatResult:
    """Two-mode Raman evolution at ``config.beat_power`` and the detector beat spectrum.

    With drive depletion the gain exponent is the slice sum of
    ``xi(Omega(z)) * n_g(z) dz / c``, which reduces to ``xi * T_g`` for a
    uniform cell.
    """
    config.validated()
    medium = config.medium
    power = config.beat_power
    profile = drive_depletion_profile(medium, config.drive(power), config.model(),
                                      config.n_slices, config.absorption_scale,
                                      config.rabi_calibration_hz)
    gain = float(np.sum(xi(profile.omega, medium.omega_cb) * profile.n_g) * profile.dz / C_LIGHT)
    E_p0 = math.sqrt(config.probe.power_fraction * power)
    state = evolve_by_gain(E_p0, gain)
    # optional extension: common linear loss on both modes
    loss = math.sqrt(profile.transmission) if config.beat_attenuate else 1.0
    f_hf = medium.omega_cb / TWO_PI
    drive_amp = math.sqrt(power)
    fields = (
        FieldLine("drive", 0.0, drive_amp),
        FieldLine("probe", f_hf, abs(state.E_p) * loss),
        FieldLine("new", -f_hf, abs(state.E_n) * loss),
        FieldLine("shifted", -config.shift_hz, config.shifted_amplitude * drive_amp),
    )
    window = (f_hf - config.beat_window_hz, f_hf + config.beat_window_hz)
    return BeatResult(synthesize_beat_spectrum(fields, window), state, gain,
                      profile.total_delay, fields)


# --- fitting --------------------------------------------------------------

@dataclass(frozen=True)
class FitResult:
    params: dict  # SI values of the free parameters
    residual_norm: float
    iterations: int
    converged: bool
    history: tuple = field(default=())  # best residual norm after each iteration
    message: str = ""


def _apply(config: ScenarioConfig, values: dict):
    medium = config.medium
    changes = {k: v for k, v in values.items() if k in ("gamma_bc", "N")}
    if changes:
        medium = medium.with_(**changes)
    return medium, values.get("rabi_cal", config.rabi_calibration_hz)


def _current(config, name):
    return config.rabi_calibration_hz if name == "rabi_cal" else getattr(config.medium, name)


def read_delay_csv(path) -> np.ndarray:
    """Two-column (power_mw, delay_s) table with a header row; returns W and s."""
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        header = [h.strip() for h in next(reader, [])]
        if header != ["power_mw", "delay_s"]:
            raise InvalidParameterError(f"{path}: expected header 'power_mw,delay_s', got {header}")
        try:
            rows = [(float(a) * 1e-3, float(b)) for a, b in (r for r in reader if r)]
        except ValueError as exc:
            raise InvalidParameterError(f"{path}: {exc}") from None
    return np.array(rows, dtype=float).reshape(-1, 2)


def synthetic_delay_data(config: ScenarioConfig, noise: float = 0.0, seed: int = 0,
                         powers=None) -> np.ndarray:
    """(power W, delay s) rows from the model, with multiplicative Gaussian noise."""
    powers = np.asarray(config.powers if powers is None else powers, dtype=float)
    delays = model_delays(config.medium, powers, config.beam_diameter, config.model(),
                          config.n_slices, config.absorption_scale, config.rabi_calibration_hz)
    rng = np.random.default_rng(seed)
    delays = delays * (1.0 + noise * rng.standard_normal(delays.shape))
    return np.column_stack([powers, delays])


def fit_parameters(data, free, config: ScenarioConfig, initial: dict | None = None,
                   seed: int | None = None, restarts: int = 3, max_iter: int = 600) -> FitResult:
    """Least-squares fit of log delay vs power over the ``free`` parameters.

    Parameters are searched in log space with Nelder-Mead, restarted from
    seeded perturbations of the best point.  Identical data rows are counted
    once.
    """
    free = tuple(free)
    unknown = set(free) - set(FIT_PARAMETERS)
    if unknown:
        raise InvalidParameterError(f"unknown fit parameters {sorted(unknown)}")
    data = np.unique(np.asarray(data, dtype=float).reshape(-1, 2), axis=0)
    data = data[np.isfinite(data).all(axis=1) & (data[:, 1] > 0)]
    if len(data) < 2 * max(len(free), 1):
        raise InvalidParameterError("need at least twice as many data points as free parameters")
    start = {name: _current(config, name) for name in free}
    start.update({k: v for k, v in (initial or {}).items() if k in free})
    if any(v <= 0 for v in start.values()):
        raise InvalidParameterError("initial guesses must be positive")
    model = config.model()
    powers, log_delay = data[:, 0], np.log(data[:, 1])
    scale = np.array([start[n] for n in free])

    def objective(x):
        values = dict(zip(free, scale * np.exp(x)))
        medium, cal = _apply(config, values)
        pred = model_delays(medium, powers, config.beam_diameter, model, config.n_slices,
                            config.absorption_scale, cal)
        if not np.all(np.isfinite(pred) & (pred > 0)):
            return 1e6
        return float(np.sum((np.log(pred) - log_delay) ** 2))

    if not free:
        return FitResult({}, math.sqrt(objective(np.zeros(0))), 0, True, (), "no free parameters")

    rng = np.random.default_rng(config.seed if seed is None else seed)
    best_x, best_f = np.zeros(len(free)), objective(np.zeros(len(free)))
    history = [math.sqrt(best_f)]
    iterations, converged, message = 0, False, ""

    def track(intermediate_result):
        nonlocal best_f
        best_f = min(best_f, float(intermediate_result.fun))
        history.append(math.sqrt(best_f))

    for attempt in range(restarts + 1):
        x0 = best_x if attempt == 0 else best_x + 0.3 * rng.standard_normal(len(free))
        res = minimize(objective, x0, method="Nelder-Mead", callback=track,
                       options={"xatol": 1e-9, "fatol": 1e-15, "maxiter": max_iter})
        iterations += int(res.nit)
        if res.fun <= best_f:
            best_x, best_f = np.array(res.x), float(res.fun)
        converged, message = bool(res.success), str(res.message)
    params = dict(zip(free, (float(v) for v in scale * np.exp(best_x))))
    return FitResult(params, math.sqrt(best_f), iterations, converged, tuple(history), message)
