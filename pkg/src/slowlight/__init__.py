"""Slow light and Raman generation in a coherently driven, Doppler-broadened
three-level vapor."""

from .errors import (ConvergenceError, DriveOpaqueError, GainOverflowError,
                     InvalidParameterError, NoModulationError, OutputError,
                     PhaseAmbiguityError, SingularConfigurationError, SlowLightError,
                     ValidationError, WindowTooShortError)
from .medium import (C_LIGHT, PAPER_BASELINE, PRESETS, AtomicMedium, DriveConfig,
                     ProbeConfig, eta, hz, preset, rabi_from_power, validate)
from .susceptibility import (Cold, ComplexSusceptibility, DispersionSummary, Gaussian,
                             Lorentzian, absorption_coeff, chi_closed_form,
                             chi_velocity_integral, dispersion_summary, doppler_model,
                             eit_linewidth, group_index_analytic, group_index_numeric)
from .propagation import (CellProfile, EnvelopeSignal, am_delay_extract, am_signal,
                          average_group_velocity, drive_depletion_profile,
                          propagate_envelope, transfer_function, uniform_profile)
from .raman import (BeatSpectrum, FieldLine, TwoModeState, phasematch_delta,
                    stokes_evolution, synthesize_beat_spectrum, xi)
from .config import ScenarioConfig, from_preset, load_config, parse_config
from .scenarios import (FitResult, SweepRow, fit_parameters, run_beat_scenario,
                        run_figure3, run_power_sweep, synthetic_delay_data)
from .output import export_outputs

__version__ = "0.1.0"
