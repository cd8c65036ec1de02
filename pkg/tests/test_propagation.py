import math

import numpy as np
import pytest

from slowlight.errors import (DriveOpaqueError, InvalidParameterError, NoModulationError,
                              PhaseAmbiguityError, WindowTooShortError)
from slowlight.medium import C_LIGHT, PAPER_BASELINE, DriveConfig, hz, rabi_from_power
from slowlight.propagation import (CellProfile, EnvelopeSignal, am_delay_extract, am_signal,
                                   apply_response, average_group_velocity, drive_absorption,
                                   drive_depletion_profile, propagate_envelope,
                                   transfer_function, uniform_profile)
from slowlight.susceptibility import Cold, Gaussian, Lorentzian, dispersion_summary

M = PAPER_BASELINE
LOR = Lorentzian(M.delta_omega_D)
OMEGA = hz(11.7e6)
N_SAMPLES, RATE = 4096, 409.6e3  # 10 ms window, 100 Hz bins


def shifted(signal, tau):
    return apply_response(signal, np.exp(-2j * np.pi * signal.freqs * tau))


# --- transfer function -------------------------------------------------------

def test_vacuum_transfer_is_identity():
    h = transfer_function(M.with_(N=0.0), OMEGA, LOR, [0.0, 1e2, 1e4, -5e3])
    assert np.all(h == 1.0)


def test_transfer_phase_slope_is_group_delay():
    df = 1.0
    h = transfer_function(M, OMEGA, LOR, [-df, df])
    slope = np.angle(h[1] / h[0]) / (2 * np.pi * 2 * df)
    T_g = dispersion_summary(M, OMEGA, LOR).T_g
    assert -slope == pytest.approx(T_g, rel=1e-2)


def test_transfer_dc_magnitude():
    h0 = transfer_function(M, OMEGA, LOR, 0.0)
    alpha = dispersion_summary(M, OMEGA, LOR).alpha
    assert abs(h0) == pytest.approx(math.exp(-alpha * M.L), rel=1e-12)


def test_transfer_slices_compose():
    f = np.linspace(-2e4, 2e4, 41)
    full = transfer_function(M, OMEGA, LOR, f)
    parts = np.prod([transfer_function(M, OMEGA, LOR, f, length=M.L / 8) for _ in range(8)], axis=0)
    np.testing.assert_allclose(parts, full, rtol=1e-12, atol=0)


# --- envelope -----------------------------------------------------------------

def test_envelope_length_power_of_two():
    with pytest.raises(InvalidParameterError):
        EnvelopeSignal(np.ones(100), 1e3)
    with pytest.raises(InvalidParameterError):
        EnvelopeSignal(np.ones(1), 1e3)


def test_envelope_csv_round_trip(tmp_path):
    sig = am_signal(64, 6.4e3, 100.0)
    sig = EnvelopeSignal(sig.samples * np.exp(0.3j), sig.sample_rate)
    path = sig.to_csv(tmp_path / "env.csv")
    assert path.read_text().splitlines()[0] == "time_s,re,im"
    back = EnvelopeSignal.from_csv(path)
    np.testing.assert_array_equal(back.samples, sig.samples)
    assert back.sample_rate == pytest.approx(sig.sample_rate, rel=1e-12)


def test_linear_phase_is_circular_shift():
    rng = np.random.default_rng(3)
    sig = EnvelopeSignal(rng.standard_normal(256) + 1j * rng.standard_normal(256), 1e3)
    out = shifted(sig, 5 / sig.sample_rate)
    np.testing.assert_allclose(out.samples, np.roll(sig.samples, 5), atol=1e-12)


def test_vacuum_propagation_identity():
    vac = M.with_(N=0.0)
    sig = am_signal(N_SAMPLES, RATE, 1e3)
    out = propagate_envelope(sig, vac, uniform_profile(vac, OMEGA, LOR), LOR)
    assert np.max(np.abs(out.samples - sig.samples)) < 1e-12


def test_one_slice_equals_many_uniform():
    sig = am_signal(N_SAMPLES, RATE, 2e3)
    one = propagate_envelope(sig, M, uniform_profile(M, OMEGA, LOR, 1), LOR)
    many = propagate_envelope(sig, M, uniform_profile(M, OMEGA, LOR, 64), LOR)
    np.testing.assert_allclose(many.samples, one.samples, rtol=0, atol=1e-12)


def test_profile_length_must_match():
    sig = am_signal(N_SAMPLES, RATE, 1e3)
    prof = uniform_profile(M.with_(L=0.05), OMEGA, LOR)
    with pytest.raises(InvalidParameterError):
        propagate_envelope(sig, M, prof, LOR)


def test_window_too_short():
    sig = am_signal(64, 1e6, 1e5)  # 64 us window
    prof = uniform_profile(M, hz(3e6), LOR)
    with pytest.raises(WindowTooShortError):
        propagate_envelope(sig, M, prof, LOR)


def test_attenuation_of_modulation_sideband():
    sig = am_signal(N_SAMPLES, RATE, 1e3)
    out = propagate_envelope(sig, M, uniform_profile(M, OMEGA, LOR), LOR)
    k = 10  # 1 kHz bin
    ratio = abs(np.fft.fft(out.samples)[k]) / abs(np.fft.fft(sig.samples)[k])
    alpha = dispersion_summary(M, OMEGA, LOR).alpha
    assert ratio == pytest.approx(math.exp(-alpha * M.L), rel=1e-2)


# --- depletion profile -----------------------------------------------------------

def test_no_drive_absorption_gives_uniform_profile():
    prof = drive_depletion_profile(M, DriveConfig(power=4.3e-3), LOR, 16, absorption_scale=0.0)
    assert np.all(prof.omega == rabi_from_power(4.3e-3, 2e-3))
    s = dispersion_summary(M, rabi_from_power(4.3e-3, 2e-3), LOR)
    np.testing.assert_allclose(prof.v_g, s.v_g, rtol=1e-15)


def test_depletion_slice_refinement():
    drive = DriveConfig(power=4.3e-3)  # Omega/2pi = 11.7 MHz
    coarse = drive_depletion_profile(M, drive, LOR, 64).total_delay
    fine = drive_depletion_profile(M, drive, LOR, 128).total_delay
    assert abs(fine - coarse) / fine < 5e-3


def test_depletion_velocity_nonincreasing():
    prof = drive_depletion_profile(M, DriveConfig(power=4.3e-3), LOR)
    assert np.all(prof.omega**2 > M.gamma_bc * (M.gamma + M.delta_omega_D))
    assert np.all(np.diff(prof.omega) <= 0)
    assert np.all(np.diff(prof.v_g) <= 0)


def test_depletion_matches_exponential_law():
    drive = DriveConfig(power=2e-3)
    prof = drive_depletion_profile(M, drive, LOR, 10)
    alpha_d = drive_absorption(M, drive, LOR)
    z_mid = (np.arange(10) + 0.5) * M.L / 10
    np.testing.assert_allclose(prof.drive_power, 2e-3 * np.exp(-2 * alpha_d * z_mid), rtol=1e-12)


def test_depletion_delay_exceeds_uniform_input_delay():
    drive = DriveConfig(power=4.3e-3)
    depleted = drive_depletion_profile(M, drive, LOR)
    # slice-sum oracle with the input Rabi frequency everywhere
    uniform = dispersion_summary(M, drive.rabi, LOR).n_g * M.L / C_LIGHT
    assert depleted.total_delay > uniform


def test_cold_drive_is_absorbed():
    with pytest.raises(DriveOpaqueError):
        drive_depletion_profile(M.with_(gamma=M.gamma_r), DriveConfig(power=1e-3), Cold())


def test_gaussian_profile_runs():
    prof = drive_depletion_profile(M, DriveConfig(power=1e-3), Gaussian(M.delta_omega_D), 16)
    assert prof.n_slices == 16 and np.all(np.isfinite(prof.n_g))


# --- average velocity -----------------------------------------------------------

def test_average_velocity_uniform():
    prof = uniform_profile(M, OMEGA, LOR, 8)
    assert average_group_velocity(prof, M.L) == pytest.approx(prof.v_g[0], rel=1e-14)


def test_average_velocity_harmonic_mean():
    prof = CellProfile(0.02, [1.0, 1.0], [100.0, 50.0], [0.0, 0.0], [0.0, 0.0])
    assert average_group_velocity(prof, 0.02) == pytest.approx(200.0 / 3.0, rel=1e-15)


def test_average_velocity_transit_identity():
    prof = drive_depletion_profile(M, DriveConfig(power=1e-3), LOR)
    transit = M.L / average_group_velocity(prof)
    assert transit == pytest.approx(M.L / C_LIGHT + prof.total_delay, rel=1e-12)


# --- AM delay ---------------------------------------------------------------------

def test_am_delay_synthetic_shift():
    sig = am_signal(N_SAMPLES, RATE, 1e3)
    out = shifted(sig, 0.26e-3)
    assert am_delay_extract(sig, out, 1e3) == pytest.approx(0.26e-3, rel=1e-6)


def test_am_delay_identical_signals():
    sig = am_signal(N_SAMPLES, RATE, 1e3)
    assert am_delay_extract(sig, sig, 1e3) == 0.0


def test_am_delay_missing_tone():
    flat = EnvelopeSignal(np.ones(N_SAMPLES), RATE)
    with pytest.raises(NoModulationError):
        am_delay_extract(flat, flat, 1e3)


def test_am_delay_ambiguity():
    sig = am_signal(N_SAMPLES, RATE, 2e3)
    with pytest.raises(PhaseAmbiguityError) as exc:
        am_delay_extract(sig, shifted(sig, 0.3e-3), 2e3)
    assert exc.value.delay == pytest.approx(0.3e-3, rel=1e-6)


def test_am_delay_end_to_end():
    prof = drive_depletion_profile(M, DriveConfig(power=4.3e-3), LOR)
    sig = am_signal(N_SAMPLES, RATE, 1e3)
    out = propagate_envelope(sig, M, prof, LOR)
    assert am_delay_extract(sig, out, 1e3) == pytest.approx(prof.total_delay, rel=1e-2)
