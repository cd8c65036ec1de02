import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from slowlight.errors import GainOverflowError, InvalidParameterError
from slowlight.medium import C_LIGHT, PAPER_BASELINE, hz, rabi_from_power
from slowlight.raman import (FieldLine, phasematch_delta, stokes_evolution,
                             synthesize_beat_spectrum, xi)
from slowlight.susceptibility import dispersion_summary

F_HF = 6.8347e9


def test_xi_zero():
    assert xi(0.0, hz(6.8e9)) == 0.0


def test_xi_fig4_value():
    # (2 pi 11.7e6)^2 / (2 pi 6.8e9) = 2 pi * 20131.3
    assert xi(hz(11.7e6), hz(6.8e9)) == pytest.approx(1.2649e5, rel=1e-4)


def test_xi_quadratic():
    assert xi(2 * hz(3e6), hz(6.8e9)) == pytest.approx(4 * xi(hz(3e6), hz(6.8e9)), rel=1e-15)


def test_xi_needs_positive_splitting():
    with pytest.raises(InvalidParameterError):
        xi(1.0, 0.0)


def test_stokes_zero_gain():
    s = stokes_evolution(0.7 - 0.2j, 1e5, 0.0)
    assert s.E_p == 0.7 - 0.2j and s.E_n == 0


def test_stokes_phase_convention():
    E0 = 0.3 + 0.4j
    s = stokes_evolution(E0, 2.0, 0.5)
    assert np.conj(s.E_n) == pytest.approx(1j * E0 * math.sinh(1.0), rel=1e-15)
    assert s.E_p == pytest.approx(E0 * math.cosh(1.0), rel=1e-15)


@pytest.mark.parametrize("gain", [0.1, 1.0, 5.0])
def test_stokes_invariant_examples(gain):
    s = stokes_evolution(1.0, gain, 1.0)
    # cancellation: error is relative to the size of |E_p|^2
    assert abs(s.hyperbolic_invariant - 1.0) <= 1e-12 * abs(s.E_p) ** 2


@given(st.floats(0.0, 20.0), st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3))
def test_stokes_hyperbolic_conservation(gain, E0):
    s = stokes_evolution(E0, gain, 1.0)
    # cosh^2 - sinh^2 loses ~e^{2 gain} eps absolutely; compare against the larger term
    assert abs(s.hyperbolic_invariant - abs(E0) ** 2) <= 1e-12 * abs(s.E_p) ** 2 + 1e-12 * abs(E0) ** 2


@given(st.floats(1e-9, 1e-3))
def test_stokes_small_gain_linear(gain):
    s = stokes_evolution(2.0, gain, 1.0)
    assert abs(s.E_n) == pytest.approx(2.0 * gain, rel=1e-6)


def test_stokes_overflow_guard():
    with pytest.raises(GainOverflowError):
        stokes_evolution(1.0, 51.0, 1.0)
    with pytest.raises(InvalidParameterError):
        stokes_evolution(1.0, 1.0, -1.0)


def test_fig4_ratio_uniform_cell():
    m = PAPER_BASELINE
    omega = rabi_from_power(4.3e-3, 2e-3)
    T_g = dispersion_summary(m, omega).T_g
    g = xi(omega, m.omega_cb) * T_g
    assert g == pytest.approx(1.65, rel=0.01)
    s = stokes_evolution(1.0, xi(omega, m.omega_cb), T_g)
    assert s.ratio == pytest.approx(math.tanh(g), rel=1e-12)
    assert 0.9 < s.ratio < 0.95


def test_phasematch_symmetric():
    assert phasematch_delta(1.0e7 + 5.0, 1.0e7 - 5.0, 1.0e7, 1e5) == 0.0


def test_phasematch_inverse_in_group_index():
    a = phasematch_delta(1.0e7 + 7.0, 1.0e7, 1.0e7, 1e5)
    b = phasematch_delta(1.0e7 + 7.0, 1.0e7, 1.0e7, 2e5)
    assert b == pytest.approx(a / 2, rel=1e-15)


def test_phasematch_from_frequencies():
    nu_d = 2 * math.pi * C_LIGHT / PAPER_BASELINE.wavelength
    w = PAPER_BASELINE.omega_cb
    k_d, k_p, k_n = (nu / C_LIGHT for nu in (nu_d, nu_d + w, nu_d - w))
    n_g = 1.6e5
    scale = k_d * C_LIGHT / n_g
    assert abs(phasematch_delta(k_p, k_n, k_d, n_g)) <= 1e-12 * scale


def test_phasematch_vacuum_undefined():
    with pytest.raises(InvalidParameterError):
        phasematch_delta(1.0, 1.0, 1.0, 0.0)


FIG4 = [FieldLine("drive", 0.0, 1.0), FieldLine("probe", F_HF, 0.3),
        FieldLine("new", -F_HF, 0.25), FieldLine("shifted", -50e6, 0.1)]
WINDOW = (F_HF - 200e6, F_HF + 200e6)


def test_fig4_peaks():
    spec = synthesize_beat_spectrum(FIG4, WINDOW)
    np.testing.assert_allclose(spec.frequencies, [F_HF - 50e6, F_HF, F_HF + 50e6])
    centre = spec.peak_near(F_HF)
    assert centre.contributors == (("drive", "new"), ("drive", "probe"))
    assert centre.power == pytest.approx(0.3**2 + 0.25**2, rel=1e-15)
    assert spec.peak_near(F_HF + 50e6).contributors == (("probe", "shifted"),)
    assert spec.peak_near(F_HF - 50e6).contributors == (("new", "shifted"),)


def test_single_field_empty():
    assert len(synthesize_beat_spectrum(FIG4[:1], (0.0, 1e12))) == 0


def test_empty_window_empty_spectrum():
    assert len(synthesize_beat_spectrum(FIG4, (1.0, 2.0))) == 0


def test_two_fields_one_peak():
    spec = synthesize_beat_spectrum([FieldLine("a", 0.0, 1.0), FieldLine("b", 100.0, 1.0)],
                                    (0.0, 1e3))
    assert len(spec) == 1
    assert spec.peaks[0].frequency == 100.0 and spec.peaks[0].power == 1.0


def test_labels_unique():
    with pytest.raises(InvalidParameterError):
        synthesize_beat_spectrum([FieldLine("a", 0.0, 1.0), FieldLine("a", 1.0, 1.0)], (0, 10))


def test_removing_shifted_drops_outer_peaks():
    spec = synthesize_beat_spectrum(FIG4[:3], WINDOW)
    np.testing.assert_allclose(spec.frequencies, [F_HF])


@settings(max_examples=30)
@given(st.permutations(FIG4))
def test_beat_symmetry_under_reordering(fields):
    assert synthesize_beat_spectrum(fields, WINDOW) == synthesize_beat_spectrum(FIG4, WINDOW)


def test_beat_csv(tmp_path):
    path = synthesize_beat_spectrum(FIG4, WINDOW).to_csv(tmp_path / "b.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == "freq_hz,power,contributors"
    assert lines[2].endswith("drivexnew;drivexprobe")
