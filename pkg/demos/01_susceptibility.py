# Probe susceptibility near two-photon resonance in a warm Rb cell.
#
# The dressed-state closed form and the velocity-averaged integral agree for
# a Lorentzian velocity profile, so the closed form is what the rest of the
# package leans on.  Here we look at the dip in chi'' and the steep chi'
# slope that makes the light slow.

# +
import numpy as np

from slowlight import PAPER_BASELINE as medium
from slowlight.medium import hz
from slowlight.susceptibility import (Gaussian, Lorentzian, chi_closed_form,
                                      chi_velocity_integral, eit_linewidth)

omega = hz(5e6)  # drive Rabi frequency, 5 MHz
width = eit_linewidth(medium, omega)
print(f"EIT linewidth at 5 MHz drive: {width / 2 / np.pi / 1e3:.1f} kHz")

# +
delta = np.linspace(-5, 5, 11) * width
closed = chi_closed_form(medium, omega, 0.0, delta).value
lorentz = chi_velocity_integral(medium, omega, 0.0, delta, model=Lorentzian(medium.delta_omega_D)).value
gauss = chi_velocity_integral(medium, omega, 0.0, delta, model=Gaussian(medium.delta_omega_D)).value

print(f"{'delta/width':>12} {'chi_re':>12} {'chi_im':>12} {'|lor-cf|/|cf|':>14} {'gauss_im':>12}")
for d, c, l, g in zip(delta / width, closed, lorentz, gauss):
    print(f"{d:12.1f} {c.real:12.4e} {c.imag:12.4e} {abs(l - c) / abs(c):14.1e} {g.imag:12.4e}")

# +
# Without the drive the medium is just an absorber; with it, chi'' at
# delta = 0 drops by a large factor.
bare = chi_closed_form(medium, 0.0, 0.0, 0.0).value
dressed = chi_closed_form(medium, omega, 0.0, 0.0).value
print(f"chi'' suppression on resonance: {bare.imag / dressed.imag:.0f}x")
