# Delay of an amplitude-modulated probe.
#
# The envelope is pushed through the cell as a transfer function in the
# frame moving at c.  As long as the modulation sits well inside the EIT
# window, the tone delay equals the group delay and does not depend on the
# modulation frequency.

# +
import numpy as np

from slowlight import PAPER_BASELINE as medium
from slowlight.medium import DriveConfig
from slowlight.propagation import am_delay_extract, am_signal, propagate_envelope, uniform_profile
from slowlight.susceptibility import Lorentzian, eit_linewidth

model = Lorentzian(medium.delta_omega_D)
omega = DriveConfig(power=4.3e-3).rabi
profile = uniform_profile(medium, omega, model)
print(f"Rabi {omega / 2 / np.pi / 1e6:.2f} MHz, EIT width "
      f"{eit_linewidth(medium, omega) / 2 / np.pi / 1e3:.0f} kHz, T_g {profile.total_delay * 1e6:.3f} us")

# +
for f_mod in (100.0, 1e3, 1e4, 3e4):
    sig = am_signal(4096, 409.6e3, f_mod, depth=0.5)
    out = propagate_envelope(sig, medium, profile, model)
    delay = am_delay_extract(sig, out, f_mod)
    depth_out = np.ptp(out.intensity) / np.ptp(sig.intensity)
    print(f"f_mod {f_mod / 1e3:6.1f} kHz: delay {delay * 1e6:8.3f} us, "
          f"relative modulation {depth_out:.3f}")
# at 30 kHz the tone is out on the shoulder of the window: less delay, less depth.
# Much higher and the delay exceeds half a modulation period, which
# am_delay_extract refuses as ambiguous.
