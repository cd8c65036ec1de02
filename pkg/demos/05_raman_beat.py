# Raman-scattered new field and the resulting beat-note spectrum.
#
# The drive scatters off the ground-state coherence into a new field on the
# other side of the drive.  Probe and new field grow together; their
# amplitude ratio tends to 1 as the gain rises.

# +
import numpy as np

from slowlight import ScenarioConfig
from slowlight.raman import stokes_evolution
from slowlight.scenarios import run_beat_scenario

res = run_beat_scenario(ScenarioConfig())
print(f"gain {res.gain:.3f}, T_g {res.T_g * 1e6:.1f} us, |E_n|/|E_p| {res.state.ratio:.3f}")
for f in res.fields:
    print(f"  field {f.label:>8}: offset {f.offset / 1e6:+8.1f} MHz, amplitude {f.amplitude:.3g}")

# +
for p in res.spectrum.peaks:
    print(f"beat {p.frequency / 1e9:.4f} GHz  power {p.power:.3e}  from {p.contributors}")

# +
# |E_p|^2 - |E_n|^2 is conserved as the gain grows
for g in (0.5, 1.0, 2.0, 4.0):
    s = stokes_evolution(1.0, g, 1.0)
    print(f"gain {g:3.1f}: ratio {s.ratio:.4f}  invariant {s.hyperbolic_invariant:.12f}")
