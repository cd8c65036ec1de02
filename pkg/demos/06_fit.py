# Recover the ground-state decoherence rate from delay data.
#
# Synthetic delays are generated at the baseline parameters, multiplied by
# 5% Gaussian noise, and fitted with Nelder-Mead starting from 3x the truth.

# +
import numpy as np

from slowlight import ScenarioConfig
from slowlight.medium import hz
from slowlight.scenarios import fit_parameters, synthetic_delay_data

cfg = ScenarioConfig()
truth = hz(1e3)
for seed in range(4):
    data = synthetic_delay_data(cfg, noise=0.05, seed=seed)
    fit = fit_parameters(data, ["gamma_bc"], cfg, initial={"gamma_bc": 3 * truth}, seed=seed)
    got = fit.params["gamma_bc"]
    print(f"seed {seed}: gamma_bc/2pi = {got / 2 / np.pi:7.1f} Hz "
          f"({got / truth - 1:+.2%}), {fit.iterations} iterations")

# +
# Three parameters at once.  Density and the Rabi calibration trade off
# against each other, so noiseless data is used here.
data = synthetic_delay_data(cfg, noise=0.0)
fit = fit_parameters(data, ["gamma_bc", "rabi_cal", "N"], cfg,
                     initial={"gamma_bc": 2 * truth, "rabi_cal": 1.3e6, "N": 1.5e18})
for k, v in fit.params.items():
    print(f"{k:>9}: {v:.6g}")
print("residual", fit.residual_norm)
