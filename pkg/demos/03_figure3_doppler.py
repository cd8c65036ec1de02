# Does the shape of the velocity distribution matter?
#
# Four curves of group velocity against drive power:
#   a  Lorentzian Doppler profile
#   b  Gaussian Doppler profile
#   c  no Doppler broadening, gamma = gamma_r
#   d  Gaussian with the ground-state decoherence cut to 40 Hz
# Curves a and b sit within a few percent of each other once the medium is
# transparent, which is why the closed form is good enough.

# +
from slowlight import ScenarioConfig
from slowlight.scenarios import run_figure3

fig = run_figure3(ScenarioConfig())
print(f"{'P [mW]':>8}" + "".join(f"{k:>12}" for k in fig.curves))
for i in range(0, len(fig.powers), 4):
    cells = []
    for rows in fig.curves.values():
        r = rows[i]
        cells.append(f"{r.v_g:11.3g}{'*' if r.opaque else ' '}")
    print(f"{fig.powers[i] * 1e3:8.3f}" + "".join(cells))
print("* = transmission below 10%")

# +
slowest = min((r for r in fig.curves["d"] if not r.opaque), key=lambda r: r.v_g)
print(f"\ncurve d: {slowest.v_g:.2f} m/s at {slowest.power * 1e3:.3f} mW")
