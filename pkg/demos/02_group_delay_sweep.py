# Group delay versus drive power, with the drive losing power along the cell.
#
# At low power the window is narrow and the delay long, but the cell becomes
# opaque.  The interesting point is the lowest power that still lets ~1% of
# the probe through.

# +
from slowlight import ScenarioConfig
from slowlight.scenarios import run_power_sweep

rows = run_power_sweep(ScenarioConfig())
print(f"{'P [mW]':>8} {'T_g [ms]':>9} {'v_g [m/s]':>10} {'T':>8}")
for r in rows[::3]:
    print(f"{r.power * 1e3:8.3f} {r.T_g * 1e3:9.4f} {r.v_g:10.1f} {r.transmission:8.4f}")

# +
edge = min((r for r in rows if r.transmission >= 0.01), key=lambda r: r.power)
print(f"\nlowest power with >= 1% transmission: {edge.power * 1e3:.3f} mW")
print(f"  delay {edge.T_g * 1e3:.3f} ms, mean group velocity {edge.v_g:.1f} m/s")

# +
# Same sweep with a uniform drive, for comparison.  Depletion lengthens the
# delay at a given input power because the back of the cell sees less drive.
uniform = run_power_sweep(ScenarioConfig(depletion=False))
for a, b in list(zip(rows, uniform))[20::6]:
    print(f"{a.power * 1e3:6.2f} mW: depleted {a.T_g * 1e6:8.2f} us, uniform {b.T_g * 1e6:8.2f} us")
