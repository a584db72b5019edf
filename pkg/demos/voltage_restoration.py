"""Secondary voltage control of an islanded microgrid, node by node.

Simulates the error dynamics e' = -k (L + (g/k) Z) e for several pinning
choices, compares the fitted decay rate against the k * lambda_min
prediction, and checks the protective-relay settling window. Equivalent
CLI run:

    pinctl simulate --graph demos/network14.json --pins 14 \
        --k 10 --gain 100 --t-end 3 --out trace.csv
"""

from pathlib import Path

import numpy as np

import pinctl as pc

HERE = Path(__file__).parent
g = pc.load_graph((HERE / "network14.json").read_text())
K, GAIN, V_REF = 10.0, 100.0, 380.0

scenarios = [
    ("unpinned", ()),
    ("lowest degree", tuple(pc.baseline_select(g, 1, "lowest-degree").pins)),
    ("highest degree", tuple(pc.baseline_select(g, 1, "highest-degree").pins)),
    ("greedy m=7", pc.greedy_select(g, 7, GAIN).pins),
    ("optimal m=7", pc.optimal_select(g, 7, GAIN).pins),
]

print(f"k = {K}, g = {GAIN} (simulated pinned matrix carries g' = g/k = "
      f"{GAIN / K}), v_ref = {V_REF} Vrms")
print(f"\n{'scenario':<16} {'pins':<22} {'k*lambda_min':>12} {'fitted rate':>12} "
      f"{'relay ok':>9}")
for name, pins in scenarios:
    cfg = pc.SimConfig(pins=pins, k=K, gain=GAIN, v_ref=V_REF,
                       dt=1e-3, t_end=4.0, seed=0)
    trace = pc.simulate_secondary(g, cfg)
    mu = pc.lambda_min_pinned(g, pc.PinningPlan.uniform(pins, GAIN / K, g.n))
    relay = pc.relay_window_ok(trace, V_REF, mu)
    label = ",".join(str(p + 1) for p in pins) if pins else "-"
    print(f"{name:<16} {label:<22} {K * mu:>12.3f} {trace.rate:>12.3f} "
          f"{str(relay):>9}")

# export one trace the way the CLI does
pins = pc.greedy_select(g, 7, GAIN).pins
cfg = pc.SimConfig(pins=pins, k=K, gain=GAIN, v_ref=V_REF, dt=1e-3,
                   t_end=4.0, seed=0)
trace = pc.simulate_secondary(g, cfg)
out = HERE / "greedy_m7_trace.csv"
pc.write_trace_csv(trace, out)
print(f"\nwrote {out.name}: ||e|| decays from {trace.norms[0]:.2f} V to "
      f"{trace.norms[-1]:.2e} V over {trace.times[-1]:.1f} s")
print(f"voltages recover as v_i(t) = v_ref + e_i(t); final spread "
      f"{np.ptp(trace.errors[-1]):.2e} V")
