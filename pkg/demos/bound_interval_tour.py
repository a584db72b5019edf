"""How tight are the connectivity bounds?

Walks the 14-node demo network: single-pin bound intervals for every
candidate node, then the interval as the pinning set grows along the
greedy order. Equivalent CLI runs:

    pinctl bounds --graph demos/network14.json --pins 14 --gain 100
    pinctl sweep  --graph demos/network14.json --gain 100 --modes greedy
"""

from pathlib import Path

import pinctl as pc

HERE = Path(__file__).parent
g = pc.load_graph((HERE / "network14.json").read_text())
GAIN = 100.0

print(f"network: {g.n} nodes, {len(g.edges)} edges, "
      f"degrees {g.degrees.astype(int).tolist()}")

print("\nsingle pinning: interval [mu_l, mu_u] around the exact connectivity")
print(f"{'node':>4} {'deg':>4} {'mu_l':>8} {'mu_exact':>9} {'mu_u':>8} "
      f"{'ceiling m/(n-1)':>16}")
for node in range(g.n):
    report = pc.bounds_report(g, {node}, GAIN)
    ceiling, _ = pc.single_pin_limit(g.n, int(g.degrees[node]), GAIN)
    print(f"{node + 1:>4} {int(g.degrees[node]):>4} {report.mu_l:>8.3f} "
          f"{report.mu_exact:>9.3f} {report.mu_u:>8.3f} {ceiling:>16.3f}")

print("\nevery single-pin lower bound above is trivial (0); the bound comes "
      "alive once the\npinning set covers the network within fewer hops:")

order = pc.greedy_select(g, g.n, GAIN).pins
print(f"\n{'m':>3} {'pins (greedy order)':>34} {'mu_l':>8} {'mu_exact':>9} "
      f"{'mu_u':>8} {'ecc k':>6}")
for m in range(1, g.n + 1):
    report = pc.bounds_report(g, order[:m], GAIN)
    label = ",".join(str(p + 1) for p in sorted(order[:m]))
    print(f"{m:>3} {label:>34} {report.mu_l:>8.3f} {report.mu_exact:>9.3f} "
          f"{report.mu_u:>8.3f} {report.k:>6}")

print("\nthe interval always brackets the exact value and collapses to the "
      "gain at m = n.")
