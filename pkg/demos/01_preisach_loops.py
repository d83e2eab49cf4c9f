"""Hysteresis loops of the discrete Preisach model.

Two systems of 10^5 hysterons each, with threshold pairs drawn uniformly
from [-1, 1] and [-2, 2], are swept 0 -> +r -> -r -> +r in steps of 0.1.
"""
from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np

from hysteresis_rc import build_system, sweep_loop

out = Path("demo_output")
out.mkdir(exist_ok=True)

fig, ax = plt.subplots(figsize=(4.5, 3.5))
for r in (1.0, 2.0):
    system = build_system(r, 100_000, np.random.default_rng(0))
    trace = sweep_loop(system, -r, r, 0.1)
    ax.plot(trace[:, 0], trace[:, 1], ".-", ms=3, label=f"[-{r:g}, {r:g}]")

# For uniform pairs on [-r, r] the branches through x = 0 sit at 0.75
# (coming up from -r) and 0.25 (coming down from +r).
system = build_system(1.0, 100_000, np.random.default_rng(0))
trace = sweep_loop(system, -1, 1, 0.1)
print("descending branch at x=0:", trace[20, 1])
print("ascending branch at x=0: ", trace[40, 1])

ax.set_xlabel("input x")
ax.set_ylabel("output Y")
ax.legend()
fig.tight_layout()
fig.savefig(out / "preisach_loops.png", dpi=150)
