"""Iterate the shearing map 300 times and plot the (r, s) orbit.

The first few steps are exact; once the rationals grow past a few
thousand bits the orbit continues in 256-bit floating point.
"""

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from prismgroups import dynamics as dyn
from prismgroups.algebra import rat

out = sys.argv[1] if len(sys.argv) > 1 else "orbit_300.png"
p0 = dyn.DynPoint.from_rst(rat(2), rat(1), rat(1, 3))
orbit = dyn.iterate(p0, dyn.DynConfig(d=rat(1, 2)), 300)

exact_steps = sum(tr.exact for tr in orbit.traces)
print(f"{len(orbit.traces)} steps, {exact_steps} exact, max Pappus residual "
      f"{float(orbit.max_residual()):.2e}")

r = [float(p.r2) ** 0.5 for p in orbit.points]
s = [float(p.s2) ** 0.5 for p in orbit.points]
fig, ax = plt.subplots(figsize=(5, 5))
ax.scatter(r, s, s=4)
ax.set_xlabel("r")
ax.set_ylabel("s")
ax.set_title("orbit of (2, 1, 1/3) under the d = 1/2 shear")
fig.savefig(out, dpi=120)
print("wrote", out)
