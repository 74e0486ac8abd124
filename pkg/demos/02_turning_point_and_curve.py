"""Trace the image of the positive half-line and its turning point.

For each spectral parameter the map z_lam sends [0, inf) to a curve that
dips toward the origin, turns at z_* (the image of the generalized
turning point x_*) and escapes to +infinity; the plot shows the curve,
its split point, and the removed neighborhood of the singular point z_E.
"""

import cmath
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from pcf import domains, quasi

fig, ax = plt.subplots(figsize=(7, 6))
for arg, color in ((0.15, "tab:blue"), (math.pi / 3, "tab:orange"),
                   (2.2, "tab:green"), (math.pi - 0.1, "tab:red")):
    lam = 4 * cmath.exp(1j * arg)
    tp = quasi.turning_point(lam)
    gc = quasi.gamma_contour(lam, 9.0, 160)
    ax.plot(gc.nodes.real, gc.nodes.imag, color=color,
            label=f"arg lam = {arg:.2f}")
    ax.plot(tp.z_star.real, tp.z_star.imag, "o", color=color)
    zE = domains.z_E_point(lam)
    eps = domains.choose_epsilon(math.pi / 6)
    circle = zE + abs(zE) * math.sin(eps) * np.exp(1j * np.linspace(0, 2 * math.pi, 60))
    ax.plot(circle.real, circle.imag, ":", color=color, lw=0.8)
    print(f"arg lam = {arg:5.2f}:  r_* = {tp.r_star:.6f}  "
          f"x_* = {tp.x_star.real:.4f}  z_* = {tp.z_star:+.4f}")

ax.axhline(0, color="k", lw=0.3)
ax.axvline(0, color="k", lw=0.3)
ax.set_xlabel("Re z")
ax.set_ylabel("Im z")
ax.set_title("image curves, turning points, and removed disks (|lam| = 4)")
ax.legend(fontsize=8)
ax.set_aspect("equal")
fig.tight_layout()
fig.savefig("demo_curves.png", dpi=140)
print("wrote demo_curves.png")
