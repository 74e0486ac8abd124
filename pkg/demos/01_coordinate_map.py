"""Walk through the quasiclassical coordinate machinery.

Shows the action integral xi along a ray of the scaled variable, the
Langer variable eta, the forward/inverse maps z_lam and x_lam, and the
residual potential V0 that measures how far the transformed equation is
from the exact Airy equation.
"""

import cmath
import math

import numpy as np

from pcf import quasi
from pcf.quasi import SpectralParameter

lam = SpectralParameter.from_any(4 * cmath.exp(1j * math.pi / 3))
print(f"spectral parameter lam = {lam.value:.4f}  (|lam| = {lam.modulus}, "
      f"arg = {lam.arg:.4f})")

# xi along the ray t = r e^{-i theta}: the continued argument starts at
# -3 pi/2 at r = 0 and rises toward -2 theta far out
ray = quasi.xi_ray(np.linspace(0.0, 4.0, 9), lam.theta)
print("\n r      |xi|      arg xi (unwrapped)")
for r, m, a in zip(ray.r, np.abs(ray.value), ray.arg):
    print(f"{r:4.1f}  {m:8.4f}   {a:+.4f}")

# the Langer variable is real on (-1, 1] and vanishes at the turning point
print("\neta(0)  =", quasi.eta(0.0).real, " (closed form",
      -(3 * math.pi / 8) ** (2 / 3), ")")
print("eta(-1) =", quasi.eta(-1.0).real, " (closed form",
      -(3 * math.pi / 4) ** (2 / 3), ")")

# forward and inverse maps round-trip at 1e-10 scale
for x in (0.5, 1.8, 3.5):
    z = quasi.z_of_x(x, lam)
    back = quasi.x_of_z(z, lam)
    print(f"x = {x:4.1f} -> z = {z:+.6f} -> x = {back.real:.12f}")

# the residual potential decays like |z|^-2 and like |lam|^-4/3
print("\n|V0| along the curve:")
for x in (0.5, 1.5, 3.0, 6.0):
    z = quasi.z_of_x(x, lam)
    print(f"  x = {x:4.1f}  |z| = {abs(z):7.3f}  |V0| = "
          f"{abs(quasi.V0(z, lam)):.3e}")
