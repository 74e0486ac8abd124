"""Verify the envelope estimates for the recessive combination.

F = psi' + psi sqrt(x^2 - lam) is compared against the envelope
|phi(lam) rho(x, lam) exp(-lam xi)| with unit constant: the ratio stays
bounded uniformly on the validity region, and the region excludes the
oscillatory segment for real spectral parameters, which is exactly where
the classical two-sided bounds still apply.
"""

import cmath
import math

import numpy as np

from pcf import bounds

delta = math.pi / 6
xs = np.linspace(0.02, 6.0, 80)

print("variant 0 sweep (lam on three rays, |lam| = 4):")
for arg in (0.1, delta, 1.5, 2.8):
    recs = bounds.estimate_sweep(xs, [4 * cmath.exp(1j * arg)], "0", delta)
    inside = [r for r in recs if r.in_domain]
    sup = max((r.ratio for r in inside), default=float("nan"))
    print(f"  arg lam = {arg:4.2f}: {len(inside):3d}/{len(recs)} points in "
          f"region, sup ratio = {sup:.4f}")

print("\nclassical (two-sided) envelopes hold everywhere, including the")
print("oscillatory segment excluded above:")
for x, lv, r1, r2 in bounds.olver_sweep([0.3, 1.0, 1.6, 3.0], [4.0]):
    print(f"  x = {x:3.1f}: value ratio {r1:6.3f}, derivative ratio {r2:6.3f}")

spot = bounds.estimate_ratio(2.0, 1.0, "0")
print(f"\nclosed-form spot check at lam = 1, x = 2: ratio = {spot:.6f}"
      " (exact chain through exp(-x^2/2))")
