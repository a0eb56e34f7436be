"""
Linear spectrum near the quadruple-zero point
=============================================

Travelling waves u_n(t) = phi(n - c t/h) of the lattice linearize about the
zero state to D(Lambda) = 2(cosh Lambda - 1) + h^2 - c^2 Lambda^2 = 0.
On the imaginary axis, Lambda = 2iK, this reads sin^2 K = h^2/4 + c^2 K^2.
"""

import math

import numpy as np

from travelling_kinks.dispersion import (
    bifurcation_point, classify_quartic, critical_wavenumber, imaginary_roots,
)

# A standing pattern (c = 0) on a lattice with h = 1: the roots are
# K = n pi +- pi/6, found by bracketing and Brent polishing.
print("c=0, h=1:", np.round(imaginary_roots(0.0, 1.0, 7.0), 6))

# Below the resonance curve one pair of imaginary roots survives; on it the
# pair is double (K = P), above it the pair has left the axis.
bp = bifurcation_point(0.6)
for h in (0.9 * bp.h, bp.h, 1.1 * bp.h):
    print(f"c={bp.c:.4f} h={h:.4f}:", np.round(imaginary_roots(bp.c, h, 3.0), 6))

# Close to (c, h) = (1, 0) the curve is h ~ sqrt(3) (1 - c^2).
for P in (0.4, 0.1, 0.02):
    b = bifurcation_point(P)
    print(f"P={P:<5} c={b.c:.6f} h={b.h:.3e} h/(sqrt3 (1-c^2))={b.asymptotic_ratio:.6f}")

# The reduced quartic (1/12) L^4 - gamma L^2 + tau = 0 labels the regions
# around the codimension-two point.
for gamma, tau in [(-1, 1), (-1, 3), (-1, 4), (1, 1), (1, -1), (0, 1), (1, 0), (0, 0)]:
    q = classify_quartic(gamma, tau)
    print(f"gamma={gamma:>2} tau={tau:>2}  {q.label.value}")

# The zero state itself is unstable to long waves, kappa < kappa*(h).
print("kappa*(1) =", critical_wavenumber(1.0), "pi/3 =", math.pi / 3)
