"""
The split function for single kinks
===================================

In the normal form phi'''' + sigma phi'' + F(phi) = 0 a kink is a
heteroclinic orbit from u- to u+. Shooting from u- along its unstable
direction and stopping at phi = 0 gives K = phi''(t0); an odd kink needs
K = 0. For phi4 and sine-Gordon K never vanishes, it only becomes
exponentially small as sigma grows.
"""

import numpy as np

from travelling_kinks import shooting
from travelling_kinks.model import PHI4, SINE_GORDON

grid = shooting.sigma_grid(2.5, 8.0, 0.5)
for name, model in (("phi4", PHI4), ("sine-Gordon", SINE_GORDON)):
    rows = shooting.scan(grid, c0=1e-5, dt=0.005, level=0.0, model=model)
    print(name)
    for r in rows:
        print(f"  sigma={r.sigma:4.1f}  t0={r.t0:8.3f}  K={r.K: .6e}")

# log|K| is close to linear in sigma over this window
fine = np.round(np.arange(5.0, 8.0001, 0.1), 10)
K = np.abs([r.K for r in shooting.scan(fine, model=PHI4)])
slope, _ = np.polyfit(fine, np.log(K), 1)
print(f"phi4: d log|K| / d sigma ~ {slope:.3f} on [5, 8]")

# no sign change, so no zero to bisect
print("phi4 zeros on [2.5, 8]:", shooting.find_sigma_zeros((2.5, 8.0), 0.1, level=0.0, model=PHI4))
