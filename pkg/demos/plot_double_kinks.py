"""
Double and triple kinks of sine-Gordon
======================================

For sine-Gordon the unstable orbit of -pi can pass pi and continue to 3 pi.
Stopping at phi = pi instead of 0 gives a split function whose zeros are
odd double kinks; unlike the single kink it changes sign again and again.
"""

import math

import numpy as np

from travelling_kinks import shooting
from travelling_kinks.model import SINE_GORDON

zeros = shooting.find_sigma_zeros((2.0, 12.0), 0.05, level=math.pi, model=SINE_GORDON)
print(f"{len(zeros)} double kinks on [2, 12]")
for z in zeros[:8]:
    defect = shooting.odd_symmetry_defect(z.sigma_star, model=SINE_GORDON)
    print(f"  sigma*={z.sigma_star:.9f}  K={z.K_residual: .1e}  t0={z.t0:7.3f}  oddness defect={defect:.1e}")

# Between consecutive zeros the orbit is not odd about its crossing.
mid = 0.5 * (zeros[0].sigma_star + zeros[1].sigma_star)
print("halfway between the first two:", shooting.odd_symmetry_defect(mid, model=SINE_GORDON))

# Triple kinks: same construction with the level at 2 pi.
triple = shooting.find_sigma_zeros((2.0, 6.0), 0.05, level="2pi", model=SINE_GORDON)
print(f"{len(triple)} triple kinks on [2, 6]:", np.round([z.sigma_star for z in triple], 6))
