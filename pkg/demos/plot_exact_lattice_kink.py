"""
An exactly travelling kink on the lattice
=========================================

For speed s and width mu, the nonlinearity
f(u) = u (1 - u^2)(1 + alpha u^2)/(1 - beta u^2) with beta = tanh^2 mu,
h^2 = 2(tanh^2 mu - s^2 mu^2) and alpha = s^2 mu^2 beta/(beta - s^2 mu^2)
makes u_n(t) = tanh(mu (n - s t / h)) an exact solution. We check the
identity, then propagate the kink with velocity Verlet.
"""

import numpy as np

from travelling_kinks import inverse, lattice

p = inverse.inverse_params(0.8, 0.5)
print(f"alpha={p.alpha:.7f} beta={p.beta:.7f} h^2={p.h2:.7f}")

zeta = np.linspace(-10, 10, 401)
print("advance-delay residual:", inverse.advance_delay_residual(0.8, 0.5, zeta))
print("with h^2 off by 1%:    ", inverse.advance_delay_residual(0.8, 0.5, zeta, h2_scale=1.01))

# In the normal-form limit the width solves (4/3) m^4 + 2 gamma m^2 + tau = 0.
for tau in (1.0, 2.9, 3.0, 3.1):
    print(f"gamma_s=-2 tau={tau}: mu_s =", np.round(inverse.mu_s_roots(-2.0, tau), 6))

# Verlet is second order, so halving dt should cut the error by four.
t_final = 10 * p.h / p.s
errors = {}
for dt in (p.h / 25, p.h / 50, p.h / 100):
    errors[dt] = lattice.simulate_exact_kink(0.8, 0.5, t_final, dt)
    print(f"dt=h/{p.h / dt:.0f}: max error {errors[dt]:.4e}")
e = list(errors.values())
print("ratios:", [round(a / b, 3) for a, b in zip(e, e[1:])])
