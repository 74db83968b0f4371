"""Size diagnostics for eigenvalue limit sets.

The convergence exponent of a closed point set measures how fast its
adjacent intervals shrink; the script estimates it for a truncated
middle-third construction (exact answer log 2 / log 3) and for a
geometric sequence (exponent 0), then builds the factorial envelope of a
determinant series, whose floor function controls how strongly zeros can
cluster on the boundary.
"""

import math

import numpy as np

from jacobi_spectra import (ComplexJacobiSpec, gevrey_envelope,
                            integer_envelope_min, limit_set_metrics,
                            series_from_kappa, taylor_recursion)

iv = [(0.0, 1.0)]
for _ in range(10):
    iv = [seg for a, b in iv for seg in ((a, a + (b - a) / 3), (b - (b - a) / 3, b))]
cantor = [2 * p - 1 for p in sorted({a for a, _ in iv} | {b for _, b in iv})]

grid = np.arange(0.01, 1.01, 0.01)
met = limit_set_metrics(cantor, grid)
print(f"middle-third endpoints (depth 10): tau = {met.tau_estimate:.3f}, "
      f"exact log2/log3 = {math.log(2) / math.log(3):.4f}")

geo = [1 - 2.0 ** (-k) for k in range(1, 21)]
print(f"geometric sequence: tau = {limit_set_metrics(geo, grid).tau_estimate:.3f} "
      "(tends to 0 with depth)")
print(f"two points: tau = {limit_set_metrics([0.1, 0.4]).tau_estimate}")

print("\nfactorial envelope of a determinant series (random spec):")
rng = np.random.default_rng(3)
devs = tuple((n, *(0.5 * (rng.standard_normal(3) + 1j * rng.standard_normal(3))))
             for n in range(5))
spec = ComplexJacobiSpec(devs)
series = series_from_kappa(taylor_recursion(spec, 40), spec)
env = gevrey_envelope(series, 6, np.geomspace(1e-3, 1.0, 7))
print("  G_n:", ["%.3e" % g for g in env.Gn])
for s, t in zip(env.s_grid, env.T):
    print(f"  T({s:.3e}) = {t:.3e}")

print("\ninteger vs continuum minimum of t^x x^(alpha x):")
for t, alpha in ((1e-3, 1.0), (1e-4, 1.5)):
    got, cont = integer_envelope_min(t, alpha)
    print(f"  t={t:g}, alpha={alpha}: integer {got:.3e}, continuum {cont:.3e}, "
          f"ratio {got / cont:.3f}")
