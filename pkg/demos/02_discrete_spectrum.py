"""Eigenvalues off the band, two independent ways.

The zeros of the determinant inside the unit disk map to the discrete
spectrum through lambda = (z + 1/z)/2.  The winding-number zero finder and
a dense eigensolver on growing truncated sections must agree; boundary
zeros are not eigenvalues but spectral singularities, and the script shows
the two regimes side by side for the one-parameter family b_0 = c e^{i pi/4}.
"""

import numpy as np

from jacobi_spectra import (ComplexJacobiSpec, dense_truncation_oracle,
                            discrete_spectrum, spectral_singularities)

rng = np.random.default_rng(42)
devs = tuple((n, *(0.8 * (rng.standard_normal(3) + 1j * rng.standard_normal(3))))
             for n in range(6))
spec = ComplexJacobiSpec(devs)

print("random complex matrix, support 6")
disk = discrete_spectrum(spec, radius=0.995)
oracle = dense_truncation_oracle(spec, 600)
print(f"{'disk method':>32} {'dense oracle':>32}")
for (lam, mult), mu in zip(disk, sorted(oracle, key=lambda l: (abs(l.imag), l.real))):
    print(f"{lam:32.12f} {mu:32.12f}   (mult {mult})")

print("\nspectral singularity vs interior eigenvalue (theta = pi/4):")
theta = np.pi / 4
for c, label in ((0.5, "on the circle"), (1.0, "inside the disk")):
    s = ComplexJacobiSpec(((0, 0j, c * np.exp(1j * theta), 0j),))
    eigs = discrete_spectrum(s, 0.995)
    sing = spectral_singularities(s, 512)
    print(f"  b_0 = {c} e^(i pi/4):  eigenvalues {['%.4f' % abs(l) for l, _ in eigs] or '-'}"
          f"  singularities {[f'{0.5 * (z + 1/z).real:.6f}' for z, _ in sing] or '-'}"
          f"   ({label})")
print("\nThe boundary zero sits at lambda = cos(pi/4) =", f"{np.cos(theta):.6f}")
