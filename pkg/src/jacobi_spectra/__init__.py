"""Spectra of complex Jacobi matrices via perturbation determinants,
forward/inverse scattering for real matrices, and the construction of a
matrix whose eigenvalues accumulate at a prescribed interior point.

The package is organized along the pipelines:

``core``
    Finite-support matrix specifications, the disk/plane spectral map,
    entry moments, decay envelopes, JSON spec files.
``detkit``
    Three independent determinant engines with certified coefficient and
    derivative bounds.
``spectra``
    Disk zero finding (argument principle + subdivision), a dense
    eigensolver oracle, boundary singularities, limit-set diagnostics.
``scattering``
    Jost solutions, scattering data, Marchenko systems, entry
    reconstruction and the decay-bound report.
``pavlov``
    The oscillatory-integral construction: root sequence, Herglotz data,
    weight sampling, recurrence coefficients, matrix assembly and
    verification.
``cli``
    ``jacobi-spectra`` command-line front end.
"""

from .core import (BranchError, ComplexJacobiSpec, ConvergenceError, DecayFit,
                   Envelope, Moments, PreconditionError, RealJacobiSpec,
                   ReconstructionError, classify_decay, dist_to_band, envelope,
                   inverse_joukowski, joukowski, moment, read_spec, write_spec)
from .detkit import (DeterminantSeries, DerivativeBound, KappaTable,
                     derivative_max_bound, det_ratio_stabilized,
                     det_truncation_ratio, det_volterra, eval_series, jost_psi,
                     series_from_kappa, taylor_recursion)
from .pavlov import (AccumulationReport, HerglotzConstants, PavlovModel,
                     QuadSettings, WeightTable, accumulation_point,
                     assemble_matrix, find_roots, herglotz_constants, pavlov_V,
                     predicted_eigenvalues, recurrence_from_weight,
                     verify_accumulation, weight_table, weyl_pole_residuals)
from .scattering import (DecayBoundReport, JostReport, JostSolution,
                         MarchenkoSolution, ScatteringData, jost_function_check,
                         jost_solution, marchenko_solve, reconstruct,
                         scattering_function, scattering_roundtrip,
                         verify_decay_bound)
from .spectra import (DiskZero, GevreyEnvelope, PointSetMetrics,
                      dense_truncation_oracle, discrete_spectrum,
                      find_zeros_disk, gevrey_envelope, integer_envelope_min,
                      limit_set_metrics, spectral_singularities)

__version__ = "0.1.0"
