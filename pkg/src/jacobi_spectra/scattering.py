"""Forward and inverse scattering for real symmetric finite-support specs.

Forward direction: the decaying (Jost) solution of the three-term
recurrence is computed exactly as a table of polynomial coefficients
``f_n(z) = sum_{m >= n} K(n, m) z^m``; the boundary ratio
``S = conj(f_0)/f_0`` on the unit circle is unimodular, and its Fourier
coefficients ``F(n)`` carry all the data.  Inverse direction: for data
with no interior determinant zeros and no band-edge resonance, the
coefficients solve a family of finite linear (Marchenko) systems whose
solutions rebuild ``K`` row by row and hence the matrix entries.

Index conventions (fixed by the closed-form single-site tests):

* matrix entries are 0-based (``b[0]`` is the top diagonal entry);
* the Jost index is the matrix index + 1, so ``f_0`` plays the role of
  the determinant: its disk zeros are the eigenvalues;
* the recurrence coefficient below the matrix, ``a(-1)``, is folded to
  the free value 1/2, which makes ``K(0,0) = K(1,1)`` and lets row 0 of
  the Marchenko family be handled by its null vector (the row-0 system
  is singular by construction, with null direction ``K(0, .)``).
* ``F(n)`` is stored two-sided: the positive side (criterion data,
  geometric tail) is ``-(1/2pi) int S(e^{i theta}) e^{-in theta}``; the
  mirror side ``F(-p)`` enters the Marchenko kernels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (FREE_OFFDIAG, PreconditionError, RealJacobiSpec,
                   ReconstructionError)

__all__ = [
    "DecayBoundReport",
    "JostReport",
    "JostSolution",
    "MarchenkoSolution",
    "ScatteringData",
    "jost_function_check",
    "jost_solution",
    "marchenko_solve",
    "reconstruct",
    "scattering_function",
    "scattering_roundtrip",
    "verify_decay_bound",
]


# ---------------------------------------------------------------------------
# Jost solution
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JostSolution:
    """Coefficient table of the decaying solution, ``f_n = sum K(n,m) z^m``.

    Rows ``n = 0 .. support + 1`` are stored; beyond them ``f_n = z^n``
    exactly.  All coefficients are real.
    """

    K: np.ndarray            # shape (support + 2, width)
    support: int

    def coeff(self, n: int, m: int) -> float:
        rows, width = self.K.shape
        if n >= rows:
            return 1.0 if m == n else 0.0
        if m < 0 or m >= width:
            return 0.0
        return float(self.K[n, m])

    def eval(self, n: int, z: complex) -> complex:
        rows, _ = self.K.shape
        if n >= rows:
            return complex(z) ** n
        return complex(np.polyval(self.K[n, ::-1], complex(z)))

    def eval_circle(self, n: int, thetas: np.ndarray) -> np.ndarray:
        zs = np.exp(1j * np.asarray(thetas, dtype=float))
        rows, _ = self.K.shape
        if n >= rows:
            return zs ** n
        return np.polyval(self.K[n, ::-1], zs)

    def wronskian(self, n: int, theta: float, spec: RealJacobiSpec) -> complex:
        """``a(n-1) (f_n conj(f_{n+1}) - f_{n+1} conj(f_n))`` on the circle.

        Constant in ``n`` and equal to ``(zeta^{-1} - zeta)/2``.
        """
        coeff = FREE_OFFDIAG if n == 0 else spec.a_at(n - 1)
        z = complex(np.exp(1j * theta))
        fn = self.eval(n, z)
        fn1 = self.eval(n + 1, z)
        return coeff * (fn * np.conj(fn1) - fn1 * np.conj(fn))


def jost_solution(spec: RealJacobiSpec, _z: complex | None = None) -> JostSolution:
    """Downward pass for the decaying solution of a finite-support spec.

    Seeds ``f_n = z^n`` above the support and applies

        f_{n-1} = (2 lambda f_n - 2 b[n-1] f_n - 2 a[n-1] f_{n+1}) / (2 a[n-2])

    on polynomial coefficients (``2 lambda = z + 1/z``), which is exact.
    The optional ``_z`` argument is accepted for symmetry with pointwise
    engines and ignored: the table is z-independent.
    """
    n_sup = spec.support
    rows = n_sup + 2
    width = 2 * n_sup + 3
    K = np.zeros((rows, width))

    # virtual seed rows f_{n_sup+2}, f_{n_sup+1}
    upper = np.zeros(width)
    if n_sup + 2 < width:
        upper[n_sup + 2] = 1.0
    K[n_sup + 1, n_sup + 1] = 1.0

    f_np1 = upper                    # f_{n+1}
    f_n = K[n_sup + 1]               # f_n
    for n in range(n_sup + 1, 0, -1):
        bn = spec.b_at(n - 1)
        an = spec.a_at(n - 1)
        denom = 2.0 * (spec.a_at(n - 2) if n >= 2 else FREE_OFFDIAG)
        prev = np.zeros(width)
        # (z + 1/z) f_n
        prev[1:] += f_n[:-1]
        prev[:-1] += f_n[1:]
        prev -= 2.0 * bn * f_n
        prev -= 2.0 * an * f_np1
        prev /= denom
        K[n - 1] = prev
        f_np1, f_n = f_n, prev
    return JostSolution(K=K, support=n_sup)


@dataclass(frozen=True)
class JostReport:
    """Admissibility report for the inverse pipeline."""

    disk_zeros: tuple[complex, ...]
    zeros_real_simple: bool
    resonance_plus: bool          # f_0(1) = 0
    resonance_minus: bool         # f_0(-1) = 0
    f0_at_plus1: float
    f0_at_minus1: float

    @property
    def admissible(self) -> bool:
        return (not self.disk_zeros and not self.resonance_plus
                and not self.resonance_minus)


def jost_function_check(spec: RealJacobiSpec, resonance_tol: float = 1e-8) -> JostReport:
    """Locate zeros of ``f_0`` in the closed disk and flag resonances."""
    sol = jost_solution(spec)
    coeffs = sol.K[0]
    nz = np.nonzero(np.abs(coeffs) > 0)[0]
    zeros: list[complex] = []
    if len(nz) > 1:
        roots = np.roots(coeffs[: nz[-1] + 1][::-1])
        zeros = [complex(r) for r in roots if abs(r) < 1.0 - 1e-9]
    zeros.sort(key=lambda w: (w.real, w.imag))
    real_simple = True
    for i, w in enumerate(zeros):
        if abs(w.imag) > 1e-8:
            real_simple = False
        for u in zeros[:i]:
            if abs(u - w) < 1e-8:
                real_simple = False
    f0p = sol.eval(0, 1.0)
    f0m = sol.eval(0, -1.0)
    return JostReport(
        disk_zeros=tuple(zeros),
        zeros_real_simple=real_simple,
        resonance_plus=abs(f0p) < resonance_tol,
        resonance_minus=abs(f0m) < resonance_tol,
        f0_at_plus1=float(f0p.real),
        f0_at_minus1=float(f0m.real),
    )


# ---------------------------------------------------------------------------
# scattering data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScatteringData:
    """Boundary samples of ``S`` plus two-sided Fourier coefficients.

    ``F_pos[n] = F(n)`` for ``n >= 0`` (decaying side), ``F_neg[p] = F(-p)``
    for ``p >= 0`` (finitely supported side, feeds the Marchenko kernels);
    ``Fhat[n] = sum_{k>=n} |F(k) - F(k+2)|`` on the positive side.
    """

    grid_k: int
    S: np.ndarray
    thetas: np.ndarray
    F_pos: np.ndarray
    F_neg: np.ndarray
    Fhat: np.ndarray

    def F(self, n: int) -> float:
        if n >= 0:
            return float(self.F_pos[n]) if n < len(self.F_pos) else 0.0
        p = -n
        return float(self.F_neg[p]) if p < len(self.F_neg) else 0.0

    def Fhat_at(self, n: int) -> float:
        if n < 0:
            # extend by the defining tail sum: |F| at negative indices
            extra = sum(abs(self.F(k) - self.F(k + 2)) for k in range(n, 0))
            return extra + float(self.Fhat[0])
        return float(self.Fhat[n]) if n < len(self.Fhat) else 0.0


def scattering_function(spec: RealJacobiSpec, grid_k: int = 12) -> ScatteringData:
    """Boundary scattering samples and Fourier coefficients by FFT.

    Requires an admissible spec (no disk zeros of ``f_0``, no resonance);
    otherwise the inverse theory does not apply and the call refuses.
    """
    report = jost_function_check(spec)
    if not report.admissible:
        raise PreconditionError(
            "spec has discrete spectrum or a band-edge resonance; "
            f"disk zeros = {list(report.disk_zeros)}, "
            f"resonance(+1, -1) = ({report.resonance_plus}, {report.resonance_minus})"
        )
    m = 2 ** grid_k
    sol = jost_solution(spec)
    thetas = 2.0 * np.pi * np.arange(m) / m
    pad = np.zeros(m)
    row = sol.K[0]
    pad[: len(row)] = row
    f0 = np.fft.ifft(pad) * m           # f_0(e^{i theta_j})
    S = np.conj(f0) / f0
    coeffs = np.fft.fft(S) / m          # (1/m) sum S_j e^{-i n theta_j}
    F_two = -coeffs
    half = m // 2
    F_pos = np.real(F_two[:half])
    F_neg = np.real(np.concatenate([[F_two[0]], F_two[-1:half:-1]]))
    imag_max = float(np.max(np.abs(np.imag(F_two))))
    if imag_max > 1e-9:
        raise RuntimeError(f"Fourier coefficients not real: max imag {imag_max:.2e}")
    diffs = np.abs(F_pos[:-2] - F_pos[2:])
    Fhat = np.concatenate([np.cumsum(diffs[::-1])[::-1], [0.0, 0.0]])
    return ScatteringData(grid_k=grid_k, S=S, thetas=thetas,
                          F_pos=F_pos, F_neg=F_neg, Fhat=Fhat)


# ---------------------------------------------------------------------------
# Marchenko systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MarchenkoSolution:
    """Row solutions ``tau(n, .)`` and the rebuilt corner of ``K``."""

    tau: np.ndarray           # shape (n_max + 1, j_max)
    K_diag: np.ndarray        # K(n, n),   n = 0 .. n_max
    K_super: np.ndarray       # K(n, n+1), n = 0 .. n_max
    row_residuals: np.ndarray
    j_max: int

    @property
    def n_max(self) -> int:
        return len(self.K_diag) - 1


def _glm_kernel(data: ScatteringData, j_max: int) -> np.ndarray:
    """Mirror-side coefficients ``G(p) = F(-p)`` padded to the needed length."""
    g = np.zeros(2 * j_max + 2)
    for p in range(len(g)):
        g[p] = data.F(-p)
    return g


def marchenko_solve(data: ScatteringData, n_max: int,
                    j_max: int | None = None) -> MarchenkoSolution:
    """Solve the inverse-problem linear systems for rows ``0 .. n_max``.

    Rows ``n >= 1`` are the uniquely solvable systems

        tau(n, j) + sum_m G(2n + m + j) tau(n, m) = -G(2n + j)

    with ``G(p) = F(-p)``; the kernels vanish once ``2n + m + j`` exceeds
    the data's polynomial degree, so the dense solve is exact.  Row 0 is
    singular by construction with null direction ``K(0, .)``: the null
    vector is extracted and scaled by ``K(0,0) = K(1,1)``.

    Raises
    ------
    ReconstructionError
        If a row system for ``n >= 1`` is singular (inadmissible data or
        ``j_max`` too small) or if ``tau(n, 0) <= -1``.
    """
    if n_max < 1:
        raise ValueError("need n_max >= 1")
    if j_max is None:
        support_g = int(np.max(np.nonzero(np.abs(data.F_neg) > 1e-13)[0], initial=0))
        j_max = max(support_g + 2, 8)
    g = _glm_kernel(data, j_max + 2 * n_max + 2)

    tau = np.zeros((n_max + 1, j_max))
    resid = np.zeros(n_max + 1)
    idx = np.arange(j_max)
    for n in range(1, n_max + 1):
        kern = g[2 * n + idx[:, None] + idx[None, :]]
        A = np.eye(j_max) + kern
        rhs = -g[2 * n + idx]
        try:
            sol = np.linalg.solve(A, rhs)
        except np.linalg.LinAlgError as exc:
            raise ReconstructionError(
                f"Marchenko system singular at row {n}: inadmissible data "
                f"or j_max = {j_max} too small"
            ) from exc
        tau[n] = sol
        resid[n] = float(np.max(np.abs(A @ sol - rhs)))

    K_diag = np.zeros(n_max + 1)
    K_super = np.zeros(n_max + 1)
    for n in range(1, n_max + 1):
        if tau[n, 0] <= -1.0:
            raise ReconstructionError(f"tau({n},0) = {tau[n,0]} <= -1: non-physical data")
        K_diag[n] = math.sqrt(1.0 + tau[n, 0])
        K_super[n] = tau[n, 1] / K_diag[n]

    # row 0: null vector of I + G(j+m), scaled by K(0,0) = K(1,1)
    kern0 = g[idx[:, None] + idx[None, :]]
    A0 = np.eye(j_max) + kern0
    _, svals, vt = np.linalg.svd(A0)
    null = vt[-1]
    if abs(null[0]) < 1e-12:
        raise ReconstructionError("row-0 null vector has vanishing leading entry")
    null = null / null[0]
    K_diag[0] = K_diag[1]
    K_super[0] = K_diag[0] * null[1]
    k0 = K_diag[0] * null
    tau[0] = K_diag[0] * k0 - (idx == 0)
    resid[0] = float(np.max(np.abs(A0 @ null))) * K_diag[0]
    return MarchenkoSolution(tau=tau, K_diag=K_diag, K_super=K_super,
                             row_residuals=resid, j_max=j_max)


def reconstruct(sol: MarchenkoSolution) -> RealJacobiSpec:
    """Matrix entries from the rebuilt transformation-operator corner.

    ``a[k] = K(k+2,k+2) / (2 K(k+1,k+1))`` and
    ``b[k] = K(k+1,k+2)/(2 K(k+1,k+1)) - K(k,k+1)/(2 K(k,k))``.
    """
    n_max = sol.n_max
    a = [float(sol.K_diag[k + 2] / (2.0 * sol.K_diag[k + 1])) for k in range(n_max - 1)]
    b = [
        float(sol.K_super[k + 1] / (2.0 * sol.K_diag[k + 1])
              - sol.K_super[k] / (2.0 * sol.K_diag[k]))
        for k in range(n_max)
    ]
    if any(x <= 0 for x in a):
        raise ReconstructionError("reconstructed off-diagonal entries not positive")
    return RealJacobiSpec(tuple(a), tuple(b))


def scattering_roundtrip(spec: RealJacobiSpec, grid_k: int = 12,
                         n_pad: int = 6) -> tuple[RealJacobiSpec, float]:
    """Forward then inverse; returns the recovered spec and max entry error."""
    data = scattering_function(spec, grid_k)
    n_max = spec.support + n_pad
    rec = reconstruct(marchenko_solve(data, n_max))
    m = max(spec.support, rec.support) + 2
    err = 0.0
    for k in range(m):
        err = max(err, abs(spec.a_at(k) - rec.a_at(k)), abs(spec.b_at(k) - rec.b_at(k)))
    return rec, err


# ---------------------------------------------------------------------------
# decay bound report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecayBoundReport:
    """Smallest admissible constant in the entry-vs-data decay bound."""

    C: float
    lhs: np.ndarray
    rhs: np.ndarray
    passes: bool


def verify_decay_bound(data: ScatteringData, spec: RealJacobiSpec,
                       n_max: int = 40, c_cap: float = 1e6) -> DecayBoundReport:
    """Check ``|2a_k - 1| + |b_k| <= C (|dF| terms + Fhat^2)`` sitewise.

    Entry ``k`` (0-based) is compared against the data combination
    ``|F(2k+1) - F(2k+3)| + |F(2k+2) - F(2k+4)| + Fhat(2k)^2``; the report
    carries the smallest ``C`` that covers all sites up to ``n_max``.
    """
    lhs = np.zeros(n_max + 1)
    rhs = np.zeros(n_max + 1)
    c_needed = 0.0
    for k in range(n_max + 1):
        lhs[k] = abs(2.0 * spec.a_at(k) - 1.0) + abs(spec.b_at(k))
        rhs[k] = (abs(data.F(2 * k + 1) - data.F(2 * k + 3))
                  + abs(data.F(2 * k + 2) - data.F(2 * k + 4))
                  + data.Fhat_at(2 * k) ** 2)
        if lhs[k] == 0.0:
            continue
        if rhs[k] == 0.0:
            c_needed = math.inf
        else:
            c_needed = max(c_needed, lhs[k] / rhs[k])
    return DecayBoundReport(C=c_needed, lhs=lhs, rhs=rhs, passes=c_needed <= c_cap)
