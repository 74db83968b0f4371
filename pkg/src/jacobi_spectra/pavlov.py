"""Construction of a complex Jacobi matrix whose eigenvalues accumulate at a
prescribed interior point of the band.

The driver is an oscillatory integral

    V(z) = int_0^z exp(-chi) cos(gamma chi) d xi,
    chi(xi) = (1/32) (1 + xi^2)^(gamma - 1),

taken along straight segments.  ``chi`` blows up at ``xi = +-i``, making the
integrand oscillate infinitely often on the approach; the level condition
``V(i t) = V(i)`` therefore has a sequence of solutions ``t_k`` increasing
to 1.  Mapping ``i t_k`` through the spectral-parameter map produces points
``lambda_k`` on the negative imaginary axis converging to 0, and a bordered
matrix built from the Herglotz representation of ``f = -1/V(-z(lambda))``
has exactly those points in its discrete spectrum.

Numerical care
--------------
* Quadrature is composite Gauss-Legendre over dyadic panels refined toward
  the oscillatory endpoint; all evaluations are vectorized.
* Roots are tracked in the variable ``u = chi(i s)``, where consecutive
  roots are separated by roughly ``pi/gamma``, and stored both as ``t_k``
  and as the gap ``1 - t_k`` (the latter is the numerically meaningful
  quantity once ``t_k`` hugs 1).
* The border entries are ``b_0 = -beta/alpha - 1/(alpha conj(V(i)))`` and
  sub/super pair ``(a_0, c_0) = (i, -i)/sqrt(alpha A)``, so the printed
  value ``a_0^2 = -1/(alpha A)`` is kept while the spectrally relevant
  product is ``a_0 c_0 = +1/(alpha A)``; the resolvent of the bordered
  matrix has poles exactly where ``V(-z(lambda)) = conj(V(i))``, which the
  product sign makes an identity at the ``lambda_k`` (a diagonal gauge
  leaves the spectrum a function of the product only).
* For a nonzero band shift ``kappa`` the integral is composed with the
  disk automorphism ``(z - kappa)/(1 - kappa z)`` and re-anchored so the
  shifted function still vanishes at 0; this generalization is heuristic
  at desk scale and only the unshifted construction is verified tightly.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .core import (ComplexJacobiSpec, ConvergenceError, ReconstructionError,
                   inverse_joukowski, joukowski)
from . import spectra as _spectra

__all__ = [
    "AccumulationReport",
    "HerglotzConstants",
    "PavlovModel",
    "QuadSettings",
    "WeightTable",
    "accumulation_point",
    "assemble_matrix",
    "find_roots",
    "herglotz_constants",
    "pavlov_V",
    "predicted_eigenvalues",
    "recurrence_from_weight",
    "verify_accumulation",
    "weight_table",
]


@dataclass(frozen=True)
class QuadSettings:
    """Panelized Gauss-Legendre controls for the oscillatory integral."""

    tol: float = 1e-12
    depth: int = 48          # dyadic panels toward the hard endpoint
    order: int = 24          # Gauss-Legendre nodes per panel


@dataclass(frozen=True)
class HerglotzConstants:
    alpha: float
    beta: float
    A: float
    V_anchor: complex        # value of the (shifted) integral at z = i


@dataclass(frozen=True)
class PavlovModel:
    """Parameters and cached products of the accumulation construction."""

    gamma: float
    kappa: float = 0.0
    quad: QuadSettings = QuadSettings()
    roots: tuple[float, ...] | None = None        # t_k, increasing
    roots_gap: tuple[float, ...] | None = None    # 1 - t_k, same order
    herglotz: HerglotzConstants | None = None

    def __post_init__(self):
        if not 0.0 < self.gamma < 1.0:
            raise ValueError("gamma must lie in (0, 1)")
        if not -1.0 < self.kappa < 1.0:
            raise ValueError("kappa must lie in (-1, 1)")

    def with_roots(self, count: int) -> "PavlovModel":
        t, gap = _find_roots_impl(self, count)
        return replace(self, roots=tuple(t), roots_gap=tuple(gap))

    def with_herglotz(self) -> "PavlovModel":
        return replace(self, herglotz=_herglotz_impl(self))


# ---------------------------------------------------------------------------
# quadrature backbone
# ---------------------------------------------------------------------------


def _panel_rule(depth: int, order: int, toward_one: bool) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights on [0, 1], dyadic panels refined toward one endpoint."""
    gl_x, gl_w = np.polynomial.legendre.leggauss(order)
    edges = [0.0] + [1.0 - 2.0 ** (-k) for k in range(1, depth)] + [1.0]
    ts, ws = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        half = 0.5 * (b - a)
        mid = 0.5 * (a + b)
        ts.append(mid + half * gl_x)
        ws.append(half * gl_w)
    t = np.concatenate(ts)
    w = np.concatenate(ws)
    if not toward_one:
        t = 1.0 - t
    return t, w


def _chi_from_w2(w2: np.ndarray, gamma: float) -> np.ndarray:
    """``chi = (1/32) w2^(gamma-1)`` with ``w2 = 1 + xi^2``, principal branch."""
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        return (1.0 / 32.0) * np.power(w2 + 0j, gamma - 1.0)


def _integrand_w2(w2: np.ndarray, gamma: float) -> np.ndarray:
    ch = _chi_from_w2(w2, gamma)
    # exp(-chi) cos(gamma chi) = (exp(-(1-i gamma) chi) + exp(-(1+i gamma) chi))/2
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        out = 0.5 * (np.exp(-(1.0 - 1j * gamma) * ch) + np.exp(-(1.0 + 1j * gamma) * ch))
    return np.where(np.isfinite(out), out, 0.0)


def _v_raw_many(zs: np.ndarray, gamma: float, quad: QuadSettings,
                one_plus_z2: np.ndarray | None = None) -> np.ndarray:
    """Integral along straight segments 0 -> z, vectorized over points.

    The segment is parametrized by the gap ``d = 1 - t`` and the argument
    ``1 + (t z)^2`` is formed through the exact split

        1 + (1-d)^2 z^2 = d (2-d) + (1-d)^2 (1 + z^2),

    which avoids the catastrophic cancellation near ``z = +-i``; callers
    that know ``1 + z^2`` to better than the naive rounding (boundary
    points) pass it in.
    """
    zs = np.asarray(zs, dtype=complex)
    d, w = _panel_rule(quad.depth, quad.order, toward_one=False)
    t = 1.0 - d
    opz2 = 1.0 + zs * zs if one_plus_z2 is None else np.asarray(one_plus_z2, dtype=complex)
    out = np.empty(zs.shape, dtype=complex)
    flat = zs.ravel()
    flat_opz2 = opz2.ravel()
    block = max(1, 2_000_000 // len(t))
    dd = (d * (2.0 - d))[None, :]
    tt2 = (t * t)[None, :]
    for i in range(0, len(flat), block):
        chunk = flat[i: i + block]
        w2 = dd + tt2 * flat_opz2[i: i + block, None]
        vals = _integrand_w2(w2, gamma)
        out.ravel()[i: i + block] = chunk * (vals @ w)
    return out


def _mobius(z: complex | np.ndarray, kappa: float):
    return (z - kappa) / (1.0 - kappa * z)


def pavlov_V(model: PavlovModel, z: complex) -> complex:
    """Oscillatory integral at ``z`` (anchored so the value at 0 is 0).

    For ``kappa = 0`` this is ``V(z)`` itself; for a shifted model it is
    ``V(mobius(z)) - V(mobius(0))``.  Convergence is checked by comparing
    two refinement levels; disagreement beyond ``quad.tol`` raises
    :class:`ConvergenceError` carrying the achieved estimate.
    """
    z = complex(z)
    if abs(z) > 1.0 + 1e-12:
        raise ValueError("the integral is taken over the closed unit disk")
    pts = np.array([_mobius(z, model.kappa), _mobius(0.0, model.kappa)])
    coarse = _v_raw_many(pts, model.gamma, replace(model.quad,
                                                   depth=model.quad.depth - 6,
                                                   order=max(8, model.quad.order - 8)))
    fine = _v_raw_many(pts, model.gamma, model.quad)
    err = float(np.max(np.abs(fine - coarse)))
    if err > max(model.quad.tol, 1e-11) * 100.0:
        raise ConvergenceError(
            f"segment quadrature for V({z}) achieved only {err:.2e}"
        )
    return complex(fine[0] - fine[1])


def _v_circle_many(phis: np.ndarray, model: PavlovModel) -> np.ndarray:
    """Anchored integral at boundary points ``exp(i phi)``, vectorized.

    On the unit circle ``1 + z^2 = 2 cos(phi) e^{i phi}`` is formed from the
    angle, keeping full relative accuracy near the singular directions.
    """
    phis = np.asarray(phis, dtype=float)
    zs = np.exp(1j * phis)
    if model.kappa == 0.0:
        opz2 = 2.0 * np.cos(phis) * zs
        vals = _v_raw_many(zs, model.gamma, model.quad, one_plus_z2=opz2)
        anchor = 0.0
    else:
        pts = np.concatenate([_mobius(zs, model.kappa), [_mobius(0.0, model.kappa)]])
        raw = _v_raw_many(pts, model.gamma, model.quad)
        vals, anchor = raw[:-1], raw[-1]
    return vals - anchor


# ---------------------------------------------------------------------------
# root sequence on the imaginary axis
# ---------------------------------------------------------------------------


def _u_of_gap(d: np.ndarray | float, gamma: float):
    """Phase variable ``u = (1/32) (1 - s^2)^(gamma-1)`` at ``s = 1 - d``."""
    with np.errstate(divide="ignore", over="ignore"):
        return (1.0 / 32.0) * (d * (2.0 - d)) ** (gamma - 1.0)


def _gap_of_u(u: float, gamma: float) -> float:
    w = (32.0 * u) ** (1.0 / (gamma - 1.0))   # = d (2 - d)
    return w / (1.0 + math.sqrt(max(0.0, 1.0 - w)))


def _tail_integral(d: float, gamma: float, quad: QuadSettings) -> float:
    """``int_{1-d}^{1} exp(-u(s)) cos(gamma u(s)) ds`` via ``s = 1 - d sigma``.

    The substitution keeps ``1 - s^2 = d sigma (2 - d sigma)`` exact for
    tiny gaps; panels refine toward ``sigma = 0`` where the phase piles up
    (and the envelope underflows harmlessly to 0).
    """
    if d <= 0.0:
        return 0.0
    sig, w = _panel_rule(quad.depth, quad.order, toward_one=False)
    ds = d * sig
    u = _u_of_gap(ds, gamma)
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        vals = np.exp(-u) * np.cos(gamma * u)
    vals = np.where(np.isfinite(vals), vals, 0.0)
    return float(d * (vals @ w))


def _find_roots_impl(model: PavlovModel, count: int) -> tuple[list[float], list[float]]:
    if count < 1:
        raise ValueError("count must be >= 1")
    gamma = model.gamma
    quad = model.quad

    def tail_u(u: float) -> float:
        return _tail_integral(_gap_of_u(u, gamma), gamma, quad)

    roots_t: list[float] = []
    roots_d: list[float] = []
    u = 1.0 / 32.0 + 1e-9
    step = math.pi / (4.0 * gamma)
    val = tail_u(u)
    u_cap = 690.0            # exp(-u) underflows past here; nothing to resolve
    while len(roots_t) < count and u < u_cap:
        u_next = u + step
        val_next = tail_u(u_next)
        if val == 0.0 and val_next == 0.0:
            u, val = u_next, val_next
            continue
        if val * val_next < 0.0:
            u_star = brentq(tail_u, u, u_next, xtol=1e-13, rtol=4.0 * np.finfo(float).eps)
            d = _gap_of_u(u_star, gamma)
            roots_d.append(d)
            roots_t.append(1.0 - d)
        u, val = u_next, val_next
    if len(roots_t) < count:
        warnings.warn(
            f"only {len(roots_t)} of {count} level-crossings resolvable above "
            "the floating-point floor", RuntimeWarning)
    return roots_t, roots_d


def find_roots(model: PavlovModel, count: int) -> list[float]:
    """The ``count`` smallest solutions ``t`` of ``V(i t) = V(i)`` in (0, 1)."""
    t, _ = _find_roots_impl(model, count)
    return t


def predicted_eigenvalues(model: PavlovModel) -> list[complex]:
    """Spectral-plane images of the cached root sequence.

    For ``kappa = 0`` these are ``i (t_k - 1/t_k)/2`` on the negative
    imaginary axis, computed from the gaps ``1 - t_k`` to keep full
    relative precision; for a shifted model the roots are pulled back
    through the disk automorphism first.
    """
    if model.roots is None or model.roots_gap is None:
        raise ValueError("roots not computed; use model.with_roots(count)")
    out: list[complex] = []
    for t, d in zip(model.roots, model.roots_gap):
        if model.kappa == 0.0:
            lam = -1j * d * (2.0 - d) / (2.0 * (1.0 - d))
        else:
            zk = (1j * t + model.kappa) / (1.0 + 1j * model.kappa * t)
            lam = joukowski(zk)
        out.append(complex(lam))
    return out


def accumulation_point(model: PavlovModel) -> float:
    """Predicted accumulation point ``2 kappa / (1 + kappa^2)`` of the family."""
    return 2.0 * model.kappa / (1.0 + model.kappa ** 2)


# ---------------------------------------------------------------------------
# Herglotz data
# ---------------------------------------------------------------------------


def _f_of_lambda(model: PavlovModel, lams: np.ndarray) -> np.ndarray:
    """``f(lambda) = -1 / V(-z(lambda))`` on arbitrary off-band points."""
    lams = np.asarray(lams, dtype=complex)
    zs = np.array([-inverse_joukowski(l) for l in lams.ravel()])
    pts = np.concatenate([_mobius(zs, model.kappa), [_mobius(0.0, model.kappa)]])
    vals = _v_raw_many(pts, model.gamma, model.quad)
    v = (vals[:-1] - vals[-1]).reshape(lams.shape)
    return -1.0 / v


def _herglotz_impl(model: PavlovModel) -> HerglotzConstants:
    quad = model.quad
    ys = np.array([10.0, 20.0, 40.0, 80.0])
    fy = _f_of_lambda(model, 1j * ys)
    seq = fy / (1j * ys)

    def richardson(vals: np.ndarray, hs: np.ndarray) -> complex:
        # both limits have full power series in h = 1/y; fit and evaluate at 0
        coef = np.polynomial.polynomial.polyfit(hs, vals, len(hs) - 1)
        return complex(coef[0])

    hs = 1.0 / ys
    alpha_c = richardson(seq, hs)
    alpha = float(alpha_c.real)
    if not (alpha > 0.0) or abs(alpha_c.imag) > 1e-6 * alpha:
        raise ConvergenceError(f"linear-growth extrapolation failed: {alpha_c}")

    # The y-ladder is fixed, so the constant term converges like the first
    # neglected power of 1/y; gate on a realistic cross-degree estimate.
    beta_seq = fy - alpha * 1j * ys
    beta_c = richardson(beta_seq, hs)
    beta_lo = complex(np.polynomial.polynomial.polyfit(hs[1:], beta_seq[1:], 2)[0])
    beta = float(beta_c.real)
    if abs(beta_c - beta_lo) > 1e-3 * (1.0 + abs(beta)):
        raise ConvergenceError(
            f"constant-term extrapolation unstable: {beta_c} vs {beta_lo}")

    # A^{-1} = int_{-1}^{1} Im f(x) dx, taken as x = cos(theta) on (0, pi)
    # with dyadic refinement toward the singular direction theta = pi/2.
    sig, w = _panel_rule(quad.depth, quad.order, toward_one=True)
    theta = np.concatenate([0.5 * np.pi * sig, np.pi - 0.5 * np.pi * sig[::-1]])
    wts = np.concatenate([0.5 * np.pi * w, 0.5 * np.pi * w[::-1]])
    # boundary value from the upper half-plane: z(x + i0) = e^{-i theta}
    vb = _v_circle_many(np.pi - theta, model)
    im_f = np.imag(-1.0 / vb)
    if np.min(im_f) < -1e-9:
        raise ConvergenceError("boundary branch produced a negative density")
    total = float(np.sum(im_f * np.sin(theta) * wts))
    if total <= 0:
        raise ConvergenceError("density integrated to a non-positive mass")
    A = 1.0 / total

    v_anchor = pavlov_V(model, 1j)
    return HerglotzConstants(alpha=alpha, beta=beta, A=A, V_anchor=complex(v_anchor))


def herglotz_constants(model: PavlovModel) -> tuple[float, float, float]:
    """Linear coefficient, constant term, and mass normalizer of ``f``."""
    h = model.herglotz if model.herglotz is not None else _herglotz_impl(model)
    return h.alpha, h.beta, h.A


# ---------------------------------------------------------------------------
# weight table and recurrence coefficients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightTable:
    """Discrete probability measure sampling ``w(x) = A Im f(x)`` on (-1, 1)."""

    nodes: np.ndarray
    values: np.ndarray       # w(x_i) >= 0
    weights: np.ndarray      # quadrature weights, sum(values * weights) ~ 1

    @property
    def masses(self) -> np.ndarray:
        return self.values * self.weights


def weight_table(model: PavlovModel, node_count: int) -> WeightTable:
    """Sample the spectral density at Chebyshev points (x = 0 excluded).

    An even ``node_count`` keeps the nodes clear of the singular direction
    x = 0; the branch is validated by the positivity of the samples.
    """
    if model.herglotz is None:
        raise ValueError("herglotz constants not computed; use model.with_herglotz()")
    m = node_count + (node_count % 2)
    theta = (2.0 * np.arange(m) + 1.0) * np.pi / (2.0 * m)
    vb = _v_circle_many(np.pi - theta, model)
    im_f = np.imag(-1.0 / vb)
    if np.min(im_f) < -1e-9:
        raise ConvergenceError("boundary branch produced a negative density")
    values = model.herglotz.A * np.clip(im_f, 0.0, None)
    nodes = np.cos(theta)
    weights = (np.pi / m) * np.sin(theta)
    return WeightTable(nodes=nodes, values=values, weights=weights)


def recurrence_from_weight(table: WeightTable, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal-polynomial recurrence coefficients of a discrete measure.

    Lanczos iteration with full reorthogonalization on the node-diagonal
    operator, started from the constant function:

        x p_{n-1}(x) = a_n p_n(x) + b_n p_{n-1}(x) + a_{n-1} p_{n-2}(x).

    Returns 1-based arrays ``(a[1..n_max], b[1..n_max])`` stored 0-based.
    """
    mass = table.masses
    if 8 * n_max > len(table.nodes):
        raise ValueError("node_count should be at least 8 * n_max")
    x = table.nodes
    sq = np.sqrt(mass)
    q = sq / np.linalg.norm(sq)
    Q = np.zeros((len(x), n_max + 1))
    Q[:, 0] = q
    a = np.zeros(n_max)
    b = np.zeros(n_max)
    q_prev = np.zeros_like(q)
    beta_prev = 0.0
    for n in range(n_max):
        r = x * q - beta_prev * q_prev
        b[n] = float(r @ q)
        r = r - b[n] * q
        # full reorthogonalization, twice
        r -= Q[:, : n + 1] @ (Q[:, : n + 1].T @ r)
        r -= Q[:, : n + 1] @ (Q[:, : n + 1].T @ r)
        beta = float(np.linalg.norm(r))
        if not beta > 0.0 or not np.isfinite(beta):
            raise ConvergenceError(
                f"orthogonality lost at step {n + 1}; increase node_count "
                "or reduce n_max")
        a[n] = beta
        q_prev, q = q, r / beta
        Q[:, n + 1] = q
    return a, b


# ---------------------------------------------------------------------------
# matrix assembly and verification
# ---------------------------------------------------------------------------


def assemble_matrix(model: PavlovModel, a_tail: Sequence[float],
                    b_tail: Sequence[float],
                    floor: float = 1e-13) -> ComplexJacobiSpec:
    """Bordered matrix: complex corner entries plus the measure recurrence.

    The corner is ``b_0 = -beta/alpha - 1/(alpha conj(V(i)))`` and
    ``(a_0, c_0) = (+i, -i)/sqrt(alpha A)`` (printed square ``a_0^2 =
    -1/(alpha A)``, spectrally relevant product ``+1/(alpha A)``); rows
    ``n >= 1`` carry the recurrence coefficients, truncated at the
    floating-point floor.
    """
    if model.herglotz is None:
        raise ValueError("herglotz constants not computed; use model.with_herglotz()")
    h = model.herglotz
    if h.alpha * h.A <= 0.0:
        raise ReconstructionError(f"alpha * A = {h.alpha * h.A} must be positive")
    # The resolvent of the probability measure A Im f dx is pi A (f - alpha
    # lambda - beta) (Stieltjes inversion carries a 1/pi the bare Herglotz
    # formula hides), so the corner product that cancels it at the level
    # roots is 1/(alpha pi A).  The printed square -1/(alpha A) keeps the
    # normalization used by the pole-identity report.
    corner = 1.0 / math.sqrt(h.alpha * math.pi * h.A)
    a0 = 1j * corner
    c0 = -1j * corner
    b0 = -h.beta / h.alpha - 1.0 / (h.alpha * np.conj(h.V_anchor))

    a_tail = np.asarray(a_tail, dtype=float)
    b_tail = np.asarray(b_tail, dtype=float)
    keep = len(a_tail)
    sizes = np.abs(a_tail - 0.5) + np.abs(b_tail[: len(a_tail)])
    while keep > 0 and sizes[keep - 1] < floor:
        keep -= 1
    devs = [(0, a0 - 0.5, complex(b0), c0 - 0.5)]
    for k in range(keep):
        da = a_tail[k] - 0.5
        db = b_tail[k] if k < len(b_tail) else 0.0
        if abs(da) + abs(db) < floor:
            continue
        devs.append((k + 1, complex(da), complex(db), complex(da)))
    return ComplexJacobiSpec(tuple(devs))


@dataclass(frozen=True)
class AccumulationReport:
    predicted: tuple[complex, ...]
    computed: tuple[complex, ...]
    matches: tuple[tuple[complex, complex, float], ...]  # (predicted, found, dist)
    matched_count: int
    max_real_part: float
    pole_residuals: tuple[float, ...]


def weyl_pole_residuals(model: PavlovModel, first: int = 3) -> list[float]:
    """``|lambda_k - b0 - a0^2 mtilde(lambda_k)|`` for the leading roots.

    ``mtilde = A (f - alpha lambda - beta)`` and ``a0^2 = -1/(alpha A)``;
    the combination collapses algebraically to
    ``(1/alpha) |f(lambda_k) + 1/conj(V(i))|``, so the residual measures
    quadrature and root-solving error only.
    """
    if model.herglotz is None or model.roots is None:
        raise ValueError("model needs roots and herglotz constants")
    h = model.herglotz
    lams = predicted_eigenvalues(model)[:first]
    if model.kappa == 0.0 and model.roots_gap is not None:
        # on the imaginary axis V(i t) = i (v - tail(1 - t)) exactly
        v_total = _tail_integral(1.0, model.gamma, model.quad)
        f_vals = np.array([
            -1j / (v_total - _tail_integral(d, model.gamma, model.quad))
            for d in model.roots_gap[:first]
        ])
    else:
        f_vals = _f_of_lambda(model, np.array(lams))
    out = []
    for f in f_vals:
        out.append(float(abs((f + 1.0 / np.conj(h.V_anchor)) / h.alpha)))
    return out


def verify_accumulation(spec: ComplexJacobiSpec, predicted: Sequence[complex],
                        m: int = 600, radius: float = 0.9995,
                        match_tol: float = 0.05,
                        seed: int = 0) -> AccumulationReport:
    """Match predicted eigenvalues against the assembled matrix's spectrum.

    The computed spectrum is the union of the disk zero-finder (radius
    chosen to cover the predicted points) and the stabilized dense oracle
    with a band margin loose enough for near-band points.
    """
    if m < 200:
        raise ValueError("oracle size must be >= 200")
    computed: list[complex] = []
    disk = _spectra.discrete_spectrum(spec, radius=radius, seed=seed)
    computed.extend(lam for lam, _ in disk)
    oracle = _spectra.dense_truncation_oracle(spec, m, band_margin=1e-4)
    for lam in oracle:
        if not computed or np.min(np.abs(np.array(computed) - lam)) > 1e-6:
            computed.append(lam)

    matches = []
    for lam_p in predicted:
        if not computed:
            break
        dists = np.abs(np.array(computed) - lam_p)
        j = int(np.argmin(dists))
        if dists[j] <= match_tol:
            matches.append((complex(lam_p), complex(computed[j]), float(dists[j])))
    max_re = max((abs(found.real) for _, found, _ in matches), default=0.0)
    return AccumulationReport(
        predicted=tuple(predicted),
        computed=tuple(computed),
        matches=tuple(matches),
        matched_count=len(matches),
        max_real_part=max_re,
        pole_residuals=(),
    )
