"""Discrete-spectrum extraction and limit-set diagnostics.

Zeros of the determinant inside the unit disk are located by the argument
principle: a winding-number count on the outer circle, quadtree subdivision
of boxes until each isolated box carries one zero (counted with
multiplicity), then Newton polishing.  An independent dense eigensolver on
truncated sections cross-checks the result.  The module also estimates the
convergence exponent of a point set from its adjacent-interval lengths and
builds factorial-weighted derivative envelopes from a determinant series.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import ComplexJacobiSpec, dist_to_band, joukowski
from .detkit import DeterminantSeries, det_volterra, series_from_kappa, taylor_recursion

__all__ = [
    "DiskZero",
    "GevreyEnvelope",
    "PointSetMetrics",
    "dense_truncation_oracle",
    "discrete_spectrum",
    "find_zeros_disk",
    "gevrey_envelope",
    "integer_envelope_min",
    "limit_set_metrics",
    "spectral_singularities",
]


DEFAULT_RADIUS = 0.995


class BoundaryClusterWarning(UserWarning):
    """Zeros too close to a contour for a stable winding count."""


@dataclass(frozen=True)
class DiskZero:
    """An isolated determinant zero inside the disk."""

    z: complex
    multiplicity: int
    eigenvalue: complex
    residual: float


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get("JACOBI_SPECTRA_THREADS", "1")))
    except ValueError:
        return 1


class _ContourOnZero(RuntimeError):
    pass


def _winding_closed(engine_vec, pts: np.ndarray, floor: float,
                    max_pts: int = 200_000) -> int:
    """Winding number of ``engine`` along the closed polyline ``pts``.

    Segments are bisected until every phase step is below pi/2.  A sample
    with ``|f| < floor`` means a zero sits (numerically) on the contour.
    """
    vals = engine_vec(pts)
    while True:
        if np.any(np.abs(vals) < floor):
            raise _ContourOnZero
        ph = np.angle(vals)
        d = np.diff(np.concatenate([ph, ph[:1]]))
        d = (d + np.pi) % (2.0 * np.pi) - np.pi
        bad = np.abs(d) > 0.5 * np.pi
        if not bad.any():
            total = float(d.sum()) / (2.0 * np.pi)
            w = int(round(total))
            if abs(total - w) > 0.25:
                raise _ContourOnZero
            return w
        if len(pts) > max_pts:
            raise _ContourOnZero
        nxt = np.roll(pts, -1)
        mids = 0.5 * (pts[bad] + nxt[bad])
        mid_vals = engine_vec(mids)
        out_p = np.empty(len(pts) + bad.sum(), dtype=complex)
        out_v = np.empty_like(out_p)
        j = 0
        for i in range(len(pts)):
            out_p[j] = pts[i]
            out_v[j] = vals[i]
            j += 1
            if bad[i]:
                k = int(bad[:i].sum())
                out_p[j] = mids[k]
                out_v[j] = mid_vals[k]
                j += 1
        pts, vals = out_p, out_v


def _circle_pts(center: complex, radius: float, n: int = 64) -> np.ndarray:
    t = np.arange(n) / n
    return center + radius * np.exp(2j * np.pi * t)


def _rect_pts(x0: float, x1: float, y0: float, y1: float, n_edge: int = 16) -> np.ndarray:
    t = np.arange(n_edge) / n_edge
    bottom = x0 + (x1 - x0) * t + 1j * y0
    right = x1 + 1j * (y0 + (y1 - y0) * t)
    top = x1 + (x0 - x1) * t + 1j * y1
    left = x0 + 1j * (y1 + (y0 - y1) * t)
    return np.concatenate([bottom, right, top, left])


def _vectorize_engine(engine: Callable) -> Callable[[np.ndarray], np.ndarray]:
    """Adapt scalar or array-aware evaluators to a uniform array interface."""
    probe = np.array([0.11 + 0.05j, -0.07 + 0.21j])
    try:
        out = np.asarray(engine(probe), dtype=complex)
        array_aware = out.shape == probe.shape
    except Exception:
        array_aware = False

    if array_aware:
        def run(zs: np.ndarray) -> np.ndarray:
            zs = np.asarray(zs, dtype=complex)
            return np.asarray(engine(zs), dtype=complex)
    else:
        def run(zs: np.ndarray) -> np.ndarray:
            zs = np.asarray(zs, dtype=complex)
            return np.array([engine(complex(z)) for z in zs.ravel()],
                            dtype=complex).reshape(zs.shape)
    return run


def find_zeros_disk(engine: Callable[[complex], complex], radius: float,
                    tol: float = 1e-11, seed: int = 0,
                    min_box: float = 1e-5) -> list[DiskZero]:
    """All zeros of ``engine`` with ``|z| <= radius``, with multiplicities.

    Winding count on the outer circle fixes the total; quadtree subdivision
    isolates the zeros; each isolated box is polished by Newton iteration
    with a finite-difference derivative (a winding count above 1 becomes
    the multiplicity, with the step scaled accordingly).  Boxes whose count
    exceeds 1 stop subdividing at ``min_box``: a genuine multiple zero
    never separates, and distinct zeros closer than that are reported as
    one cluster with the summed count.  Contours that land on a zero are
    retried with a jittered split point, and after five failures the
    offending box is polished whole under a :class:`BoundaryClusterWarning`.
    """
    if not 0.0 < radius < 1.0:
        raise ValueError("radius must lie in (0, 1)")
    fvec = _vectorize_engine(engine)
    rng = np.random.default_rng(seed)
    floor = max(tol * 1e-3, 1e-300)

    try:
        total = _winding_closed(fvec, _circle_pts(0.0, radius, 256), floor)
    except _ContourOnZero:
        warnings.warn("zero on or near the search circle; shrinking radius by 1e-6",
                      BoundaryClusterWarning)
        radius *= 1.0 - 1e-6
        total = _winding_closed(fvec, _circle_pts(0.0, radius, 256), floor)
    if total == 0:
        return []

    def newton(z0: complex, mult: int) -> complex:
        z = z0
        for _ in range(80):
            h = 1e-7 * max(1.0, abs(z))
            f0 = complex(fvec(np.array([z]))[0])
            fp = (complex(fvec(np.array([z + h]))[0])
                  - complex(fvec(np.array([z - h]))[0])) / (2.0 * h)
            if fp == 0:
                break
            step = mult * f0 / fp
            z = z - step
            if abs(step) < 1e-15:
                break
        return z

    def polish(x0, x1, y0, y1, hint):
        z0 = newton(complex(0.5 * (x0 + x1), 0.5 * (y0 + y1)), max(hint, 1))
        res = abs(complex(fvec(np.array([z0]))[0]))
        if res > max(1e-8, tol):
            warnings.warn(f"Newton polish stalled near {z0} (|f| = {res:.2e})",
                          BoundaryClusterWarning)
        zeros.append(DiskZero(z=z0, multiplicity=max(hint, 1),
                              eigenvalue=joukowski(z0), residual=res))

    def split(box):
        """Partition into four quads; on an unstable count, jitter the
        interior split point (children always tile the parent exactly)."""
        x0, x1, y0, y1, hint = box
        for attempt in range(6):
            fx = 0.5 if attempt == 0 else 0.35 + 0.3 * rng.random()
            fy = 0.5 if attempt == 0 else 0.35 + 0.3 * rng.random()
            xm = x0 + fx * (x1 - x0)
            ym = y0 + fy * (y1 - y0)
            quads = [(x0, xm, y0, ym), (xm, x1, y0, ym),
                     (x0, xm, ym, y1), (xm, x1, ym, y1)]
            try:
                ws = [_winding_closed(fvec, _rect_pts(*q), floor) for q in quads]
            except _ContourOnZero:
                continue
            return [(*q, w) for q, w in zip(quads, ws) if w]
        return None

    zeros: list[DiskZero] = []
    stack = [(-radius, radius, -radius, radius, total)]
    workers = _worker_count()
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while stack:
            batch, stack = stack, []
            to_split = []
            for box in batch:
                x0, x1, y0, y1, hint = box
                diam = math.hypot(x1 - x0, y1 - y0)
                if (hint == 1 and diam < 1e-3) or diam < min_box:
                    polish(x0, x1, y0, y1, hint)
                else:
                    to_split.append(box)
            if pool is not None:
                results = list(pool.map(split, to_split))
            else:
                results = [split(box) for box in to_split]
            for box, children in zip(to_split, results):
                if children is None:
                    warnings.warn("unstable winding count after retries; "
                                  "polishing the whole box", BoundaryClusterWarning)
                    polish(*box)
                else:
                    stack.extend(children)
    finally:
        if pool is not None:
            pool.shutdown()

    # Deterministic merge.  Multiplicities of coincident polished points
    # add up: a zero sitting on a shared box edge splits its winding count
    # between the neighbors, and the partition keeps the total exact.
    zeros.sort(key=lambda s: (round(s.z.real, 9), round(s.z.imag, 9)))
    merged: list[DiskZero] = []
    for s in zeros:
        if abs(s.z) > radius + 1e-9:
            continue
        if merged and abs(merged[-1].z - s.z) < 1e-6:
            prev = merged[-1]
            merged[-1] = DiskZero(
                z=prev.z if prev.residual <= s.residual else s.z,
                multiplicity=prev.multiplicity + s.multiplicity,
                eigenvalue=prev.eigenvalue if prev.residual <= s.residual else s.eigenvalue,
                residual=min(prev.residual, s.residual))
            continue
        merged.append(s)
    return merged


# ---------------------------------------------------------------------------
# spectrum front ends
# ---------------------------------------------------------------------------


def _series_engine(spec: ComplexJacobiSpec,
                   order: int | None = None) -> Callable[[np.ndarray], np.ndarray]:
    if order is None:
        order = 2 * spec.support + 2
    series = series_from_kappa(taylor_recursion(spec, max(order, 2)), spec)
    coeffs = series.coeffs[::-1].copy()

    def run(zs):
        return np.polyval(coeffs, np.asarray(zs, dtype=complex))

    return run


def discrete_spectrum(spec: ComplexJacobiSpec, radius: float = DEFAULT_RADIUS,
                      seed: int = 0) -> list[tuple[complex, int]]:
    """Eigenvalues off the band with multiplicities, via disk zeros.

    Sorted by ``|Im lambda|`` then ``Re lambda``.  The free matrix
    short-circuits to an empty spectrum.
    """
    if spec.is_free():
        return []
    zeros = find_zeros_disk(_series_engine(spec), radius, seed=seed)
    out = [(joukowski(s.z), s.multiplicity) for s in zeros]
    out.sort(key=lambda t: (abs(t[0].imag), t[0].real))
    return out


def dense_truncation_oracle(spec: ComplexJacobiSpec, m: int,
                            stab_tol: float = 1e-6,
                            band_margin: float = 1e-3) -> list[complex]:
    """Off-band eigenvalues of the truncated section, stabilized in size.

    Runs a dense nonsymmetric eigensolver on the ``(m+1)`` and ``(2m+1)``
    sections and keeps eigenvalues that match across the two sizes within
    ``stab_tol`` and sit farther than ``band_margin`` from [-1, 1].
    """
    if m < spec.support + 10:
        raise ValueError("oracle size must exceed the support by 10")
    try:
        ev1 = np.linalg.eigvals(spec.truncated_matrix(m))
        ev2 = np.linalg.eigvals(spec.truncated_matrix(2 * m))
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"dense eigensolver did not converge: {exc}") from exc
    out = []
    for lam in ev1:
        if dist_to_band(lam) <= band_margin:
            continue
        if np.min(np.abs(ev2 - lam)) < stab_tol:
            out.append(complex(lam))
    out.sort(key=lambda t: (abs(t.imag), t.real))
    return out


def spectral_singularities(spec: ComplexJacobiSpec, grid_size: int = 512,
                           threshold: float = 1e-6) -> list[tuple[complex, float]]:
    """Boundary zeros of the determinant (unit-circle minima of ``|Delta|``).

    Evaluates on a uniform boundary grid, then refines every local minimum
    below ``threshold`` by golden-section search on the circle parameter.
    """
    if grid_size < 256:
        raise ValueError("grid_size must be >= 256")
    if spec.is_free():
        return []
    thetas = 2.0 * np.pi * np.arange(grid_size) / grid_size
    mags = np.array([abs(det_volterra(spec, complex(np.exp(1j * t)))) for t in thetas])

    def f(t: float) -> float:
        return abs(det_volterra(spec, complex(np.exp(1j * t))))

    found = []
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    for i in range(grid_size):
        prev_m = mags[(i - 1) % grid_size]
        next_m = mags[(i + 1) % grid_size]
        if not (mags[i] <= prev_m and mags[i] <= next_m):
            continue
        lo = thetas[(i - 1) % grid_size] if i > 0 else thetas[0] - 2 * np.pi / grid_size
        hi = lo + 4.0 * np.pi / grid_size
        x1 = hi - phi * (hi - lo)
        x2 = lo + phi * (hi - lo)
        f1, f2 = f(x1), f(x2)
        for _ in range(80):
            if f1 <= f2:
                hi, x2, f2 = x2, x1, f1
                x1 = hi - phi * (hi - lo)
                f1 = f(x1)
            else:
                lo, x1, f1 = x1, x2, f2
                x2 = lo + phi * (hi - lo)
                f2 = f(x2)
        t_star = 0.5 * (lo + hi)
        v = f(t_star)
        if v < threshold:
            found.append((complex(np.exp(1j * t_star)), float(v)))
    # dedupe near-duplicates from adjacent grid minima
    found.sort(key=lambda s: np.angle(s[0]))
    out: list[tuple[complex, float]] = []
    for zeta, v in found:
        if out and abs(out[-1][0] - zeta) < 1e-6:
            if v < out[-1][1]:
                out[-1] = (zeta, v)
            continue
        out.append((zeta, v))
    return out


# ---------------------------------------------------------------------------
# limit-set metrics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PointSetMetrics:
    """Adjacent-interval data of a closed point set in [-1, 1]."""

    points: np.ndarray
    gaps: np.ndarray          # sorted descending, zero-length gaps dropped
    tau_estimate: float


def adjacent_gaps(points: Sequence[float]) -> np.ndarray:
    """Lengths of the complement intervals of ``{points}`` inside [-1, 1]."""
    pts = np.unique(np.clip(np.asarray(points, dtype=float), -1.0, 1.0))
    if len(pts) == 0:
        return np.array([2.0])
    gaps = np.concatenate([[pts[0] + 1.0], np.diff(pts), [1.0 - pts[-1]]])
    gaps = gaps[gaps > 0]
    return np.sort(gaps)[::-1]


def limit_set_metrics(points: Sequence[float],
                      eps_grid: Sequence[float] | None = None) -> PointSetMetrics:
    """Estimate the convergence exponent of a point set from its gaps.

    The raw estimate is the least-squares slope of ``log j`` against
    ``log(1/l_j)`` over the tail of the descending gap sequence — the
    exponent at which ``sum l_j^eps`` transitions between convergence and
    divergence if the observed pattern continues.  The returned value is
    the smallest grid exponent at or above the raw estimate.  Desk-scale
    estimator only: no convergence guarantee.
    """
    pts = np.asarray(sorted(points), dtype=float)
    if len(pts) < 2:
        return PointSetMetrics(points=pts, gaps=adjacent_gaps(pts), tau_estimate=0.0)
    if np.any(pts < -1.0 - 1e-12) or np.any(pts > 1.0 + 1e-12):
        raise ValueError("points must lie in [-1, 1]")
    gaps = adjacent_gaps(pts)
    if len(gaps) < 8:
        return PointSetMetrics(points=pts, gaps=gaps, tau_estimate=0.0)

    # Group equal lengths (self-similar sets repeat each scale many times),
    # pair each scale with its cumulative gap count, and drop the smallest
    # scale: in a truncated construction it is contaminated by the pieces
    # not yet subdivided.
    lengths, counts = [], []
    for g in gaps:
        if lengths and abs(g - lengths[-1]) <= 1e-9 * lengths[-1]:
            counts[-1] += 1
        else:
            lengths.append(float(g))
            counts.append(1)
    cum = np.cumsum(counts)
    x = np.log(1.0 / np.asarray(lengths))
    y = np.log(cum.astype(float))
    if len(x) > 2:
        x, y = x[:-1], y[:-1]
    lo = max(1, len(x) // 2)
    x, y = x[lo - 1:], y[lo - 1:]
    xm, ym = x.mean(), y.mean()
    denom = float(np.sum((x - xm) ** 2))
    raw = float(np.sum((x - xm) * (y - ym)) / denom) if denom > 0 else 0.0
    raw = min(max(raw, 0.0), 1.0)

    if eps_grid is None:
        return PointSetMetrics(points=pts, gaps=gaps, tau_estimate=raw)
    grid = np.sort(np.asarray(eps_grid, dtype=float))
    above = grid[grid >= raw - 1e-12]
    tau = float(above[0]) if len(above) else float(grid[-1])
    return PointSetMetrics(points=pts, gaps=gaps, tau_estimate=tau)


# ---------------------------------------------------------------------------
# factorial envelopes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GevreyEnvelope:
    """Derivative-size proxies ``G_n`` and the two-parameter floor ``T(s)``."""

    Gn: np.ndarray
    s_grid: np.ndarray
    T: np.ndarray

    def T_at(self, s: float) -> float:
        out = math.inf
        for k, g in enumerate(self.Gn):
            out = min(out, g * s ** k / math.factorial(k))
        return out


def gevrey_envelope(series: DeterminantSeries, n_max: int,
                    s_grid: Sequence[float]) -> GevreyEnvelope:
    """Factorial-weighted coefficient envelope of a determinant series.

    ``G_n = sum_j (j+1)...(j+n) |delta_{j+n}|`` majorizes the n-th
    derivative on the closed disk; ``T(s) = min_k G_k s^k / k!`` is the
    envelope floor used in zero-set size estimates.
    """
    if series.order < n_max + 10:
        raise ValueError("series order must be at least n_max + 10")
    mags = np.abs(series.coeffs)
    Gn = np.zeros(n_max + 1)
    for n in range(n_max + 1):
        total = 0.0
        for jj in range(0, series.order + 1 - n):
            w = 1.0
            for i in range(1, n + 1):
                w *= jj + i
            total += w * mags[jj + n]
        Gn[n] = total
    s_arr = np.asarray(list(s_grid), dtype=float)
    env = GevreyEnvelope(Gn=Gn, s_grid=s_arr, T=np.zeros_like(s_arr))
    T = np.array([env.T_at(s) for s in s_arr])
    return GevreyEnvelope(Gn=Gn, s_grid=s_arr, T=T)


def integer_envelope_min(t: float, alpha: float) -> tuple[float, float]:
    """Integer minimum of ``v(x) = t^x x^(alpha x)`` vs its continuum value.

    The continuum minimum is ``exp(-(alpha/e) t^(-1/alpha))`` attained at
    ``x1 = t^(-1/alpha)/e``; the integer minimum stays within a factor of
    about ``e`` of it once ``x1`` is large.
    """
    if not (0 < t < 1) or alpha <= 0:
        raise ValueError("need 0 < t < 1 and alpha > 0")
    x1 = math.exp(-1.0) * t ** (-1.0 / alpha)
    cont = math.exp(-(alpha / math.e) * t ** (-1.0 / alpha))

    def v(x: float) -> float:
        return math.exp(x * math.log(t) + alpha * x * math.log(x)) if x > 0 else 1.0

    cands = {max(1, math.floor(x1)), max(1, math.ceil(x1))}
    best = min(v(float(x)) for x in cands)
    return best, cont
