"""Domain types shared by every pipeline: finite-support Jacobi matrix
specifications, the disk-to-plane spectral parameter map, weighted entry
moments, and the monotone decay envelopes used by the coefficient bounds.

Conventions
-----------
The free (unperturbed) matrix has sub/super-diagonals 1/2 and diagonal 0;
its spectrum is the interval [-1, 1].  Every matrix handled here is stored
as a finite list of deviations from those free values, so all quantities
downstream are finite sums or finite recursions, exact up to rounding.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

FREE_OFFDIAG = 0.5

__all__ = [
    "BranchError",
    "ComplexJacobiSpec",
    "ConvergenceError",
    "DecayFit",
    "Envelope",
    "PreconditionError",
    "RealJacobiSpec",
    "Moments",
    "ReconstructionError",
    "classify_decay",
    "dist_to_band",
    "envelope",
    "inverse_joukowski",
    "joukowski",
    "moment",
    "read_spec",
    "write_spec",
]


class BranchError(ValueError):
    """Spectral parameter sits on the cut [-1, 1] where no disk preimage exists."""


class ConvergenceError(RuntimeError):
    """An iterative procedure failed to reach its tolerance."""


class ReconstructionError(RuntimeError):
    """Inverse-problem data is inconsistent with a physical matrix."""


class PreconditionError(RuntimeError):
    """Input violates a documented admissibility condition."""


# ---------------------------------------------------------------------------
# matrix specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComplexJacobiSpec:
    """Complex tridiagonal half-line matrix stored as deviations from free.

    Parameters
    ----------
    deviations : mapping n -> (da, db, dc)
        ``da = a_n - 1/2`` (sub-diagonal), ``db = b_n`` (diagonal),
        ``dc = c_n - 1/2`` (super-diagonal).  At most one record per index.

    Entries at indices ``n >= support`` are exactly free.
    """

    deviations: tuple[tuple[int, complex, complex, complex], ...]
    support: int = field(init=False)

    def __post_init__(self):
        devs = []
        seen = set()
        for n, da, db, dc in self.deviations:
            n = int(n)
            if n < 0:
                raise ValueError(f"deviation index must be >= 0, got {n}")
            if n in seen:
                raise ValueError(f"duplicate deviation record for index {n}")
            seen.add(n)
            devs.append((n, complex(da), complex(db), complex(dc)))
        devs.sort(key=lambda rec: rec[0])
        object.__setattr__(self, "deviations", tuple(devs))
        object.__setattr__(self, "support", 1 + devs[-1][0] if devs else 0)

    @classmethod
    def from_entries(cls, a: Sequence[complex], b: Sequence[complex],
                     c: Sequence[complex] | None = None) -> "ComplexJacobiSpec":
        """Build from explicit leading entries; ``c`` defaults to ``a``."""
        if c is None:
            c = a
        n_max = max(len(a), len(b), len(c))

        def at(seq, k, free):
            return complex(seq[k]) if k < len(seq) else free

        devs = []
        for n in range(n_max):
            da = at(a, n, FREE_OFFDIAG) - FREE_OFFDIAG
            db = at(b, n, 0.0)
            dc = at(c, n, FREE_OFFDIAG) - FREE_OFFDIAG
            if da != 0 or db != 0 or dc != 0:
                devs.append((n, da, db, dc))
        return cls(tuple(devs))

    @classmethod
    def free(cls) -> "ComplexJacobiSpec":
        return cls(())

    def a(self, n: int) -> complex:
        return self._dev_map().get(n, (0j, 0j, 0j))[0] + FREE_OFFDIAG

    def b(self, n: int) -> complex:
        return self._dev_map().get(n, (0j, 0j, 0j))[1]

    def c(self, n: int) -> complex:
        return self._dev_map().get(n, (0j, 0j, 0j))[2] + FREE_OFFDIAG

    def _dev_map(self) -> Mapping[int, tuple[complex, complex, complex]]:
        cached = self.__dict__.get("_devs")
        if cached is None:
            cached = {n: (da, db, dc) for n, da, db, dc in self.deviations}
            self.__dict__["_devs"] = cached
        return cached

    def entry_arrays(self, m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Leading entries ``a[0:m], b[0:m], c[0:m]`` as dense arrays."""
        a = np.full(m, FREE_OFFDIAG, dtype=complex)
        b = np.zeros(m, dtype=complex)
        c = np.full(m, FREE_OFFDIAG, dtype=complex)
        for n, da, db, dc in self.deviations:
            if n < m:
                a[n] += da
                b[n] += db
                c[n] += dc
        return a, b, c

    def truncated_matrix(self, m: int) -> np.ndarray:
        """Dense ``(m+1) x (m+1)`` leading principal section of the matrix."""
        a, b, c = self.entry_arrays(m + 1)
        mat = np.diag(b)
        idx = np.arange(m)
        mat[idx + 1, idx] = a[:m]
        mat[idx, idx + 1] = c[:m]
        return mat

    def is_free(self) -> bool:
        return not self.deviations

    def deviation_sizes(self) -> np.ndarray:
        """``|a_n-1/2| + |b_n| + |c_n-1/2|`` for ``n = 0..support-1``."""
        out = np.zeros(max(self.support, 1))
        for n, da, db, dc in self.deviations:
            out[n] = abs(da) + abs(db) + abs(dc)
        return out[: self.support] if self.support else out[:0]


@dataclass(frozen=True)
class RealJacobiSpec:
    """Real symmetric half-line Jacobi matrix with finite-support deviations.

    ``a`` holds the off-diagonal entries (all positive), ``b`` the diagonal;
    index ``n >= support`` is exactly free (``a=1/2, b=0``).
    """

    a: tuple[float, ...]
    b: tuple[float, ...]
    support: int = field(init=False)

    def __post_init__(self):
        a = tuple(float(x) for x in self.a)
        b = tuple(float(x) for x in self.b)
        if any(x <= 0 for x in a):
            raise ValueError("off-diagonal entries must be positive")
        n = max(len(a), len(b))
        a = a + (FREE_OFFDIAG,) * (n - len(a))
        b = b + (0.0,) * (n - len(b))
        while n > 0 and a[n - 1] == FREE_OFFDIAG and b[n - 1] == 0.0:
            n -= 1
        object.__setattr__(self, "a", a[:n])
        object.__setattr__(self, "b", b[:n])
        object.__setattr__(self, "support", n)

    @classmethod
    def free(cls) -> "RealJacobiSpec":
        return cls((), ())

    def a_at(self, n: int) -> float:
        return self.a[n] if 0 <= n < len(self.a) else FREE_OFFDIAG

    def b_at(self, n: int) -> float:
        return self.b[n] if 0 <= n < len(self.b) else 0.0

    def to_complex(self) -> ComplexJacobiSpec:
        m = self.support
        return ComplexJacobiSpec.from_entries(
            [self.a_at(n) for n in range(m)],
            [self.b_at(n) for n in range(m)],
        )

    def is_free(self) -> bool:
        return self.support == 0


# ---------------------------------------------------------------------------
# spec file I/O
# ---------------------------------------------------------------------------


def _c2pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def write_spec(spec: ComplexJacobiSpec | RealJacobiSpec, path: str | Path) -> None:
    """Serialize a spec to JSON (deviations sorted by index)."""
    if isinstance(spec, RealJacobiSpec):
        doc = {"a": list(spec.a), "b": list(spec.b)}
    else:
        doc = {
            "deviations": [
                {"n": n, "da": _c2pair(da), "db": _c2pair(db), "dc": _c2pair(dc)}
                for n, da, db, dc in spec.deviations
            ]
        }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def read_spec(path: str | Path) -> ComplexJacobiSpec | RealJacobiSpec:
    """Load a spec file; the schema decides real vs complex."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: malformed JSON at line {exc.lineno}: {exc.msg}") from exc
    if "deviations" in doc:
        devs = []
        for i, rec in enumerate(doc["deviations"]):
            try:
                devs.append(
                    (
                        int(rec["n"]),
                        complex(*rec.get("da", [0, 0])),
                        complex(*rec.get("db", [0, 0])),
                        complex(*rec.get("dc", [0, 0])),
                    )
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"{path}: bad deviation record #{i}: {rec!r}") from exc
        return ComplexJacobiSpec(tuple(devs))
    if "a" in doc or "b" in doc:
        return RealJacobiSpec(tuple(doc.get("a", ())), tuple(doc.get("b", ())))
    raise ValueError(f"{path}: neither a complex nor a real matrix spec")


# ---------------------------------------------------------------------------
# spectral parameter map
# ---------------------------------------------------------------------------


def joukowski(z: complex) -> complex:
    """Map a disk point to the spectral plane, ``lambda = (z + 1/z)/2``.

    Bijection from the punctured open unit disk onto the complement of
    the band [-1, 1].
    """
    z = complex(z)
    if z == 0:
        raise ZeroDivisionError("joukowski is undefined at z = 0")
    return 0.5 * (z + 1.0 / z)


def inverse_joukowski(lam: complex) -> complex:
    """Preimage of ``lam`` inside the unit disk.

    Raises
    ------
    BranchError
        If ``lam`` lies on [-1, 1], where both quadratic roots hit the
        unit circle and no interior branch exists.
    """
    lam = complex(lam)
    # Stable root selection: the two roots of z^2 - 2*lam*z + 1 multiply to 1,
    # so compute the large root and invert it.
    s = np.sqrt(lam - 1.0 + 0j) * np.sqrt(lam + 1.0 + 0j)
    big = lam + s if abs(lam + s) >= abs(lam - s) else lam - s
    if abs(big) <= 1.0 + 1e-12:
        raise BranchError(f"lambda = {lam} lies on the spectral band [-1, 1]")
    return 1.0 / big


def dist_to_band(lam: complex) -> float:
    """Euclidean distance from ``lam`` to the interval [-1, 1]."""
    x, y = lam.real, lam.imag
    if x < -1.0:
        return math.hypot(x + 1.0, y)
    if x > 1.0:
        return math.hypot(x - 1.0, y)
    return abs(y)


# ---------------------------------------------------------------------------
# moments and envelopes
# ---------------------------------------------------------------------------


def moment(spec: ComplexJacobiSpec, r: int) -> float:
    """Weighted entry moment ``sum_k (k+1)^r (|a_k-1/2| + |b_k| + |c_k-1/2|)``."""
    if r < 0:
        raise ValueError("moment order must be >= 0")
    total = 0.0
    for n, da, db, dc in spec.deviations:
        total += (n + 1) ** r * (abs(da) + abs(db) + abs(dc))
    return total


@dataclass(frozen=True)
class Moments:
    """A weighted entry moment together with its order.

    Finite for every finite-support spec, and nondecreasing in the order
    once any deviation sits at index >= 1.
    """

    r: int
    value: float

    @classmethod
    def of(cls, spec: ComplexJacobiSpec, r: int) -> "Moments":
        return cls(r=r, value=moment(spec, r))


@dataclass(frozen=True)
class Envelope:
    """Monotone tail envelope of the row weights ``|2 b_j| + |4 a_j c_j - 1|``.

    ``H(n)`` is the tail sum from index ``n``; ``Hprod(n, m)`` the product
    ``prod_{j=n+1}^{n+m-1} (1 + H(j))``.  ``H`` is nonincreasing and vanishes
    at the support boundary.
    """

    h: np.ndarray          # h[j] = |2 b_j| + |4 a_j c_j - 1|, length support
    tail: np.ndarray       # tail[n] = sum_{j >= n} h[j], length support + 1

    def H(self, n: int) -> float:
        if n < 0:
            n = 0
        return float(self.tail[n]) if n < len(self.tail) else 0.0

    def Hprod(self, n: int, m: int) -> float:
        out = 1.0
        for j in range(n + 1, n + m):
            out *= 1.0 + self.H(j)
        return out

    @property
    def prefactor(self) -> float:
        """``prod_{j>=1} (1 + H(j))`` — the constant in the coefficient bound."""
        out = 1.0
        for j in range(1, len(self.tail)):
            out *= 1.0 + self.H(j)
        return out


def envelope(spec: ComplexJacobiSpec) -> Envelope:
    """Compute the decay envelope of a finite-support spec."""
    n_sup = spec.support
    a, b, c = spec.entry_arrays(n_sup)
    h = np.abs(2.0 * b) + np.abs(4.0 * a * c - 1.0)
    tail = np.zeros(n_sup + 1)
    if n_sup:
        tail[:n_sup] = np.cumsum(h[::-1])[::-1]
    return Envelope(h=h, tail=tail)


# ---------------------------------------------------------------------------
# decay classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecayFit:
    """Result of fitting ``value(n) ~ C1 * exp(-C2 * n**beta)``."""

    beta: float
    C1: float
    C2: float
    residual: float
    label: str = "stretched-exponential"


def _fit_at_beta(n: np.ndarray, logv: np.ndarray, beta: float) -> tuple[float, float, float]:
    """Least squares for (log C1, C2) at fixed beta; returns (logC1, C2, sse)."""
    x = n ** beta
    A = np.column_stack([np.ones_like(x), -x])
    sol, *_ = np.linalg.lstsq(A, logv, rcond=None)
    resid = logv - A @ sol
    return float(sol[0]), float(sol[1]), float(resid @ resid)


def classify_decay(entry_norms: Iterable[tuple[float, float]],
                   beta_grid: Sequence[float] | None = None) -> DecayFit:
    """Fit a stretched-exponential decay law to positive samples.

    Scans a fixed grid of exponents, then refines the best one by
    golden-section search on the least-squares residual.  Ties on the
    residual pick the smallest exponent.
    """
    pts = [(float(n), float(v)) for n, v in entry_norms]
    pos = [(n, v) for n, v in pts if v > 0 and n > 0]
    if not pos:
        return DecayFit(beta=math.inf, C1=0.0, C2=math.inf, residual=0.0,
                        label="super-exponential / finite support")
    if len(pos) < 8:
        raise ValueError("need at least 8 positive samples to classify decay")
    n = np.array([p[0] for p in pos])
    logv = np.log(np.array([p[1] for p in pos]))

    if beta_grid is None:
        beta_grid = np.arange(0.05, 1.0 + 1e-9, 0.05)
    best_beta, best_sse = None, math.inf
    for beta in beta_grid:
        _, _, sse = _fit_at_beta(n, logv, float(beta))
        if sse < best_sse - 1e-15:
            best_beta, best_sse = float(beta), sse

    # golden-section refinement inside the bracketing grid cells
    step = float(beta_grid[1] - beta_grid[0]) if len(beta_grid) > 1 else 0.05
    lo = max(min(beta_grid), best_beta - step)
    hi = min(max(beta_grid), best_beta + step)
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - phi * (hi - lo)
    x2 = lo + phi * (hi - lo)
    f1 = _fit_at_beta(n, logv, x1)[2]
    f2 = _fit_at_beta(n, logv, x2)[2]
    for _ in range(60):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - phi * (hi - lo)
            f1 = _fit_at_beta(n, logv, x1)[2]
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + phi * (hi - lo)
            f2 = _fit_at_beta(n, logv, x2)[2]
    beta = 0.5 * (lo + hi)
    logc1, c2, sse = _fit_at_beta(n, logv, beta)
    return DecayFit(beta=beta, C1=math.exp(logc1), C2=c2, residual=sse)
