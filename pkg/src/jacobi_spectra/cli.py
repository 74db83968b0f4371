"""Command-line front end: determinant grids, spectra, singularities,
scattering pipelines, the accumulation construction, and limit-set metrics.

Every subcommand reads matrix specs from the JSON schema of
:mod:`jacobi_spectra.core`, writes CSV (default) or JSON rows, accepts
``--seed`` for any randomized internals, and exits 0 on success, 2 on a
verification mismatch, 1 on errors.  ``JACOBI_SPECTRA_THREADS`` caps the
worker count used by the zero finder.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import detkit, pavlov, scattering, spectra
from .core import (ComplexJacobiSpec, RealJacobiSpec, joukowski, read_spec,
                   write_spec)

__all__ = ["main", "build_parser"]


def _emit(rows: list[dict], header: list[str], out: str | None, fmt: str) -> None:
    if fmt == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        buf = []
        buf.append(",".join(header))
        for row in rows:
            buf.append(",".join(_fmt_cell(row[h]) for h in header))
        text = "\n".join(buf) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _fmt_cell(v) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _require_complex(spec) -> ComplexJacobiSpec:
    if isinstance(spec, RealJacobiSpec):
        return spec.to_complex()
    return spec


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_det(args) -> int:
    spec = _require_complex(read_spec(args.spec))
    n = args.grid
    zs = [args.radius * math.cos(2 * math.pi * k / n)
          + 1j * args.radius * math.sin(2 * math.pi * k / n) for k in range(n)]
    rows = []
    series = None
    if args.engine == "series":
        order = max(2 * spec.support + 2, 8)
        series = detkit.series_from_kappa(detkit.taylor_recursion(spec, order), spec)
    for z in zs:
        if args.engine == "ratio":
            val = detkit.det_truncation_ratio(spec, z, args.m)
            err = abs(val - detkit.det_truncation_ratio(spec, z, 2 * args.m))
        elif args.engine == "volterra":
            val = detkit.det_volterra(spec, z)
            err = 0.0
        else:
            val, err = detkit.eval_series(series, z)
        rows.append({"re_z": z.real, "im_z": z.imag,
                     "re_delta": val.real, "im_delta": val.imag,
                     "error_bound": err})
    _emit(rows, ["re_z", "im_z", "re_delta", "im_delta", "error_bound"],
          args.out, args.format)
    return 0


def _cmd_spectrum(args) -> int:
    spec = _require_complex(read_spec(args.spec))
    eigs = spectra.discrete_spectrum(spec, radius=args.radius, seed=args.seed)
    oracle = spectra.dense_truncation_oracle(spec, args.oracle) if args.oracle else None
    rows = []
    mismatch = False
    for lam, mult in eigs:
        row = {"re_lambda": lam.real, "im_lambda": lam.imag, "mult": mult,
               "residual": 0.0, "oracle_match": ""}
        if oracle is not None:
            dists = [abs(lam - mu) for mu in oracle] or [math.inf]
            ok = min(dists) <= args.tol
            row["oracle_match"] = "yes" if ok else "no"
            mismatch = mismatch or not ok
        rows.append(row)
    if oracle is not None:
        matched = sum(1 for mu in oracle
                      if any(abs(mu - lam) <= args.tol for lam, _ in eigs))
        mismatch = mismatch or matched < len(oracle)
    _emit(rows, ["re_lambda", "im_lambda", "mult", "residual", "oracle_match"],
          args.out, args.format)
    return 2 if mismatch else 0


def _cmd_singularities(args) -> int:
    spec = _require_complex(read_spec(args.spec))
    found = spectra.spectral_singularities(spec, grid_size=args.grid)
    rows = [{"re_zeta": z.real, "im_zeta": z.imag,
             "re_lambda": joukowski(z).real, "abs_delta": v} for z, v in found]
    _emit(rows, ["re_zeta", "im_zeta", "re_lambda", "abs_delta"], args.out, args.format)
    return 0


def _write_scatter_data(data: scattering.ScatteringData, path: str) -> None:
    n_neg = len(data.F_neg)
    doc = {
        "grid_k": data.grid_k,
        "n_min": -(n_neg - 1),
        "F": list(np.concatenate([data.F_neg[:0:-1], data.F_pos])),
    }
    Path(path).write_text(json.dumps(doc) + "\n")


def _read_scatter_data(path: str) -> scattering.ScatteringData:
    """Rebuild scattering data from a file.

    Files carry the two-sided Fourier array and the grid size only; the
    boundary samples are not stored, so ``S``/``thetas`` come back empty
    (the inverse pipeline consumes the Fourier data alone).
    """
    doc = json.loads(Path(path).read_text())
    grid_k = int(doc["grid_k"])
    n_min = int(doc["n_min"])
    arr = np.asarray(doc["F"], dtype=float)
    F_neg = arr[: -n_min + 1][::-1] if n_min < 0 else np.array([arr[0]])
    F_pos = arr[-n_min:]
    diffs = np.abs(F_pos[:-2] - F_pos[2:])
    Fhat = np.concatenate([np.cumsum(diffs[::-1])[::-1], [0.0, 0.0]])
    return scattering.ScatteringData(grid_k=grid_k, S=np.empty(0, dtype=complex),
                                     thetas=np.empty(0), F_pos=F_pos,
                                     F_neg=F_neg, Fhat=Fhat)


def _cmd_scatter(args) -> int:
    if args.mode == "forward":
        spec = read_spec(args.spec)
        if not isinstance(spec, RealJacobiSpec):
            raise ValueError("forward scattering needs a real symmetric spec")
        data = scattering.scattering_function(spec, grid_k=args.grid_k)
        if args.data_out:
            _write_scatter_data(data, args.data_out)
        rows = [{"n": n, "F": float(data.F_pos[n]), "Fhat": float(data.Fhat[n])}
                for n in range(args.n_show)]
        _emit(rows, ["n", "F", "Fhat"], args.out, args.format)
        return 0
    if args.mode == "inverse":
        data = _read_scatter_data(args.data)
        sol = scattering.marchenko_solve(data, n_max=args.n_max)
        rec = scattering.reconstruct(sol)
        if args.spec_out:
            write_spec(rec, args.spec_out)
        rows = [{"n": k, "a": rec.a_at(k), "b": rec.b_at(k)}
                for k in range(max(rec.support, 1))]
        _emit(rows, ["n", "a", "b"], args.out, args.format)
        return 0
    # roundtrip
    spec = read_spec(args.spec)
    if not isinstance(spec, RealJacobiSpec):
        raise ValueError("roundtrip needs a real symmetric spec")
    rec, err = scattering.scattering_roundtrip(spec, grid_k=args.grid_k)
    rows = [{"n": k, "a_in": spec.a_at(k), "b_in": spec.b_at(k),
             "a_out": rec.a_at(k), "b_out": rec.b_at(k)}
            for k in range(spec.support + 2)]
    _emit(rows, ["n", "a_in", "b_in", "a_out", "b_out"], args.out, args.format)
    sys.stderr.write(f"max entry error: {err:.3e}\n")
    return 0 if err <= args.tol else 2


def _cmd_pavlov(args) -> int:
    model = pavlov.PavlovModel(gamma=args.gamma, kappa=args.kappa)
    model = model.with_roots(args.count).with_herglotz()
    if args.mode == "build":
        table = pavlov.weight_table(model, args.nodes)
        a, b = pavlov.recurrence_from_weight(table, args.nmax)
        spec = pavlov.assemble_matrix(model, a, b)
        write_spec(spec, args.out_spec)
        sys.stderr.write(
            f"alpha={model.herglotz.alpha:.8f} beta={model.herglotz.beta:.2e} "
            f"A={model.herglotz.A:.8f} support={spec.support}\n")
        return 0
    # verify
    spec = _require_complex(read_spec(args.spec))
    pred = pavlov.predicted_eigenvalues(model)
    rep = pavlov.verify_accumulation(spec, pred, m=args.oracle,
                                     radius=args.radius, seed=args.seed)
    res = pavlov.weyl_pole_residuals(model, min(3, args.count))
    rows = []
    for k, lam in enumerate(pred):
        match = next(((fnd, d) for p, fnd, d in rep.matches if p == lam), None)
        rows.append({
            "k": k + 1,
            "t_k": model.roots[k],
            "re_lambda": lam.real,
            "im_lambda": lam.imag,
            "matched": "yes" if match else "no",
            "residual": match[1] if match else math.inf,
        })
    _emit(rows, ["k", "t_k", "re_lambda", "im_lambda", "matched", "residual"],
          args.out, args.format)
    sys.stderr.write(
        f"matched {rep.matched_count}/{len(pred)} predicted; "
        f"max |Re lambda| of matches = {rep.max_real_part:.2e}; "
        f"pole residuals = {['%.2e' % r for r in res]}\n")
    return 0 if rep.matched_count >= 2 else 2


def _cmd_metrics(args) -> int:
    points = json.loads(Path(args.points).read_text())
    grid = np.arange(args.eps_min, args.eps_max + 1e-12, args.eps_step)
    met = spectra.limit_set_metrics(points, grid)
    rows = [{"n_points": len(met.points), "n_gaps": len(met.gaps),
             "largest_gap": float(met.gaps[0]) if len(met.gaps) else 0.0,
             "tau_estimate": met.tau_estimate}]
    _emit(rows, ["n_points", "n_gaps", "largest_gap", "tau_estimate"],
          args.out, args.format)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="jacobi-spectra",
        description="Spectra of complex Jacobi matrices via perturbation "
                    "determinants, scattering, and the accumulation construction.")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized internals")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output file (default: stdout)")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("det", help="determinant on a circle grid")
    d.add_argument("--spec", required=True)
    d.add_argument("--engine", choices=("ratio", "volterra", "series"), default="volterra")
    d.add_argument("--grid", type=int, default=16)
    d.add_argument("--radius", type=float, default=0.9)
    d.add_argument("--m", type=int, default=400, help="truncation size for the ratio engine")
    d.set_defaults(func=_cmd_det)

    s = sub.add_parser("spectrum", help="discrete spectrum via disk zeros")
    s.add_argument("--spec", required=True)
    s.add_argument("--radius", type=float, default=0.995)
    s.add_argument("--oracle", type=int, default=0, help="dense oracle size (0 = skip)")
    s.add_argument("--tol", type=float, default=1e-6)
    s.set_defaults(func=_cmd_spectrum)

    g = sub.add_parser("singularities", help="boundary zeros of the determinant")
    g.add_argument("--spec", required=True)
    g.add_argument("--grid", type=int, default=512)
    g.set_defaults(func=_cmd_singularities)

    c = sub.add_parser("scatter", help="forward/inverse scattering")
    c.add_argument("mode", choices=("forward", "inverse", "roundtrip"))
    c.add_argument("--spec", help="real spec file (forward/roundtrip)")
    c.add_argument("--data", help="scattering data file (inverse)")
    c.add_argument("--data-out", help="write scattering data (forward)")
    c.add_argument("--spec-out", help="write reconstructed spec (inverse)")
    c.add_argument("--grid-k", type=int, default=12)
    c.add_argument("--n-max", type=int, default=24)
    c.add_argument("--n-show", type=int, default=16)
    c.add_argument("--tol", type=float, default=1e-6)
    c.set_defaults(func=_cmd_scatter)

    v = sub.add_parser("pavlov", help="accumulation construction")
    v.add_argument("mode", choices=("build", "verify"))
    v.add_argument("--gamma", type=float, required=True)
    v.add_argument("--kappa", type=float, default=0.0)
    v.add_argument("--count", type=int, default=4)
    v.add_argument("--nodes", type=int, default=8000)
    v.add_argument("--nmax", type=int, default=700)
    v.add_argument("--out-spec", default="pavlov_spec.json")
    v.add_argument("--spec", help="assembled spec (verify)")
    v.add_argument("--oracle", type=int, default=712)
    v.add_argument("--radius", type=float, default=0.9995)
    v.set_defaults(func=_cmd_pavlov)

    t = sub.add_parser("metrics", help="limit-set gap metrics")
    t.add_argument("--points", required=True, help="JSON array of reals in [-1, 1]")
    t.add_argument("--eps-min", type=float, default=0.01)
    t.add_argument("--eps-max", type=float, default=1.0)
    t.add_argument("--eps-step", type=float, default=0.01)
    t.set_defaults(func=_cmd_metrics)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
