import numpy as np
import pytest

from jacobi_spectra.core import PreconditionError, RealJacobiSpec
from jacobi_spectra.scattering import (jost_function_check, jost_solution,
                                       marchenko_solve, reconstruct,
                                       scattering_function,
                                       scattering_roundtrip, verify_decay_bound)

SINGLE = RealJacobiSpec((), (0.3,))          # b_0 = 0.3, all couplings 1/2


def draw_admissible(rng, max_support=6):
    while True:
        sup = int(rng.integers(1, max_support + 1))
        a = 0.5 + rng.uniform(-0.1, 0.1, sup)
        b = rng.uniform(-0.2, 0.2, sup)
        spec = RealJacobiSpec(tuple(a), tuple(b))
        if jost_function_check(spec).admissible:
            return spec


# ---------------------------------------------------------------------------
# Jost solutions
# ---------------------------------------------------------------------------


def test_jost_free_powers():
    sol = jost_solution(RealJacobiSpec.free())
    for n in (0, 1, 4):
        assert sol.eval(n, 0.3 + 0.4j) == pytest.approx((0.3 + 0.4j) ** n)


def test_jost_single_site_closed_form():
    sol = jost_solution(SINGLE)
    for z in (0.2, 0.9j, -0.7):
        assert sol.eval(0, z) == pytest.approx(1.0 - 0.6 * z)
    assert sol.eval(1, 0.5j) == pytest.approx(0.5j)   # tail exact from the support on


def test_jost_tail_exact_beyond_support():
    rng = np.random.default_rng(20)
    spec = draw_admissible(rng)
    sol = jost_solution(spec)
    z = 0.37 - 0.11j
    for n in range(spec.support + 1, spec.support + 4):
        assert sol.eval(n, z) == pytest.approx(z ** n, abs=1e-14)


def test_jost_conjugation_symmetry_on_circle():
    sol = jost_solution(SINGLE)
    zeta = np.exp(0.83j)
    for n in (0, 1, 2):
        assert sol.eval(n, np.conj(zeta)) == pytest.approx(np.conj(sol.eval(n, zeta)))


def test_wronskian_value_and_constancy():
    rng = np.random.default_rng(21)
    spec = RealJacobiSpec((0.45, 0.6, 0.5), (0.1, -0.2, 0.05))
    sol = jost_solution(spec)
    for theta in rng.uniform(0.1, 3.0, 4):
        zeta = np.exp(1j * theta)
        expected = 0.5 * (1.0 / zeta - zeta)
        for n in range(0, spec.support + 3):
            assert abs(sol.wronskian(n, theta, spec) - expected) < 1e-10


# ---------------------------------------------------------------------------
# admissibility reports
# ---------------------------------------------------------------------------


def test_check_no_zero_outside():
    rep = jost_function_check(SINGLE)
    assert rep.admissible
    assert rep.disk_zeros == ()
    assert not rep.resonance_plus and not rep.resonance_minus


def test_check_resonance_at_band_edge():
    rep = jost_function_check(RealJacobiSpec((), (0.5,)))
    assert rep.resonance_plus
    assert not rep.admissible


def test_check_interior_zero_blocks_pipeline():
    rep = jost_function_check(RealJacobiSpec((), (1.0,)))
    assert len(rep.disk_zeros) == 1
    assert rep.disk_zeros[0] == pytest.approx(0.5, abs=1e-10)
    assert rep.zeros_real_simple
    with pytest.raises(PreconditionError):
        scattering_function(RealJacobiSpec((), (1.0,)))
    with pytest.raises(PreconditionError):
        scattering_function(RealJacobiSpec((), (0.5,)))


# ---------------------------------------------------------------------------
# scattering data
# ---------------------------------------------------------------------------


def test_free_fourier_data():
    data = scattering_function(RealJacobiSpec.free(), 10)
    assert data.F(0) == pytest.approx(-1.0, abs=1e-12)
    assert np.max(np.abs(data.F_pos[1:])) < 1e-12
    assert np.max(np.abs(data.F_neg[1:])) < 1e-12


def test_unimodularity_and_conjugation():
    data = scattering_function(SINGLE, 12)
    assert np.max(np.abs(np.abs(data.S) - 1.0)) < 1e-12
    m = len(data.S)
    # S(-theta) = conj(S(theta)) forces real Fourier data
    assert np.max(np.abs(data.S[1:][::-1] - np.conj(data.S[1:]))) < 1e-10


def test_single_site_geometric_coefficients():
    data = scattering_function(SINGLE, 12)
    for n in range(1, 12):
        assert abs(data.F(n) - (-(0.6 ** n) * (1 - 0.36))) < 1e-10


def test_single_site_against_quadrature_oracle():
    # independent oracle: high-resolution trapezoid on the explicit ratio
    m = 2 ** 16
    theta = 2 * np.pi * np.arange(m) / m
    s_vals = (1 - 0.6 * np.exp(-1j * theta)) / (1 - 0.6 * np.exp(1j * theta))
    data = scattering_function(SINGLE, 12)
    for n in (0, 1, 2, 5, 9):
        ref = -np.mean(s_vals * np.exp(-1j * n * theta))
        assert abs(data.F(n) - ref.real) < 1e-10


def test_fhat_majorizes_coefficients():
    data = scattering_function(SINGLE, 12)
    for k in range(0, 20):
        assert abs(data.F(k)) + abs(data.F(k + 1)) <= data.Fhat_at(k) + 1e-12
    # monotone tail sums
    for k in range(0, 20):
        assert data.Fhat_at(k + 1) <= data.Fhat_at(k) + 1e-15


def test_operator_norm_proxy_decays():
    rng = np.random.default_rng(22)
    spec = draw_admissible(rng)
    data = scattering_function(spec, 12)
    sums = [np.sum(np.abs(data.F_pos[2 * n:])) for n in range(80)]
    for prev, cur in zip(sums, sums[1:]):
        assert cur <= prev + 1e-15
    assert sums[-1] < 1e-4 * max(sums[0], 1e-30)


# ---------------------------------------------------------------------------
# Marchenko systems and reconstruction
# ---------------------------------------------------------------------------


def test_free_data_gives_trivial_solution():
    data = scattering_function(RealJacobiSpec.free(), 10)
    sol = marchenko_solve(data, 6)
    assert np.max(np.abs(sol.tau[1:])) < 1e-12
    rec = reconstruct(sol)
    assert rec.is_free()


def test_single_site_tau_vanishes_past_support():
    data = scattering_function(SINGLE, 12)
    sol = marchenko_solve(data, 8)
    assert np.max(np.abs(sol.tau[1:, 0])) < 1e-12   # K(n,n) = 1 for n >= 1
    assert np.max(sol.row_residuals) < 1e-10
    assert np.all(sol.K_diag[1:] > 0)


def test_row_residuals_on_synthetic_data():
    # random small mirror-side data: the defining equation must be solved
    rng = np.random.default_rng(23)
    from jacobi_spectra.scattering import ScatteringData
    f_neg = np.zeros(10)
    f_neg[1:7] = rng.uniform(-0.05, 0.05, 6)
    m = 2 ** 8
    data = ScatteringData(grid_k=8, S=np.ones(m, dtype=complex),
                          thetas=2 * np.pi * np.arange(m) / m,
                          F_pos=np.zeros(m // 2), F_neg=f_neg,
                          Fhat=np.zeros(m // 2))
    sol = marchenko_solve(data, 5)
    assert np.max(sol.row_residuals[1:]) < 1e-12


def test_roundtrip_single_site():
    rec, err = scattering_roundtrip(SINGLE)
    assert err < 1e-6
    assert rec.b_at(0) == pytest.approx(0.3, abs=1e-6)
    for k in range(1, 6):
        assert rec.a_at(k) == pytest.approx(0.5, abs=1e-6)
        assert rec.b_at(k) == pytest.approx(0.0, abs=1e-6)


def test_roundtrip_random_admissible():
    rng = np.random.default_rng(24)
    for _ in range(8):
        spec = draw_admissible(rng)
        rec, err = scattering_roundtrip(spec)
        assert err < 1e-6


def test_reconstruct_positive_offdiagonals():
    rng = np.random.default_rng(25)
    spec = draw_admissible(rng)
    data = scattering_function(spec, 12)
    sol = marchenko_solve(data, spec.support + 5)
    rec = reconstruct(sol)
    assert all(x > 0 for x in rec.a)


# ---------------------------------------------------------------------------
# decay bound
# ---------------------------------------------------------------------------


def test_decay_bound_free_is_zero():
    data = scattering_function(RealJacobiSpec.free(), 10)
    rep = verify_decay_bound(data, RealJacobiSpec.free())
    assert rep.C == 0.0 and rep.passes


def test_decay_bound_single_site():
    data = scattering_function(SINGLE, 12)
    rep = verify_decay_bound(data, SINGLE)
    assert rep.passes and np.isfinite(rep.C)
    # data side decays geometrically like (0.6)^(2n) once the tail settles
    ratios = rep.rhs[2:12] / rep.rhs[1:11]
    assert abs(ratios[-1] - 0.36) < 0.01
    assert np.all(ratios < 0.4)


def test_decay_bound_on_roundtrip_specs():
    rng = np.random.default_rng(26)
    for _ in range(5):
        spec = draw_admissible(rng)
        data = scattering_function(spec, 12)
        rep = verify_decay_bound(data, spec, n_max=40)
        assert rep.passes
