import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacobi_spectra.core import (BranchError, ComplexJacobiSpec, RealJacobiSpec,
                                 classify_decay, dist_to_band, envelope,
                                 inverse_joukowski, joukowski, moment,
                                 read_spec, write_spec)


def test_joukowski_fixed_point():
    assert joukowski(1.0) == 1.0


def test_joukowski_half():
    # (0.5 + 2)/2
    assert joukowski(0.5) == pytest.approx(1.25)


def test_joukowski_imaginary_axis_maps_to_imaginary():
    for t in (0.1, 0.35, 0.9):
        lam = joukowski(1j * t)
        assert lam.real == pytest.approx(0.0, abs=1e-15)
        assert lam.imag == pytest.approx(0.5 * (t - 1.0 / t), rel=1e-14)


def test_joukowski_rejects_origin():
    with pytest.raises(ZeroDivisionError):
        joukowski(0.0)


def test_inverse_joukowski_closed_forms():
    assert inverse_joukowski(1.25) == pytest.approx(0.5, abs=1e-14)
    assert inverse_joukowski(2.0) == pytest.approx(2.0 - math.sqrt(3.0), abs=1e-14)


def test_inverse_joukowski_roundtrip_random():
    rng = np.random.default_rng(1)
    for _ in range(100):
        r = rng.uniform(1.01, 10.0)
        lam = r * np.exp(1j * rng.uniform(0, 2 * np.pi))
        z = inverse_joukowski(lam)
        assert abs(z) < 1.0
        assert abs(joukowski(z) - lam) < 1e-12


def test_inverse_joukowski_rejects_band():
    for lam in (-1.0, -0.2, 0.0, 0.99, 1.0):
        with pytest.raises(BranchError):
            inverse_joukowski(lam)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 0.999), st.floats(0.0, 2.0 * math.pi))
def test_joukowski_avoids_band_inside_disk(r, phi):
    lam = joukowski(r * complex(math.cos(phi), math.sin(phi)))
    assert dist_to_band(lam) > 0.0


def test_joukowski_avoids_band_bulk():
    rng = np.random.default_rng(99)
    zs = rng.uniform(1e-3, 0.999, 1000) * np.exp(2j * np.pi * rng.uniform(0, 1, 1000))
    assert all(dist_to_band(joukowski(z)) > 0.0 for z in zs)


# ---------------------------------------------------------------------------
# specs
# ---------------------------------------------------------------------------


def test_spec_accessors_total_and_free_tail():
    spec = ComplexJacobiSpec(((1, 0.1 + 0j, 0.2j, 0j),))
    assert spec.support == 2
    assert spec.a(1) == pytest.approx(0.6)
    assert spec.b(1) == pytest.approx(0.2j)
    assert spec.c(1) == pytest.approx(0.5)
    # free beyond support, total for all n
    for n in (0, 2, 5, 100):
        if n != 1:
            assert spec.a(n) == 0.5 and spec.b(n) == 0.0 and spec.c(n) == 0.5


def test_spec_rejects_duplicate_records():
    with pytest.raises(ValueError):
        ComplexJacobiSpec(((0, 0j, 1 + 0j, 0j), (0, 0j, 2 + 0j, 0j)))


def test_real_spec_positivity_and_trim():
    with pytest.raises(ValueError):
        RealJacobiSpec((-0.1,), (0.0,))
    spec = RealJacobiSpec((0.5, 0.5), (0.3, 0.0))
    assert spec.support == 1
    assert spec.a_at(0) == 0.5 and spec.b_at(0) == 0.3


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------


def test_moment_free_vanishes():
    for r in range(5):
        assert moment(ComplexJacobiSpec.free(), r) == 0.0


def test_moment_single_site_is_one():
    spec = ComplexJacobiSpec(((0, 0j, 1 + 0j, 0j),))
    for r in range(5):
        assert moment(spec, r) == pytest.approx(1.0)


def test_moment_two_site_example():
    spec = ComplexJacobiSpec(((0, 0j, 1 + 0j, 0j), (1, 0j, 0.5 + 0j, 0j)))
    assert moment(spec, 2) == pytest.approx(1.0 + 4.0 * 0.5)


def test_moments_record_and_monotonicity():
    spec = ComplexJacobiSpec(((1, 0j, 0.4 + 0j, 0j),))
    from jacobi_spectra.core import Moments
    ms = [Moments.of(spec, r) for r in range(4)]
    assert all(m.value == moment(spec, m.r) for m in ms)
    assert all(b.value >= a.value for a, b in zip(ms, ms[1:]))


def test_moment_monotone_in_order():
    rng = np.random.default_rng(2)
    for _ in range(20):
        devs = tuple((n, 0j, complex(rng.uniform(0.1, 1)), 0j) for n in range(1, 4))
        spec = ComplexJacobiSpec(devs)
        for r in range(4):
            assert moment(spec, r + 1) >= moment(spec, r)


# ---------------------------------------------------------------------------
# envelopes
# ---------------------------------------------------------------------------


def test_envelope_free():
    env = envelope(ComplexJacobiSpec.free())
    assert env.H(0) == 0.0
    assert env.Hprod(0, 5) == 1.0


def test_envelope_single_site():
    env = envelope(ComplexJacobiSpec(((0, 0j, 1 + 0j, 0j),)))
    assert env.H(0) == pytest.approx(2.0)   # |2 b_0| + |4 a c - 1| = 2 + 0
    assert env.H(1) == 0.0


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0.0, 1.5), min_size=1, max_size=8))
def test_envelope_monotone(bs):
    devs = tuple((n, 0j, complex(v), 0j) for n, v in enumerate(bs) if v)
    spec = ComplexJacobiSpec(devs)
    env = envelope(spec)
    for n in range(spec.support + 1):
        assert env.H(n + 1) <= env.H(n) + 1e-15
    assert env.H(spec.support) == 0.0
    assert env.Hprod(0, 4) >= 1.0


# ---------------------------------------------------------------------------
# decay classification
# ---------------------------------------------------------------------------


def test_classify_decay_square_root_family():
    ns = np.arange(1, 65)
    fit = classify_decay([(n, math.exp(-math.sqrt(n))) for n in ns])
    assert abs(fit.beta - 0.5) <= 0.05


def test_classify_decay_pure_exponential_hits_endpoint():
    ns = np.arange(1, 65)
    fit = classify_decay([(n, math.exp(-float(n))) for n in ns])
    assert fit.beta >= 0.95
    assert fit.residual < 1e-18


def test_classify_decay_constant():
    fit = classify_decay([(n, 1.0) for n in range(1, 40)])
    assert abs(fit.C2) < 1e-10
    assert fit.beta <= 0.11


def test_classify_decay_all_zero_label():
    fit = classify_decay([(n, 0.0) for n in range(1, 20)])
    assert "finite support" in fit.label


# ---------------------------------------------------------------------------
# spec files
# ---------------------------------------------------------------------------


def test_spec_file_roundtrip_complex(tmp_path):
    spec = ComplexJacobiSpec(((2, 0.1 + 0.2j, -0.3j, 0j), (0, 0j, 1 + 0j, 0.05 + 0j)))
    path = tmp_path / "spec.json"
    write_spec(spec, path)
    doc = json.loads(path.read_text())
    assert [rec["n"] for rec in doc["deviations"]] == [0, 2]  # sorted by n
    back = read_spec(path)
    assert back == spec


def test_spec_file_roundtrip_real(tmp_path):
    spec = RealJacobiSpec((0.45, 0.5), (0.1, -0.2))
    path = tmp_path / "real.json"
    write_spec(spec, path)
    back = read_spec(path)
    assert isinstance(back, RealJacobiSpec)
    assert back == spec


def test_spec_file_malformed_reports_context(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"deviations": [{"n": "x"}]}')
    with pytest.raises(ValueError, match="deviation record"):
        read_spec(path)
    path.write_text("{not json")
    with pytest.raises(ValueError, match="line"):
        read_spec(path)
