import json

import numpy as np
import pytest

from jacobi_spectra.cli import main
from jacobi_spectra.core import ComplexJacobiSpec, RealJacobiSpec, write_spec


@pytest.fixture()
def free_spec(tmp_path):
    path = tmp_path / "free.json"
    write_spec(ComplexJacobiSpec.free(), path)
    return str(path)


@pytest.fixture()
def b0_one_spec(tmp_path):
    path = tmp_path / "b0_one.json"
    write_spec(ComplexJacobiSpec(((0, 0j, 1 + 0j, 0j),)), path)
    return str(path)


@pytest.fixture()
def b03_spec(tmp_path):
    path = tmp_path / "b03.json"
    write_spec(RealJacobiSpec((), (0.3,)), path)
    return str(path)


def test_det_free_all_ones(free_spec, tmp_path, capsys):
    out = tmp_path / "det.csv"
    rc = main(["--out", str(out), "det", "--spec", free_spec,
               "--engine", "volterra", "--grid", "16"])
    assert rc == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "re_z,im_z,re_delta,im_delta,error_bound"
    assert len(lines) == 17
    for line in lines[1:]:
        cells = line.split(",")
        assert float(cells[2]) == pytest.approx(1.0, abs=1e-12)
        assert float(cells[3]) == pytest.approx(0.0, abs=1e-12)


def test_det_engines_agree(b0_one_spec, tmp_path):
    vals = {}
    for engine in ("ratio", "volterra", "series"):
        out = tmp_path / f"det_{engine}.csv"
        rc = main(["--out", str(out), "det", "--spec", b0_one_spec,
                   "--engine", engine, "--grid", "8", "--radius", "0.5"])
        assert rc == 0
        rows = out.read_text().strip().splitlines()[1:]
        vals[engine] = [complex(float(r.split(",")[2]), float(r.split(",")[3]))
                        for r in rows]
    for a, b in zip(vals["ratio"], vals["volterra"]):
        assert abs(a - b) < 1e-8
    for a, b in zip(vals["series"], vals["volterra"]):
        assert abs(a - b) < 1e-10


def test_spectrum_rank_one_with_oracle(b0_one_spec, tmp_path):
    out = tmp_path / "spec.csv"
    rc = main(["--out", str(out), "spectrum", "--spec", b0_one_spec,
               "--radius", "0.99", "--oracle", "400"])
    assert rc == 0
    rows = out.read_text().strip().splitlines()[1:]
    assert len(rows) == 1
    cells = rows[0].split(",")
    assert float(cells[0]) == pytest.approx(1.25, abs=1e-8)
    assert cells[4] == "yes"


def test_spectrum_json_format(b0_one_spec, tmp_path):
    out = tmp_path / "spec.json"
    rc = main(["--format", "json", "--out", str(out), "spectrum",
               "--spec", b0_one_spec, "--radius", "0.99"])
    assert rc == 0
    rows = json.loads(out.read_text())
    assert rows[0]["re_lambda"] == pytest.approx(1.25, abs=1e-8)


def test_singularities_subcommand(tmp_path):
    spec_path = tmp_path / "sing.json"
    write_spec(ComplexJacobiSpec(((0, 0j, np.exp(1j * np.pi / 4) / 2, 0j),)), spec_path)
    out = tmp_path / "sing.csv"
    rc = main(["--out", str(out), "singularities", "--spec", str(spec_path)])
    assert rc == 0
    rows = out.read_text().strip().splitlines()[1:]
    assert len(rows) == 1
    cells = rows[0].split(",")
    assert float(cells[2]) == pytest.approx(np.cos(np.pi / 4), abs=1e-6)


def test_scatter_roundtrip_exit_code(b03_spec, tmp_path):
    rc = main(["--out", str(tmp_path / "rt.csv"), "scatter", "roundtrip",
               "--spec", b03_spec, "--tol", "1e-6"])
    assert rc == 0


def test_scatter_forward_then_inverse_via_files(b03_spec, tmp_path):
    data_path = tmp_path / "data.json"
    rc = main(["--out", str(tmp_path / "fwd.csv"), "scatter", "forward",
               "--spec", b03_spec, "--data-out", str(data_path)])
    assert rc == 0
    doc = json.loads(data_path.read_text())
    assert "grid_k" in doc and "F" in doc
    spec_out = tmp_path / "rec.json"
    rc = main(["--out", str(tmp_path / "inv.csv"), "scatter", "inverse",
               "--data", str(data_path), "--spec-out", str(spec_out)])
    assert rc == 0
    rec = json.loads(spec_out.read_text())
    assert rec["b"][0] == pytest.approx(0.3, abs=1e-8)


def test_metrics_subcommand(tmp_path):
    pts = [1 - 3.0 ** (-k) for k in range(1, 12)]
    pfile = tmp_path / "pts.json"
    pfile.write_text(json.dumps(pts))
    out = tmp_path / "metrics.csv"
    rc = main(["--out", str(out), "metrics", "--points", str(pfile)])
    assert rc == 0
    rows = out.read_text().strip().splitlines()
    assert rows[0].startswith("n_points")


def test_deterministic_output(b0_one_spec, tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (out1, out2):
        rc = main(["--seed", "7", "--out", str(out), "spectrum",
                   "--spec", b0_one_spec, "--radius", "0.99"])
        assert rc == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_malformed_spec_is_reported(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    rc = main(["spectrum", "--spec", str(bad)])
    assert rc == 1
    assert "error:" in capsys.readouterr().err
