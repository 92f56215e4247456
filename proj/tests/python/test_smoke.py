import math
import os
import subprocess

import pytest

import igaplate


def test_analytic_center_value():
    sol = igaplate.disk_clamped_solution(10.0, 0.3, 1.0)
    assert sol.kind == "radial"
    assert sol.deflection(0.0) == pytest.approx(686.25, rel=1e-12)
    assert sol.true_deflection(0.0) == pytest.approx(685.875, rel=1e-12)
    assert sol.rotation(0.0) == 0.0
    assert sol.deflection(10.0) == pytest.approx(0.0, abs=1e-9)


def test_clamped_disk_probe():
    cfg = igaplate.CaseConfig()
    assert cfg.kind == igaplate.CaseKind.disk_clamped
    res = igaplate.solve_case(cfg)
    assert res.probe_u == pytest.approx(686.25, rel=1e-3)
    assert res.probe_u_check == pytest.approx(685.875, rel=1e-3)
    assert res.report.relative_residual < 1e-10
    assert res.dofs.num_free < res.dofs.num_dofs()

    field = res.field()
    center = field.at(0, 0.5, 0.5)
    assert center.u == pytest.approx(res.probe_u, rel=1e-12)
    assert abs(center.x[0]) < 1e-12 and abs(center.x[1]) < 1e-12

    loc = res.locate([5.0, 0.0])
    s = field.at(loc.patch, loc.xi, loc.eta)
    oracle = igaplate.case_oracle(cfg)
    assert s.u == pytest.approx(oracle.deflection(5.0), rel=1e-3)


def test_cantilever_tip_matches_beam():
    cfg = igaplate.CaseConfig()
    cfg.kind = igaplate.CaseKind.rect_cantilever
    cfg.length = 10.0
    cfg.width = 100.0
    cfg.refine = 2
    res = igaplate.solve_case(cfg)
    beam = igaplate.cantilever_solution(10.0, 0.3, 1.0)
    assert res.probe_u == pytest.approx(beam.deflection(10.0), rel=1e-2)


def test_config_validation_errors():
    cfg = igaplate.CaseConfig()
    cfg.degree_p = 1
    with pytest.raises(igaplate.ConfigError):
        cfg.validate()
    with pytest.raises(igaplate.ConfigError):
        igaplate.parse_config_text("case = disk_clamped\nbogus = 1\n")
    cfg = igaplate.parse_config_text("case = disk_ss\nradius = 100\n")
    assert cfg.kind == igaplate.CaseKind.disk_ss
    assert cfg.radius == 100.0


def test_physical_conversion():
    phys = igaplate.PhysicalCase()
    phys.thickness = 0.05
    phys.span = 1.0
    phys.shear_modulus = 22.95e9 / 2.6
    phys.nu = 0.3
    phys.pressure = 1177.2
    scales = igaplate.to_rescaled(phys)
    assert scales.span == pytest.approx(20.0)
    assert scales.fbar == pytest.approx(0.05 * 1177.2 / (22.95e9 / 2.6), rel=1e-12)
    assert scales.coordinate_scale == pytest.approx(0.05)


def test_run_case_writes_outputs(tmp_path):
    cfg = igaplate.CaseConfig()
    cfg.refine = 1
    cfg.line_samples = 11
    cfg.viz_per_span = 2
    cfg.out_dir = str(tmp_path)
    log = igaplate.run_case(cfg)
    assert "dofs" in log
    base = cfg.basename()
    assert (tmp_path / f"{base}.vtk").exists()
    assert (tmp_path / f"{base}_line.csv").exists()
    summary = (tmp_path / f"{base}_summary.txt").read_text()
    assert "case: disk_clamped" in summary
    assert "reference deflection: 686.25" in summary


def test_convergence_slope():
    cfg = igaplate.CaseConfig()
    cfg.refine = 1
    rows = igaplate.convergence_rows(cfg, 3)
    assert [r.dofs for r in rows] == sorted(r.dofs for r in rows)
    assert rows[-1].l2 < rows[0].l2
    assert igaplate.fit_slope(rows) > 4.0
    assert rows[-1].probe_rel_error < 1e-4


def test_smoothed_shear_angle():
    cfg = igaplate.CaseConfig()
    cfg.refine = 2
    res = igaplate.solve_case(cfg)
    field = res.field()
    assert not field.has_recovered_gradient
    igaplate.recover_gradient(field)
    assert field.has_recovered_gradient
    oracle = igaplate.case_oracle(cfg)
    loc = res.locate([5.0, 0.0])
    rec = field.recovered_phi(loc.patch, loc.xi, loc.eta)
    assert rec[0] == pytest.approx(oracle.shear_angle(5.0), rel=1e-2)
    err = igaplate.l2_error(field, oracle)
    assert 0.0 <= err < 1e-6


def test_cli_runs():
    cli = os.environ.get("IGAPLATE_CLI")
    if not cli:
        pytest.skip("IGAPLATE_CLI not set")
    done = subprocess.run([cli, "--help"], capture_output=True, text=True)
    assert done.returncode == 0
    assert "convergence" in done.stdout
    done = subprocess.run([cli, "run", "/nonexistent.cfg"], capture_output=True)
    assert done.returncode == 1
