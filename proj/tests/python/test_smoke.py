import math

import numpy as np
import pytest

import flatribbon as fr


def test_helix_rectifying_energy():
    curve = fr.helix(1.0, 1.0)
    assert curve.length == pytest.approx(2 * math.pi * math.sqrt(2), rel=1e-10)
    ribbon = fr.construct_ribbon(curve, fr.principal_normal(curve), 0.1)
    report = fr.bending_energy(ribbon)
    assert report["method"] == "special_case_lambda_zero"
    assert report["value"] == pytest.approx(0.1 * curve.length / 2, rel=1e-12)


def test_same_angle_closed_form():
    curve = fr.helix(1.0, 1.0)
    t, theta = fr.solve_same_angle(curve, fr.principal_normal(curve), q=math.pi / 2)
    expected = 2 * np.arctan2(1.0, 1.0 / np.tan(math.pi / 4) + t / 2)
    assert np.max(np.abs(theta - expected)) < 1e-6


def test_torus_knot_ribbon_is_flat():
    curve, normal = fr.torus_knot()
    w = 0.5 * fr.max_regular_width(curve, normal)
    ribbon = fr.construct_ribbon(curve, normal, w)
    flat = ribbon.flatness(200, 5)
    assert flat["normal_residual"] < 1e-7
    assert flat["developability_residual"] < 1e-7
    vertices, normals, faces = ribbon.mesh(50, 4)
    assert vertices.shape == (200, 3)
    assert faces.shape == (2 * 49 * 3, 3)
    closed = fr.bending_energy(ribbon)["value"]
    quadrature = fr.bending_energy(ribbon, "quadrature")["value"]
    assert abs(closed - quadrature) / closed < 1e-6


def test_ratios_and_scalars():
    assert fr.helix_ratio_b(math.pi, 1.0) == pytest.approx(2 - math.pi / 2, abs=1e-10)
    q = np.linspace(0, 2 * math.pi, 9)
    assert np.all(np.isfinite(fr.helix_ratio_a(q, 2.0)))
    kg, kn, tg = fr.rotate_scalars(0.3, 0.7, 0.1, 1.0, 0.5)
    assert kg * kg + kn * kn == pytest.approx(0.58)
    assert tg == pytest.approx(0.6)


def test_errors_are_raised():
    curve = fr.helix()
    with pytest.raises(fr.FlatRibbonError, match="w_max"):
        fr.construct_ribbon(curve, fr.frenet_rotation(curve, 0.3), 100.0)


def test_validate_default_config():
    rows = fr.validate("[curve]\nkind = helix\n")
    assert rows
    assert all(passed for _, _, _, passed in rows)
