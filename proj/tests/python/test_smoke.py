import cmath
import math

import numpy as np
import pytest

import affdress

S3 = math.sqrt(3.0)


def metric_example_one(x):
    e2 = math.exp(2 * S3 * x)
    den = (2 * S3 - 3) * e2 - (2 * S3 + 3)
    return 3 * ((7 - 4 * S3) * e2 * e2 + 4 * e2 + 4 * S3 + 7) / den**2


def test_vacuum_frame_identity_and_product():
    assert np.allclose(affdress.vacuum_frame(0j, 0.3 + 0.8j), np.eye(3), atol=1e-15)
    X = affdress.vacuum_immersion(0.4 - 0.2j, cmath.exp(0.7j))
    assert abs(X[0] * X[1] * X[2] - S3 / 72) < 1e-13


def test_dress3_metric_matches_closed_form():
    out = affdress.dress3_metric(1j, -0.5 + 1j, grid="-2:2:21x-1:1:5")
    assert out["h"].shape == (5, 21)
    ref = np.vectorize(metric_example_one)(out["x"])
    assert np.max(np.abs(out["h"] / ref - 1)) < 1e-9
    assert out["admissible"].all()


def test_one_soliton_agrees_with_dressing():
    s = math.log((2 * S3 - 3) / (3 + 2 * S3))
    assert affdress.one_soliton_h(S3, s, 0.2 + 0.5j) == pytest.approx(metric_example_one(0.2), rel=1e-10)


def test_residual_of_sampled_metric():
    out = affdress.dress3_metric(1j, -0.5 + 1j, grid="-0.01:0.01:21x-0.01:0.01:21")
    rep = affdress.tzitzeica_residual(out["h"], -0.01, 0.01, -0.01, 0.01)
    assert rep["max_residual"] < 1e-7
    assert rep["evaluated"] > 0


def test_elements_and_errors():
    g = affdress.simple_element(1j, -0.5 + 1j, 2, lam=0.5 + 0.2j)
    assert g.shape == (3, 3)
    assert affdress.sixpole_psi(-0.5j, 0.5 + S3 / 2 * 1j, 0j) > 0
    with pytest.raises(affdress.AffdressError):
        affdress.simple_element(1j, -0.5 + 1j, 1, H=2.0, lam=0.5)
    with pytest.raises(ValueError):
        affdress.sixpole_element(1j, 1.0, 1.0, lam=0.5)


def test_six_pole_metric_is_real():
    out = affdress.dress6_metric(grid="-1:1:5x-1:1:5")
    assert np.isfinite(out["h"]).all()


def test_hildebrand_and_selftest():
    assert affdress.hildebrand_metric(1.0) == pytest.approx(1.5 * (1 / math.sinh(S3) ** 2 + 2 / 3))
    assert len(affdress.hildebrand_normalized(1.0, 0.2)) == 3
    results = affdress.selftest("core", 2)
    assert all(r["passed"] for r in results)
    p = affdress.dress3_point(1j, -0.5 + 1j, 1j, 0.3 + 0.1j)
    assert np.all(np.isfinite(p))
