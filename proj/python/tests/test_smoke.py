import math

import numpy as np
import pytest

import hquant as hq


def test_quaternion_table():
    assert hq.qmul([0, 1, 0, 0], [0, 0, 1, 0]) == [0, 0, 0, 1]
    assert hq.theta([1, 2, 3, 4]) == [1, -2, -3, -4]
    assert np.allclose(hq.rho([0, 1, 0, 0]), np.diag([1j, -1j]))


def test_dimensions_and_limits():
    assert [hq.dim_Hl(1, l) for l in range(6)] == [1, 5, 14, 30, 55, 91]
    assert hq.lambda_l(1, 1) == 16.0
    assert hq.I_l(1, 0) == pytest.approx(math.pi**2 / 6, rel=1e-14)
    assert hq.T_norm_limit(1) == pytest.approx(math.sqrt(2) / math.pi, abs=1e-3)
    assert hq.ratio_limit(1) == pytest.approx(math.pi / 2, abs=1e-3)
    assert hq.a_l(1, 2) == pytest.approx(hq.a_l_quadrature(1, 2), rel=1e-8)


def test_tEH_points_are_harmonic():
    a = hq.random_tEH(1, seed=3)
    assert a.shape == (4, 4)
    assert hq.in_tE_H(a)
    h = hq.harmonicity(a, 2)
    assert h["trace"] < 1e-10 and h["null_gradient"] < 1e-10


def test_reports():
    rep = hq.run_suite("spectral", n=1, lmax=5)
    assert rep["schema_version"] == 1
    assert [r["dim"] for r in rep["tables"]["spectral"]] == [1, 5, 14, 30, 55, 91]
    assert all(c["status"] == "pass" for c in rep["checks"])
    rows = hq.constants_table(1, 0, 3)
    assert len(rows) == 4 and all(r["a_l_oracle_match"] for r in rows)
    with pytest.raises(ValueError):
        hq.run_suite("nope")


def test_kernel_series():
    k = hq.kernel_diag(1, 2.0, L=40)
    assert k["value"] > 0 and k["tail_bound"] <= 1e-12 * k["value"]
