import math
import os
from pathlib import Path

import numpy as np
import pytest

import deaorient as dea

DATA = Path(os.environ.get("DEAORIENT_DATA_DIR", Path(__file__).resolve().parents[2] / "data")) / "five_dmu.csv"


@pytest.fixture
def tech():
    inputs = np.array([[1, 1, 1, 2, 2], [1, 2, 2, 1, 1]], dtype=float)
    outputs = np.array([[4, 1, 2, 1, 2], [4, 2, 1, 2, 1]], dtype=float)
    return dea.Technology(inputs, outputs, "crs", list("ABCDE"))


ONES = np.ones(2)


def test_linear_orientation(tech):
    e = dea.solve_lo(tech, tech.activity(1), ONES, ONES)
    assert e.model == "lo"
    assert e.beta == pytest.approx(1 / 3, abs=1e-12)
    assert e.rho == pytest.approx(0.5, abs=1e-12)
    np.testing.assert_allclose(e.target.x, [2 / 3, 4 / 3], atol=1e-12)
    np.testing.assert_allclose(e.projection.y, [8 / 3, 8 / 3], atol=1e-9)
    assert dea.is_efficient(tech, e.projection)
    assert dea.is_weakly_efficient(tech, e.target)


def test_quadratic_orientation_routes_agree(tech):
    fast = dea.solve_qo(tech, tech.activity(1), ONES, ONES)
    slow = dea.solve_qo(tech, tech.activity(1), ONES, ONES, force_bisection=True)
    assert fast.method == "fast-path"
    assert slow.method == "bisection"
    assert fast.beta == pytest.approx(1 - math.sqrt(0.5), abs=1e-12)
    assert abs(fast.beta - slow.beta) < 1e-7
    assert dea.beta_q_from_beta_l(1 / 3, 1.0, 1.0) == pytest.approx(fast.beta, abs=1e-12)
    assert dea.brute_beta(tech, tech.activity(1), ONES, ONES, "qo") == pytest.approx(fast.beta, abs=1e-9)


def test_scores_and_cost_gradient():
    assert dea.farrell_oriented_efficiency(np.array([2 / 3, 2 / 3]), np.array([4 / 3, 4 / 3]), 2, 2) == pytest.approx(0.5)
    d_minus, d_plus, multiplier = dea.orientation_from_cost_gradient(np.array([2.0, 4.0]), [True, True], 1, "inf_norm")
    np.testing.assert_allclose(d_minus, [2.0])
    np.testing.assert_allclose(d_plus, [1.0])
    assert multiplier == pytest.approx(8.0)


def test_external_evaluation(tech):
    outside = dea.evaluate_external(tech, dea.Activity(np.array([0.5, 0.5]), np.array([4.0, 4.0])), ONES, ONES, "lo")
    assert outside.outside_technology
    assert outside.rho == 1.0
    assert not dea.in_technology(tech, dea.Activity(np.array([0.5, 0.5]), np.array([4.0, 4.0])))


def test_errors(tech):
    with pytest.raises(dea.DataError, match="orientation must be nonzero"):
        dea.solve_lo(tech, tech.activity(1), np.zeros(2), np.zeros(2))
    with pytest.raises(ValueError):
        dea.beta_q_from_beta_l(2.0, 1.0, 1.0)
    with pytest.raises(IndexError):
        tech.activity(9)


def test_batch_and_self_check():
    report = dea.run_batch(DATA, {"model": "both", "orient": "1,0.5:1,0.5"})
    assert report["dmus"] == list("ABCDE")
    lo, qo = report["runs"]
    assert lo["results"][3]["rho"] == pytest.approx(1 / 3, abs=1e-9)
    assert qo["results"][1]["rho"] == pytest.approx(qo["results"][4]["rho"], abs=1e-12)
    checks = dea.self_check(DATA, {"model": "both"})
    assert checks and all(passed for _, passed, _ in checks)
    with pytest.raises(dea.DataError):
        dea.run_batch(DATA, {"modle": "lo"})
