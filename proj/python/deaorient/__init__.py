"""Generalized-orientation DEA models (linear and quadratic orientation)."""

import json
from pathlib import Path

from ._core import (
    Activity,
    DataError,
    Evaluation,
    SolverError,
    Technology,
    beta_q_from_beta_l,
    brute_beta,
    evaluate_external,
    farrell_oriented_efficiency,
    in_technology,
    is_efficient,
    is_weakly_efficient,
    orientation_from_cost_gradient,
    solve_lo,
    solve_qo,
)

__all__ = [
    "Activity",
    "DataError",
    "Evaluation",
    "SolverError",
    "Technology",
    "beta_q_from_beta_l",
    "brute_beta",
    "evaluate_external",
    "farrell_oriented_efficiency",
    "in_technology",
    "is_efficient",
    "is_weakly_efficient",
    "orientation_from_cost_gradient",
    "run_batch",
    "self_check",
    "solve_lo",
    "solve_qo",
]


def _read(data):
    if isinstance(data, Path) or (isinstance(data, str) and "\n" not in data):
        return Path(data).read_text()
    return data


def run_batch(data, config=None):
    """Evaluates every DMU of a CSV file (path or text); returns the JSON report as a dict."""
    from ._core import _run_batch

    return json.loads(_run_batch(_read(data), json.dumps(config or {})))


def self_check(data, config=None, samples=100, seed=20240601):
    """Runs the invariant and oracle checks; returns a list of (name, passed, detail)."""
    from ._core import _self_check

    return _self_check(_read(data), json.dumps(config or {}), samples, seed)
