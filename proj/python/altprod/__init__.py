"""Boundedness analysis of alternating matrix products A_n B_n ... A_1 B_1."""

import functools
import json

from . import _core
from ._core import (
    AltprodError,
    System,
    determinant,
    inverse,
    load_system,
    op_norm,
    spectral_radius,
    stanford_min_norm,
    build_counterexample,
)


def _decoded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        return json.loads(fn(*args, **kwargs))

    return wrapper


check_hypotheses = _decoded(_core.check_hypotheses)
eval_trace = _decoded(_core.eval_trace)
best_response = _decoded(_core.best_response)
mu_n = _decoded(_core.mu_n)
brute_force_mu = _decoded(_core.brute_force_mu)
mu_table = _decoded(_core.mu_table)
build_adversary = _decoded(_core.build_adversary)
certify_contractivity = _decoded(_core.certify_contractivity)
pointwise_probe = _decoded(_core.pointwise_probe)
stabilize_pointwise = _decoded(_core.stabilize_pointwise)

__all__ = [
    "AltprodError",
    "System",
    "best_response",
    "brute_force_mu",
    "build_adversary",
    "build_counterexample",
    "certify_contractivity",
    "check_hypotheses",
    "determinant",
    "eval_trace",
    "inverse",
    "load_system",
    "mu_n",
    "mu_table",
    "op_norm",
    "pointwise_probe",
    "spectral_radius",
    "stabilize_pointwise",
    "stanford_min_norm",
]
