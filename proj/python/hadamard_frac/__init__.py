"""Hadamard fractional operators, nonexistence criteria and estimate probes."""

import json

from ._hadamard_frac import (
    DivergentIntegral,
    DomainError,
    QuadratureError,
    RegimeError,
    beta,
    gamma,
    mu_right_image,
    operator,
    sphere_area,
    total_integral,
)
from . import _hadamard_frac as _core


def criterion(alpha, gamma, N, p, lambda1=1.0, lambda2=0.0, a=1.0, f1_integral=1.0,
              f2_integral=0.0):
    """Criterion report as a dict."""
    return json.loads(_core.criterion_json(alpha, gamma, N, p, lambda1, lambda2, a,
                                           f1_integral, f2_integral))


def verify(suite=""):
    return json.loads(_core.verify_json(suite))


def probe(alpha, gamma, N, p, R_grid=(10.0, 20.0, 40.0, 80.0), profile="exp"):
    return json.loads(_core.probe_json(alpha, gamma, N, p, list(R_grid), profile))


__all__ = [
    "DivergentIntegral",
    "DomainError",
    "QuadratureError",
    "RegimeError",
    "beta",
    "criterion",
    "gamma",
    "mu_right_image",
    "operator",
    "probe",
    "sphere_area",
    "total_integral",
    "verify",
]
