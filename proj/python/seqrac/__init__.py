"""Sequential random access code analysis: simulation, certification, bounds."""

import json

from ._core import (
    DomainError,
    IncompatibilityResult,
    SharpnessInterval,
    WitnessPair,
    WorstCaseResult,
    bound_b1,
    bound_b2,
    certify_sharpness,
    counts_csv,
    degree_of_incompatibility,
    eta_from_waveplate,
    exact_distribution,
    ideal_witness_pair,
    optimal_tradeoff,
    projective_bound,
    sample_counts,
    witnesses_from_counts,
    witnesses_from_distribution,
    worst_case_fidelity,
)
from . import _core


def run_certify(w_ab, w_ac, sigma_ab=0.0, sigma_ac=0.0):
    """Certified interval, incompatibility bounds and warnings as a dict."""
    return json.loads(_core._certify_json(WitnessPair(w_ab, w_ac, sigma_ab, sigma_ac)))


def run_sweep(thetas=(), visibility=1.0, events_per_setting=0, seed=20200713):
    """Sweep rows as dicts; an empty theta list uses the twelve table angles."""
    return json.loads(_core._sweep_json(list(thetas), visibility, events_per_setting, seed))


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
