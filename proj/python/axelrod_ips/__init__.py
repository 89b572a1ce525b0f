import json

from ._core import (
    Error,
    binom_pj,
    psi_mean_field,
    random_config,
    rounds_closed_form,
    simulate,
    table1_csv,
    theorem2_bound,
    urn_exact_expectation,
    voter_duality_holds,
)
from ._core import run_experiment as _run_experiment


def run_experiment(kind, **settings):
    """Run one experiment; keyword names follow the CLI flags with '_' for '-'."""
    flat = {"experiment": kind}
    for key, value in settings.items():
        if isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        flat[key] = str(value)
    report, text, passed = _run_experiment(flat)
    return json.loads(report), text, passed


__all__ = [
    "Error",
    "binom_pj",
    "psi_mean_field",
    "random_config",
    "rounds_closed_form",
    "run_experiment",
    "simulate",
    "table1_csv",
    "theorem2_bound",
    "urn_exact_expectation",
    "voter_duality_holds",
]
