"""Evolve minimal gene regulatory networks with differential evolution."""

import os as _os

_here = _os.path.dirname(__file__)
if "GRNEVO_DATA_DIR" not in _os.environ and _os.path.isdir(_os.path.join(_here, "data")):
    _os.environ["GRNEVO_DATA_DIR"] = _os.path.join(_here, "data")

from ._core import (  # noqa: E402
    Network,
    Problem,
    autocorr_metric,
    autocorrelation,
    bistable_raw,
    load_network,
    oscillator_raw,
    penalty,
    run_trial,
    simulate,
)

__all__ = [
    "Network",
    "Problem",
    "autocorr_metric",
    "autocorrelation",
    "bistable_raw",
    "load_network",
    "oscillator_raw",
    "penalty",
    "run_trial",
    "simulate",
]
