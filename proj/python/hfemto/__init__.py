"""Two-tier macro/femto SINR analysis and simulation.

Configurations are flat dicts with the same keys as the JSON config files.
"""

import json

from . import _core
from ._core import AccuracyError, ConfigError, config_keys, log_grid

__all__ = [
    "AccuracyError",
    "ConfigError",
    "analyze",
    "compare",
    "config",
    "config_keys",
    "log_grid",
    "p_busy_f",
    "p_busy_m",
    "simulate",
    "sweep",
]


def _text(cfg):
    return json.dumps(cfg or {})


def _sets(sets):
    return [f"{k}={json.dumps(v)}" for k, v in (sets or {}).items()]


def config(cfg=None, deployment=None, **sets):
    """Validated configuration with every key filled in, as a dict."""
    return json.loads(_core.canonical_config(_text(cfg), _sets(sets), deployment))


def analyze(cfg=None, deployment=None, thresholds=None, **sets):
    """Analytic CDFs and rates: dict with T, Z_m, Z_f and rates."""
    return _core.analyze(_text(cfg), _sets(sets), deployment, thresholds)


def simulate(cfg=None, deployment=None, snapshots=1000, seed=1, window_half_width=2000.0,
             boundary="torus", guard_margin=500.0, workers=1, thresholds=None, **sets):
    """Monte Carlo CDFs, rates and diagnostics."""
    return _core.simulate(_text(cfg), _sets(sets), deployment, snapshots, seed,
                          window_half_width, boundary, guard_margin, workers, thresholds)


def sweep(variable, values, cfg=None, deployment=None, **sets):
    """Analytic class rates for each value of M_s or lambda_out."""
    return _core.sweep(_text(cfg), _sets(sets), deployment, variable, list(values))


def compare(thresholds, a, b):
    """Sup-norm and L1 distance between two CDFs on the same grid."""
    return _core.compare(list(thresholds), list(a), list(b))


def p_busy_f(cfg=None):
    return _core.p_busy_f(_text(cfg))


def p_busy_m(cfg=None):
    return _core.p_busy_m(_text(cfg))
