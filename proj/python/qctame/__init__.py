"""Tameness obstructions for discrete planar sets.

Sets, windows and maps are plain dicts in the JSON layout used by the CLI:

    {"kind": "as", "params": {"s": 2}}
    {"shape": "square", "center": [0, 0], "extent": 4}
"""

import json

from . import _qctame
from ._qctame import BudgetExhausted

__all__ = [
    "BudgetExhausted", "set_spec", "disk", "square", "enumerate_points", "nearest_distance",
    "normalize_period", "covering_radius", "theorem_a_ratio", "ratio_scan", "cluster_count",
    "max_cluster", "theorem_b_scan", "vuorinen_lower", "ring_upper", "lemma3_rhs", "annulus_problem",
    "rectangle_problem", "interval_problem", "condenser_modulus", "dilatation_estimate",
    "lemma3_check", "small_diameter_search", "classify",
]


def set_spec(kind, **params):
    return {"kind": kind, "params": params}


def disk(cx, cy, r):
    return {"shape": "disk", "center": [cx, cy], "extent": r}


def square(cx, cy, r):
    return {"shape": "square", "center": [cx, cy], "extent": r}


def _j(value):
    return json.dumps(value)


def enumerate_points(set_, window):
    return _qctame.enumerate(_j(set_), _j(window))


def nearest_distance(set_, point):
    return _qctame.nearest_distance(_j(set_), *point)


def normalize_period(set_):
    return json.loads(_qctame.normalize_period(_j(set_)))


def covering_radius(set_, window, tol, budget=100_000_000):
    return _qctame.covering_radius(_j(set_), _j(window), tol, budget)


def theorem_a_ratio(set_, window, tol, budget=100_000_000):
    return _qctame.theorem_a_ratio(_j(set_), _j(window), tol, budget)


def ratio_scan(set_, windows=None, tol=1e-3, relative=False, threads=0):
    return json.loads(_qctame.ratio_scan(_j(set_), _j(windows), tol, relative, threads))


def cluster_count(set_, point, eps):
    return json.loads(_qctame.cluster_count(_j(set_), point[0], point[1], eps))


def max_cluster(set_, window, eps, threads=0):
    return json.loads(_qctame.max_cluster(_j(set_), _j(window), eps, threads))


def theorem_b_scan(set_, eps, d, max_windows=16, threads=0):
    return json.loads(_qctame.theorem_b_scan(_j(set_), eps, d, max_windows, threads))


vuorinen_lower = _qctame.vuorinen_lower
ring_upper = _qctame.ring_upper
lemma3_rhs = _qctame.lemma3_rhs


def annulus_problem(inner, outer, h):
    return json.loads(_qctame.annulus_problem(inner, outer, h))


def rectangle_problem(length, width, h):
    return json.loads(_qctame.rectangle_problem(length, width, h))


def interval_problem(n, m, d, h, pad=8.0):
    return json.loads(_qctame.interval_problem(n, m, d, h, pad))


def condenser_modulus(problem):
    return json.loads(_qctame.condenser_modulus(_j(problem)))


def dilatation_estimate(map_, window, h):
    return _qctame.dilatation_estimate(_j(map_), _j(window), h)


def lemma3_check(map_, k, n, m, d):
    return json.loads(_qctame.lemma3_check(_j(map_), k, n, m, d))


def small_diameter_search(map_, d, eps, lo, hi):
    return _qctame.small_diameter_search(_j(map_), d, eps, lo, hi)


def classify(set_, threads=0):
    return json.loads(_qctame.classify(_j(set_), threads))
