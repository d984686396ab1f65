"""DW and AF root bounds for the VRPTW."""

import json

from ._core import (
    Instance,
    builtin_example,
    dag_size,
    enumerate_full,
    enumerate_routes,
    geo_mean,
    load_solomon,
    parse_solomon,
    solve,
)
from ._core import run_matrix as _run_matrix


def run_matrix(instances, **kwargs):
    """Returns (tsv, runs, all_completed); runs is the parsed JSON sidecar."""
    tsv, raw, ok = _run_matrix(instances, **kwargs)
    return tsv, json.loads(raw), ok


__all__ = [
    "Instance",
    "builtin_example",
    "dag_size",
    "enumerate_full",
    "enumerate_routes",
    "geo_mean",
    "load_solomon",
    "parse_solomon",
    "run_matrix",
    "solve",
]
