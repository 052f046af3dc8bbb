"""Markov bases of binary graph models.

Tables are dicts mapping bitstrings (one character per graph vertex, in
``graph.labels`` order) to counts.
"""

import json

from . import _markov_atlas as _core
from ._markov_atlas import Graph, MarkovAtlasError

__all__ = [
    "Graph",
    "MarkovAtlasError",
    "width",
    "decompose",
    "connect",
    "search_width",
    "certify",
    "kn_bound",
    "sample",
]


def _table(graph, entries):
    return json.dumps({"vertices": list(graph.labels), "entries": dict(entries)})


def width(graph, evidence_max_total=None):
    return json.loads(_core.width(graph, evidence_max_total))


def decompose(graph, poles=None):
    return json.loads(_core.decompose(graph, poles))


def connect(graph, start, target):
    return json.loads(_core.connect(graph, _table(graph, start), _table(graph, target)))


def search_width(graph, max_total):
    return json.loads(_core.search_width(graph, max_total))


def certify(faces, verify_fiber=False):
    return json.loads(_core.certify(faces, verify_fiber))


def kn_bound(n, verify_fiber=False):
    return json.loads(_core.kn_bound(n, verify_fiber))


def sample(graph, start, steps, burn_in=0, seed=0, degree=None):
    out = json.loads(_core.sample(graph, _table(graph, start), steps, burn_in, seed, degree))
    out["state"] = out["state"]["entries"]
    return out
