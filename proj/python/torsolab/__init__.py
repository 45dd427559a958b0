"""Structural decompositions, canonical forms and partial domination for small graphs."""

import json

from ._torsolab import (
    Graph,
    TorsolabError,
    canonical_form,
    emit_graph,
    find_minor,
    find_topological_subgraph,
    isomorphic,
    parse_graph,
)
from . import _torsolab

__all__ = [
    "Graph",
    "TorsolabError",
    "canonical_form",
    "decompose",
    "emit_graph",
    "find_minor",
    "find_topological_subgraph",
    "invariant_decompose",
    "isomorphic",
    "parse_graph",
    "solve_pds",
    "solve_pds_brute",
    "verify_decomposition",
]


def decompose(graph, **constraint):
    return json.loads(_torsolab.decompose(graph, **constraint))


def invariant_decompose(graph, **constraint):
    return json.loads(_torsolab.invariant_decompose(graph, **constraint))


def verify_decomposition(graph, decomposition, **constraint):
    return json.loads(_torsolab.verify_decomposition(graph, json.dumps(decomposition), **constraint))


def solve_pds(graph, target, decomposition=None):
    text = None if decomposition is None else json.dumps(decomposition)
    return json.loads(_torsolab.solve_pds(graph, target, text))


def solve_pds_brute(graph, target):
    return json.loads(_torsolab.solve_pds_brute(graph, target))
