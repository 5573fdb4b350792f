"""Harmonic equiangular tight frames from difference sets.

Groups are given as a list of cyclic orders; elements are lexicographic
indices with the first component most significant.
"""

import json

from ._etfkit import (
    Error,
    InvalidArgument,
    coherence,
    conference_matrix,
    harmonic_synthesis,
    welch_bound,
)
from . import _etfkit

__all__ = [
    "Error",
    "InvalidArgument",
    "classify",
    "coherence",
    "conference_matrix",
    "construct",
    "harmonic_synthesis",
    "welch_bound",
]


def construct(family, q, j=2, k_orders=None):
    """Build a set file dict for 'singer', 'tpp', 'mcfarland' or 'srds'."""
    return json.loads(_etfkit._construct(family, q, j, k_orders))


def classify(orders, elements):
    """Certificate dict: difference set parameters, fine subgroup, amalgam and composite status."""
    return json.loads(_etfkit._classify(list(orders), list(elements)))
