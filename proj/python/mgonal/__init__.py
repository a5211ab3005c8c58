"""Representation of integers by m-gonal forms."""

import json

from . import _mgonal
from ._mgonal import (
    CacheError,
    ResourceError,
    exceptions,
    gamma_estimate,
    is_polygonal,
    nonneg_certificate,
    polygonal_number,
    quad_represents_zp,
    represented_values,
    represents,
    run_cli,
    t_d5,
    truant,
)

__all__ = [
    "CacheError",
    "ResourceError",
    "exceptions",
    "gamma_estimate",
    "is_polygonal",
    "k_window",
    "local_profile",
    "nonneg_certificate",
    "polygonal_number",
    "quad_represents_zp",
    "represented_values",
    "represents",
    "run_cli",
    "t_d5",
    "tree",
    "truant",
]


def local_profile(m, coeffs, N):
    return json.loads(_mgonal.local_profile_json(m, coeffs, N))


def k_window(m, coeffs, A, B, C=0):
    return json.loads(_mgonal.k_window_json(m, coeffs, A, B, C))


def tree(m, depth, bound=100_000):
    return json.loads(_mgonal.tree_json(m, depth, bound))
