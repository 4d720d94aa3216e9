"""Shared test utilities: random channel factories and common fixtures."""

import math

import numpy as np

from teleportsim.channel import canonicalize, make_channel

DEGENERATE = (0.0, math.sqrt(0.5), math.sqrt(0.5))
SYMMETRIC = (1.0 / math.sqrt(3.0),) * 3


def random_capable_channel(rng):
    """Uniform Dirichlet squares, rejected until max <= 1/2, canonicalized."""
    while True:
        v = rng.dirichlet([1.0, 1.0, 1.0])
        if v.max() <= 0.5:
            break
    ch, _ = canonicalize(make_channel(*np.sqrt(v)))
    return ch


def random_incapable_channel(rng):
    """Random squares with the maximum pushed strictly above 1/2."""
    v = np.sort(rng.dirichlet([1.0, 1.0, 1.0]))
    if v[2] <= 0.5:
        v[2] = 0.5 + rng.uniform(1e-4, 0.49)
        v[:2] *= (1.0 - v[2]) / v[:2].sum()
    sq = v[[0, 2, 1]]  # maximum at index 1 (canonical order)
    a = np.sqrt(sq)
    return make_channel(a[0], a[1], a[2])
