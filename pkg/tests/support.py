"""Shared generators and oracles for the test suite.

The direct-summation oracles here intentionally do the naive thing in the
linear domain; they are the independent route the library's log-domain
implementations are checked against (and they are expected to break on the
stress cases, which is part of what gets tested).
"""

from __future__ import annotations

import math

import numpy as np

from srenyi import Distribution, MassMeasure, normalize

UCB_LABELS = ("A", "B", "C", "D", "E", "F")
UCB_COUNTS = (933, 585, 918, 792, 584, 714)
UCB_TOTAL = 4526


def random_distribution(rng, n=None, low=0.05, high=1.0) -> Distribution:
    """A random fully-supported distribution with moderate dynamic range."""
    if n is None:
        n = int(rng.integers(2, 9))
    weights = rng.uniform(low, high, size=n)
    labels = tuple(f"x{i}" for i in range(n))
    return normalize(MassMeasure(labels, weights))


def random_mass(rng, n=None, low=0.05, high=1.0, scale_low=0.1, scale_high=100.0) -> MassMeasure:
    """Like random_distribution but deliberately unnormalized."""
    if n is None:
        n = int(rng.integers(2, 9))
    scale = rng.uniform(scale_low, scale_high)
    weights = rng.uniform(low, high, size=n) * scale
    labels = tuple(f"x{i}" for i in range(n))
    return MassMeasure(labels, weights)


def random_order(rng, magnitude=3.0, avoid_zero=0.0) -> float:
    """A finite order in [-magnitude, magnitude], optionally bounded away from 0."""
    while True:
        r = float(rng.uniform(-magnitude, magnitude))
        if abs(r) >= avoid_zero:
            return r


def direct_power_mean(weights, values, r) -> float:
    """Textbook linear-domain power mean; no stabilization whatsoever."""
    w = np.asarray(weights, dtype=float)
    x = np.asarray(values, dtype=float)
    mask = w > 0
    w, x = w[mask], x[mask]
    wn = w / w.sum()
    if math.isinf(r):
        return float(x.max() if r > 0 else x.min())
    if r == 0.0:
        return float(np.prod(x**wn))
    with np.errstate(divide="ignore", over="ignore", under="ignore"):
        return float(np.sum(wn * x**r) ** (1.0 / r))


def direct_entropy(dist, r, base=2.0) -> float:
    """-log_b of the direct-summation power mean of the probabilities."""
    m = direct_power_mean(dist.weights, dist.weights, r)
    return -math.log(m) / math.log(base)


def shannon_entropy(dist, base=2.0) -> float:
    p = dist.weights[dist.weights > 0]
    return float(-np.sum(p * np.log(p)) / math.log(base))


def kl_divergence(p_dist, q_dist, base=2.0) -> float:
    """KL divergence with both measures in identical label order."""
    assert p_dist.labels == q_dist.labels
    p = p_dist.weights
    q = q_dist.weights
    mask = p > 0
    return float(np.sum(p[mask] * np.log(p[mask] / q[mask])) / math.log(base))
