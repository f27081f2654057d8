"""Independent reference implementations used to cross-check the package.

Everything here is deliberately slow and simple: direct DFT summation,
exact rational arithmetic for the chaotic map, brute-force grid search for
the classifier, and closed-form gamma ratios for the fractional weights.
None of it shares code with the library under test.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


def naive_dft_amplitudes(series) -> np.ndarray:
    """One-sided DFT amplitudes by direct O(n^2) summation."""
    x = list(map(float, series))
    n = len(x)
    out = []
    for k in range(n // 2 + 1):
        re = sum(x[t] * math.cos(2.0 * math.pi * k * t / n) for t in range(n))
        im = -sum(x[t] * math.sin(2.0 * math.pi * k * t / n) for t in range(n))
        out.append(math.hypot(re, im))
    return np.array(out)


def rational_gls_step(y: float, b: float) -> float:
    """One skew-tent step evaluated in exact rational arithmetic.

    Each floating-point operation of the production map is reproduced by
    computing the exact rational result and rounding it to the nearest
    double, so the reference trajectory is reachable without trusting the
    float pipeline.
    """
    if y < b:
        r = float(Fraction(y) / Fraction(b))
    else:
        num = float(1 - Fraction(y))
        den = float(1 - Fraction(b))
        r = float(Fraction(num) / Fraction(den))
    return r if r < 1.0 else math.nextafter(1.0, 0.0)


def rational_fire(stimulus: float, q: float, b: float, eps: float, max_len: int):
    """Firing time and above-threshold fraction via the rational map.

    Returns (firing_time, ttss, timed_out) with the same conventions as the
    production neuron: the stopping value is excluded from the count and an
    immediate hit reports a zero fraction.
    """
    y = q
    count = 0
    for n in range(max_len):
        gap = float(Fraction(y) - Fraction(stimulus))
        if abs(gap) < eps:
            return n, count / n if n else 0.0, False
        if y > b:
            count += 1
        y = rational_gls_step(y, b)
    return max_len, count / max_len, True


def _softplus(z: float) -> float:
    # log(1 + exp(z)) without overflow
    if z > 35.0:
        return z + math.log1p(math.exp(-z))
    return math.log1p(math.exp(z))


def lr_loss(weights, bias: float, features, labels, c: float) -> float:
    """Scalar-loop evaluation of the regularized logistic loss."""
    total = 0.0
    for row, label in zip(features, labels):
        sign = 1.0 if label == 1 else -1.0
        margin = sign * (sum(w * v for w, v in zip(weights, row)) + bias)
        total += _softplus(-margin)
    return c * total + 0.5 * sum(w * w for w in weights)


def grid_search_lr(features, labels, c: float, radius: float = 10.0,
                   points: int = 13, rounds: int = 6):
    """Brute-force minimizer of the 2-feature logistic loss.

    Iteratively refines a (w0, w1, bias) lattice around the best point.
    Returns (params, loss).
    """
    assert len(features[0]) == 2
    center = (0.0, 0.0, 0.0)
    span = radius
    best = (center, lr_loss(center[:2], center[2], features, labels, c))
    for _ in range(rounds):
        axes = [np.linspace(v - span, v + span, points) for v in best[0]]
        for w0 in axes[0]:
            for w1 in axes[1]:
                for bias in axes[2]:
                    loss = lr_loss((w0, w1), bias, features, labels, c)
                    if loss < best[1]:
                        best = ((float(w0), float(w1), float(bias)), loss)
        span *= 2.0 / (points - 1)
    return best


def gamma_ratio_weights(d: float, n: int) -> np.ndarray:
    """Closed-form fractional integration weights Γ(j+d) / (Γ(d) Γ(j+1))."""
    out = np.empty(n)
    out[0] = 1.0
    for j in range(1, n):
        out[j] = math.gamma(j + d) / (math.gamma(d) * math.gamma(j + 1))
    return out


def lag_autocorr(series, lag: int) -> float:
    """Sample autocorrelation at a fixed lag."""
    x = np.asarray(series, dtype=np.float64)
    x = x - x.mean()
    return float(np.dot(x[lag:], x[:-lag]) / np.dot(x, x))
