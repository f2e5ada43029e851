"""Shared test helpers: independent oracles and curve-shape utilities."""

import math

import numpy as np


def bessel_series_oracle(nu: float, x: float, terms: int = 40) -> float:
    """Ascending series sum_k (-1)^k (x/2)^(2k+nu) / (k! Gamma(k+nu+1))."""
    total = 0.0
    for k in range(terms):
        total += (-1) ** k * (x / 2.0) ** (2 * k + nu) \
            / (math.factorial(k) * math.gamma(k + nu + 1.0))
    return total


def laguerre_recurrence_oracle(n: int, alpha: float, u: float) -> float:
    """Three-term recurrence, written independently of the library path."""
    if n == 0:
        return 1.0
    prev, cur = 1.0, 1.0 + alpha - u
    for j in range(2, n + 1):
        prev, cur = cur, ((2 * j - 1 + alpha - u) * cur - (j - 1 + alpha) * prev) / j
    return cur


def zero_crossings(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """x-locations where y changes sign (linear interpolation)."""
    s = np.sign(y)
    idx = np.nonzero(s[:-1] * s[1:] < 0)[0]
    x0, x1, y0, y1 = x[idx], x[idx + 1], y[idx], y[idx + 1]
    return x0 - y0 * (x1 - x0) / (y1 - y0)


def interior_extrema(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """x-locations of strict local extrema, away from element boundaries."""
    left, mid, right = y[:-2], y[1:-1], y[2:]
    is_ext = ((mid > left) & (mid > right)) | ((mid < left) & (mid < right))
    return x[1:-1][is_ext]


def match_locations(coarse: np.ndarray, fine: np.ndarray, tol: float) -> bool:
    """Every coarse-grid location has a fine-grid partner within tol."""
    if len(coarse) == 0:
        return len(fine) == 0
    return all(np.min(np.abs(fine - c)) <= tol for c in coarse)
