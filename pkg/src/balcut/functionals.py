"""Continuous objectives over cut vectors and their building blocks.

Every function here accepts a single vector of shape ``(n,)`` or a batch of
shape ``(k, n)``; reductions run over the last axis with numpy's pairwise
summation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError
from .graph import Graph

# Relative tolerance for ties at the half-mass point of the weighted median.
MEDIAN_RTOL = 1e-12


def _x(x) -> np.ndarray:
    return np.asarray(x, dtype=float)


def norm_inf(x) -> np.ndarray | float:
    return np.max(np.abs(_x(x)), axis=-1)


def norm_1d(g: Graph, x) -> np.ndarray | float:
    """Degree-weighted l1 norm sum_i d_i |x_i|."""
    return np.sum(g.d * np.abs(_x(x)), axis=-1)


def i_total(g: Graph, x) -> np.ndarray | float:
    """Total variation sum_{ij} w_ij |x_i - x_j|."""
    x = _x(x)
    return np.sum(g.w * np.abs(x[..., g.ei] - x[..., g.ej]), axis=-1)


def i_plus(g: Graph, x) -> np.ndarray | float:
    """sum_{ij} w_ij |x_i + x_j|."""
    x = _x(x)
    return np.sum(g.w * np.abs(x[..., g.ei] + x[..., g.ej]), axis=-1)


@dataclass(frozen=True)
class MedianResult:
    cL: float
    cR: float
    value: float


def weighted_median(mu, x) -> MedianResult:
    """Minimising interval of c -> sum_i mu_i |x_i - c| and the minimum itself."""
    mu = np.asarray(mu, dtype=float)
    x = _x(x)
    order = np.argsort(x, kind="stable")
    xs, cum = x[order], np.cumsum(mu[order])
    half = cum[-1] / 2.0
    tol = MEDIAN_RTOL * cum[-1]
    kL = int(np.searchsorted(cum, half - tol, side="left"))
    kR = int(np.searchsorted(cum, half + tol, side="right"))
    kR = min(kR, len(x) - 1)
    cL, cR = float(xs[kL]), float(xs[kR])
    return MedianResult(cL, cR, float(np.sum(mu * np.abs(x - cL))))


def n_value(g_or_mu, x) -> np.ndarray | float:
    """N(x) = min_c sum_i mu_i |x_i - c|, batched over leading axes."""
    mu = g_or_mu.mu if isinstance(g_or_mu, Graph) else np.asarray(g_or_mu, dtype=float)
    x = _x(x)
    order = np.argsort(x, axis=-1, kind="stable")
    xs = np.take_along_axis(x, order, axis=-1)
    cum = np.cumsum(mu[order], axis=-1)
    half = cum[..., -1:] / 2.0
    k = np.argmax(cum >= half * (1.0 - 2 * MEDIAN_RTOL), axis=-1)
    c = np.take_along_axis(xs, k[..., None], axis=-1)
    return np.sum(mu * np.abs(x - c), axis=-1)


def _check_nonconstant(x: np.ndarray) -> None:
    if np.any(np.max(x, axis=-1) == np.min(x, axis=-1)):
        raise DomainError("objective undefined at a constant vector")


def objective_B(g: Graph, x) -> np.ndarray | float:
    """Balanced-cut ratio (e ||x||_inf - I+(x)) / N(x); zero-homogeneous."""
    x = _x(x)
    _check_nonconstant(x)
    N = n_value(g, x)
    return (g.e * norm_inf(x) - i_plus(g, x)) / N


def objective_T(g: Graph, x, theta: float) -> np.ndarray | float:
    """theta-balanced ratio; equals objective_B bitwise at theta = 1."""
    x = _x(x)
    _check_nonconstant(x)
    N = n_value(g, x)
    num = theta * g.e * norm_inf(x) + (1.0 - theta) * norm_1d(g, x) - i_plus(g, x)
    return num / N


def h_r(g: Graph, x, r: float) -> np.ndarray | float:
    if r < 0:
        raise DomainError("r must be nonnegative")
    x = _x(x)
    return (i_plus(g, x) + r * n_value(g, x)) / g.e


def l_theta(g: Graph, x, s, theta: float) -> np.ndarray | float:
    x = _x(x)
    return theta * norm_inf(x) + (1.0 - theta) / g.e * norm_1d(g, x) - x @ np.asarray(s, float)


SetPairFunction = Callable[[np.ndarray, np.ndarray], float]


def lovasz_eval(f: SetPairFunction, x) -> float:
    """Set-pair Lovasz extension of ``f`` at ``x``.

    ``f`` receives two disjoint boolean masks ``(V+, V-)``. The integrand is
    constant between consecutive distinct values of |x_i|, so the integral is
    an exact finite sum.
    """
    x = _x(x)
    levels = np.unique(np.abs(x))
    levels = levels[levels > 0]
    total = 0.0
    lo = 0.0
    for hi in levels:
        # on (lo, hi): x_i > t  <=>  x_i >= hi
        total += (hi - lo) * f(x >= hi, x <= -hi)
        lo = hi
    return float(total)
