"""Boundary-detected subgradient selection for H_r(x) = (I+(x) + r N(x)) / e.

The subdifferentials of I+ and N are boxes (up to one linear constraint for N),
so each coordinate of dH_r(x) is an interval. The boundary indicator b picks an
endpoint of every such interval; a vertex whose endpoint disagrees in sign with
x is "desired" and is guaranteed to produce strict descent in the inner step.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .functionals import MedianResult, weighted_median
from .graph import Graph
from .inner import sign

ZERO_RTOL = 1e-12


class SubgradientMode(str, enum.Enum):
    BOUNDARY = "boundary"
    RANDOM = "random"


@dataclass(frozen=True)
class NBoundsData:
    alpha: float
    S_alpha: np.ndarray     # boolean mask
    A_med: float
    B_med: float
    aL: np.ndarray
    aR: np.ndarray


@dataclass(frozen=True)
class IPlusParts:
    p: np.ndarray
    q: np.ndarray
    zero_edges: np.ndarray  # indices into g.ei/g.ej of edges with x_i + x_j = 0
    g: Graph

    def nen(self, i: int) -> np.ndarray:
        """Negative-equal neighbours of vertex i."""
        ei, ej = self.g.ei[self.zero_edges], self.g.ej[self.zero_edges]
        return np.sort(np.concatenate([ej[ei == i], ei[ej == i]]))


@dataclass(frozen=True)
class BoundaryData:
    a: np.ndarray
    b: np.ndarray
    b_prime: np.ndarray
    chi: np.ndarray
    Splus: np.ndarray       # boolean masks
    Sminus: np.ndarray
    Sless: np.ndarray


@dataclass(frozen=True)
class SubgradientBundle:
    u: np.ndarray
    v: np.ndarray
    s: np.ndarray
    z: np.ndarray           # coefficient per zero-sum edge, aligned with ip.zero_edges
    istar: int | None
    sigma: np.ndarray       # vertices in ascending |b| order
    candidates: np.ndarray


def choose_alpha(med: MedianResult, x, mu) -> float:
    """Median point with the larger mass when the median set is an interval (ties: lower end)."""
    if med.cL == med.cR:
        return med.cL
    x = np.asarray(x, dtype=float)
    mu = np.asarray(mu, dtype=float)
    mL = float(np.sum(mu[x == med.cL]))
    mR = float(np.sum(mu[x == med.cR]))
    return med.cR if mR > mL else med.cL


def partial_n_bounds(g: Graph, x, alpha: float | None = None) -> NBoundsData:
    x = np.asarray(x, dtype=float)
    mu = g.mu
    if alpha is None:
        alpha = choose_alpha(weighted_median(mu, x), x, mu)
    on = x == alpha
    A = float(np.sum(mu[x < alpha]) - np.sum(mu[x > alpha]))
    B = float(np.sum(mu[on]))
    off = mu * np.sign(x - alpha)
    if np.count_nonzero(on) >= 2:
        aL = np.where(on, np.maximum(A - B + mu, -mu), off)
        aR = np.where(on, np.minimum(A + B - mu, mu), off)
    else:
        aL = np.where(on, A, off)
        aR = aL.copy()
    return NBoundsData(float(alpha), on, A, B, aL, aR)


def partial_iplus_parts(g: Graph, x) -> IPlusParts:
    x = np.asarray(x, dtype=float)
    tot = x[g.ei] + x[g.ej]
    tol = ZERO_RTOL * max(1.0, float(np.max(np.abs(x))))
    zero = np.abs(tot) <= tol
    sw = np.where(zero, 0.0, g.w * sign(tot))
    zw = np.where(zero, g.w, 0.0)
    p = np.bincount(g.ei, sw, g.n) + np.bincount(g.ej, sw, g.n)
    q = np.bincount(g.ei, zw, g.n) + np.bincount(g.ej, zw, g.n)
    return IPlusParts(p=p, q=q, zero_edges=np.flatnonzero(zero), g=g)


def level_sets(x) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float)
    top = float(np.max(np.abs(x)))
    tol = ZERO_RTOL * max(1.0, top)
    plus = x >= top - tol
    minus = x <= -top + tol
    return plus, minus, ~(plus | minus)


def boundary_indicator(g: Graph, x, r: float, nb: NBoundsData, ip: IPlusParts,
                       theta: float = 1.0) -> BoundaryData:
    x = np.asarray(x, dtype=float)
    Sp, Sm, Sl = level_sets(x)
    p, q = ip.p, ip.q
    if np.count_nonzero(nb.S_alpha) >= 2:
        pick_R = np.abs(p + r * nb.aR) >= np.abs(p + r * nb.aL)
        a_less = np.where(pick_R, nb.aR, nb.aL)
        a = np.where(Sp, nb.aL, np.where(Sm, nb.aR, a_less))
        a = np.where(nb.S_alpha, a, nb.aL)
    else:
        a = nb.aL.copy()
    pra = p + r * a
    b = np.where(Sp, pra - q, np.where(Sm, pra + q, pra + sign(pra) * q))
    b_prime = (np.abs(b) + (theta - 1.0) * g.d) / g.e
    chi = np.where(Sp, -1.0, np.where(Sm, 1.0,
                   (a == nb.aR).astype(float) - (a == nb.aL).astype(float)))
    return BoundaryData(a=a, b=b, b_prime=b_prime, chi=chi, Splus=Sp, Sminus=Sm, Sless=Sl)


def _argmax_set(vals: np.ndarray, mask: np.ndarray, tol: float) -> np.ndarray:
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return idx
    best = np.max(vals[idx])
    return idx[vals[idx] >= best - tol]


def candidate_set(bd: BoundaryData, theta: float, x=None) -> np.ndarray:
    """Desired vertices with the largest boundary violation in each level class."""
    b = bd.b
    tb = ZERO_RTOL * max(1.0, float(np.max(np.abs(b))))
    ab = np.abs(b)
    arms = [_argmax_set(ab, bd.Splus & (b < -tb), tb),
            _argmax_set(ab, bd.Sminus & (b > tb), tb)]
    if theta >= 1.0:
        arms.append(_argmax_set(ab, bd.Sless & (ab > tb), tb))
    else:
        if x is None:
            raise ValueError("x is required for theta < 1")
        x = np.asarray(x, dtype=float)
        bp = bd.b_prime
        tp = ZERO_RTOL * max(1.0, float(np.max(np.abs(bp))))
        arms.append(_argmax_set(np.abs(bp), bd.Sless & (bp > tp), tp))
        arms.append(_argmax_set(ab, bd.Sless & (np.abs(bp) <= tp) & (x * b < 0) & (ab > tb), tb))
    return np.unique(np.concatenate(arms)).astype(np.int64)


def _edge_accumulate(g: Graph, ip: IPlusParts, z: np.ndarray) -> np.ndarray:
    e = ip.zero_edges
    wz = g.w[e] * z
    return ip.p + np.bincount(g.ei[e], wz, g.n) + np.bincount(g.ej[e], wz, g.n)


def select_subgradient(g: Graph, x, r: float, theta: float, bd: BoundaryData,
                       nb: NBoundsData, ip: IPlusParts, rng: np.random.Generator,
                       mode: SubgradientMode = SubgradientMode.BOUNDARY) -> SubgradientBundle:
    x = np.asarray(x, dtype=float)
    sigma = np.argsort(np.abs(bd.b), kind="stable")
    rank = np.empty(g.n, dtype=np.int64)
    rank[sigma] = np.arange(g.n)
    cands = candidate_set(bd, theta, x)
    if mode == SubgradientMode.RANDOM:
        return _random_bundle(g, r, nb, ip, rng, sigma, cands)

    istar = int(rng.choice(cands)) if cands.size else None
    e = ip.zero_edges
    ei, ej = g.ei[e], g.ej[e]
    winner = np.where(rank[ei] >= rank[ej], ei, ej)
    z = bd.chi[winner]
    if istar is not None:
        # i* must land exactly on its boundary value b_{i*}/e
        if bd.Sless[istar]:
            c = float(sign(ip.p[istar] + r * bd.a[istar]))
        else:
            c = float(bd.chi[istar])
        z = np.where((ei == istar) | (ej == istar), c, z)
    u = _edge_accumulate(g, ip, z)

    S = nb.S_alpha
    if np.count_nonzero(S) <= 1:
        v = bd.a.copy()
    else:
        if istar is not None and S[istar]:
            jstar = istar
        else:
            on = np.flatnonzero(S)
            jstar = int(on[np.argmax(rank[on])])
        scale = (nb.A_med - bd.a[jstar]) / (nb.B_med - g.mu[jstar])
        v = np.where(S, scale * g.mu, bd.a)
        v[jstar] = bd.a[jstar]
    s = (u + r * v) / g.e
    return SubgradientBundle(u=u, v=v, s=s, z=z, istar=istar, sigma=sigma, candidates=cands)


def _random_bundle(g, r, nb, ip, rng, sigma, cands) -> SubgradientBundle:
    """Uniform choice inside the subdifferential boxes, used only as a baseline."""
    z = rng.uniform(-1.0, 1.0, size=len(ip.zero_edges))
    u = _edge_accumulate(g, ip, z)
    S = nb.S_alpha
    v = nb.aL.copy()
    if np.count_nonzero(S) >= 2:
        mu = g.mu[S]
        t = rng.uniform(-1.0, 1.0, size=mu.size)
        # shift then clip so that sum mu*t = A; the sum is monotone in the shift
        lo, hi = -2.0, 2.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if np.sum(mu * np.clip(t + mid, -1.0, 1.0)) < nb.A_med:
                lo = mid
            else:
                hi = mid
        v[S] = mu * np.clip(t + 0.5 * (lo + hi), -1.0, 1.0)
    s = (u + r * v) / g.e
    return SubgradientBundle(u=u, v=v, s=s, z=z, istar=None, sigma=sigma, candidates=cands)


def subgradient_at(g: Graph, x, r: float, theta: float, rng: np.random.Generator,
                   mode: SubgradientMode = SubgradientMode.BOUNDARY):
    """Convenience wrapper returning (bundle, boundary data, N bounds, I+ parts)."""
    nb = partial_n_bounds(g, x)
    ip = partial_iplus_parts(g, x)
    bd = boundary_indicator(g, x, r, nb, ip, theta)
    return select_subgradient(g, x, r, theta, bd, nb, ip, rng, mode), bd, nb, ip
