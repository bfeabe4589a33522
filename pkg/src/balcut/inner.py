"""Closed-form minimiser of theta ||x||_inf + (1-theta)/e ||x||_{1,d} - <x, s> over the l1 ball.

Writing l = ((theta - 1)/e) d + |s|, the problem becomes
min theta ||x||_inf - <|x|, l> with sign(x_i) = sign(s_i), and it is solved by a
single descending sort of l restricted to {l >= 0}.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation
from .graph import Graph


class InnerCase(str, enum.Enum):
    STRICT_DESCENT = "strict"
    EQUALITY = "equality"


def sign(t) -> np.ndarray:
    """sign with the convention sign(0) = 1."""
    return np.where(np.asarray(t) >= 0, 1.0, -1.0)


def eq_tol(theta: float) -> float:
    return 1e-10 * max(1.0, theta)


@dataclass(frozen=True)
class InnerInput:
    l: np.ndarray
    s: np.ndarray
    theta: float
    omega: np.ndarray     # indices with l_i >= 0 (after zero snapping)


@dataclass(frozen=True)
class InnerResult:
    x: np.ndarray
    value: float
    case: InnerCase
    m0: int
    m1: int
    # descending order of l over omega, as vertex ids; rank k (1-based) is order[k-1]
    order: np.ndarray


def build_l(g: Graph, s, theta: float) -> InnerInput:
    if not 0.0 < theta <= 1.0:
        raise ValueError("theta must lie in (0, 1]")
    s = np.asarray(s, dtype=float)
    stop = float(np.max(np.abs(s))) if s.size else 0.0
    s = np.where(np.abs(s) <= 1e-12 * stop, 0.0, s)
    l = np.abs(s) if theta == 1.0 else (theta - 1.0) / g.e * g.d + np.abs(s)
    top = float(np.max(np.abs(l))) if l.size else 0.0
    l = np.where(np.abs(l) <= 1e-12 * top, 0.0, l)
    return InnerInput(l=l, s=s, theta=float(theta), omega=np.flatnonzero(l >= 0))


def _thresholds(ls: np.ndarray, theta: float, tol: float) -> tuple[int, int]:
    """m0 = min{m : A_m > theta}, m1 = max{m : A_{m-1} < theta} for descending ls (1-based)."""
    k = len(ls)
    prefix = np.cumsum(ls)
    nxt = np.append(ls[1:], 0.0)
    A = prefix - np.arange(1, k + 1) * nxt          # A_1 .. A_k
    above = np.flatnonzero(A > theta + tol)
    m0 = int(above[0]) + 1
    A_prev = np.concatenate([[0.0], A[:-1]])          # A_0 .. A_{k-1}
    below = np.flatnonzero(A_prev < theta - tol)
    m1 = int(below[-1]) + 1
    return m0, m1


def solve_inner(inp: InnerInput, rng: np.random.Generator) -> InnerResult:
    """Minimiser on the l1 ball with ||x||_1 = 1 and x/||x||_inf ternary.

    Strict case (sum_omega l > theta): top m1 ranks get weight 1, ranks after
    m0 get 0. When m0 == m1 rank m0 is kept at 1, the unique optimal support.
    When m1 < m0 the l values on ranks m1+1..m0 are all equal, every subset of
    them is optimal, and each of these ranks gets a fair 0/1 coin.
    Equality case: delegated to :func:`nonconstant_completion`.
    """
    theta = inp.theta
    l = inp.l
    om = inp.omega
    total = float(np.sum(l[om]))
    tol = eq_tol(theta)
    if total < theta - tol:
        raise ContractViolation(
            f"sum of l over omega is {total!r} < theta={theta}; subgradient is invalid")
    order = om[np.argsort(-l[om], kind="stable")]
    if total <= theta + tol:
        x = nonconstant_completion(inp, rng)
        return InnerResult(x=x, value=_inner_value(x, l, theta), case=InnerCase.EQUALITY,
                           m0=len(om), m1=len(om), order=order)
    ls = l[order]
    m0, m1 = _thresholds(ls, theta, tol)
    z = np.zeros(len(order))
    if m0 <= m1:
        z[:m0] = 1.0
    else:
        z[:m1] = 1.0
        z[m1:m0] = rng.integers(0, 2, size=m0 - m1)
    x = np.zeros(len(l))
    x[order] = sign(inp.s[order]) * z / np.sum(z)
    return InnerResult(x=x, value=_inner_value(x, l, theta), case=InnerCase.STRICT_DESCENT,
                       m0=m0, m1=m1, order=order)


def _inner_value(x: np.ndarray, l: np.ndarray, theta: float) -> float:
    return float(theta * np.max(np.abs(x)) - np.abs(x) @ l)


def _coin(rng: np.random.Generator, a: float, b: float) -> float:
    return a if rng.integers(0, 2) == 0 else b


def _interval(si: float) -> tuple[float, float]:
    if si > 0:
        return 0.0, 1.0
    if si < 0:
        return -1.0, 0.0
    return -1.0, 1.0


def _differ_from(target: float, si: float, rng: np.random.Generator) -> float:
    """A value in the allowed endpoint set of a zero-l vertex that differs from ``target``."""
    lo, hi = _interval(si)
    options = [v for v in ((lo, hi) if lo != hi else (lo,)) if v != target]
    if lo == -1.0 and hi == 1.0 and target != 0.0:
        return -target
    if target == 0.0 and lo == -1.0 and hi == 1.0:
        return _coin(rng, -1.0, 1.0)
    if len(options) == 2:
        return _coin(rng, options[0], options[1])
    if not options:
        # e.g. target 0 with interval [0, 1]: only the nonzero endpoint differs
        return hi if lo == 0.0 else lo
    return options[0]


def nonconstant_completion(inp: InnerInput, rng: np.random.Generator) -> np.ndarray:
    """Nonconstant optimal point for the equality case sum_omega l = theta.

    Vertices with l_i > 0 take sign(s_i); vertices with l_i = 0 take a fair
    coin between the endpoints of their allowed interval ([-1,1], [0,1] or
    [-1,0] by the sign of s_i), except for one forced pair that guarantees
    the result is not constant.
    """
    l, s = inp.l, inp.s
    n = len(l)
    gamma1 = np.flatnonzero(l > 0)
    gamma0 = np.flatnonzero(l == 0)
    if len(gamma1) + len(gamma0) < 2 and n > 1 and len(inp.omega) == n:
        raise ContractViolation("fewer than two free vertices; cannot enforce nonconstancy")
    x = np.zeros(n)
    x[gamma1] = sign(s[gamma1])
    forced: set[int] = set()
    if len(gamma1) >= 1:
        if len(gamma0) >= 1:
            j = int(rng.choice(gamma1))
            i = int(rng.choice(gamma0))
            x[i] = _differ_from(x[j], s[i], rng)
            forced.add(i)
    else:
        if len(gamma0) < 2:
            raise ContractViolation("fewer than two free vertices; cannot enforce nonconstancy")
        i = int(rng.choice(gamma0))
        x[i] = _coin(rng, *_interval(s[i]))
        rest = gamma0[gamma0 != i]
        j = int(rng.choice(rest))
        x[j] = _differ_from(x[i], s[j], rng)
        forced.update((i, j))
    for t in gamma0:
        if int(t) not in forced:
            x[t] = _coin(rng, *_interval(s[t]))
    if np.all(x == x[0]):
        raise ContractViolation("equality-case completion produced a constant vector")
    return x / np.sum(np.abs(x))


def binary_completion(inp: InnerInput, rng: np.random.Generator) -> np.ndarray | None:
    """Equality-case optimum with every entry at full magnitude, or None if that is constant.

    Zero-l vertices contribute nothing to the inner objective, so moving them to
    the nonzero endpoint of their interval keeps optimality.
    """
    l, s = inp.l, inp.s
    if np.any(l < 0):
        return None
    x = sign(s)
    free = np.flatnonzero((l == 0) & (s == 0))
    x[free] = np.where(rng.integers(0, 2, size=free.size) == 0, -1.0, 1.0)
    if np.all(x == x[0]):
        if free.size == 0:
            return None
        x[free[0]] = -x[free[0]]
    return x / len(x)
