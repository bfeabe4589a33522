"""Second eigenvector of the normalized Laplacian, used as the starting cut vector."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import connected_components
from scipy.sparse import coo_matrix
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from .errors import DomainError
from .graph import Graph


@dataclass(frozen=True)
class EigInitResult:
    vector: np.ndarray
    eigenvalue_estimate: float
    residual: float
    iterations: int
    converged: bool
    connected: bool


def _check_degrees(g: Graph) -> None:
    if np.any(g.d <= 0):
        raise DomainError("isolated vertex: normalized Laplacian undefined; "
                          "use unit vertex weights or split the graph into components")


def laplacian_apply(g: Graph, y) -> np.ndarray:
    """L_sym y = y - D^{-1/2} W D^{-1/2} y, in O(m)."""
    _check_degrees(g)
    y = np.asarray(y, dtype=float)
    inv = 1.0 / np.sqrt(g.d)
    t = inv * y
    wy = np.bincount(g.ei, g.w * t[g.ej], g.n) + np.bincount(g.ej, g.w * t[g.ei], g.n)
    return y - inv * wy


def _is_connected(g: Graph) -> bool:
    a = coo_matrix((np.ones(g.m), (g.ei, g.ej)), shape=(g.n, g.n))
    return connected_components(a, directed=False)[0] == 1


def second_eigenvector(g: Graph, tol: float = 1e-8, max_iters: int = 5000,
                       rng: np.random.Generator | None = None,
                       random_walk: bool = False) -> EigInitResult:
    """Eigenvector of the second smallest eigenvalue of L_sym, normalized to unit l1 norm.

    The kernel direction D^{1/2} 1 is projected out and ARPACK is run on the
    largest end of 3I - L_sym, whose spectrum is ordered the other way round.
    """
    _check_degrees(g)
    rng = rng if rng is not None else np.random.default_rng()
    n = g.n
    k0 = np.sqrt(g.d)
    k0 /= np.linalg.norm(k0)

    def proj(y):
        return y - k0 * (k0 @ y)

    calls = [0]

    def matvec(y):
        calls[0] += 1
        y = proj(np.ravel(y))
        return proj(3.0 * y - laplacian_apply(g, y))

    v0 = proj(rng.standard_normal(n))
    v = None
    if n >= 3:
        op = LinearOperator((n, n), matvec=matvec, dtype=float)
        try:
            _, vecs = eigsh(op, k=1, which="LA", v0=v0, tol=tol * 1e-2, maxiter=max_iters)
            v = vecs[:, 0]
        except ArpackNoConvergence as exc:
            if exc.eigenvectors.shape[1]:
                v = exc.eigenvectors[:, 0]
    if v is None:
        v = v0
        for _ in range(max_iters):
            v = matvec(v)
            v /= np.linalg.norm(v)
            Lv = laplacian_apply(g, v)
            if np.linalg.norm(Lv - (v @ Lv) * v) <= tol:
                break
    v = proj(v)
    v /= np.linalg.norm(v)
    Lv = laplacian_apply(g, v)
    lam = float(v @ Lv)
    res = float(np.linalg.norm(Lv - lam * v))
    x = v / np.sqrt(g.d) if random_walk else v
    x = x / np.sum(np.abs(x))
    return EigInitResult(vector=x, eigenvalue_estimate=lam, residual=res, iterations=calls[0],
                         converged=res <= tol * max(1.0, np.linalg.norm(v)) * 10,
                         connected=_is_connected(g))
