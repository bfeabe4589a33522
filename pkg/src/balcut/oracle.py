"""Exhaustive reference solvers for small instances."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SizeGuardError
from .graph import BinaryCut, Graph, TernaryPartition, balanced_cut_value, theta_cut_value

MAX_N_BINARY = 24
MAX_N_TERNARY = 14
MAX_N_INNER = 16
CHUNK = 1 << 16


@dataclass(frozen=True)
class OracleResult:
    value: float
    witness: BinaryCut | TernaryPartition
    enumerated: int


def _guard(n: int, limit: int, what: str) -> None:
    if n > limit:
        raise SizeGuardError(f"{what} enumeration is limited to n <= {limit} (got n={n})")
    if n < 2:
        raise DomainError("need at least two vertices")


def brute_force_h(g: Graph) -> OracleResult:
    """h(G) by enumerating every proper subset with the last vertex on the far side."""
    n = g.n
    _guard(n, MAX_N_BINARY, "binary")
    total = float(np.sum(g.mu))
    shifts = np.arange(n - 1, dtype=np.int64)
    best_val, best_code = np.inf, -1
    count = (1 << (n - 1)) - 1
    for start in range(1, count + 1, CHUNK):
        codes = np.arange(start, min(start + CHUNK, count + 1), dtype=np.int64)
        bits = np.zeros((codes.size, n), dtype=bool)
        bits[:, : n - 1] = (codes[:, None] >> shifts) & 1
        cut = (bits[:, g.ei] != bits[:, g.ej]) @ g.w
        vol = bits @ g.mu
        vals = cut / np.minimum(vol, total - vol)
        k = int(np.argmin(vals))
        if vals[k] < best_val:
            best_val, best_code = float(vals[k]), int(codes[k])
    cut = BinaryCut(n, [i for i in range(n - 1) if (best_code >> i) & 1])
    # report the witness value itself so value and witness agree bit for bit
    return OracleResult(balanced_cut_value(g, cut), cut, count)


@dataclass(frozen=True)
class _TernaryParts:
    codes: np.ndarray      # base-3 assignment codes that are valid ternary partitions
    unassigned_d: np.ndarray
    cut2: np.ndarray       # 2 |E(V1, V2)|
    den: np.ndarray


def _ternary_digits(codes: np.ndarray, n: int) -> np.ndarray:
    digits = np.empty((codes.size, n), dtype=np.int8)
    c = codes.copy()
    for i in range(n):
        digits[:, i] = c % 3
        c //= 3
    return digits


def _ternary_parts(g: Graph) -> _TernaryParts:
    n = g.n
    _guard(n, MAX_N_TERNARY, "ternary")
    total = float(np.sum(g.mu))
    keep_codes, ud, c2, dens = [], [], [], []
    for start in range(0, 3 ** n, CHUNK):
        codes = np.arange(start, min(start + CHUNK, 3 ** n), dtype=np.int64)
        dig = _ternary_digits(codes, n)
        v1, v2 = dig == 1, dig == 2
        n1, n2 = v1.sum(1), v2.sum(1)
        ok = (n1 + n2 > 0) & (n1 < n) & (n2 < n)
        dig, v1, v2, codes = dig[ok], v1[ok], v2[ok], codes[ok]
        a = v1[:, g.ei] & v2[:, g.ej]
        b = v2[:, g.ei] & v1[:, g.ej]
        c2.append(2.0 * ((a | b) @ g.w))
        ud.append((dig == 0) @ g.d)
        m1, m2 = v1 @ g.mu, v2 @ g.mu
        dens.append(np.minimum(m1, total - m1) + np.minimum(m2, total - m2))
        keep_codes.append(codes)
    return _TernaryParts(np.concatenate(keep_codes), np.concatenate(ud),
                         np.concatenate(c2), np.concatenate(dens))


def _partition_from_code(code: int, n: int) -> TernaryPartition:
    dig = _ternary_digits(np.array([code], dtype=np.int64), n)[0]
    return TernaryPartition(n, np.flatnonzero(dig == 1), np.flatnonzero(dig == 2))


def _check_theta(theta: float) -> None:
    if not 0.0 <= theta <= 1.0:
        raise DomainError("theta must lie in [0, 1]")


def brute_force_h_theta(g: Graph, theta: float) -> OracleResult:
    _check_theta(theta)
    parts = _ternary_parts(g)
    vals = (theta * parts.unassigned_d + parts.cut2) / parts.den
    k = int(np.argmin(vals))
    p = _partition_from_code(int(parts.codes[k]), g.n)
    return OracleResult(theta_cut_value(g, p, theta), p, int(parts.codes.size))


def theta_curve(g: Graph, thetas) -> list[tuple[float, float]]:
    """(theta, h_theta) pairs; the enumeration is shared across all theta values."""
    thetas = [float(t) for t in thetas]
    for t in thetas:
        _check_theta(t)
    parts = _ternary_parts(g)
    return [(t, float(np.min((t * parts.unassigned_d + parts.cut2) / parts.den)))
            for t in thetas]


def brute_force_inner(l, theta: float) -> float:
    """min over ||x||_1 <= 1 of theta ||x||_inf - <|x|, l>, in extended precision.

    An optimum is a uniform-magnitude vector on some set P of positive l
    entries, worth (theta - sum_P l)/|P|, or the zero vector.
    """
    l = np.asarray(l, dtype=np.longdouble)
    n = len(l)
    if n > MAX_N_INNER:
        raise SizeGuardError(f"inner enumeration is limited to n <= {MAX_N_INNER} (got n={n})")
    pos = l[l > 0]
    k = len(pos)
    if k == 0:
        return 0.0
    codes = np.arange(1, 1 << k, dtype=np.int64)
    bits = ((codes[:, None] >> np.arange(k)) & 1).astype(np.longdouble)
    vals = (np.longdouble(theta) - bits @ pos) / bits.sum(1)
    return float(min(np.longdouble(0), vals.min()))
