"""Weighted undirected graphs, G-set I/O and exact combinatorial cut objectives.

Vertices are 0-based inside the library. The G-set text format and the CLI use
1-based labels; conversion happens only at those boundaries.
"""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import DomainError, GsetParseError, PartitionError

# Objective differences below this are treated as ties in the C_B test.
CB_EPS = 1e-9


class MuScheme(str, enum.Enum):
    DEGREE = "degree"   # Cheeger cut
    UNIT = "unit"       # Sparsest cut
    CUSTOM = "custom"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple graph with positive edge weights and positive vertex weights.

    Edges are stored once with ``ei < ej``. ``indptr``/``nbr``/``nbr_w`` form a
    CSR adjacency, ``nbr_edge`` maps each adjacency slot back to its edge id.
    """

    n: int
    ei: np.ndarray
    ej: np.ndarray
    w: np.ndarray
    mu: np.ndarray
    mu_scheme: MuScheme
    d: np.ndarray = field(repr=False)
    e: float = field(repr=False)
    indptr: np.ndarray = field(repr=False)
    nbr: np.ndarray = field(repr=False)
    nbr_w: np.ndarray = field(repr=False)
    nbr_edge: np.ndarray = field(repr=False)
    name: str = ""

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int, float]],
        mu_scheme: MuScheme | str = MuScheme.DEGREE,
        mu: Iterable[float] | None = None,
        name: str = "",
    ) -> "Graph":
        """Build a graph from 0-based ``(i, j, w)`` triples.

        Raises ``ValueError`` for self-loops, duplicates, non-positive weights,
        out-of-range indices, or a vertex weight that is not strictly positive.
        """
        mu_scheme = MuScheme(mu_scheme)
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        seen: set[tuple[int, int]] = set()
        ei, ej, ww = [], [], []
        for i, j, wt in edges:
            i, j, wt = int(i), int(j), float(wt)
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not wt > 0 or not np.isfinite(wt):
                raise ValueError(f"edge ({i}, {j}) has non-positive weight {wt}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            ei.append(key[0])
            ej.append(key[1])
            ww.append(wt)
        return cls._build(n, np.array(ei, dtype=np.int64), np.array(ej, dtype=np.int64),
                          np.array(ww, dtype=float), mu_scheme, mu, name)

    @classmethod
    def _build(cls, n, ei, ej, w, mu_scheme, mu, name):
        order = np.lexsort((ej, ei))
        ei, ej, w = ei[order], ej[order], w[order]
        d = np.bincount(ei, weights=w, minlength=n) + np.bincount(ej, weights=w, minlength=n)
        if mu_scheme is MuScheme.DEGREE:
            mu_arr = d.copy()
        elif mu_scheme is MuScheme.UNIT:
            mu_arr = np.ones(n)
        else:
            if mu is None:
                raise ValueError("custom vertex weights required for MuScheme.CUSTOM")
            mu_arr = np.asarray(list(mu), dtype=float)
            if mu_arr.shape != (n,):
                raise ValueError("mu must have one entry per vertex")
        if np.any(~(mu_arr > 0)):
            bad = int(np.flatnonzero(~(mu_arr > 0))[0])
            raise ValueError(f"vertex {bad} has non-positive weight mu={mu_arr[bad]}"
                             " (isolated vertex under degree weights?)")
        # CSR adjacency, both directions.
        src = np.concatenate([ei, ej])
        dst = np.concatenate([ej, ei])
        eid = np.concatenate([np.arange(len(w)), np.arange(len(w))])
        order = np.lexsort((dst, src))
        src, dst, eid = src[order], dst[order], eid[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(
            n=int(n), ei=_frozen(ei), ej=_frozen(ej), w=_frozen(w), mu=_frozen(mu_arr),
            mu_scheme=mu_scheme, d=_frozen(d), e=float(np.sum(d)), indptr=_frozen(indptr),
            nbr=_frozen(dst), nbr_w=_frozen(w[eid]), nbr_edge=_frozen(eid), name=name,
        )

    @property
    def m(self) -> int:
        return len(self.w)

    def with_mu(self, mu_scheme: MuScheme | str, mu: Iterable[float] | None = None) -> "Graph":
        """Same edge set, different vertex-weight scheme."""
        return Graph._build(self.n, np.array(self.ei), np.array(self.ej), np.array(self.w),
                            MuScheme(mu_scheme), mu, self.name)

    def neighbors(self, i: int) -> np.ndarray:
        return self.nbr[self.indptr[i]:self.indptr[i + 1]]

    def edges(self) -> list[tuple[int, int, float]]:
        return [(int(a), int(b), float(c)) for a, b, c in zip(self.ei, self.ej, self.w)]

    def vol(self, S) -> float:
        return float(np.sum(self.mu[as_mask(self.n, S)]))


def as_mask(n: int, S) -> np.ndarray:
    """Vertex set (iterable of indices or boolean mask) -> boolean mask of length n."""
    if isinstance(S, np.ndarray) and S.dtype == bool:
        if S.shape != (n,):
            raise ValueError("mask length does not match vertex count")
        return S
    mask = np.zeros(n, dtype=bool)
    idx = np.fromiter((int(i) for i in S), dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= n):
        raise ValueError("vertex index out of range")
    mask[idx] = True
    return mask


# --------------------------------------------------------------------------- I/O


def parse_gset(text: str, mu_scheme: MuScheme | str = MuScheme.DEGREE, name: str = "") -> Graph:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise GsetParseError("empty file", 1)
    head = lines[0].split()
    if len(head) != 2:
        raise GsetParseError("header must be 'n m'", 1)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GsetParseError("header must contain two integers", 1) from None
    if n < 1 or m < 0:
        raise GsetParseError("header has invalid counts", 1)
    if len(lines) - 1 < m:
        raise GsetParseError(f"header announces {m} edges, file ends after {len(lines) - 1}",
                             len(lines) + 1)
    if len(lines) - 1 > m:
        raise GsetParseError(f"unexpected content after {m} edge lines", m + 2)
    ei = np.empty(m, dtype=np.int64)
    ej = np.empty(m, dtype=np.int64)
    w = np.empty(m)
    seen: dict[tuple[int, int], int] = {}
    for k, raw in enumerate(lines[1:]):
        lineno = k + 2
        tok = raw.split()
        if len(tok) != 3:
            raise GsetParseError("expected 'i j w'", lineno)
        try:
            i, j = int(tok[0]), int(tok[1])
            wt = float(tok[2])
        except ValueError:
            raise GsetParseError(f"cannot parse {raw.strip()!r}", lineno) from None
        if not (1 <= i <= n and 1 <= j <= n):
            raise GsetParseError(f"vertex index out of range 1..{n}", lineno)
        if i == j:
            raise GsetParseError(f"self-loop at vertex {i}", lineno)
        if not (wt > 0 and np.isfinite(wt)):
            raise GsetParseError(f"edge weight must be positive, got {tok[2]}", lineno)
        key = (min(i, j), max(i, j))
        if key in seen:
            raise GsetParseError(f"duplicate edge {key[0]} {key[1]} (first at line {seen[key]})",
                                 lineno)
        seen[key] = lineno
        ei[k], ej[k], w[k] = key[0] - 1, key[1] - 1, wt
    try:
        return Graph._build(n, ei, ej, w, MuScheme(mu_scheme), None, name)
    except ValueError as exc:
        raise GsetParseError(str(exc)) from None


def load_gset(path: str | os.PathLike, mu_scheme: MuScheme | str = MuScheme.DEGREE) -> Graph:
    """Read a G-set file (``n m`` header, then ``i j w`` lines, 1-based)."""
    with open(path, encoding="ascii", newline=None) as fh:
        text = fh.read()
    return parse_gset(text, mu_scheme, name=os.path.basename(os.fspath(path)))


def _fmt_weight(w: float) -> str:
    return str(int(w)) if float(w).is_integer() else repr(float(w))


def dumps_gset(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{i + 1} {j + 1} {_fmt_weight(w)}" for i, j, w in zip(g.ei, g.ej, g.w))
    return "\n".join(out) + "\n"


def save_gset(g: Graph, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_gset(g))


# ------------------------------------------------------------------ partitions


@dataclass(frozen=True)
class BinaryCut:
    n: int
    S: frozenset

    def __post_init__(self):
        S = frozenset(int(i) for i in self.S)
        object.__setattr__(self, "S", S)
        if any(i < 0 or i >= self.n for i in S):
            raise PartitionError("vertex index out of range")
        if not S or len(S) == self.n:
            raise PartitionError("binary cut side must be nonempty and proper")

    @property
    def complement(self) -> frozenset:
        return frozenset(range(self.n)) - self.S

    def as_partition(self) -> "TernaryPartition":
        return TernaryPartition(self.n, self.S, self.complement)

    def indicator(self) -> np.ndarray:
        x = -np.ones(self.n)
        x[list(self.S)] = 1.0
        return x


@dataclass(frozen=True)
class TernaryPartition:
    """Disjoint ``(V1, V2)``; vertices in neither are un-partitioned."""

    n: int
    V1: frozenset
    V2: frozenset

    def __post_init__(self):
        V1 = frozenset(int(i) for i in self.V1)
        V2 = frozenset(int(i) for i in self.V2)
        object.__setattr__(self, "V1", V1)
        object.__setattr__(self, "V2", V2)
        if any(i < 0 or i >= self.n for i in V1 | V2):
            raise PartitionError("vertex index out of range")
        if V1 & V2:
            raise PartitionError("V1 and V2 overlap")
        if not (V1 | V2):
            raise PartitionError("V1 and V2 are both empty")
        if len(V1) == self.n or len(V2) == self.n:
            raise PartitionError("V1 or V2 covers every vertex")

    @property
    def is_binary(self) -> bool:
        return len(self.V1) + len(self.V2) == self.n

    def indicator(self) -> np.ndarray:
        x = np.zeros(self.n)
        x[list(self.V1)] = 1.0
        x[list(self.V2)] = -1.0
        return x


# ------------------------------------------------------------ combinatorial values


def cut_weight(g: Graph, S, T) -> float:
    """Total weight of edges with one endpoint in ``S`` and the other in ``T``."""
    s = as_mask(g.n, S)
    t = as_mask(g.n, T)
    across = (s[g.ei] & t[g.ej]) | (t[g.ei] & s[g.ej])
    return float(np.sum(g.w[across]))


def balanced_cut_value(g: Graph, cut: BinaryCut) -> float:
    S = as_mask(g.n, cut.S)
    num = cut_weight(g, S, ~S)
    vol_s = float(np.sum(g.mu[S]))
    vol_c = float(np.sum(g.mu[~S]))
    return num / min(vol_s, vol_c)


def theta_cut_value(g: Graph, p: TernaryPartition, theta: float) -> float:
    if not 0.0 <= theta <= 1.0:
        raise DomainError("theta must lie in [0, 1]")
    v1 = as_mask(g.n, p.V1)
    v2 = as_mask(g.n, p.V2)
    rest = ~(v1 | v2)
    total = float(np.sum(g.mu))
    num = theta * float(np.sum(g.d[rest])) + 2.0 * cut_weight(g, v1, v2)
    den = 0.0
    for X in (v1, v2):
        vx = float(np.sum(g.mu[X]))
        den += min(vx, total - vx)
    return num / den


def flip(x, i: int) -> np.ndarray:
    """Copy of ``x`` with component ``i`` negated."""
    y = np.array(x, dtype=float, copy=True)
    y[i] = -y[i]
    return y


def is_binary_vector(x, rtol: float = 1e-12) -> bool:
    x = np.asarray(x, dtype=float)
    top = np.max(np.abs(x))
    return bool(top > 0 and np.all(np.abs(np.abs(x) - top) <= rtol * top))


def is_discrete_local_min(g: Graph, x, eps: float = CB_EPS) -> bool:
    """C_B membership: no single sign flip lowers the balanced-cut objective by more than eps."""
    from .functionals import objective_B

    x = np.asarray(x, dtype=float)
    if not is_binary_vector(x) or np.all(x == x[0]):
        raise DomainError("C_B test needs a nonconstant vector with entries in {-c, c}")
    base = objective_B(g, x)
    flips = np.tile(x, (g.n, 1))
    flips[np.arange(g.n), np.arange(g.n)] *= -1.0
    keep = ~np.all(flips == flips[:, :1], axis=1)
    if not np.any(keep):
        return True
    vals = objective_B(g, flips[keep])
    return bool(np.all(vals >= base - eps))
