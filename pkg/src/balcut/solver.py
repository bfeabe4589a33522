"""SIP, SIP_theta and the alternating SIP-perturb driver."""
from __future__ import annotations

import enum
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .errors import DomainError
from .functionals import objective_T
from .graph import (BinaryCut, Graph, MuScheme, TernaryPartition, balanced_cut_value,
                    is_binary_vector)
from .inner import InnerCase, binary_completion, build_l, solve_inner
from .spectral import second_eigenvector
from .subgradient import SubgradientBundle, SubgradientMode, subgradient_at


class CutType(str, enum.Enum):
    CHEEGER = "cheeger"
    SPARSEST = "sparsest"
    CUSTOM = "custom"

    @property
    def mu_scheme(self) -> MuScheme:
        return {CutType.CHEEGER: MuScheme.DEGREE, CutType.SPARSEST: MuScheme.UNIT,
                CutType.CUSTOM: MuScheme.CUSTOM}[self]


class InitKind(str, enum.Enum):
    SPECTRAL = "spectral"
    RANDOM = "random"
    PROVIDED = "provided"


@dataclass(frozen=True)
class SolverConfig:
    cut_type: CutType = CutType.CHEEGER
    theta_rounds: int = 0
    theta_min: float = 0.3
    theta_max: float = 0.8
    eps_descent: float = 1e-12
    max_iters_per_phase: int = 1000
    seed: int = 0
    subgradient_mode: SubgradientMode = SubgradientMode.BOUNDARY
    init: InitKind = InitKind.SPECTRAL
    random_walk_init: bool = False   # use D^{-1/2} v instead of the L_sym eigenvector

    def __post_init__(self):
        if not 0.0 < self.theta_min <= self.theta_max <= 1.0:
            raise ValueError("need 0 < theta_min <= theta_max <= 1")
        if self.theta_rounds < 0:
            raise ValueError("theta_rounds must be nonnegative")
        if self.max_iters_per_phase < 1:
            raise ValueError("max_iters_per_phase must be positive")


@dataclass
class PhaseRecord:
    kind: str                 # "sip" or "sip_theta"
    theta: float
    trace: list[float]        # objective value of every accepted iterate, starting point first
    stop: str                 # "equality", "stalled" or "cap"
    x: np.ndarray
    cut_value: float | None = None   # combinatorial value of the best level cut (SIP phases)

    @property
    def iterations(self) -> int:
        return len(self.trace) - 1

    @property
    def final_value(self) -> float:
        return self.trace[-1]


@dataclass
class RunReport:
    seed: int
    phases: list[PhaseRecord] = field(default_factory=list)
    best_value: float = float("inf")
    best_partition: BinaryCut | None = None
    best_x: np.ndarray | None = None
    wall_time: float = 0.0

    @property
    def r_trace(self) -> list[list[float]]:
        return [p.trace for p in self.phases]

    @property
    def iterations_total(self) -> int:
        return sum(p.iterations for p in self.phases)

    @property
    def sip_phases(self) -> list[PhaseRecord]:
        return [p for p in self.phases if p.kind == "sip"]

    @property
    def capped(self) -> bool:
        return any(p.stop == "cap" for p in self.phases)

    def relative_error(self, k: int = 6) -> float:
        """(B(x^k) - B(x*)) / B(x*) over the first SIP phase."""
        tr = self.sip_phases[0].trace
        ref = tr[-1]
        return (tr[min(k, len(tr) - 1)] - ref) / ref if ref else 0.0

    def relative_gain(self) -> float:
        first = self.sip_phases[0].cut_value
        return (first - self.best_value) / first if first else 0.0


PhaseCallback = Callable[[np.ndarray, float, float, SubgradientBundle], None]


def extract_partition(x, rtol: float = 1e-12) -> TernaryPartition:
    x = np.asarray(x, dtype=float)
    if np.all(x == x[0]):
        raise DomainError("constant vector has no partition")
    eps = rtol * float(np.max(np.abs(x)))
    return TernaryPartition(len(x), np.flatnonzero(x > eps), np.flatnonzero(x < -eps))


def best_level_cut(g: Graph, x) -> tuple[BinaryCut, float]:
    """Best threshold cut {x > t} over the levels of x; equals {x > 0} for binary x."""
    x = np.asarray(x, dtype=float)
    best = None
    for t in np.unique(x)[:-1]:
        cut = BinaryCut(g.n, np.flatnonzero(x > t))
        val = balanced_cut_value(g, cut)
        if best is None or val < best[1]:
            best = (cut, val)
    if best is None:
        raise DomainError("constant vector has no cut")
    return best


def _normalize(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or np.all(x == x[0]):
        raise DomainError("starting vector must be nonconstant")
    return x / np.sum(np.abs(x))


def run_phase(g: Graph, x0, theta: float, cfg: SolverConfig, rng: np.random.Generator,
              callback: PhaseCallback | None = None, kind: str | None = None) -> PhaseRecord:
    """One SIP_theta descent run (SIP when theta = 1) until no selected subgradient descends."""
    if not 0.0 < theta <= 1.0:
        raise DomainError("theta must lie in (0, 1]")
    x = _normalize(x0)
    r = float(objective_T(g, x, theta))
    trace = [r]
    stop = "cap"
    sideways = False
    while len(trace) - 1 < cfg.max_iters_per_phase:
        bundle, *_ = subgradient_at(g, x, r, theta, rng, cfg.subgradient_mode)
        if callback is not None:
            callback(x, r, theta, bundle)
        inp = build_l(g, bundle.s, theta)
        res = solve_inner(inp, rng)
        y = res.x
        r_new = float(objective_T(g, y, theta))
        if r - r_new > cfg.eps_descent * max(1.0, abs(r)):
            x, r = y, r_new
            trace.append(r)
            sideways = False
            continue
        if res.case == InnerCase.EQUALITY:
            # at theta = 1 a ternary stall point can be traded for an equally good binary one
            if theta == 1.0 and not sideways and not is_binary_vector(x):
                yb = binary_completion(inp, rng)
                if yb is not None and float(objective_T(g, yb, theta)) <= r + cfg.eps_descent * max(1.0, abs(r)):
                    x, sideways = yb, True
                    continue
            stop = "equality"
        else:
            stop = "stalled"
        break
    return PhaseRecord(kind=kind or ("sip" if theta == 1.0 else "sip_theta"), theta=float(theta),
                       trace=trace, stop=stop, x=x)


def sip_run(g: Graph, x0, cfg: SolverConfig, rng: np.random.Generator,
            callback: PhaseCallback | None = None) -> tuple[np.ndarray, PhaseRecord]:
    ph = run_phase(g, x0, 1.0, cfg, rng, callback, kind="sip")
    return ph.x, ph


def sip_theta_run(g: Graph, x0, theta: float, cfg: SolverConfig, rng: np.random.Generator,
                  callback: PhaseCallback | None = None) -> tuple[np.ndarray, PhaseRecord]:
    ph = run_phase(g, x0, theta, cfg, rng, callback, kind="sip_theta")
    return ph.x, ph


def initial_vector(g: Graph, cfg: SolverConfig, rng: np.random.Generator, x0=None) -> np.ndarray:
    if cfg.init == InitKind.PROVIDED:
        if x0 is None:
            raise ValueError("init=provided needs a starting vector")
        return _normalize(x0)
    if cfg.init == InitKind.SPECTRAL and np.all(g.d > 0):
        res = second_eigenvector(g, rng=rng, random_walk=cfg.random_walk_init)
        if res.converged and not np.all(res.vector == res.vector[0]):
            return res.vector
    x = rng.standard_normal(g.n)
    return _normalize(x)


def sip_perturb(g: Graph, cfg: SolverConfig, rng: np.random.Generator | None = None, x0=None,
                callback: PhaseCallback | None = None) -> RunReport:
    """Alternate SIP with SIP_theta at uniformly drawn theta; keep the best SIP output."""
    rng = rng if rng is not None else np.random.default_rng(cfg.seed)
    t0 = time.perf_counter()
    rep = RunReport(seed=cfg.seed)
    x = initial_vector(g, cfg, rng, x0)

    def record_sip(ph: PhaseRecord):
        rep.phases.append(ph)
        cut, val = best_level_cut(g, ph.x)
        ph.cut_value = val
        if val < rep.best_value:
            rep.best_value, rep.best_partition, rep.best_x = val, cut, ph.x

    for _ in range(cfg.theta_rounds):
        x, ph = sip_run(g, x, cfg, rng, callback)
        record_sip(ph)
        theta = float(rng.uniform(cfg.theta_min, cfg.theta_max))
        x, ph = sip_theta_run(g, x, theta, cfg, rng, callback)
        rep.phases.append(ph)
    x, ph = sip_run(g, x, cfg, rng, callback)
    record_sip(ph)
    rep.wall_time = time.perf_counter() - t0
    return rep


@dataclass
class Aggregate:
    reports: list[RunReport]

    @property
    def values(self) -> np.ndarray:
        return np.array([r.best_value for r in self.reports])

    @property
    def best(self) -> RunReport:
        return self.reports[int(np.argmin(self.values))]

    def summary(self) -> dict:
        v = self.values
        err = np.array([r.relative_error(6) for r in self.reports])
        gain = np.array([r.relative_gain() for r in self.reports])
        return {
            "min": float(v.min()), "mean": float(v.mean()), "max": float(v.max()),
            "mean_time_s": float(np.mean([r.wall_time for r in self.reports])),
            "rel_error_6": err.tolist(), "rel_gain": gain.tolist(),
        }


def _one(args) -> RunReport:
    g, cfg, x0 = args
    return sip_perturb(g, cfg, np.random.default_rng(cfg.seed), x0)


def thread_cap() -> int:
    raw = os.environ.get("BALCUT_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def multi_run(g: Graph, cfg: SolverConfig, n_runs: int, x0=None) -> Aggregate:
    """n_runs independent runs; run k uses seed cfg.seed + k."""
    if n_runs < 1:
        raise ValueError("n_runs must be at least 1")
    jobs = [(g, replace(cfg, seed=cfg.seed + k), x0) for k in range(n_runs)]
    workers = min(thread_cap(), n_runs)
    if workers <= 1:
        return Aggregate([_one(j) for j in jobs])
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return Aggregate(list(ex.map(_one, jobs)))
