"""Seeded Monte Carlo experiments on the binomial random graph ``G(n, p)``.

Every trial draws its graph from its own counter-based stream
(:class:`numpy.random.Philox` keyed by ``(master seed, cell, trial)``), so a
trial's graph depends only on those three numbers: results do not change
with the order or the process in which trials run.
"""
from __future__ import annotations

import csv
import io as _io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.stats import binomtest

from .arrows import _bidirected, arrows, arrows_isometric
from .containers import girth_bounds, threshold_exponent_m2
from .copies import contains_copy
from .graphs import Digraph, Graph, girth, is_acyclic, underlying_graph
from .io import named
from .io import to_dict as graph_dict
from .search import DEFAULT_NODE_BUDGET, BudgetExceeded

CSV_COLUMNS = ("pattern_id", "n", "p", "C", "trials", "successes", "exceeded", "estimate",
               "ci_lo", "ci_hi", "seed")

#: Cells with at least this fraction of budget-exceeded trials are unusable.
UNUSABLE_EXCEEDED_FRACTION = 0.05


def trial_rng(seed: int, *keys: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, *keys])))


def sample_gnp(n: int, p: float, seed: int | np.random.Generator) -> Graph:
    """Each of the ``C(n, 2)`` pairs (in lexicographic order) is an edge with
    probability ``p``, independently."""
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    rng = seed if isinstance(seed, np.random.Generator) else trial_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return Graph(n, frozenset(zip(iu[keep].tolist(), ju[keep].tolist())))


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    if trials == 0:
        return 0.0, 1.0
    ci = binomtest(successes, trials).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)


@dataclass
class ExperimentConfig:
    """A grid of ``(n, p)`` cells.

    Give ``p_values`` directly, or ``c_values`` to use ``p = C * n^(-1/m_2)``
    with ``m_2`` computed from the pattern.
    """

    pattern: Digraph
    pattern_id: str
    n_values: Sequence[int]
    trials: int
    seed: int
    p_values: Sequence[float] | None = None
    c_values: Sequence[float] | None = None
    node_budget: int = 200_000
    threads: int = 1

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if (self.p_values is None) == (self.c_values is None):
            raise ValueError("give exactly one of p_values and c_values")
        if not is_acyclic(self.pattern):
            raise ValueError("pattern must be acyclic")

    def cells(self) -> list[tuple[int, float, float | None]]:
        out = []
        if self.p_values is not None:
            for n in self.n_values:
                out.extend((n, float(p), None) for p in self.p_values)
        else:
            inv = 1 / float(threshold_exponent_m2(self.pattern))
            for n in self.n_values:
                out.extend((n, min(1.0, c * n ** (-inv)), float(c)) for c in self.c_values)
        for _, p, _ in out:
            if not 0 <= p <= 1:
                raise ValueError(f"p={p} outside [0, 1]")
        return out


@dataclass
class ExperimentResult:
    pattern_id: str
    n: int
    p: float
    C: float | None
    trials: int
    successes: int
    exceeded: int
    estimate: float  # successes / decided trials
    ci_lo: float
    ci_hi: float
    seed: int
    mean_time: float = 0.0

    @property
    def decided(self) -> int:
        return self.trials - self.exceeded

    @property
    def usable(self) -> bool:
        return self.exceeded < UNUSABLE_EXCEEDED_FRACTION * self.trials

    @property
    def standard_error(self) -> float:
        d = max(self.decided, 1)
        return math.sqrt(self.estimate * (1 - self.estimate) / d)

    def row(self) -> dict:
        return {k: getattr(self, k) for k in CSV_COLUMNS}


def _result(pattern_id, n, p, c, trials, successes, exceeded, seed, elapsed=0.0) -> ExperimentResult:
    decided = trials - exceeded
    est = successes / decided if decided else 0.0
    lo, hi = wilson_interval(successes, decided)
    return ExperimentResult(pattern_id, n, p, c, trials, successes, exceeded, est, lo, hi, seed,
                            elapsed / trials)


def _arrow_trial(args) -> int:
    """1 if the sampled graph arrows the pattern, 0 if not, -1 over budget."""
    pattern, n, p, seed, cell, trial, budget = args
    g = sample_gnp(n, p, trial_rng(seed, cell, trial))
    try:
        return int(arrows(g, pattern, node_budget=budget).verdict)
    except BudgetExceeded:
        return -1


def _run_trials(fn: Callable, jobs: list, threads: int) -> list:
    if threads <= 1 or len(jobs) < 2:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, jobs, chunksize=max(1, len(jobs) // (4 * threads))))


def estimate_arrow_probability(cfg: ExperimentConfig) -> list[ExperimentResult]:
    """Fraction of sampled graphs that arrow ``cfg.pattern``, per cell."""
    results = []
    for cell, (n, p, c) in enumerate(cfg.cells()):
        start = time.perf_counter()
        jobs = [(cfg.pattern, n, p, cfg.seed, cell, t, cfg.node_budget) for t in range(cfg.trials)]
        outcomes = _run_trials(_arrow_trial, jobs, cfg.threads)
        results.append(_result(cfg.pattern_id, n, p, c, cfg.trials, outcomes.count(1),
                               outcomes.count(-1), cfg.seed, time.perf_counter() - start))
    return results


def crossing_constant(results: Sequence[ExperimentResult], level: float = 0.5) -> float | None:
    """Smallest ``C`` whose estimate reaches ``level`` (cells sorted by ``C``)."""
    for r in sorted((r for r in results if r.C is not None), key=lambda r: r.C):
        if r.estimate >= level:
            return r.C
    return None


def write_csv(results: Sequence[ExperimentResult], path=None) -> str:
    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in results:
        writer.writerow(r.row())
    text = buf.getvalue()
    if path is not None:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    return text


def summary(results: Sequence[ExperimentResult]) -> dict:
    return {
        # timings are left out so that reruns are byte-identical
        "cells": [dict(r.row(), usable=r.usable) for r in results],
        "crossing_C": crossing_constant(results),
    }


# -- girth and joint events ------------------------------------------------------


@dataclass
class GirthEstimate:
    n: int
    p: float
    k: int
    trials: int
    successes: int
    estimate: float
    standard_error: float
    fkg_bound: float  # exp(-E[X]/(1-p^3))
    log_girth_bound: float | None  # when D_p is supplied
    consistent: bool  # estimate >= fkg bound - 3 SE

    def to_dict(self) -> dict:
        return asdict(self)


def girth_probability(n: int, p: float, k: int, trials: int, seed: int,
                      d_p: float | None = None) -> GirthEstimate:
    """Estimate of ``P[girth(G(n, p)) >= k]`` next to the product lower bound."""
    if k < 3:
        raise ValueError("k must be at least 3")
    hits = sum(girth(sample_gnp(n, p, trial_rng(seed, 0, t))) >= k for t in range(trials))
    est = hits / trials
    se = math.sqrt(est * (1 - est) / trials)
    bound = girth_bounds(n, p, k, d_p if d_p is not None else 1.0)
    # three standard errors of the bound's own binomial scale keep the check fair at est = 0
    slack = 3 * max(se, math.sqrt(bound.fkg_bound * (1 - bound.fkg_bound) / trials))
    return GirthEstimate(n, p, k, trials, hits, est, se, bound.fkg_bound,
                         bound.log_girth_bound if d_p is not None else None,
                         est >= bound.fkg_bound - slack)


@dataclass
class JointEstimate:
    n: int
    p: float
    k: int
    trials: int
    girth_hits: int
    arrow_hits: int
    joint_hits: int
    exceeded: int
    bonferroni: float
    certificates: list[Graph] = field(default_factory=list)
    certificates_verified: bool = True

    @property
    def joint(self) -> float:
        return self.joint_hits / max(1, self.trials - self.exceeded)

    def to_dict(self) -> dict:
        d = {k: v for k, v in asdict(self).items() if k != "certificates"}
        d["joint"] = self.joint
        d["certificates"] = [graph_dict(g) for g in self.certificates]
        return d


def joint_positive_probability(n: int, p: float, k: int, pattern: Digraph, trials: int, seed: int,
                               node_budget: int = DEFAULT_NODE_BUDGET,
                               max_certificates: int = 3) -> JointEstimate:
    """Paired estimate of ``P[girth >= k and G -> pattern]``.

    Each sampled graph answers both questions, so the joint frequency can be
    compared with ``P[girth] + P[arrow] - 1`` from the same sample.  Graphs in
    the joint event are re-checked with the isometric relation and kept as
    certificates.
    """
    girth_hits = arrow_hits = joint_hits = exceeded = 0
    certs: list[Graph] = []
    verified = True
    for t in range(trials):
        g = sample_gnp(n, p, trial_rng(seed, 0, t))
        good_girth = girth(g) >= k
        girth_hits += good_girth
        try:
            arrow = arrows(g, pattern, node_budget=node_budget).verdict
        except BudgetExceeded:
            exceeded += 1
            continue
        arrow_hits += arrow
        if arrow and good_girth:
            joint_hits += 1
            if len(certs) < max_certificates:
                certs.append(g)
                verified &= arrows_isometric(g, pattern, node_budget=node_budget).verdict
    decided = max(1, trials - exceeded)
    bonf = max(0.0, girth_hits / trials + arrow_hits / decided - 1)
    return JointEstimate(n, p, k, trials, girth_hits, arrow_hits, joint_hits, exceeded, bonf,
                         certs, verified)


def joint_sweep(pattern: Digraph, k: int, grid: Sequence[tuple[int, float]], trials: int, seed: int,
                node_budget: int = 200_000) -> list[JointEstimate]:
    return [joint_positive_probability(n, p, k, pattern, trials, seed + i, node_budget)
            for i, (n, p) in enumerate(grid)]


# -- correlation of increasing properties ------------------------------------------


def _min_degree(d: int) -> Callable[[Graph], bool]:
    return lambda g: all(g.degree(v) >= d for v in range(g.n))


def _has_copy(pattern: Graph) -> Callable[[Graph], bool]:
    target = _bidirected(pattern)
    return lambda g: contains_copy(_bidirected(g), target)


def property_library(name: str) -> Callable[[Graph], bool]:
    """Monotone increasing graph properties by name: ``connected``,
    ``mindeg:<d>``, ``copy:<builtin graph name>`` (e.g. ``copy:K3``)."""
    if name == "connected":
        return lambda g: g.n <= 1 or g.is_connected()
    if name.startswith("mindeg:"):
        return _min_degree(int(name.split(":", 1)[1]))
    if name.startswith("copy:"):
        target = named(name.split(":", 1)[1])
        if isinstance(target, Digraph):
            target = underlying_graph(target)
        return _has_copy(target)
    raise ValueError(f"unknown property {name!r}")


@dataclass
class FKGReport:
    properties: tuple[str, str]
    n: int
    p: float
    trials: int
    marginals: tuple[float, float]
    joint: float
    product: float
    standard_error: float
    holds: bool

    def to_dict(self) -> dict:
        return asdict(self)


def fkg_check(n: int, p: float, properties: tuple[str, str], trials: int, seed: int) -> FKGReport:
    """Compare the joint frequency of two increasing properties with the
    product of their frequencies on the same sample."""
    f1, f2 = (property_library(name) for name in properties)
    a = b = both = 0
    for t in range(trials):
        g = sample_gnp(n, p, trial_rng(seed, 0, t))
        x, y = f1(g), f2(g)
        a += x
        b += y
        both += x and y
    m1, m2, joint = a / trials, b / trials, both / trials
    se = math.sqrt(max(joint * (1 - joint), m1 * m2 * (1 - m1 * m2)) / trials)
    return FKGReport(tuple(properties), n, p, trials, (m1, m2), joint, m1 * m2, se,
                     joint >= m1 * m2 - 3 * se)


def to_json(obj) -> str:
    def default(x):
        if isinstance(x, Fraction):
            return str(x)
        if hasattr(x, "to_dict"):
            return x.to_dict()
        raise TypeError(type(x))

    return json.dumps(obj, default=default, indent=2, sort_keys=True)


__all__ = [
    "CSV_COLUMNS",
    "ExperimentConfig",
    "ExperimentResult",
    "FKGReport",
    "GirthEstimate",
    "JointEstimate",
    "crossing_constant",
    "estimate_arrow_probability",
    "fkg_check",
    "girth_probability",
    "joint_positive_probability",
    "joint_sweep",
    "property_library",
    "sample_gnp",
    "summary",
    "trial_rng",
    "wilson_interval",
    "write_csv",
]
