"""Quantities around the hypergraph of pattern copies in a complete digraph.

The hypergraph ``D(n, H)`` has the ``n(n-1)`` arcs of the complete digraph
as vertices and one hyperedge per copy of ``H`` (an ``l``-arc subset).
This module evaluates its degrees and co-degree function exactly on small
instances, the closed forms that bound them, and the chain of numerical
constants used to build random hosts for isometric cycle copies.

Rational quantities are returned as :class:`fractions.Fraction`; quantities
with astronomically large exponents are handled as natural logarithms.
"""
from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .copies import count_copies, emb, emb_extension, iter_copies
from .graphs import Digraph, Graph, complete_digraph, underlying_graph

#: Relative tolerance for comparisons made in log space.
REL_TOL = 1e-12

#: Largest ``n`` accepted by the exact (enumerating) degree mode.
EXACT_N_CAP = 8


class PreconditionError(ValueError):
    """Inputs outside the domain where a formula is defined."""


# -- 2-density -----------------------------------------------------------------


@dataclass(frozen=True)
class TwoDensity:
    value: Fraction
    witness: tuple[int, ...]  # vertex set of an induced subgraph attaining the value

    def __str__(self) -> str:
        return str(self.value)


def two_density(g: Graph | Digraph) -> TwoDensity:
    """``max (e(F) - 1) / (v(F) - 2)`` over subgraphs ``F`` with at least 3 vertices.

    For a fixed vertex set the induced subgraph has the most edges, so only
    induced subgraphs are scanned.  Digraphs are measured through their
    underlying graph.
    """
    if isinstance(g, Digraph):
        g = underlying_graph(g)
    if g.n < 3:
        raise PreconditionError("2-density needs at least 3 vertices")
    if g.m == 0:
        raise PreconditionError("2-density needs at least one edge")
    if g.n > 20:
        raise PreconditionError("2-density enumeration capped at 20 vertices")
    adj = g.adj
    best: Fraction | None = None
    witness: tuple[int, ...] = ()
    for mask in range(1 << g.n):
        v = mask.bit_count()
        if v < 3:
            continue
        e2 = sum((adj[u] & mask).bit_count() for u in range(g.n) if mask >> u & 1)
        val = Fraction(e2 // 2 - 1, v - 2)
        if best is None or val > best:
            best = val
            witness = tuple(u for u in range(g.n) if mask >> u & 1)
    assert best is not None
    return TwoDensity(best, witness)


def threshold_exponent_m2(pattern: Digraph) -> Fraction:
    """``m_2`` of a pattern, with the usual value 1/2 for a single edge."""
    under = underlying_graph(pattern)
    if under.n == 2 and under.m == 1:
        return Fraction(1, 2)
    return two_density(under).value


# -- f(j) and hyperedge degrees ------------------------------------------------


def f_of_j(pattern: Digraph, j: int) -> int:
    """Fewest vertices spanned by ``j`` arcs of ``pattern``."""
    arcs = pattern.sorted_arcs()
    if not 1 <= j <= len(arcs):
        raise PreconditionError(f"j must lie in 1..{len(arcs)}, got {j}")
    return min(len({x for a in sub for x in a}) for sub in combinations(arcs, j))


def hyperedges(n: int, pattern: Digraph) -> list[frozenset]:
    """All copies of ``pattern`` in the complete digraph on ``n`` vertices."""
    if n > EXACT_N_CAP:
        raise PreconditionError(f"exact enumeration capped at n={EXACT_N_CAP}")
    return list(iter_copies(complete_digraph(n), pattern))


def hyperedge_count_formula(n: int, pattern: Digraph) -> int:
    return math.comb(n, pattern.n) * emb(pattern)


def degree_closed_form(n: int, pattern: Digraph, J: Iterable[tuple[int, int]]) -> int:
    """``d(J) = C(n - |V_J|, h - |V_J|) * emb(J)``."""
    J = frozenset(J)
    vj = len({x for a in J for x in a})
    h = pattern.n
    if vj > h:
        return 0
    return math.comb(n - vj, h - vj) * emb_extension(pattern, J)


def subset_degrees(edges: Sequence[frozenset], j: int) -> dict[frozenset, int]:
    """``d(J)`` for every ``j``-set ``J`` lying in at least one hyperedge."""
    deg: dict[frozenset, int] = defaultdict(int)
    for e in edges:
        for J in combinations(sorted(e), j):
            deg[frozenset(J)] += 1
    return dict(deg)


@dataclass
class DegreeProfile:
    n: int
    pattern: Digraph
    tau: Fraction | float
    mode: str
    d: list[Fraction]  # d[j-1] = d_j
    delta_j: list  # delta_j for j = 1..l
    codegree: Fraction | float

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.d)

    @property
    def tau_below_half(self) -> bool:
        """The container lemma needs ``tau < 1/2``; larger values are still
        evaluated but flagged."""
        return 0 < self.tau < Fraction(1, 2)

    def to_dict(self) -> dict:
        show = lambda x: str(x) if isinstance(x, Fraction) else x  # noqa: E731
        return {
            "n": self.n,
            "pattern": sorted(map(list, self.pattern.arcs)),
            "tau": show(self.tau),
            "mode": self.mode,
            "d_j": [show(x) for x in self.d],
            "delta_j": [show(x) for x in self.delta_j],
            "codegree": show(self.codegree),
            "codegree_float": float(self.codegree),
            "tau_below_half": self.tau_below_half,
        }


def codegree_value(d: Sequence, tau, l: int) -> tuple[list, object]:
    """``delta_j = d_j / (d_1 tau^(j-1))`` and the weighted sum
    ``2^(C(l,2)-1) * sum_{j>=2} 2^(-C(j-1,2)) delta_j``.

    Exact when ``tau`` is a Fraction, float otherwise.
    """
    d1 = Fraction(d[0])
    deltas = [Fraction(d[j - 1]) / d1 / tau ** (j - 1) for j in range(1, l + 1)]
    total = sum(Fraction(1, 2 ** math.comb(j - 1, 2)) * deltas[j - 1] for j in range(2, l + 1))
    return deltas, Fraction(2 ** math.comb(l, 2), 2) * total


def _exact_max_degrees(n: int, pattern: Digraph) -> list[Fraction]:
    edges = hyperedges(n, pattern)
    l = len(pattern.arcs)
    vertices = list(complete_digraph(n).sorted_arcs())
    out = []
    for j in range(1, l + 1):
        best: dict = defaultdict(int)
        for J, dj in subset_degrees(edges, j).items():
            for v in J:
                if dj > best[v]:
                    best[v] = dj
        out.append(Fraction(sum(best[v] for v in vertices), len(vertices)))
    return out


def _formula_max_degrees(n: int, pattern: Digraph) -> list[Fraction]:
    # every J inside a hyperedge spans at most h vertices, so up to symmetry it
    # sits inside a copy on {0..h-1} that contains the arc (0, 1)
    h = pattern.n
    if n < h:
        return [Fraction(0)] * len(pattern.arcs)
    local = hyperedges(h, pattern)
    out = []
    for j in range(1, len(pattern.arcs) + 1):
        best = 0
        seen: set = set()
        for e in local:
            if (0, 1) not in e:
                continue
            rest = sorted(e - {(0, 1)})
            for extra in combinations(rest, j - 1):
                J = frozenset(extra) | {(0, 1)}
                if J in seen:
                    continue
                seen.add(J)
                best = max(best, degree_closed_form(n, pattern, J))
        out.append(Fraction(best))
    return out


def degree_profile(n: int, pattern: Digraph, tau, mode: str = "exact") -> DegreeProfile:
    """Average maximum ``j``-degrees of ``D(n, pattern)`` and the co-degree function.

    ``exact`` enumerates hyperedges; ``formula`` uses the closed form for
    ``d(J)`` together with the symmetry of the complete digraph.  Both give
    the same numbers where they overlap.
    """
    if n < 2:
        raise PreconditionError("need n >= 2")
    if mode == "exact":
        d = _exact_max_degrees(n, pattern)
    elif mode == "formula":
        d = _formula_max_degrees(n, pattern)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if d[0] == 0:
        raise PreconditionError("hypergraph has no edges (n < v(pattern))")
    deltas, total = codegree_value(d, tau, len(d))
    return DegreeProfile(n, pattern, tau, mode, d, deltas, total)


def degree_ratio_bound(n: int, h: int, fj: int) -> Fraction:
    """``(h/n)^(f(j)-2)``, the bound on ``d_j / d_1``."""
    return Fraction(h, n) ** (fj - 2)


def container_tau(n: int, pattern: Digraph, d_tau: float) -> float:
    """``tau = D_tau * n^(-1/m_2)``."""
    m2 = threshold_exponent_m2(pattern)
    return d_tau * n ** (-1 / float(m2))


def codegree_bound(h: int, l: int, d_tau) -> Fraction:
    """``2^C(l,2) * h^(h-2) / D_tau``."""
    if d_tau < 1:
        raise PreconditionError("D_tau must be at least 1")
    return Fraction(2 ** math.comb(l, 2) * h ** (h - 2)) / Fraction(d_tau)


def cycle_codegree_bound(k: int, d_tau) -> Fraction:
    """``2^C(k,2) * k^(k-2) * D_tau^-(k-1)`` for orientations of ``C_k``."""
    if d_tau < 1:
        raise PreconditionError("D_tau must be at least 1")
    return Fraction(2 ** math.comb(k, 2) * k ** (k - 2)) / Fraction(d_tau) ** (k - 1)


# -- saturation ----------------------------------------------------------------


def saturation_delta(eps, R: int, h: int) -> Fraction:
    """``(1 - eps * C(R, h)) / R^2``."""
    if R < h:
        raise PreconditionError("need R >= h")
    return (1 - Fraction(eps) * math.comb(R, h)) / R**2


@dataclass
class SaturationReport:
    n: int
    copies: int
    copy_limit: Fraction
    missing_edges: int
    delta: Fraction
    required: Fraction
    applies: bool  # copies <= eps * C(n, h)
    holds: bool  # missing >= delta n^2 (vacuously true if not applies)

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("copy_limit", "delta", "required"):
            d[key] = str(d[key])
        return d


def saturation_check(orientation: Digraph, pattern: Digraph, eps, R: int) -> SaturationReport:
    """Test ``few copies => many missing edges`` on one orientation of a
    subgraph of ``K_n``; ``R`` should be the oriented Ramsey number of ``pattern``."""
    n, h = orientation.n, pattern.n
    if n < R:
        raise PreconditionError(f"need n >= R, got n={n}, R={R}")
    eps = Fraction(eps)
    copies = count_copies(orientation, pattern)
    limit = eps * math.comb(n, h)
    delta = saturation_delta(eps, R, h)
    missing = math.comb(n, 2) - len(orientation.arcs)
    required = delta * n * n
    applies = copies <= limit
    return SaturationReport(n, copies, limit, missing, delta, required, applies,
                            (not applies) or missing >= required)


# -- probability bound for graphs that do not arrow ------------------------------


def s_k_count(n: int, s: int, k: int) -> int:
    """``C(C(n,2), k) * 2^(s k)``: the count used for tuples whose union has ``k`` edges."""
    return math.comb(math.comb(n, 2), k) * 2 ** (s * k)


def s_k_count_exact(n: int, s: int, k: int) -> int:
    """Number of ``s``-tuples of edge sets of ``K_n`` whose union has exactly ``k``
    edges: each chosen edge belongs to a nonempty subset of the ``s`` sets."""
    return math.comb(math.comb(n, 2), k) * (2**s - 1) ** k


def _logsumexp(values: Sequence[float]) -> float:
    if not values:
        return -math.inf
    top = max(values)
    return top + math.log(sum(math.exp(v - top) for v in values))


EXACT_TUPLE_TERMS = 1_000_000


@dataclass
class ProbabilityBound:
    log_value: float
    t: int
    summed_exactly: bool

    @property
    def value(self) -> float:
        return math.exp(self.log_value) if self.log_value < 700 else math.inf


def container_probability_bound(n: int, p: float, s: int, K: int, tau: float, delta) -> ProbabilityBound:
    """``exp(-delta n^2 p) * (1 + sum_{k=1}^t (e 2^(s-1) n^2 p / k)^k)`` with
    ``t = floor(s K tau n^2)``, in log space.

    Beyond :data:`EXACT_TUPLE_TERMS` terms the sum is replaced by the
    upper estimate ``t * max_k term_k`` (the terms are unimodal with peak
    at ``k = 2^(s-1) n^2 p``).
    """
    if not 0 < p < 1:
        raise PreconditionError("p must lie in (0, 1)")
    if not 0 < tau < 0.5:
        raise PreconditionError("tau must lie in (0, 1/2)")
    t = math.floor(s * K * tau * n * n)
    log_c = (s - 1) * math.log(2) + math.log(n * n * p)
    term = lambda k: k * (1 + log_c - math.log(k))  # noqa: E731
    exact = t <= EXACT_TUPLE_TERMS
    if t == 0:
        log_sum = 0.0
    elif exact:
        log_sum = _logsumexp([0.0] + [term(k) for k in range(1, t + 1)])
    else:
        peak = min(t, max(1, math.floor(math.exp(log_c))))
        best = max(term(k) for k in {peak, min(t, peak + 1), 1, t})
        log_sum = _logsumexp([0.0, math.log(t) + best])
    return ProbabilityBound(-float(delta) * n * n * p + log_sum, t, exact)


def tuple_sum_bruteforce(n: int, s: int, t: int, p: float) -> float:
    """``sum_T p^|union T|`` over ``s``-tuples of edge sets of ``K_n`` with
    union of size at most ``t``, by direct enumeration of tuples (tiny cases)."""
    m = math.comb(n, 2)
    if s * m > 20:
        raise PreconditionError("brute force limited to s * C(n,2) <= 20")
    total = 0.0
    for bits in range(1 << (s * m)):
        union = 0
        for i in range(s):
            union |= bits >> (i * m) & ((1 << m) - 1)
        k = union.bit_count()
        if k <= t:
            total += p**k
    return total


# -- constants chain for isometric cycles ----------------------------------------


def _ge(lhs: float, rhs: float) -> bool:
    return lhs - rhs >= -REL_TOL * max(1.0, abs(lhs), abs(rhs))


@dataclass
class Inequality:
    name: str
    statement: str
    lhs: float  # natural logarithms of both sides unless noted
    rhs: float
    passed: bool


@dataclass
class ConstantsTable:
    k: int
    R: int
    eps: Fraction
    D_tau: float
    D_tau_exact: int | None
    K: int
    s: int
    log_D_p: float
    log_n: float
    log_tau: float
    log_p: float
    log_c_min: float
    checks: list[Inequality] = field(default_factory=list)
    log_base: str = "e"

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "R": self.R,
            "eps": str(self.eps),
            "D_tau": self.D_tau_exact if self.D_tau_exact is not None else self.D_tau,
            "K": self.K,
            "s": self.s,
            "log_D_p": self.log_D_p,
            "log_n": self.log_n,
            "log_tau": self.log_tau,
            "log_p": self.log_p,
            "log_c_min": self.log_c_min,
            "log_base": self.log_base,
            "all_passed": self.all_passed,
            "checks": [asdict(c) for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        rows = [
            ("eps", str(self.eps)),
            ("D_tau", str(self.D_tau_exact) if self.D_tau_exact is not None else repr(self.D_tau)),
            ("K", str(self.K)),
            ("s", str(self.s)),
            ("D_p", f"exp({self.log_D_p:.6f})"),
            ("n", f"exp({self.log_n:.6f})"),
            ("tau", f"exp({self.log_tau:.6f})"),
            ("p", f"exp({self.log_p:.6f})"),
            ("c_min", f"exp({self.log_c_min:.6f})"),
        ]
        width = max(len(r[0]) for r in rows)
        lines = [f"k = {self.k}, R = {self.R}"]
        lines += [f"  {name.rjust(width)} = {val}" for name, val in rows]
        lines.append("checks:")
        for c in self.checks:
            lines.append(f"  [{'pass' if c.passed else 'FAIL'}] {c.name}: {c.statement}")
        return "\n".join(lines)


def _exact_root(value: int, r: int) -> int | None:
    lo, hi = 0, 1
    while hi**r < value:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**r < value:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**r == value else None


def girth_constants(k: int, R: int, log=math.log) -> ConstantsTable:
    """The constants chain for acyclic orientations of ``C_k`` with oriented
    Ramsey number ``R``, with every inequality the chain relies on
    re-evaluated in log space.  ``log`` is the logarithm used inside ``s``."""
    if k < 3:
        raise PreconditionError("need k >= 3")
    if R < k:
        raise PreconditionError("need R >= k")
    ln = math.log
    eps = Fraction(1, 2 * R**k)
    log_eps = -ln(2) - k * ln(R)
    log_dtau = ln(4) + k / 2 * ln(2) + 2 * ln(k) - log_eps / (k - 1)
    # D_tau^(2(k-1)) = 16^(k-1) 2^(k(k-1)) k^(4(k-1)) (2 R^k)^2 is an integer
    dtau_exact = _exact_root(16 ** (k - 1) * 2 ** (k * (k - 1)) * k ** (4 * (k - 1)) * 4 * R ** (2 * k),
                             2 * (k - 1))
    d_tau = float(dtau_exact) if dtau_exact is not None else math.exp(log_dtau)
    K = 800 * k * math.factorial(k) ** 3
    s = math.floor(K * log(2 * R**k))
    log_dp = ln(K) + log_dtau + 2 * ln(s) + ln(10) + 2 * ln(R) + ln(ln(5 * R * R))
    log_n = k * k * log_dp
    shrink = (k - 2) / (k - 1) * log_n
    log_tau = log_dtau - shrink
    log_p = log_dp - shrink
    log_c_min = log_n - 12 * k**3 * ln(k) - 8 * k * k * ln(R)

    checks = []

    def add(name, statement, lhs, rhs, strict=False):
        ok = (lhs > rhs) if strict else _ge(lhs, rhs)
        checks.append(Inequality(name, statement, lhs, rhs, ok))

    add("dtau_power", "D_tau^(k-1) >= 12 2^C(k,2) k^(k-2) k! / eps",
        (k - 1) * log_dtau,
        ln(12) + math.comb(k, 2) * ln(2) + (k - 2) * ln(k) + ln(math.factorial(k)) - log_eps)
    add("n_large", "n >= D_tau^((k-1)^2)", log_n, (k - 1) ** 2 * log_dtau)
    add("eps_small", "eps <= 1 / (2 k! C(R,k))", -log_eps, ln(2 * math.factorial(k) * math.comb(R, k)))
    add("skt_below_one", "s K tau < 1", 0.0, ln(s) + ln(K) + log_tau, strict=True)
    add("sum_peak", "2^(s-1) n^2 p >= s K tau n^2",
        (s - 1) * ln(2) + 2 * log_n + log_p, ln(s) + ln(K) + log_tau + 2 * log_n)
    add("edges_beat_girth", "n^2 p / (4 R^2) > k D_p^(k-1) n",
        2 * log_n + log_p - ln(4 * R * R), ln(k) + (k - 1) * log_dp + log_n, strict=True)
    add("tau_small", "tau < 1/2", -ln(2), log_tau, strict=True)
    add("headline", "n <= c k^(12k^3) R^(8k^2) with c = c_min",
        log_c_min + 12 * k**3 * ln(k) + 8 * k * k * ln(R), log_n)
    # auxiliary comparisons stated alongside the block
    add("dtau_simple", "D_tau <= 8 R^2 k^(k+2)", ln(8) + 2 * ln(R) + (k + 2) * ln(k), log_dtau)
    add("s_simple", "s <= 1600 k^(3k+2) R", ln(1600) + (3 * k + 2) * ln(k) + ln(R), ln(s))
    add("density_vs_log", "n^2 p / log n >= 40 R^2",
        2 * log_n + log_p - ln(log_n), ln(40 * R * R))
    add("p_cubed", "1 - p^3 > 1/6", ln(1 - math.exp(3 * log_p)), -ln(6), strict=True)
    return ConstantsTable(k, R, eps, d_tau, dtau_exact, K, s, log_dp, log_n, log_tau, log_p,
                          log_c_min, checks, "e" if log is math.log else getattr(log, "__name__", "?"))


# -- girth of G(n, p) --------------------------------------------------------------


def expected_short_cycles(n: int, p: float, k: int) -> float:
    """Expected number of cycles of length ``3..k-1`` in ``G(n, p)``."""
    return sum(math.factorial(j - 1) / 2 * math.comb(n, j) * p**j for j in range(3, k))


def fkg_girth_lower_bound(n: int, p: float, k: int) -> float:
    """``exp(-E[X] / (1 - p^3))`` where ``X`` counts cycles shorter than ``k``."""
    if p >= 1:
        return 0.0 if k > 3 and n >= 3 else 1.0
    return math.exp(-expected_short_cycles(n, p, k) / (1 - p**3))


@dataclass
class GirthBound:
    expected_cycles: float
    cycle_bound: float  # (k/6)(pn)^(k-1)
    fkg_bound: float
    log_girth_bound: float  # log of exp(-k D_p^(k-1) n)

    def to_dict(self) -> dict:
        return asdict(self)


def girth_bounds(n: int, p: float, k: int, d_p: float) -> GirthBound:
    ex = expected_short_cycles(n, p, k)
    return GirthBound(ex, k / 6 * (p * n) ** (k - 1), fkg_girth_lower_bound(n, p, k),
                      -k * d_p ** (k - 1) * n)


# -- elementary inequalities used by the evaluators ---------------------------------


def exp_upper_holds(x: float) -> bool:
    """``1 + x <= e^x``."""
    return 1 + x <= math.exp(x) * (1 + 1e-15)


def exp_lower_holds(x: float) -> bool:
    """``1 - x >= exp(-x / (1 - x))`` on ``[0, 1)``."""
    if not 0 <= x < 1:
        raise PreconditionError("x must lie in [0, 1)")
    return 1 - x >= math.exp(-x / (1 - x)) * (1 - 1e-15)


def log_half_holds(x: float) -> bool:
    """``log x <= x / 2`` for ``x > 0``."""
    if x <= 0:
        raise PreconditionError("x must be positive")
    return math.log(x) <= x / 2


__all__ = [
    "ConstantsTable",
    "DegreeProfile",
    "GirthBound",
    "Inequality",
    "PreconditionError",
    "ProbabilityBound",
    "SaturationReport",
    "TwoDensity",
    "girth_bounds",
    "codegree_value",
    "container_tau",
    "degree_closed_form",
    "degree_profile",
    "degree_ratio_bound",
    "expected_short_cycles",
    "f_of_j",
    "fkg_girth_lower_bound",
    "hyperedge_count_formula",
    "hyperedges",
    "codegree_bound",
    "container_probability_bound",
    "cycle_codegree_bound",
    "s_k_count",
    "s_k_count_exact",
    "saturation_check",
    "saturation_delta",
    "subset_degrees",
    "girth_constants",
    "threshold_exponent_m2",
    "tuple_sum_bruteforce",
    "two_density",
]
