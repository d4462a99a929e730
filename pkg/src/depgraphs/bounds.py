"""Closed-form tail bounds, thresholds, and the containment functional.

Everything here is a pure function evaluated in double precision.
Probability-type bounds are returned verbatim even when they exceed 1;
callers that care get the vacuity flag through evaluate()/BoundReport
rather than a silently clamped number.

Throughout, d is the dependence bound of the distribution (each edge
independent of all but at most d others) and d1 = d + 1.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ResourceLimitError
from .graphs import Graph, SubgraphPattern, edge_cover_number

# edge subsets are enumerated explicitly; 2^18 terms is the cutoff
PHI_MAX_EDGES = 18


def phi(x: float) -> float:
    """phi(x) = (1+x)ln(1+x) - x, the rate function in the second tail bound."""
    if x < 0:
        raise ValueError("phi is used on nonnegative arguments only")
    return (1.0 + x) * math.log1p(x) - x


def janson_bernstein(mu: float, t: float, d: int) -> float:
    """Bernstein-style tail bound 2 exp(-8 t^2 / (50 d1 (mu + t/3))).

    Bounds P(|e(A,B) - mu| >= t) for d-dependent edge sets; with d = 0 it
    weakens the classical Bernstein inequality by a constant, so it always
    dominates the exact binomial tail.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    if d < 0:
        raise ValueError("d must be nonnegative")
    d1 = d + 1
    return 2.0 * math.exp(-8.0 * t * t / (50.0 * d1 * (mu + t / 3.0)))


def janson_phi(mu: float, t: float, d: int) -> float:
    """Tail bound 2 exp(-(mu / 2 d1) phi(4t / 5 mu)); sharper for large t."""
    if mu <= 0:
        raise ValueError("mu must be positive")
    if t <= 0:
        raise ValueError("t must be positive")
    if d < 0:
        raise ValueError("d must be nonnegative")
    d1 = d + 1
    return 2.0 * math.exp(-(mu / (2.0 * d1)) * phi(4.0 * t / (5.0 * mu)))


def degree_interval(n: int, p: float, d: int) -> tuple[float, float]:
    """Interval np +- 4 sqrt(np d1 ln n) that a.s. contains every degree."""
    if n < 2:
        raise ValueError("need n >= 2")
    p = float(p)
    half = 4.0 * math.sqrt(n * p * (d + 1) * math.log(n))
    return n * p - half, n * p + half


def degree_hypothesis(n: int, p: float, d: int) -> bool:
    """Whether p >= (d+1) ln(n) / n, the degree-concentration hypothesis."""
    return float(p) >= (d + 1) * math.log(n) / n


def jumbledness_deviation(a: int, b: int, n: int, p: float, d: int,
                          C: float = 10.0) -> float:
    """Uniform deviation allowance C sqrt(|A||B| n p d1) for all pairs (A,B).

    The theorem needs C >= 10; smaller C is accepted with a warning since
    the matching lower-bound construction shows some C >= 1 is necessary.
    """
    if not (1 <= a <= n and 1 <= b <= n):
        raise ValueError("need 1 <= |A|, |B| <= n")
    if C < 10.0:
        warnings.warn(f"jumbledness constant C={C} below the proved threshold 10",
                      stacklevel=2)
    return C * math.sqrt(a * b * n * float(p) * (d + 1))


def jumbledness_hypothesis(n: int, p: float, d: int, max_degree: int,
                           C: float = 10.0) -> bool:
    """Max-degree hypothesis Delta <= (C^2/14) np of the jumbledness theorem."""
    return max_degree <= (C * C / 14.0) * n * float(p)


def jumbledness_witness_floor(s: int, b: int, n: int, p: float, d: int) -> float:
    """Deviation (1-p) sqrt(1-d/n) sqrt(|S||B| n p d1) that a witness pair beats.

    This is the o(1)-free core of the lower-bound construction; experiments
    compare against a slack multiple of it.
    """
    if d >= 0.99 * n:
        raise ValueError("witness construction requires d < 0.99 n")
    if s < 0 or b < 0:
        raise ValueError("set sizes must be nonnegative")
    p = float(p)
    return (1.0 - p) * math.sqrt(1.0 - d / n) * math.sqrt(s * b * n * p * (d + 1))


def connectivity_upper_threshold(n: int, d: int, fval: float = 0.0) -> float:
    """(d+1)(ln n + fval)/n; above this edge probability G is a.s. connected."""
    if n < 2:
        raise ValueError("need n >= 2")
    return (d + 1) * (math.log(n) + fval) / n


def connectivity_example_threshold(n: int, d: int, eps: float) -> float:
    """(1-eps)(d+1) ln(n/sqrt(d+1))/n; below this the gadget is a.s. disconnected."""
    if n < 2:
        raise ValueError("need n >= 2")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0,1)")
    if (d + 1) > n * n:
        raise ValueError("need d+1 <= n^2 so the log argument is positive")
    return (1.0 - eps) * (d + 1) * math.log(n / math.sqrt(d + 1)) / n


def dependence_ratio(n: int, d: int) -> float:
    """d ln(n)/n, which must vanish for the disconnection example to apply."""
    return d * math.log(n) / n


@lru_cache(maxsize=64)
def _phi_profile(h: Graph) -> tuple[tuple[int, int, int], ...]:
    # (|V(Gamma)|, |E(Gamma)|, f(Gamma)) for every nonempty edge subset Gamma
    edges = tuple(h.edges())
    out = []
    for mask in range(1, 1 << len(edges)):
        chosen = [edges[i] for i in range(len(edges)) if (mask >> i) & 1]
        endpoints = 0
        for u, v in chosen:
            endpoints |= (1 << u) | (1 << v)
        sub = SubgraphPattern(Graph.from_edges(h.n, chosen))
        out.append((endpoints.bit_count(), len(chosen), edge_cover_number(sub)))
    return tuple(out)


def _as_pattern(pattern) -> SubgraphPattern:
    if isinstance(pattern, Graph):
        return SubgraphPattern(pattern)
    return pattern


def phi_functional(pattern: SubgraphPattern, n: int, p: float, d: int) -> float:
    """Containment functional Phi(H).

    Sum over nonempty edge subsets Gamma of H of
    (20|V(H)|/n)^|V(Gamma)| (d+1)^f(Gamma) / p^|E(Gamma)|, where f is the
    minimum number of Gamma-edges covering V(Gamma).  10 Phi(H) bounds the
    probability that G contains no copy of H.
    """
    pattern = _as_pattern(pattern)
    if float(p) <= 0:
        raise ValueError("p must be positive")
    ecount = pattern.edge_count
    if ecount == 0:
        raise ValueError("pattern must have at least one edge")
    if ecount > PHI_MAX_EDGES:
        raise ResourceLimitError(
            f"pattern has {ecount} edges; the subset sum enumerates 2^{ecount} terms "
            f"(limit 2^{PHI_MAX_EDGES})")
    pf = float(p)
    base = 20.0 * pattern.vertex_count / n
    d1 = d + 1
    total = 0.0
    for nv, ne, f in _phi_profile(pattern.graph):
        total += base ** nv * d1 ** f / pf ** ne
    return total


def containment_failure_bound(pattern: SubgraphPattern, n: int, p: float,
                              d: int) -> float:
    """10 Phi(H), the bound on P(G contains no copy of H)."""
    return 10.0 * phi_functional(pattern, n, p, d)


def containment_hypothesis(pattern: SubgraphPattern, n: int, d: int) -> bool:
    """Whether d |E(H)| |V(H)| / n < 0.9 holds."""
    pattern = _as_pattern(pattern)
    return d * pattern.edge_count * pattern.vertex_count / n < 0.9


def clique_bounds(n: int, p: float, d: int, c1: float = 1.0,
                  c2: float = 1.0) -> tuple[float, float]:
    """Reference window (C1 ln n / ln(1/p), C2 d1 ln n / ln(1/p)) for the clique number.

    The constants are unspecified in the underlying result; c1 = c2 = 1
    only draws reference curves.
    """
    p = float(p)
    if not 0 < p < 1:
        raise ValueError("need 0 < p < 1")
    base = math.log(n) / math.log(1.0 / p)
    return c1 * base, c2 * (d + 1) * base


def clique_hypothesis(n: int, p: float, d: int, slack: float = 10.0) -> bool:
    """Whether slack*d/sqrt(n) <= p <= 1/4, a finite-n reading of d/sqrt(n) << p."""
    p = float(p)
    return slack * d / math.sqrt(n) <= p <= 0.25


@dataclass(frozen=True)
class BoundReport:
    """One evaluated bound: inputs echoed, value verbatim, vacuity flagged.

    vacuous is None for quantities that are not probabilities (interval
    endpoints, thresholds, deviations); hypothesis is None when the bound
    has no side condition to report.
    """
    name: str
    inputs: dict = field(compare=False)
    value: float
    vacuous: bool | None = None
    hypothesis: bool | None = None


def _prob_report(name: str, inputs: dict, value: float,
                 hypothesis: bool | None = None) -> BoundReport:
    return BoundReport(name, inputs, value, vacuous=value > 1.0, hypothesis=hypothesis)


BOUND_NAMES = (
    "janson-bernstein",
    "janson-phi",
    "degree-interval",
    "jumbledness-deviation",
    "witness-floor",
    "connectivity-threshold",
    "example-threshold",
    "phi",
    "clique-bounds",
)


def evaluate(name: str, pattern: SubgraphPattern | None = None,
             **params) -> list[BoundReport]:
    """Evaluate a named bound; interval-valued bounds yield one report per endpoint.

    Raises ValueError for unknown names (listing what is available) or for
    missing/invalid parameters.
    """
    def need(*keys):
        missing = [k for k in keys if params.get(k) is None]
        if missing:
            raise ValueError(f"bound {name!r} needs parameters: {', '.join(missing)}")
        return [params[k] for k in keys]

    if name == "janson-bernstein":
        mu, t, d = need("mu", "t", "d")
        return [_prob_report(name, {"mu": mu, "t": t, "d": d},
                             janson_bernstein(mu, t, int(d)))]
    if name == "janson-phi":
        mu, t, d = need("mu", "t", "d")
        return [_prob_report(name, {"mu": mu, "t": t, "d": d},
                             janson_phi(mu, t, int(d)))]
    if name == "degree-interval":
        n, p, d = need("n", "p", "d")
        lo, hi = degree_interval(int(n), p, int(d))
        hyp = degree_hypothesis(int(n), p, int(d))
        inputs = {"n": n, "p": p, "d": d}
        return [BoundReport(f"{name}.low", inputs, lo, hypothesis=hyp),
                BoundReport(f"{name}.high", inputs, hi, hypothesis=hyp)]
    if name == "jumbledness-deviation":
        a, b, n, p, d = need("a", "b", "n", "p", "d")
        C = params.get("C", 10.0)
        inputs = {"a": a, "b": b, "n": n, "p": p, "d": d, "C": C}
        return [BoundReport(name, inputs,
                            jumbledness_deviation(int(a), int(b), int(n), p, int(d), C))]
    if name == "witness-floor":
        s, b, n, p, d = need("s", "b", "n", "p", "d")
        inputs = {"s": s, "b": b, "n": n, "p": p, "d": d}
        return [BoundReport(name, inputs,
                            jumbledness_witness_floor(int(s), int(b), int(n), p, int(d)))]
    if name == "connectivity-threshold":
        n, d = need("n", "d")
        fval = params.get("fval", 0.0)
        inputs = {"n": n, "d": d, "fval": fval}
        return [BoundReport(name, inputs,
                            connectivity_upper_threshold(int(n), int(d), fval))]
    if name == "example-threshold":
        n, d = need("n", "d")
        eps = params.get("eps", 0.1)
        inputs = {"n": n, "d": d, "eps": eps}
        # the example needs d ln(n)/n to vanish; 0.1 is the reporting cutoff
        hyp = dependence_ratio(int(n), int(d)) < 0.1
        return [BoundReport(name, inputs,
                            connectivity_example_threshold(int(n), int(d), eps),
                            hypothesis=hyp)]
    if name == "phi":
        if pattern is None:
            raise ValueError("bound 'phi' needs a pattern")
        n, p, d = need("n", "p", "d")
        value = phi_functional(pattern, int(n), p, int(d))
        hyp = containment_hypothesis(pattern, int(n), int(d))
        inputs = {"pattern": pattern.name or "custom", "n": n, "p": p, "d": d}
        return [BoundReport(name, inputs, value, hypothesis=hyp),
                _prob_report(f"{name}.failure-bound", inputs, 10.0 * value,
                             hypothesis=hyp)]
    if name == "clique-bounds":
        n, p, d = need("n", "p", "d")
        c1 = params.get("c1", 1.0)
        c2 = params.get("c2", 1.0)
        slack = params.get("slack", 10.0)
        lo, hi = clique_bounds(int(n), p, int(d), c1, c2)
        hyp = clique_hypothesis(int(n), p, int(d), slack)
        inputs = {"n": n, "p": p, "d": d, "c1": c1, "c2": c2, "slack": slack}
        return [BoundReport(f"{name}.low", inputs, lo, hypothesis=hyp),
                BoundReport(f"{name}.high", inputs, hi, hypothesis=hyp)]
    raise ValueError(f"unknown bound {name!r}; available: {', '.join(BOUND_NAMES)}")
