"""Exact backends that validate the stochastic components.

Everything here is independent of the samplers' fast paths: events are
computed by walking the full joint latent space, binomial tails by direct
summation, and jumbledness by enumerating all 4^n subset pairs.  Budgets
are enforced, never silently degraded.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import NamedTuple

import numpy as np

from . import rng as rngmod
from .distributions import DistributionModel, _graph_from_present, _sample_present
from .errors import ResourceLimitError
from .graphs import Graph, num_edges
from .predicates import Predicate, Statistic

ENUMERATION_BUDGET = 1 << 24

JUMBLEDNESS_MAX_N = 12

# rational arithmetic is used up to this denominator, floats beyond
RATIONAL_DENOMINATOR_LIMIT = 1 << 16


class ExactEventQuery(NamedTuple):
    model: DistributionModel
    predicate: Predicate


def state_space_size(model: DistributionModel) -> int:
    """Number of joint latent assignments the enumeration must visit."""
    size = 1
    for latent in model.iter_latents():
        if latent.kind == "bernoulli":
            size *= 2
        else:
            size *= comb(len(latent.edges), latent.a)
    return size


def _check_budget(model: DistributionModel) -> None:
    size = state_space_size(model)
    if size > ENUMERATION_BUDGET:
        raise ResourceLimitError(
            f"latent space has {size} outcomes, budget is {ENUMERATION_BUDGET}")


def _latent_options(model: DistributionModel):
    """Per-latent option lists of (coin increment, edges turned on)."""
    options = []
    coins = 0
    uniform_combos = 1
    for latent in model.iter_latents():
        if latent.kind == "bernoulli":
            coins += 1
            options.append(((0, ()), (1, latent.edges)))
        else:
            combos = tuple((0, c) for c in
                           itertools.combinations(latent.edges, latent.a))
            uniform_combos *= len(combos)
            options.append(combos)
    return options, coins, uniform_combos


def _outcomes(options):
    for choice in itertools.product(*options):
        k = 0
        edges = []
        for inc, es in choice:
            k += inc
            edges.extend(es)
        yield k, edges


def _exact_p_arithmetic(p):
    if isinstance(p, Fraction) and p.denominator <= RATIONAL_DENOMINATOR_LIMIT:
        return p, Fraction(1) - p, Fraction(0)
    pf = float(p)
    return pf, 1.0 - pf, 0.0


def _collapse(weights_by_k, p, coins: int, uniform_combos: int):
    # weights_by_k[k] counts qualifying outcomes with exactly k coins on;
    # every uniform combination carries the same 1/uniform_combos factor
    pv, qv, zero = _exact_p_arithmetic(p)
    total = zero
    for k, w in enumerate(weights_by_k):
        if w:
            total = total + w * pv ** k * qv ** (coins - k)
    return total / uniform_combos


def exact_event_probability(model_or_query, predicate: Predicate | None = None):
    """P(predicate) by full latent enumeration; exact Fraction for rational p.

    Raises ResourceLimitError when the joint latent space exceeds the
    2^24-outcome budget.
    """
    if isinstance(model_or_query, ExactEventQuery):
        model, predicate = model_or_query
    else:
        model = model_or_query
        if predicate is None:
            raise ValueError("predicate required")
    _check_budget(model)
    options, coins, uniform_combos = _latent_options(model)
    acc = [0] * (coins + 1)
    n = model.n
    for k, edges in _outcomes(options):
        if predicate(Graph.from_edge_indices(n, edges)):
            acc[k] += 1
    return _collapse(acc, model.p, coins, uniform_combos)


def exact_edge_marginals(model: DistributionModel) -> list:
    """Per-edge presence probability by full latent enumeration."""
    _check_budget(model)
    options, coins, uniform_combos = _latent_options(model)
    L = num_edges(model.n)
    acc = [[0] * (coins + 1) for _ in range(L)]
    for k, edges in _outcomes(options):
        for e in edges:
            acc[e][k] += 1
    return [_collapse(acc[e], model.p, coins, uniform_combos) for e in range(L)]


@lru_cache(maxsize=None)
def er_connectivity_probability(n: int, p):
    """P(independent-edge graph on n vertices is connected), by the standard
    recursion on the component containing vertex 1.  Independent of the
    latent enumeration; used to cross-check it.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    one = Fraction(1) if isinstance(p, Fraction) else 1.0
    if n == 1:
        return one
    q = one - p
    total = one * 0
    for k in range(1, n):
        total += (comb(n - 1, k - 1) * er_connectivity_probability(k, p)
                  * q ** (k * (n - k)))
    return one - total


def exact_binomial_two_sided_tail(N: int, p: float, t: float) -> float:
    """P(|X - Np| >= t) for X ~ Binomial(N, p), by direct stable summation."""
    if N < 1:
        raise ValueError("need N >= 1")
    p = float(p)
    if not 0 <= p <= 1:
        raise ValueError("p outside [0, 1]")
    if t <= 0:
        return 1.0
    if p == 0.0 or p == 1.0:
        return 0.0    # X is deterministic, deviation 0 < t
    mu = N * p
    lp = math.log(p)
    lq = math.log1p(-p)
    lgn = math.lgamma(N + 1)
    terms = [math.exp(lgn - math.lgamma(k + 1) - math.lgamma(N - k + 1)
                      + k * lp + (N - k) * lq)
             for k in range(N + 1) if abs(k - mu) >= t]
    return min(1.0, math.fsum(terms))


@dataclass(frozen=True)
class JumblednessViolation:
    """A subset pair whose edge-count deviation beats its allowance."""
    a_vertices: tuple[int, ...]
    b_vertices: tuple[int, ...]
    edges: int            # e(A,B), edges inside the intersection twice
    expected: float       # p |A||B|
    deviation: float
    allowance: float
    slack: float          # deviation - allowance, > 0


def exhaustive_jumbledness_check(g: Graph, p, d: int,
                                 C: float = 10.0) -> JumblednessViolation | None:
    """Scan all 4^n subset pairs for |e(A,B) - p|A||B|| > C sqrt(|A||B| n p d1).

    Returns the pair maximizing the overshoot, or None when every pair is
    within its allowance.  Feasible up to n = 12.
    """
    n = g.n
    if n > JUMBLEDNESS_MAX_N:
        raise ResourceLimitError(
            f"jumbledness scan enumerates 4^{n} pairs; limit is n <= {JUMBLEDNESS_MAX_N}")
    pf = float(p)
    full = 1 << n
    masks = np.arange(full, dtype=np.uint16)
    pop = np.bitwise_count(masks).astype(np.int64)
    adj = np.array(g.rows, dtype=np.uint16)
    # common_count[x, B] = |N(x) intersect B|; e(A,B) = sum over x in A
    common = np.bitwise_count(adj[:, None] & masks[None, :]).astype(np.int64)
    bits = ((masks[:, None] >> np.arange(n, dtype=np.uint16)[None, :]) & 1
            ).astype(np.int64)
    scale = n * pf * (d + 1)
    best_slack = 0.0
    best = None
    chunk = 512
    for start in range(0, full, chunk):
        stop = min(start + chunk, full)
        counts = bits[start:stop] @ common
        sizes = pop[start:stop, None] * pop[None, :]
        deviation = np.abs(counts - pf * sizes)
        allowance = C * np.sqrt(sizes * scale)
        slack = deviation - allowance
        i = int(np.argmax(slack))
        if slack.flat[i] > best_slack:
            a_mask = start + i // full
            b_mask = i % full
            best_slack = float(slack.flat[i])
            best = (a_mask, b_mask, int(counts.flat[i]),
                    float(deviation.flat[i]), float(allowance.flat[i]))
    if best is None:
        return None
    a_mask, b_mask, e_count, deviation, allowance = best
    a = tuple(v for v in range(n) if (a_mask >> v) & 1)
    b = tuple(v for v in range(n) if (b_mask >> v) & 1)
    return JumblednessViolation(a, b, e_count, pf * len(a) * len(b),
                                deviation, allowance, best_slack)


@dataclass(frozen=True)
class MeanVarianceReport:
    """Empirical moments of a graph statistic against exact enumerated values.

    exact_* are None when the latent space exceeds the enumeration budget.
    Flags compare at 4 standard errors; the variance standard error uses
    the normal-theory approximation s^2 sqrt(2/(T-1)), which is rough but
    only steers a 4-sigma screen.
    """
    statistic: str
    trials: int
    seed: int
    empirical_mean: float
    empirical_variance: float
    mean_se: float
    variance_se: float
    exact_mean: object | None
    exact_variance: object | None
    mean_flag: bool
    variance_flag: bool


def mean_variance_check(model: DistributionModel, statistic: Statistic,
                        trials: int, seed: int) -> MeanVarianceReport:
    """Compare sampled moments of a statistic with exact enumerated moments."""
    if trials < 2:
        raise ValueError("need trials >= 2 for a sample variance")
    gen = rngmod.generator(seed)
    n = model.n
    values = np.empty(trials, dtype=np.float64)
    for i in range(trials):
        g = _graph_from_present(n, _sample_present(model, gen))
        values[i] = statistic(g)
    emp_mean = float(values.mean())
    emp_var = float(values.var(ddof=1))
    mean_se = math.sqrt(emp_var / trials)
    var_se = emp_var * math.sqrt(2.0 / (trials - 1))

    exact_mean = exact_var = None
    mean_flag = var_flag = False
    try:
        _check_budget(model)
    except ResourceLimitError:
        pass
    else:
        options, coins, uniform_combos = _latent_options(model)
        s1 = [0] * (coins + 1)
        s2 = [0] * (coins + 1)
        for k, edges in _outcomes(options):
            v = statistic(Graph.from_edge_indices(n, edges))
            iv = int(v) if float(v).is_integer() else v
            s1[k] += iv
            s2[k] += iv * iv
        exact_mean = _collapse(s1, model.p, coins, uniform_combos)
        second = _collapse(s2, model.p, coins, uniform_combos)
        exact_var = second - exact_mean * exact_mean
        mean_flag = abs(emp_mean - float(exact_mean)) > 4.0 * mean_se
        var_flag = abs(emp_var - float(exact_var)) > 4.0 * var_se

    return MeanVarianceReport(
        statistic=statistic.name, trials=trials, seed=seed,
        empirical_mean=emp_mean, empirical_variance=emp_var,
        mean_se=mean_se, variance_se=var_se,
        exact_mean=exact_mean, exact_variance=exact_var,
        mean_flag=mean_flag, variance_flag=var_flag)
