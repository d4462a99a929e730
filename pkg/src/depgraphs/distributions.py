"""Locally dependent edge distributions and their samplers.

Each model describes a distribution over graphs on n vertices in which
every potential edge is present with probability exactly p, but edges may
share latent coins.  A latent is either a Bernoulli(p) coin driving a
block of edges (all-or-nothing) or, for the exact-count construction, a
uniform choice of a edges out of a block of m.  Edges not covered by any
explicit block get one private coin each.

The declared latent order is: explicit blocks in listed order, then the
private coins ascending by edge index.  The sampler consumes uniforms in
exactly that order, which pins down sample(model, seed) bit for bit.

Dependence bookkeeping: two edges are dependent iff they share a latent,
so the dependency graph is a disjoint union of cliques, one per block,
and its max degree is max(block size) - 1 <= d.
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, isqrt, log
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from . import rng as rngmod
from . import stats
from .graphs import Graph, num_edges

ERDOS_RENYI = "erdos-renyi"
CORRELATED_STAR = "correlated-star"
CONNECTIVITY_GADGET = "connectivity-gadget"
EDGE_BLOCK_EXACT = "edge-block-exact"
CUSTOM_BLOCKS = "custom-blocks"

KINDS = (ERDOS_RENYI, CORRELATED_STAR, CONNECTIVITY_GADGET,
         EDGE_BLOCK_EXACT, CUSTOM_BLOCKS)


def parse_probability(text: str):
    """Parse "a/b" to an exact Fraction, anything else to a float.

    Rational inputs stay rational all the way into the enumeration oracle.
    """
    text = text.strip()
    try:
        value = Fraction(text) if "/" in text else float(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad probability {text!r}") from None
    _check_probability(value)
    return value


def format_probability(p) -> str:
    """Inverse of parse_probability; Fractions always keep a denominator."""
    if isinstance(p, Fraction):
        return f"{p.numerator}/{p.denominator}"
    return repr(float(p))


def _check_probability(p) -> None:
    if not 0 <= p <= 1:
        raise ValueError(f"edge probability {p} outside [0, 1]")


class Latent(NamedTuple):
    """Descriptor of one latent variable and the edges it controls."""
    kind: str                 # "bernoulli" or "uniform-subset"
    edges: tuple[int, ...]    # edge indices driven by this latent
    a: int | None = None      # edges kept, for uniform-subset only


@dataclass(frozen=True)
class DependencySpec:
    """Edge-dependency structure: disjoint groups of mutually dependent edges.

    Edges in the same group are pairwise dependent; all other pairs are
    independent.  d is the declared bound on the max dependency degree.
    """
    n: int
    d: int
    groups: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = set()
        limit = num_edges(self.n)
        for g in self.groups:
            for e in g:
                if not 0 <= e < limit:
                    raise ValueError(f"edge index {e} out of range")
                if e in seen:
                    raise ValueError(f"edge index {e} in two dependency groups")
                seen.add(e)

    def max_degree(self) -> int:
        return max((len(g) - 1 for g in self.groups), default=0)

    def neighbors(self, e: int) -> frozenset[int]:
        for g in self.groups:
            if e in g:
                return frozenset(g) - {e}
        return frozenset()

    def neighbors_map(self) -> dict[int, frozenset[int]]:
        """Full edge -> dependent-edges map; O(n^2) entries, small n only."""
        out = {e: frozenset() for e in range(num_edges(self.n))}
        for g in self.groups:
            gs = frozenset(g)
            for e in g:
                out[e] = gs - {e}
        return out


class SampleOutcome(NamedTuple):
    graph: Graph
    latent_state: tuple | None


class DistributionModel:
    """Immutable description of one dependent edge distribution.

    blocks lists the explicit latent blocks in declared order; for the
    bernoulli kinds only blocks with >= 2 edges appear (a one-edge block is
    indistinguishable in law from a private coin and is folded into the
    singleton stream).  For edge-block-exact the blocks are the full
    partition into consecutive index ranges of size m.
    """

    __slots__ = ("kind", "n", "p", "d", "params", "blocks", "_arrays")

    def __init__(self, kind: str, n: int, p, d: int, params: dict,
                 blocks: tuple[tuple[int, ...], ...]):
        if kind not in KINDS:
            raise ValueError(f"unknown distribution kind {kind!r}")
        if n < 1:
            raise ValueError("need at least one vertex")
        _check_probability(p)
        if d < 0:
            raise ValueError("dependence bound d must be nonnegative")
        self.kind = kind
        self.n = n
        self.p = p
        self.d = d
        self.params = dict(params)
        self.blocks = tuple(tuple(b) for b in blocks)
        self._arrays = None
        covered = set()
        limit = num_edges(n)
        for b in self.blocks:
            for e in b:
                if not 0 <= e < limit:
                    raise ValueError(f"edge index {e} out of range for n={n}")
                if e in covered:
                    raise ValueError(f"edge index {e} appears in two blocks")
                covered.add(e)

    # -- latent layout -------------------------------------------------

    def single_edges(self) -> np.ndarray:
        """Edge indices driven by private coins, ascending."""
        return self._ensure_arrays()["singles"]

    def latent_count(self) -> int:
        if self.kind == EDGE_BLOCK_EXACT:
            return len(self.blocks)
        return len(self.blocks) + int(self.single_edges().size)

    def iter_latents(self) -> Iterator[Latent]:
        """Latent descriptors in declared order (blocks, then private coins)."""
        if self.kind == EDGE_BLOCK_EXACT:
            a = self.params["a"]
            for b in self.blocks:
                yield Latent("uniform-subset", b, a)
            return
        for b in self.blocks:
            yield Latent("bernoulli", b)
        for e in self.single_edges():
            yield Latent("bernoulli", (int(e),))

    def dependency_spec(self) -> DependencySpec:
        groups = tuple(b for b in self.blocks if len(b) >= 2)
        return DependencySpec(self.n, self.d, groups)

    def _ensure_arrays(self) -> dict:
        if self._arrays is None:
            L = num_edges(self.n)
            covered = np.zeros(L, dtype=bool)
            if self.blocks:
                flat = np.concatenate([np.asarray(b, dtype=np.int64)
                                       for b in self.blocks])
                covered[flat] = True
                bid = np.repeat(np.arange(len(self.blocks), dtype=np.int64),
                                [len(b) for b in self.blocks])
            else:
                flat = np.empty(0, dtype=np.int64)
                bid = np.empty(0, dtype=np.int64)
            self._arrays = {
                "flat": flat,
                "bid": bid,
                "singles": np.flatnonzero(~covered).astype(np.int64),
            }
        return self._arrays

    # -- plumbing ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, DistributionModel)
                and self.kind == other.kind and self.n == other.n
                and self.p == other.p and self.d == other.d
                and self.params == other.params and self.blocks == other.blocks)

    def __hash__(self) -> int:
        return hash((self.kind, self.n, self.p, self.d, self.blocks))

    def __repr__(self) -> str:
        return (f"DistributionModel(kind={self.kind!r}, n={self.n}, "
                f"p={format_probability(self.p)}, d={self.d})")


# -- constructions -----------------------------------------------------

def erdos_renyi(n: int, p) -> DistributionModel:
    """Every edge independent Bernoulli(p); the d = 0 baseline."""
    return DistributionModel(ERDOS_RENYI, n, p, 0, {}, ())


def _star_blocks(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    from .graphs import edge_index
    s = d + 1
    blocks = []
    for x in range(s, n):
        blocks.append(tuple(edge_index(x, v, n) for v in range(s)))
    return tuple(blocks)


def correlated_star(n: int, p, d: int) -> DistributionModel:
    """Hub set S = {0..d}; each outside vertex bonds to all of S on one coin.

    Edges inside S and edges outside S stay independent.  This is the
    construction whose witness pair (S, common neighborhood of S) meets
    the jumbledness lower bound.
    """
    if d < 0:
        raise ValueError("dependence bound d must be nonnegative")
    if d + 1 > n - 1:
        raise ValueError(f"need d+1 <= n-1 so S is proper (got d={d}, n={n})")
    _check_probability(p)
    blocks = _star_blocks(n, d) if d >= 1 else ()
    return DistributionModel(CORRELATED_STAR, n, p, d, {}, blocks)


def _gadget_layout(n: int, d: int):
    from .graphs import edge_index
    d1 = d + 1
    s = isqrt(d1)
    if s * s != d1:
        raise ValueError(f"connectivity gadget needs d+1 a perfect square, got {d1}")
    if n < 2:
        raise ValueError("need n >= 2")
    a_size = ceil(n / (log(n) * s)) if n > 1 else n
    if a_size < s:
        raise ValueError(
            f"n={n} too small: |A|={a_size} is below the group size {s}")
    if a_size >= n:
        raise ValueError(f"n={n} too small: no vertices left for the B side")
    a_groups = [tuple(range(i, min(i + s, a_size))) for i in range(0, a_size, s)]
    b_blocks = [tuple(range(i, min(i + d1, n))) for i in range(a_size, n, d1)]
    blocks = []
    # edges inside and between A-groups, one coin per unordered group pair
    for i in range(len(a_groups)):
        gi = a_groups[i]
        within = tuple(edge_index(u, v, n) for ai, u in enumerate(gi)
                       for v in gi[ai + 1:])
        if len(within) >= 2:
            blocks.append(within)
        for j in range(i + 1, len(a_groups)):
            gj = a_groups[j]
            between = tuple(edge_index(u, v, n) for u in gi for v in gj)
            if len(between) >= 2:
                blocks.append(between)
    # one coin per (A-vertex, B-block) pair
    for x in range(a_size):
        for bb in b_blocks:
            blk = tuple(edge_index(x, y, n) for y in bb)
            if len(blk) >= 2:
                blocks.append(blk)
    return a_size, s, tuple(blocks)


def connectivity_gadget(n: int, p, d: int) -> DistributionModel:
    """Disconnection-prone construction matching the lower connectivity threshold.

    A small side A of ceil(n / (ln(n) sqrt(d+1))) vertices is cut into
    groups of sqrt(d+1); each group pair (including a group with itself)
    shares one coin.  The rest, B, is cut into runs of d+1; each
    (A-vertex, run) pair shares one coin.  Edges inside B are independent.
    Undersized trailing groups keep their own coin, which only lowers the
    dependency degree.
    """
    if d < 0:
        raise ValueError("dependence bound d must be nonnegative")
    _check_probability(p)
    a_size, s, blocks = _gadget_layout(n, d)
    return DistributionModel(CONNECTIVITY_GADGET, n, p, d,
                             {"a_size": a_size, "group_size": s}, blocks)


def edge_block_exact(n: int, a: int, m: int) -> DistributionModel:
    """Partition the edge slots into runs of m; keep a uniform a of each run.

    The edge count is a n(n-1)/(2m) in every sample, the marginal is
    exactly a/m, and edges in different runs are independent, so d = m-1.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    L = num_edges(n)
    if not 1 <= a <= m:
        raise ValueError(f"need 1 <= a <= m (got a={a}, m={m})")
    if L % m != 0:
        raise ValueError(f"block size {m} does not divide {L} edge slots")
    blocks = tuple(tuple(range(i, i + m)) for i in range(0, L, m))
    return DistributionModel(EDGE_BLOCK_EXACT, n, Fraction(a, m), m - 1,
                             {"a": a, "m": m}, blocks)


def custom_blocks(n: int, p, blocks: Iterable[Iterable[int]]) -> DistributionModel:
    """Arbitrary all-or-nothing coupling: one coin per block of the partition.

    blocks must partition all n(n-1)/2 edge indices.  The dependence bound
    is max(block size) - 1.  Anticorrelated couplings are out of scope.
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    _check_probability(p)
    normalized = [tuple(int(e) for e in b) for b in blocks]
    L = num_edges(n)
    seen: set[int] = set()
    for b in normalized:
        if not b:
            raise ValueError("empty block in partition")
        for e in b:
            if not 0 <= e < L:
                raise ValueError(f"edge index {e} out of range for n={n}")
            if e in seen:
                raise ValueError(f"edge index {e} appears in two blocks")
            seen.add(e)
    if len(seen) != L:
        missing = next(e for e in range(L) if e not in seen)
        raise ValueError(f"blocks do not cover edge index {missing}")
    d = max((len(b) for b in normalized), default=1) - 1
    kept = tuple(b for b in normalized if len(b) >= 2)
    return DistributionModel(CUSTOM_BLOCKS, n, p, d, {}, kept)


def blocks_from_text(n: int, text: str) -> list[tuple[int, ...]]:
    """Parse "0 1 2; 3 4" into a full partition; unlisted edges become singletons."""
    listed = [tuple(int(tok) for tok in part.split())
              for part in text.split(";") if part.strip()]
    claimed = {e for b in listed for e in b}
    singles = [(e,) for e in range(num_edges(n)) if e not in claimed]
    return listed + singles


def build(kind: str, n: int, p=None, d: int = 0, a: int | None = None,
          m: int | None = None,
          blocks: Iterable[Iterable[int]] | None = None) -> DistributionModel:
    """Uniform entry point used by config files and the command line."""
    kind = _canonical_kind(kind)
    if kind == ERDOS_RENYI:
        return erdos_renyi(n, _require(p, "p"))
    if kind == CORRELATED_STAR:
        return correlated_star(n, _require(p, "p"), d)
    if kind == CONNECTIVITY_GADGET:
        return connectivity_gadget(n, _require(p, "p"), d)
    if kind == EDGE_BLOCK_EXACT:
        return edge_block_exact(n, _require(a, "a"), _require(m, "m"))
    return custom_blocks(n, _require(p, "p"), _require(blocks, "blocks"))


_KIND_ALIASES = {
    "er": ERDOS_RENYI, "erdos-renyi": ERDOS_RENYI,
    "star": CORRELATED_STAR, "correlated-star": CORRELATED_STAR,
    "gadget": CONNECTIVITY_GADGET, "connectivity-gadget": CONNECTIVITY_GADGET,
    "edge-block": EDGE_BLOCK_EXACT, "edge-block-exact": EDGE_BLOCK_EXACT,
    "custom": CUSTOM_BLOCKS, "custom-blocks": CUSTOM_BLOCKS,
}


def _canonical_kind(kind: str) -> str:
    try:
        return _KIND_ALIASES[kind.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown distribution kind {kind!r}; "
                         f"known: {', '.join(sorted(set(_KIND_ALIASES)))}") from None


def _require(value, name):
    if value is None:
        raise ValueError(f"missing required parameter {name!r}")
    return value


# -- sampling ----------------------------------------------------------

@lru_cache(maxsize=4)
def _colex_uv(n: int) -> tuple[np.ndarray, np.ndarray]:
    # endpoint arrays aligned with the colex edge index
    counts = np.arange(1, n, dtype=np.int64)
    v = np.repeat(counts, counts)
    offsets = v * (v - 1) // 2
    u = np.arange(num_edges(n), dtype=np.int64) - offsets
    return u, v


def _graph_from_present(n: int, present: np.ndarray) -> Graph:
    if n == 1:
        return Graph(1)
    u, v = _colex_uv(n)
    idx = np.flatnonzero(present)
    adj = np.zeros((n, n), dtype=bool)
    adj[u[idx], v[idx]] = True
    adj[v[idx], u[idx]] = True
    packed = np.packbits(adj, axis=1, bitorder="little")
    rows = [int.from_bytes(packed[i].tobytes(), "little") for i in range(n)]
    return Graph._from_rows_unchecked(n, rows)


def _sample_present(model: DistributionModel, gen: np.random.Generator) -> np.ndarray:
    """Presence bitmap over edge indices; one generator call per latent batch."""
    L = num_edges(model.n)
    present = np.zeros(L, dtype=bool)
    if model.kind == EDGE_BLOCK_EXACT:
        m = model.params["m"]
        a = model.params["a"]
        nb = L // m
        if a == m:
            present[:] = True
            return present
        keys = gen.random((nb, m))
        chosen = np.argpartition(keys, a - 1, axis=1)[:, :a]
        present[(np.arange(nb, dtype=np.int64)[:, None] * m + chosen).ravel()] = True
        return present
    arrays = model._ensure_arrays()
    nb = len(model.blocks)
    u = gen.random(nb + arrays["singles"].size)
    pf = float(model.p)
    if nb:
        on = u[:nb] < pf
        present[arrays["flat"]] = on[arrays["bid"]]
    present[arrays["singles"]] = u[nb:] < pf
    return present


def _capture_state(model: DistributionModel,
                   gen: np.random.Generator) -> tuple[np.ndarray, tuple]:
    # slower twin of _sample_present that also records per-latent values
    L = num_edges(model.n)
    present = np.zeros(L, dtype=bool)
    state = []
    if model.kind == EDGE_BLOCK_EXACT:
        m = model.params["m"]
        a = model.params["a"]
        nb = L // m
        if a == m:
            present[:] = True
            return present, tuple(tuple(range(m)) for _ in range(nb))
        keys = gen.random((nb, m))
        chosen = np.argpartition(keys, a - 1, axis=1)[:, :a]
        for j in range(nb):
            picks = tuple(sorted(int(c) for c in chosen[j]))
            state.append(picks)
            for c in picks:
                present[j * m + c] = True
        return present, tuple(state)
    arrays = model._ensure_arrays()
    nb = len(model.blocks)
    u = gen.random(nb + arrays["singles"].size)
    pf = float(model.p)
    for i, block in enumerate(model.blocks):
        on = bool(u[i] < pf)
        state.append(on)
        if on:
            present[list(block)] = True
    for j, e in enumerate(arrays["singles"]):
        on = bool(u[nb + j] < pf)
        state.append(on)
        present[e] = on
    return present, tuple(state)


def sample(model: DistributionModel, seed: int,
           keep_latents: bool = False) -> SampleOutcome:
    """Draw one graph; a pure function of (model, seed)."""
    gen = rngmod.generator(seed)
    if keep_latents:
        present, state = _capture_state(model, gen)
        return SampleOutcome(_graph_from_present(model.n, present), state)
    present = _sample_present(model, gen)
    return SampleOutcome(_graph_from_present(model.n, present), None)


def realize(model: DistributionModel, state: Sequence) -> Graph:
    """Graph determined by a full latent assignment (declared order)."""
    L = num_edges(model.n)
    present = np.zeros(L, dtype=bool)
    latents = list(model.iter_latents())
    if len(state) != len(latents):
        raise ValueError(f"state has {len(state)} entries, model has {len(latents)} latents")
    for value, latent in zip(state, latents):
        if latent.kind == "bernoulli":
            if value:
                present[list(latent.edges)] = True
        else:
            for pos in value:
                present[latent.edges[pos]] = True
    return _graph_from_present(model.n, present)


# -- marginal and independence audit -----------------------------------

@dataclass(frozen=True)
class EdgeMarginal:
    edge: int
    successes: int
    trials: int
    estimate: float
    ci_low: float
    ci_high: float
    flagged: bool


@dataclass(frozen=True)
class PairIndependence:
    edge_a: int
    edge_b: int
    table: tuple[int, int, int, int]    # (n11, n10, n01, n00)
    statistic: float
    p_value: float
    flagged: bool


@dataclass(frozen=True)
class AuditReport:
    """Empirical check that a model delivers its declared marginals and locality.

    Individual Wilson or chi-squared misses are expected at their nominal
    rates; the aggregate flag fires only when misses exceed the
    mean + 3 sigma + 1 tolerance for the batch, or when the dependency
    degree check fails outright.
    """
    kind: str
    n: int
    p: float
    declared_d: int
    trials: int
    seed: int
    marginals: tuple[EdgeMarginal, ...]
    pairs: tuple[PairIndependence, ...]
    max_dependency_degree: int
    degree_ok: bool
    marginal_misses: int
    marginal_tolerance: float
    pair_misses: int
    pair_tolerance: float

    @property
    def flagged(self) -> bool:
        return (not self.degree_ok
                or self.marginal_misses > self.marginal_tolerance
                or self.pair_misses > self.pair_tolerance)


def _independent_pairs(model: DistributionModel, gen: np.random.Generator,
                       want: int) -> list[tuple[int, int]]:
    L = num_edges(model.n)
    owner: dict[int, int] = {}
    for i, b in enumerate(model.blocks):
        for e in b:
            owner[e] = i
    pairs: list[tuple[int, int]] = []
    seen = set()
    attempts = 0
    while len(pairs) < want and attempts < 50 * want:
        attempts += 1
        e1, e2 = (int(x) for x in gen.integers(0, L, size=2))
        if e1 == e2:
            continue
        if e1 > e2:
            e1, e2 = e2, e1
        if (e1, e2) in seen:
            continue
        seen.add((e1, e2))
        o1, o2 = owner.get(e1), owner.get(e2)
        if o1 is not None and o1 == o2:
            continue    # same latent: dependent by design
        pairs.append((e1, e2))
    return pairs


def audit_model(model: DistributionModel, trials: int, seed: int,
                pairs: int = 50) -> AuditReport:
    """Marginal frequencies, dependency degree, and pairwise independence checks."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    L = num_edges(model.n)
    gen = rngmod.generator(seed)
    pair_list = _independent_pairs(model, gen, pairs) if L >= 2 else []
    e1s = np.array([a for a, _ in pair_list], dtype=np.int64)
    e2s = np.array([b for _, b in pair_list], dtype=np.int64)
    counts = np.zeros(L, dtype=np.int64)
    joint = np.zeros(len(pair_list), dtype=np.int64)
    for _ in range(trials):
        present = _sample_present(model, gen)
        counts += present
        if len(pair_list):
            joint += present[e1s] & present[e2s]

    pf = float(model.p)
    marginals = []
    misses = 0
    for e in range(L):
        lo, hi = stats.wilson_interval(int(counts[e]), trials)
        bad = not lo <= pf <= hi
        misses += bad
        marginals.append(EdgeMarginal(e, int(counts[e]), trials,
                                      int(counts[e]) / trials, lo, hi, bad))

    pair_reports = []
    pair_misses = 0
    for i, (a, b) in enumerate(pair_list):
        n11 = int(joint[i])
        n10 = int(counts[a]) - n11
        n01 = int(counts[b]) - n11
        n00 = trials - n11 - n10 - n01
        stat, pval = stats.chi2_independence_2x2(n11, n10, n01, n00)
        bad = pval < 0.001
        pair_misses += bad
        pair_reports.append(PairIndependence(a, b, (n11, n10, n01, n00),
                                             stat, pval, bad))

    spec = model.dependency_spec()
    max_deg = spec.max_degree()
    return AuditReport(
        kind=model.kind, n=model.n, p=pf, declared_d=model.d,
        trials=trials, seed=seed,
        marginals=tuple(marginals), pairs=tuple(pair_reports),
        max_dependency_degree=max_deg, degree_ok=max_deg <= model.d,
        marginal_misses=misses,
        marginal_tolerance=stats.flag_tolerance(L, 0.01),
        pair_misses=pair_misses,
        pair_tolerance=stats.flag_tolerance(len(pair_list), 0.001),
    )


# -- descriptors -------------------------------------------------------

def to_descriptor(model: DistributionModel) -> str:
    """Key-value text form of a model; round-trips through from_descriptor."""
    cp = configparser.ConfigParser()
    cp["model"] = {}
    sec = cp["model"]
    sec["kind"] = model.kind
    sec["n"] = str(model.n)
    sec["p"] = format_probability(model.p)
    sec["d"] = str(model.d)
    if model.kind == EDGE_BLOCK_EXACT:
        sec["a"] = str(model.params["a"])
        sec["m"] = str(model.params["m"])
    if model.kind == CUSTOM_BLOCKS:
        sec["blocks"] = "; ".join(" ".join(str(e) for e in b) for b in model.blocks)
    buf = io.StringIO()
    cp.write(buf)
    return buf.getvalue()


def from_descriptor(text: str) -> DistributionModel:
    """Rebuild a model from its descriptor, re-validating every precondition."""
    cp = configparser.ConfigParser()
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ValueError(f"bad model descriptor: {exc}") from None
    if "model" not in cp:
        raise ValueError('model descriptor needs a [model] section')
    sec = cp["model"]
    try:
        kind = _canonical_kind(sec["kind"])
        n = int(sec["n"])
    except KeyError as exc:
        raise ValueError(f"model descriptor missing key {exc}") from None
    if kind == EDGE_BLOCK_EXACT:
        return edge_block_exact(n, int(sec["a"]), int(sec["m"]))
    p = parse_probability(sec["p"])
    if kind == CUSTOM_BLOCKS:
        return custom_blocks(n, p, blocks_from_text(n, sec.get("blocks", "")))
    d = int(sec.get("d", "0"))
    if kind == ERDOS_RENYI:
        if d != 0:
            raise ValueError("erdos-renyi descriptors must have d = 0")
        return erdos_renyi(n, p)
    if kind == CORRELATED_STAR:
        return correlated_star(n, p, d)
    return connectivity_gadget(n, p, d)
