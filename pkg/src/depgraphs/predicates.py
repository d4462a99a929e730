"""Named graph events and statistics shared by the oracle and the harness.

Keeping these in one place guarantees that the exact enumeration and the
Monte Carlo estimate of the "same" event really evaluate the same
indicator function.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable

from . import graphs
from .graphs import Graph, SubgraphPattern, named_pattern


@dataclass(frozen=True)
class Predicate:
    """A named boolean graph event."""
    name: str
    fn: Callable[[Graph], bool] = field(compare=False)

    def __call__(self, g: Graph) -> bool:
        return bool(self.fn(g))


@dataclass(frozen=True)
class Statistic:
    """A named numeric graph functional."""
    name: str
    fn: Callable[[Graph], float] = field(compare=False)

    def __call__(self, g: Graph) -> float:
        return self.fn(g)


def always_true() -> Predicate:
    return Predicate("true", lambda g: True)


def connected() -> Predicate:
    return Predicate("connected", graphs.is_connected)


def not_connected() -> Predicate:
    return Predicate("not-connected", lambda g: not graphs.is_connected(g))


def has_isolated_vertex() -> Predicate:
    return Predicate("isolated-vertex", lambda g: any(r == 0 for r in g.rows))


def contains_pattern(pattern: SubgraphPattern) -> Predicate:
    label = pattern.name or f"custom-{pattern.vertex_count}v{pattern.edge_count}e"
    return Predicate(f"contains:{label}",
                     lambda g: graphs.contains_subgraph(g, pattern))


def lacks_pattern(pattern: SubgraphPattern) -> Predicate:
    label = pattern.name or f"custom-{pattern.vertex_count}v{pattern.edge_count}e"
    return Predicate(f"lacks:{label}",
                     lambda g: not graphs.contains_subgraph(g, pattern))


def edge_count_equals(k: int) -> Predicate:
    return Predicate(f"edge-count:{k}", lambda g: g.edge_count() == k)


def degree_in_range(low: float, high: float) -> Predicate:
    """Every vertex degree inside [low, high], endpoints included."""
    def fn(g: Graph) -> bool:
        return all(low <= r.bit_count() <= high for r in g.rows)
    return Predicate(f"degree-in:{low}:{high}", fn)


def edge_deviation_exceeds(a: tuple[int, ...], b: tuple[int, ...], p,
                           t: float) -> Predicate:
    """|e(A,B) - p|A||B|| > t for one fixed pair of vertex sets."""
    a = tuple(a)
    b = tuple(b)
    expected = float(p) * len(a) * len(b)

    def fn(g: Graph) -> bool:
        return abs(graphs.count_edges_between(g, a, b) - expected) > t
    return Predicate(f"deviation:{t}", fn)


def negate(pred: Predicate) -> Predicate:
    return Predicate(f"not({pred.name})", lambda g: not pred.fn(g))


def resolve_pattern(spec: str) -> SubgraphPattern:
    """A library name (k3, c5, path2, ...) or a path to an edge-list file."""
    try:
        return named_pattern(spec)
    except ValueError:
        if os.path.exists(spec):
            with open(spec, encoding="utf-8") as fh:
                g = graphs.from_edge_list(fh.read())
            return SubgraphPattern(g, name=os.path.basename(spec))
        raise


def _ints(parts: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in parts.split(",") if tok.strip() != "")


def parse_predicate(text: str, p=None) -> Predicate:
    """Parse the command-line predicate syntax.

    Forms: true, connected, not-connected, isolated-vertex,
    contains:<pattern>, lacks:<pattern>, edge-count:<k>,
    degree-in:<low>:<high>, deviation:<t>:<A-list>:<B-list> (comma-separated
    vertex lists; needs the model's p, supplied by the caller).
    """
    text = text.strip()
    plain = {
        "true": always_true,
        "connected": connected,
        "not-connected": not_connected,
        "isolated-vertex": has_isolated_vertex,
    }
    if text in plain:
        return plain[text]()
    head, _, rest = text.partition(":")
    if head == "contains" and rest:
        return contains_pattern(resolve_pattern(rest))
    if head == "lacks" and rest:
        return lacks_pattern(resolve_pattern(rest))
    if head == "edge-count" and rest:
        return edge_count_equals(int(rest))
    if head == "degree-in" and rest:
        lo, _, hi = rest.partition(":")
        return degree_in_range(float(lo), float(hi))
    if head == "deviation" and rest:
        try:
            t_part, a_part, b_part = rest.split(":")
        except ValueError:
            raise ValueError(
                "deviation predicate form is deviation:<t>:<A-list>:<B-list>") from None
        if p is None:
            raise ValueError("deviation predicate needs the model's edge probability")
        return edge_deviation_exceeds(_ints(a_part), _ints(b_part), p, float(t_part))
    raise ValueError(f"unknown predicate {text!r}")


def edge_count_statistic() -> Statistic:
    return Statistic("edge-count", lambda g: g.edge_count())


def edges_between_statistic(a: tuple[int, ...], b: tuple[int, ...]) -> Statistic:
    a = tuple(a)
    b = tuple(b)
    return Statistic("edges-between",
                     lambda g: graphs.count_edges_between(g, a, b))


def isolated_count_statistic() -> Statistic:
    return Statistic("isolated-count",
                     lambda g: sum(1 for r in g.rows if r == 0))
