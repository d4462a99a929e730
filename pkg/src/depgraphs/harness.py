"""Seeded, parallel, reproducible experiment grids.

A config names a model family, a grid over (n, p, d), a task, a trial
count, and a master seed.  Trial t of grid point i always runs on seed
derive_seed(master, i, t), and per-chunk partial results merge by
commutative sums, so the output is byte-identical for 1 and N workers.

The CSV view deliberately omits anything scheduling-dependent (wall-clock
times, worker count); those live only in the JSON provenance document.
"""

from __future__ import annotations

import configparser
import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from typing import Callable

from . import bounds, predicates, stats
from .distributions import (CORRELATED_STAR, CUSTOM_BLOCKS, EDGE_BLOCK_EXACT,
                            ERDOS_RENYI, _canonical_kind, blocks_from_text,
                            build, format_probability, parse_probability, sample)
from .errors import ResourceLimitError
from .graphs import Graph, clique_number
from .rng import derive_seed

TASKS = ("probability", "sweep", "degree-violation", "witness",
         "containment", "clique")

CLIQUE_MAX_N = 60

# slack factor standing in for the 1 - o(1) in the witness lower bound
WITNESS_SLACK = 0.9

CSV_COLUMNS = ("index", "task", "kind", "n", "p", "d", "a", "m", "pattern",
               "trials", "successes", "estimate", "ci_low", "ci_high",
               "hypothesis", "theory_low", "theory_high", "theory_value",
               "stat_min", "stat_mean", "stat_max", "error")


@dataclass(frozen=True)
class ExperimentConfig:
    """Declarative description of one experiment run.

    The grid is the cross product ns x ps x ds in that nesting order; for
    edge-block models the grid ranges over ns only, with p = a/m and
    d = m - 1 implied.
    """
    task: str = "probability"
    kind: str = ERDOS_RENYI
    ns: tuple[int, ...] = ()
    ps: tuple = ()
    ds: tuple[int, ...] = (0,)
    trials: int = 100
    seed: int = 0
    workers: int = 1
    predicate: str = "connected"
    pattern: str | None = None
    eps: float = 0.1
    a: int | None = None
    m: int | None = None
    blocks: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", _canonical_kind(self.kind))
        object.__setattr__(self, "ns", tuple(int(n) for n in self.ns))
        object.__setattr__(self, "ds", tuple(int(d) for d in self.ds))
        object.__setattr__(self, "ps", tuple(self.ps))
        if self.task not in TASKS:
            raise ValueError(f"unknown task {self.task!r}; known: {', '.join(TASKS)}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if not self.ns:
            raise ValueError("grid needs at least one n")
        if self.kind == EDGE_BLOCK_EXACT:
            if self.a is None or self.m is None:
                raise ValueError("edge-block grids need a and m")
        elif not self.ps:
            raise ValueError("grid needs at least one p")

    def grid_points(self) -> list[dict]:
        if self.kind == EDGE_BLOCK_EXACT:
            return [{"kind": self.kind, "n": n, "p": Fraction(self.a, self.m),
                     "d": self.m - 1, "a": self.a, "m": self.m}
                    for n in self.ns]
        return [{"kind": self.kind, "n": n, "p": p, "d": d, "a": None, "m": None}
                for n, p, d in product(self.ns, self.ps, self.ds)]

    def echo(self, include_workers: bool = True) -> dict:
        """JSON-safe config image for provenance output."""
        out = {
            "task": self.task, "kind": self.kind,
            "n": list(self.ns),
            "p": [format_probability(p) for p in self.ps],
            "d": list(self.ds),
            "trials": self.trials, "seed": self.seed,
            "predicate": self.predicate, "pattern": self.pattern,
            "eps": self.eps, "a": self.a, "m": self.m, "blocks": self.blocks,
        }
        if include_workers:
            out["workers"] = self.workers
        return out

    @classmethod
    def from_ini(cls, text: str) -> "ExperimentConfig":
        cp = configparser.ConfigParser()
        try:
            cp.read_string(text)
        except configparser.Error as exc:
            raise ValueError(f"bad experiment config: {exc}") from None
        if "experiment" not in cp:
            raise ValueError("experiment config needs an [experiment] section")
        sec = cp["experiment"]
        kwargs: dict = {}
        for key in ("task", "kind", "predicate", "pattern", "blocks"):
            if key in sec:
                kwargs[key] = sec[key]
        for key, dest in (("n", "ns"), ("d", "ds")):
            if key in sec:
                kwargs[dest] = tuple(int(tok) for tok in sec[key].split(","))
        if "p" in sec:
            kwargs["ps"] = tuple(parse_probability(tok)
                                 for tok in sec["p"].split(","))
        for key in ("trials", "seed", "workers", "a", "m"):
            if key in sec:
                kwargs[key] = int(sec[key])
        if "eps" in sec:
            kwargs["eps"] = float(sec["eps"])
        return cls(**kwargs)

    def with_overrides(self, **overrides) -> "ExperimentConfig":
        live = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **live) if live else self


@dataclass
class PointResult:
    index: int
    params: dict
    trials: int
    successes: int | None = None
    estimate: float | None = None
    ci_low: float | None = None
    ci_high: float | None = None
    hypothesis: bool | None = None
    theory_low: float | None = None
    theory_high: float | None = None
    theory_value: float | None = None
    stat_min: float | None = None
    stat_mean: float | None = None
    stat_max: float | None = None
    error: str | None = None
    duration: float = 0.0


@dataclass
class ExperimentResult:
    task: str
    seed: int
    config: ExperimentConfig
    points: list[PointResult] = field(default_factory=list)
    duration: float = 0.0

    def all_failed(self) -> bool:
        return bool(self.points) and all(p.error is not None for p in self.points)

    def to_csv(self) -> str:
        buf = io.StringIO()
        echo = json.dumps(self.config.echo(include_workers=False),
                          sort_keys=True, separators=(",", ":"))
        buf.write("# depgraphs-experiment v1\n")
        buf.write(f"# seed: {self.seed}\n")
        buf.write(f"# config: {echo}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for pt in self.points:
            writer.writerow([
                pt.index, self.task,
                pt.params.get("kind"), pt.params.get("n"),
                _cell_p(pt.params.get("p")), pt.params.get("d"),
                _cell(pt.params.get("a")), _cell(pt.params.get("m")),
                _cell(pt.params.get("pattern")),
                pt.trials, _cell(pt.successes), _cell(pt.estimate),
                _cell(pt.ci_low), _cell(pt.ci_high), _cell(pt.hypothesis),
                _cell(pt.theory_low), _cell(pt.theory_high),
                _cell(pt.theory_value), _cell(pt.stat_min),
                _cell(pt.stat_mean), _cell(pt.stat_max), _cell(pt.error),
            ])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "format": "depgraphs-experiment",
            "version": 1,
            "task": self.task,
            "seed": self.seed,
            "config": self.config.echo(include_workers=True),
            "duration_s": self.duration,
            "points": [{
                "index": pt.index,
                "params": {k: (format_probability(v) if k == "p" and v is not None
                               else v)
                           for k, v in pt.params.items()},
                "trials": pt.trials,
                "successes": pt.successes,
                "estimate": pt.estimate,
                "ci_low": pt.ci_low,
                "ci_high": pt.ci_high,
                "hypothesis": pt.hypothesis,
                "theory": {"low": pt.theory_low, "high": pt.theory_high,
                           "value": pt.theory_value},
                "stats": {"min": pt.stat_min, "mean": pt.stat_mean,
                          "max": pt.stat_max},
                "error": pt.error,
                "duration_s": pt.duration,
            } for pt in self.points],
        }
        return json.dumps(doc, indent=2) + "\n"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _cell_p(p) -> str:
    return "" if p is None else format_probability(p)


def _run_trials(config: ExperimentConfig, point_index: int, model,
                trial_fn: Callable[[Graph], float], mode: str):
    """Executes this point's trials; merge order is fixed, so the totals are
    independent of worker count and scheduling."""
    trials = config.trials
    chunk = max(1, math.ceil(trials / (config.workers * 4)))
    ranges = [(s, min(s + chunk, trials)) for s in range(0, trials, chunk)]

    def work(span):
        start, stop = span
        successes = 0
        vmin, vmax, vsum = math.inf, -math.inf, 0.0
        for t in range(start, stop):
            g = sample(model, derive_seed(config.seed, point_index, t)).graph
            v = trial_fn(g)
            if mode == "predicate":
                successes += bool(v)
            else:
                fv = float(v)
                vmin = min(vmin, fv)
                vmax = max(vmax, fv)
                vsum += fv
        return successes, vmin, vmax, vsum

    if config.workers == 1 or len(ranges) == 1:
        parts = [work(r) for r in ranges]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            parts = list(pool.map(work, ranges))

    successes = sum(p[0] for p in parts)
    vmin = min(p[1] for p in parts)
    vmax = max(p[2] for p in parts)
    vsum = math.fsum(p[3] for p in parts)
    return successes, vmin, vmax, vsum


def _execute(config: ExperimentConfig,
             make_model: Callable[[dict], object],
             annotate: Callable[[dict, object], dict],
             make_trial: Callable[[dict, object], Callable[[Graph], float]],
             mode: str = "predicate") -> ExperimentResult:
    t0 = time.perf_counter()
    result = ExperimentResult(task=config.task, seed=config.seed, config=config)
    for index, pt in enumerate(config.grid_points()):
        row = PointResult(index=index, params=dict(pt), trials=config.trials)
        started = time.perf_counter()
        try:
            model = make_model(pt)
            extras = annotate(pt, model)
            trial_fn = make_trial(pt, model)
            successes, vmin, vmax, vsum = _run_trials(
                config, index, model, trial_fn, mode)
        except (ValueError, ResourceLimitError) as exc:
            row.error = str(exc)
            row.duration = time.perf_counter() - started
            result.points.append(row)
            continue
        for key, value in extras.items():
            setattr(row, key, value)
        if mode == "predicate":
            row.successes = successes
            row.estimate = successes / config.trials
            row.ci_low, row.ci_high = stats.wilson_interval(successes, config.trials)
        else:
            row.stat_min = vmin
            row.stat_max = vmax
            row.stat_mean = vsum / config.trials
        row.duration = time.perf_counter() - started
        result.points.append(row)
    result.duration = time.perf_counter() - t0
    return result


def _default_model(pt: dict, blocks_text: str | None = None):
    if pt["kind"] == CUSTOM_BLOCKS:
        if not blocks_text:
            raise ValueError("custom-blocks grids need a blocks specification")
        return build(pt["kind"], pt["n"], p=pt["p"],
                     blocks=blocks_from_text(pt["n"], blocks_text))
    return build(pt["kind"], pt["n"], p=pt["p"], d=pt["d"], a=pt["a"], m=pt["m"])


# -- tasks -------------------------------------------------------------

def estimate_probability(config: ExperimentConfig) -> ExperimentResult:
    """P(predicate) per grid point, with Wilson 99% intervals."""

    def make_trial(pt, model):
        pred = predicates.parse_predicate(config.predicate, p=pt["p"])
        return pred

    return _execute(config, lambda pt: _default_model(pt, config.blocks),
                    lambda pt, model: {}, make_trial)


def threshold_sweep(config: ExperimentConfig) -> ExperimentResult:
    """Monotone-predicate probabilities along an increasing p grid.

    Each row carries the proved upper threshold (d+1) ln(n)/n and the
    example lower threshold (1-eps)(d+1) ln(n/sqrt(d+1))/n for its (n, d).
    """
    if config.kind == EDGE_BLOCK_EXACT:
        raise ValueError("sweep needs an explicit p grid, not an edge-block model")
    if any(float(q) <= float(p) for p, q in zip(config.ps, config.ps[1:])):
        raise ValueError("sweep p grid must be strictly increasing")

    def annotate(pt, model):
        return {
            "theory_low": bounds.connectivity_example_threshold(
                pt["n"], pt["d"], config.eps),
            "theory_high": bounds.connectivity_upper_threshold(pt["n"], pt["d"]),
        }

    def make_trial(pt, model):
        return predicates.parse_predicate(config.predicate, p=pt["p"])

    return _execute(config, lambda pt: _default_model(pt, config.blocks),
                    annotate, make_trial)


def degree_violation_rate(config: ExperimentConfig) -> ExperimentResult:
    """Fraction of trials in which some vertex leaves the theoretical
    degree interval np +- 4 sqrt(np d1 ln n)."""

    def annotate(pt, model):
        lo, hi = bounds.degree_interval(pt["n"], pt["p"], pt["d"])
        return {"theory_low": lo, "theory_high": hi,
                "hypothesis": bounds.degree_hypothesis(pt["n"], pt["p"], pt["d"])}

    def make_trial(pt, model):
        lo, hi = bounds.degree_interval(pt["n"], pt["p"], pt["d"])

        def violated(g: Graph) -> bool:
            return any(not lo <= r.bit_count() <= hi for r in g.rows)
        return violated

    return _execute(config, lambda pt: _default_model(pt, config.blocks),
                    annotate, make_trial)


def jumbledness_witness_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Success rate of the constructed witness pair against its floor.

    Samples the correlated-star model; S is the hub set, B the common
    neighborhood of S outside S.  A trial succeeds when
    e(S,B) - p|S||B| > WITNESS_SLACK * floor(|S|, |B|).  The theory_value
    column is the floor at the typical size |B| = np(1 - (d+1)/n).
    """
    if config.kind != CORRELATED_STAR:
        raise ValueError("the witness experiment is defined for correlated-star")

    def annotate(pt, model):
        n, p, d = pt["n"], float(pt["p"]), pt["d"]
        typical_b = max(0, round(n * p * (1.0 - (d + 1) / n)))
        return {"theory_value": bounds.jumbledness_witness_floor(
            d + 1, typical_b, n, p, d)}

    def make_trial(pt, model):
        n, p, d = pt["n"], float(pt["p"]), pt["d"]
        s = d + 1
        smask = (1 << s) - 1

        def witness_beats_floor(g: Graph) -> bool:
            bmask = 0
            for x in range(s, n):
                if g.rows[x] & smask == smask:
                    bmask |= 1 << x
            bsize = bmask.bit_count()
            crossing = sum((g.rows[v] & bmask).bit_count() for v in range(s))
            deviation = crossing - p * s * bsize
            floor = bounds.jumbledness_witness_floor(s, bsize, n, p, d)
            return deviation > WITNESS_SLACK * floor
        return witness_beats_floor

    return _execute(config, lambda pt: _default_model(pt, config.blocks),
                    annotate, make_trial)


def containment_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Empirical P(no copy of H) against the bound min(1, 10 Phi(H))."""
    if not config.pattern:
        raise ValueError("containment experiment needs a pattern")
    pattern = predicates.resolve_pattern(config.pattern)

    def annotate(pt, model):
        value = bounds.containment_failure_bound(
            pattern, pt["n"], pt["p"], pt["d"])
        return {"theory_value": min(1.0, value),
                "hypothesis": bounds.containment_hypothesis(
                    pattern, pt["n"], pt["d"])}

    def make_trial(pt, model):
        return predicates.lacks_pattern(pattern)

    result = _execute(config, lambda pt: _default_model(pt, config.blocks),
                      annotate, make_trial)
    for row in result.points:
        row.params["pattern"] = pattern.name
    return result


def clique_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Min/mean/max clique number per grid point with reference curves."""

    def make_model(pt):
        if pt["n"] > CLIQUE_MAX_N:
            raise ValueError(
                f"n={pt['n']} exceeds the exact clique search limit {CLIQUE_MAX_N}")
        return _default_model(pt, config.blocks)

    def annotate(pt, model):
        lo, hi = bounds.clique_bounds(pt["n"], pt["p"], pt["d"])
        return {"theory_low": lo, "theory_high": hi,
                "hypothesis": bounds.clique_hypothesis(pt["n"], pt["p"], pt["d"])}

    def make_trial(pt, model):
        return clique_number

    return _execute(config, make_model, annotate, make_trial, mode="statistic")


_TASK_RUNNERS = {
    "probability": estimate_probability,
    "sweep": threshold_sweep,
    "degree-violation": degree_violation_rate,
    "witness": jumbledness_witness_experiment,
    "containment": containment_experiment,
    "clique": clique_experiment,
}


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Dispatch a config to its task runner."""
    return _TASK_RUNNERS[config.task](config)


def check_monotone_trend(result: ExperimentResult, z: float = 3.0) -> bool:
    """Estimates along increasing p never drop by more than pooled noise.

    Groups rows sharing (kind, n, d) in grid order and allows each step
    down up to z combined standard errors; a sanity check for monotone
    predicates, not a significance test.
    """
    groups: dict[tuple, list[PointResult]] = {}
    for pt in result.points:
        if pt.error is not None or pt.estimate is None:
            continue
        key = (pt.params.get("kind"), pt.params.get("n"), pt.params.get("d"))
        groups.setdefault(key, []).append(pt)
    for rows in groups.values():
        for prev, cur in zip(rows, rows[1:]):
            noise = 0.0
            for r in (prev, cur):
                noise += math.sqrt(r.estimate * (1 - r.estimate) / r.trials) + 1 / r.trials
            if cur.estimate < prev.estimate - z * noise:
                return False
    return True
