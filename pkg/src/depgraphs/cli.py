"""Command-line driver.

Subcommands: sample, bounds, experiment, sweep, audit, oracle.  Every
output embeds the effective configuration in comment or JSON form, so a
result file alone identifies the run that produced it.

Exit codes: 0 success, 1 usage or validation error, 2 enumeration or size
budget exceeded, 3 audit flag raised.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds as boundsmod
from . import harness, predicates, rng
from .distributions import (audit_model, blocks_from_text, build,
                            format_probability, from_descriptor,
                            parse_probability, sample)
from .errors import ResourceLimitError
from .graphs import to_edge_list
from .oracle import exact_event_probability

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RESOURCE = 2
EXIT_AUDIT = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this artifact reserves 2 for
    # resource limits, so remap usage problems to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", metavar="FILE",
                   help="model descriptor file (overrides the flags below)")
    p.add_argument("--dist", dest="kind", metavar="KIND",
                   help="er | star | gadget | edge-block | custom")
    p.add_argument("--n", type=int, help="vertex count")
    p.add_argument("--p", help="edge probability; a/b forms stay exact")
    p.add_argument("--d", type=int, default=0, help="dependence bound")
    p.add_argument("--a", type=int, help="edges kept per block (edge-block)")
    p.add_argument("--m", type=int, help="block size (edge-block)")
    p.add_argument("--blocks", metavar="SPEC",
                   help='custom partition, e.g. "0 1 2; 3 4"; rest are singletons')


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", "-o", metavar="PATH", help="default stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _model_from_args(args) -> object:
    if args.model:
        return from_descriptor(Path(args.model).read_text(encoding="utf-8"))
    if not args.kind:
        raise ValueError("need --dist KIND or --model FILE")
    if args.n is None:
        raise ValueError("need --n")
    p = parse_probability(args.p) if args.p is not None else None
    blocks = None
    if args.blocks is not None:
        blocks = blocks_from_text(args.n, args.blocks)
    return build(args.kind, args.n, p=p, d=args.d, a=args.a, m=args.m,
                 blocks=blocks)


def _resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    return rng.default_seed()


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _model_echo(model) -> str:
    parts = [f"kind={model.kind}", f"n={model.n}",
             f"p={format_probability(model.p)}", f"d={model.d}"]
    for key in ("a", "m"):
        if key in model.params:
            parts.append(f"{key}={model.params[key]}")
    return " ".join(parts)


def cmd_sample(args) -> int:
    model = _model_from_args(args)
    seed = _resolve_seed(args)
    graph = sample(model, seed).graph
    text = (f"# depgraphs sample\n# model: {_model_echo(model)}\n"
            f"# seed: {seed}\n") + to_edge_list(graph)
    _emit(text, args.output)
    return EXIT_OK


def cmd_bounds(args) -> int:
    params = {}
    for key in ("n", "d", "a", "b", "s", "mu", "t", "C", "eps", "fval",
                "c1", "c2", "slack"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    if args.p is not None:
        params["p"] = float(parse_probability(args.p))
    pattern = predicates.resolve_pattern(args.pattern) if args.pattern else None
    reports = boundsmod.evaluate(args.bound, pattern=pattern, **params)
    if args.format == "json":
        doc = [{"name": r.name, "inputs": {k: _json_value(v) for k, v in r.inputs.items()},
                "value": r.value, "vacuous": r.vacuous, "hypothesis": r.hypothesis}
               for r in reports]
        _emit(json.dumps(doc, indent=2) + "\n", args.output)
        return EXIT_OK
    lines = ["# depgraphs bounds", "name,params,value,vacuous,hypothesis"]
    for r in reports:
        inputs = ";".join(f"{k}={_fmt(v)}" for k, v in sorted(r.inputs.items()))
        lines.append(f"{r.name},{inputs},{_fmt(r.value)},{_fmt(r.vacuous)},"
                     f"{_fmt(r.hypothesis)}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _json_value(v):
    if isinstance(v, Fraction):
        return format_probability(v)
    return v


def _split_ints(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(",") if tok.strip())


def _split_probs(text: str) -> tuple:
    return tuple(parse_probability(tok) for tok in text.split(",") if tok.strip())


def _experiment_config(args, forced_task: str | None) -> harness.ExperimentConfig:
    if args.config:
        text = Path(args.config).read_text(encoding="utf-8")
        config = harness.ExperimentConfig.from_ini(text)
        ini = configparser.ConfigParser()
        ini.read_string(text)
        file_has_seed = ini.has_option("experiment", "seed")
    else:
        config = harness.ExperimentConfig(
            task=forced_task or "probability",
            ns=(10,), ps=(0.5,))
        file_has_seed = False
    overrides: dict = {}
    if forced_task:
        overrides["task"] = forced_task
    elif args.task:
        overrides["task"] = args.task
    for key in ("kind", "predicate", "pattern", "blocks"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    if args.n:
        overrides["ns"] = _split_ints(args.n)
    if args.p:
        overrides["ps"] = _split_probs(args.p)
    if args.d:
        overrides["ds"] = _split_ints(args.d)
    for key in ("trials", "workers", "a", "m"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    if args.eps is not None:
        overrides["eps"] = args.eps
    if args.seed is not None:
        overrides["seed"] = args.seed
    elif not file_has_seed:
        overrides["seed"] = rng.default_seed()
    return config.with_overrides(**overrides)


def _run_experiment(args, forced_task: str | None = None) -> int:
    config = _experiment_config(args, forced_task)
    result = harness.run_experiment(config)
    if args.format == "json":
        _emit(result.to_json(), args.output)
    else:
        _emit(result.to_csv(), args.output)
        if args.output:
            # provenance document alongside the table
            Path(args.output + ".json").write_text(result.to_json(),
                                                   encoding="utf-8")
    if result.all_failed():
        for pt in result.points:
            print(f"point {pt.index}: {pt.error}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def cmd_experiment(args) -> int:
    return _run_experiment(args)


def cmd_sweep(args) -> int:
    return _run_experiment(args, forced_task="sweep")


def cmd_audit(args) -> int:
    model = _model_from_args(args)
    seed = _resolve_seed(args)
    report = audit_model(model, args.trials, seed, pairs=args.pairs)
    if args.format == "json":
        doc = {
            "model": _model_echo(model), "trials": report.trials,
            "seed": report.seed,
            "max_dependency_degree": report.max_dependency_degree,
            "declared_d": report.declared_d, "degree_ok": report.degree_ok,
            "marginal_misses": report.marginal_misses,
            "marginal_tolerance": report.marginal_tolerance,
            "pair_misses": report.pair_misses,
            "pair_tolerance": report.pair_tolerance,
            "flagged": report.flagged,
            "marginals": [{"edge": m.edge, "successes": m.successes,
                           "estimate": m.estimate, "ci_low": m.ci_low,
                           "ci_high": m.ci_high, "flagged": m.flagged}
                          for m in report.marginals],
            "pairs": [{"edge_a": q.edge_a, "edge_b": q.edge_b,
                       "table": list(q.table), "statistic": q.statistic,
                       "p_value": q.p_value, "flagged": q.flagged}
                      for q in report.pairs],
        }
        _emit(json.dumps(doc, indent=2) + "\n", args.output)
    else:
        lines = [
            "# depgraphs audit",
            f"# model: {_model_echo(model)}",
            f"# trials: {report.trials}",
            f"# seed: {report.seed}",
            "record,edge_a,edge_b,successes,trials,estimate,ci_low,ci_high,"
            "statistic,p_value,flagged",
        ]
        for mg in report.marginals:
            lines.append(f"edge,{mg.edge},,{mg.successes},{mg.trials},"
                         f"{_fmt(mg.estimate)},{_fmt(mg.ci_low)},{_fmt(mg.ci_high)},,,"
                         f"{_fmt(mg.flagged)}")
        for q in report.pairs:
            lines.append(f"pair,{q.edge_a},{q.edge_b},{q.table[0]},{report.trials},"
                         f",,,{_fmt(q.statistic)},{_fmt(q.p_value)},{_fmt(q.flagged)}")
        lines.append(f"summary-degree,,,,,,,,{report.max_dependency_degree},,"
                     f"{_fmt(not report.degree_ok)}")
        lines.append(f"summary-marginals,,,{report.marginal_misses},,,,,"
                     f"{_fmt(report.marginal_tolerance)},,"
                     f"{_fmt(report.marginal_misses > report.marginal_tolerance)}")
        lines.append(f"summary-pairs,,,{report.pair_misses},,,,,"
                     f"{_fmt(report.pair_tolerance)},,"
                     f"{_fmt(report.pair_misses > report.pair_tolerance)}")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_AUDIT if report.flagged else EXIT_OK


def cmd_oracle(args) -> int:
    model = _model_from_args(args)
    pred = predicates.parse_predicate(args.predicate, p=model.p)
    value = exact_event_probability(model, pred)
    rational = format_probability(value) if isinstance(value, Fraction) else ""
    decimal = float(value)
    if args.format == "json":
        doc = {"model": _model_echo(model), "predicate": pred.name,
               "rational": rational or None, "decimal": decimal}
        _emit(json.dumps(doc, indent=2) + "\n", args.output)
    else:
        _emit(f"# depgraphs oracle\n# model: {_model_echo(model)}\n"
              f"# predicate: {pred.name}\n"
              f"rational,decimal\n{rational},{decimal!r}\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="depgraphs",
                     description="dependent random graph distributions: "
                                 "sampling, bounds, experiments, audits")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw one graph, write edge-list text")
    _add_model_flags(p)
    p.add_argument("--seed", type=int,
                   help=f"defaults to ${rng.SEED_ENV} or 0")
    p.add_argument("--output", "-o", metavar="PATH")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("bounds", help="evaluate a named theory bound")
    p.add_argument("bound", help=f"one of: {', '.join(boundsmod.BOUND_NAMES)}")
    p.add_argument("--n", type=int)
    p.add_argument("--p")
    p.add_argument("--d", type=int)
    p.add_argument("--a", type=int, help="|A| (jumbledness deviation)")
    p.add_argument("--b", type=int, help="|B|")
    p.add_argument("--s", type=int, help="|S| (witness floor)")
    p.add_argument("--mu", type=float)
    p.add_argument("--t", type=float)
    p.add_argument("--C", type=float)
    p.add_argument("--eps", type=float)
    p.add_argument("--fval", type=float)
    p.add_argument("--c1", type=float)
    p.add_argument("--c2", type=float)
    p.add_argument("--slack", type=float)
    p.add_argument("--pattern", help="k3, c5, path2, ... or an edge-list file")
    _add_output_flags(p)
    p.set_defaults(func=cmd_bounds)

    for name, fn, forced in (("experiment", cmd_experiment, False),
                             ("sweep", cmd_sweep, True)):
        p = sub.add_parser(name, help=("threshold sweep over a p grid" if forced
                                       else "run an experiment grid"))
        p.add_argument("--config", metavar="FILE",
                       help="INI config; flags override its values")
        if not forced:
            p.add_argument("--task", choices=harness.TASKS)
        p.add_argument("--kind", "--dist", dest="kind")
        p.add_argument("--n", help="comma-separated n grid")
        p.add_argument("--p", help="comma-separated p grid")
        p.add_argument("--d", help="comma-separated d grid")
        p.add_argument("--a", type=int)
        p.add_argument("--m", type=int)
        p.add_argument("--blocks")
        p.add_argument("--trials", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--workers", type=int)
        p.add_argument("--predicate")
        p.add_argument("--pattern")
        p.add_argument("--eps", type=float)
        _add_output_flags(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("audit", help="empirical marginal and independence audit")
    _add_model_flags(p)
    p.add_argument("--trials", type=int, default=20000)
    p.add_argument("--seed", type=int)
    p.add_argument("--pairs", type=int, default=50,
                   help="independent edge pairs to chi-squared test")
    _add_output_flags(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("oracle", help="exact event probability by enumeration")
    _add_model_flags(p)
    p.add_argument("--predicate", required=True,
                   help="connected, contains:k3, degree-in:1:4, ...")
    _add_output_flags(p)
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
