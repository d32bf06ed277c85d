"""Command-line entry point: `ramseyq <subcommand> ...`."""

from __future__ import annotations

import argparse
import csv
import random
import sys
import time
from pathlib import Path

from .evaluator import EvalConfig, eval_ramsey
from .reductions import (
    PreconditionError,
    embed_kclique_linear,
    embed_kclique_sublinear,
    pad_instance,
    probe_function,
    ramsey_membership,
)
from .solvers import (
    ENUMERATION_MAX_K,
    SolverRefused,
    clique_by_branch_and_bound,
    clique_by_enumeration,
    clique_by_vertex_cover,
    clique_oracle,
    verify_certificate,
)
from .structures import (
    FormatError,
    Graph,
    Model,
    complete_graph,
    format_dimacs,
    format_model,
    gnp,
    graph_to_model,
    load_graph,
    load_model,
    model_to_graph,
    planted_clique,
    random_model,
)
from .threshold import (
    ArithmeticCapacityError,
    ThresholdSyntaxError,
    ThresholdValidationError,
    classify,
    dichotomy_verdict,
    parse_threshold,
    validate_threshold,
)

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR, EXIT_VIOLATION = 0, 1, 2, 3

THRESHOLD_SUITE = (
    "0",
    "1",
    "2",
    "3",
    "ceil(log2(n))",
    "ceil(sqrt(n))",
    "ceil(1/2 * n)",
    "n - ceil(log2(n))",
    "n",
    "n + 1",
)

BENCH_FIELDS = ("fn", "n", "k", "strategy", "outcome", "wall_us", "subsets", "nodes", "branches", "seed")


class UsageError(Exception):
    pass


def _config(args) -> EvalConfig:
    return EvalConfig(
        c_small=args.c_small,
        c_log=args.c_log,
        strategy=args.strategy,
        budget_ms=args.budget_ms,
    )


def _load(args) -> Graph | Model:
    """Read --graph or --model.

    A DIMACS file lists unordered edges and nothing else, so read literally as
    a relation it has no diagonal pairs: without --loops-free no vertex is
    eligible.
    """
    if args.model:
        return load_model(args.model)
    if args.graph:
        g = load_graph(args.graph)
        return g if args.loops_free else Graph._trusted(g.size, g.adj, 0)
    raise UsageError("one of --graph or --model is required")


def _as_graph(structure: Graph | Model, loops_free: bool) -> Graph:
    return model_to_graph(structure, loops_free) if isinstance(structure, Model) else structure


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _outcome_word(outcome: bool | None) -> str:
    return "unknown" if outcome is None else str(outcome).lower()


def cmd_eval(args) -> int:
    f = parse_threshold(args.fn)
    structure = _load(args)
    cert = eval_ramsey(structure, f, _config(args), loops_free=args.loops_free)
    n = structure.size
    print(f"RESULT {_outcome_word(cert.outcome)}")
    if args.witness and cert.outcome:
        print("WITNESS " + " ".join(map(str, cert.witness)))
    print(f"STRATEGY {cert.strategy}")
    print(f"n {n} k {cert.k}")
    print("STATS " + " ".join(f"{k}={v}" for k, v in cert.stats.items()))
    if cert.outcome is None:
        print("budget exhausted before the search finished", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_TRUE if cert.outcome else EXIT_FALSE


def cmd_classify(args) -> int:
    f = parse_threshold(args.fn)
    cls = classify(f)
    verdict = dichotomy_verdict(cls)
    print(f"case {cls.case.value}")
    print(f"certainty {cls.certainty.value}")
    if cls.constant is not None:
        print(f"c {cls.constant}")
    if cls.n0 is not None:
        print(f"n0 {cls.n0}")
    if cls.linear_constant is not None:
        print(f"linear_constant {cls.linear_constant}")
    if cls.horizon is not None:
        print(f"horizon {cls.horizon}")
    if not cls.nondecreasing:
        print("nondecreasing false")
    label = "tractable" if verdict.tractable else "intractable"
    tag = f" (assuming {verdict.assumption})" if verdict.assumption else ""
    print(f"verdict {label} {verdict.reason.value}{tag}")
    if cls.note:
        print(f"note {cls.note}")
    return 0


def cmd_reduce(args) -> int:
    f = parse_threshold(args.fn)
    g = _as_graph(_load(args), args.loops_free)
    if args.construction == "pad":
        res = pad_instance(g, args.b, f)
    elif args.construction == "sublinear":
        res = embed_kclique_sublinear(g, args.k, f)
    else:
        res = embed_kclique_linear(g, args.k, f)
    out = res.graph
    comment = f"{res.provenance['construction']} reduction of a {g.size}-vertex instance, f = {f}"
    if out.eligible == out.all_vertices:
        text = format_dimacs(out, comment)
    else:
        text = format_model(graph_to_model(out), comment)
    _emit(text, args.out)
    sidecar = res.describe() + "\n"
    if args.out:
        Path(args.out + ".params").write_text(sidecar, encoding="utf-8")
        sys.stdout.write(sidecar)
    else:
        sys.stderr.write(sidecar)
    return 0


def cmd_probe(args) -> int:
    f = parse_threshold(args.fn)
    value = probe_function(ramsey_membership(f, _config(args)), args.n)
    print(f"> {args.n}" if value is None else value)
    return 0


def _random_instance(rng: random.Random, n: int) -> Graph:
    p = rng.choice((0.2, 0.5, 0.8, 0.95))
    if rng.random() < 0.5:
        return gnp(n, p, rng)
    return model_to_graph(random_model(n, p, rng))


def check_instance(g: Graph, f, config: EvalConfig = EvalConfig()) -> str | None:
    """Compare the evaluator and every engine against the oracle; None if all agree."""
    n = g.size
    k = f(n)
    cert = eval_ramsey(g, f, config, validate=False)
    truth = clique_oracle(g, min(k, n + 1)).outcome if k <= n else False
    if cert.outcome != truth:
        return f"eval_ramsey ({cert.strategy}) said {cert.outcome}, oracle {truth}"
    if not verify_certificate(g, cert):
        return f"certificate from {cert.strategy} fails verification"
    if k > n:
        return None
    engines = [clique_by_vertex_cover, clique_by_branch_and_bound]
    if k <= config.c_small:
        engines.append(lambda h, j: clique_by_enumeration(h, j, max_k=ENUMERATION_MAX_K))
    for engine in engines:
        c = engine(g, k)
        if c.outcome != truth:
            return f"{c.strategy} said {c.outcome}, oracle {truth}"
        if not verify_certificate(g, c):
            return f"certificate from {c.strategy} fails verification"
    return None


def cmd_oracle_check(args) -> int:
    sources = args.fn or list(THRESHOLD_SUITE)
    functions = [(s, parse_threshold(s)) for s in sources]
    for _, f in functions:
        validate_threshold(f, require_monotone=False)
    rng = random.Random(args.seed)
    config = _config(args)
    runs = 0
    for n in range(1, args.max_n + 1):
        for trial in range(args.trials):
            g = _random_instance(rng, n)
            for src, f in functions:
                problem = check_instance(g, f, config)
                runs += 1
                if problem:
                    path = args.out or "oracle-check-failure.model"
                    note = f"n={n} trial={trial} seed={args.seed} fn={src}: {problem}"
                    Path(path).write_text(format_model(graph_to_model(g), note), encoding="utf-8")
                    print(f"VIOLATION {note}")
                    print(f"instance written to {path}")
                    return EXIT_VIOLATION
    print(f"OK {runs} runs, max n {args.max_n}, seed {args.seed}")
    return 0


def _family(args, n: int, seed: int) -> Graph:
    if args.family == "complete":
        return complete_graph(n)
    if args.family == "gnp":
        return gnp(n, args.p, seed)
    if args.family == "planted":
        return planted_clique(n, args.p, min(args.k, n), seed)[0]
    raise UsageError(f"unknown family {args.family}")


def bench_sizes(n_min: int, n_max: int, step: int) -> list[int]:
    """Arithmetic progression when step > 0, doubling when step == 0."""
    if step > 0:
        return list(range(n_min, n_max + 1, step))
    sizes, n = [], max(n_min, 1)
    while n <= n_max:
        sizes.append(n)
        n *= 2
    return sizes


def cmd_bench(args) -> int:
    functions = [(s, parse_threshold(s)) for s in args.fn]
    config = _config(args)
    handle = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(BENCH_FIELDS)
        for n in bench_sizes(args.n_min, args.n_max, args.n_step):
            for rep in range(args.trials):
                seed = args.seed + rep
                g = _family(args, n, seed)
                for src, f in functions:
                    start = time.perf_counter()
                    cert = eval_ramsey(g, f, config)
                    wall = round((time.perf_counter() - start) * 1e6)
                    s = cert.stats
                    writer.writerow((src, n, cert.k, cert.strategy, _outcome_word(cert.outcome), wall,
                                     s["subsets"], s["nodes"], s["branches"], seed))
    finally:
        if handle is not sys.stdout:
            handle.close()
    return 0


def cmd_gen(args) -> int:
    n, seed = args.n, args.seed
    if args.family == "relation":
        m = random_model(n, args.p, seed)
        _emit(format_model(m, f"relation n={n} p={args.p} seed={seed}"), args.out)
        return 0
    g = _family(args, n, seed)
    _emit(format_dimacs(g, f"{args.family} n={n} p={args.p} k={args.k} seed={seed}"), args.out)
    return 0


def _common(p: argparse.ArgumentParser, structure: bool = True) -> None:
    if structure:
        src = p.add_mutually_exclusive_group()
        src.add_argument("--graph", help="DIMACS edge file")
        src.add_argument("--model", help="relational model file")
        p.add_argument("--loops-free", action="store_true",
                       help="treat every element as related to itself (simple-graph input)")
    p.add_argument("--strategy", choices=("auto", "enum", "vc", "bnb", "oracle"), default="auto")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget-ms", type=float, default=None)
    p.add_argument("--c-small", type=int, default=4)
    p.add_argument("--c-log", type=int, default=2)
    p.add_argument("--out")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ramseyq", description="Ramsey quantifier model checking.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="decide membership of a structure")
    _common(p)
    p.add_argument("--fn", required=True)
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("classify", help="classify a threshold function")
    p.add_argument("--fn", required=True)
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("reduce", help="transform a clique instance")
    p.add_argument("construction", choices=("pad", "sublinear", "linear"))
    _common(p)
    p.add_argument("--fn", required=True)
    p.add_argument("--b", type=int, default=0, help="bound for pad")
    p.add_argument("--k", type=int, default=1, help="clique size for sublinear / linear")
    p.set_defaults(run=cmd_reduce)

    p = sub.add_parser("probe", help="recover f(n) from membership queries")
    _common(p, structure=False)
    p.add_argument("--fn", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(run=cmd_probe)

    p = sub.add_parser("oracle-check", help="seeded equivalence run against the brute-force oracle")
    _common(p, structure=False)
    p.add_argument("--fn", action="append", help="repeatable; defaults to the built-in suite")
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(run=cmd_oracle_check)

    p = sub.add_parser("bench", help="CSV timings over generated families")
    _common(p, structure=False)
    p.add_argument("--fn", action="append", required=True)
    p.add_argument("--family", choices=("complete", "gnp", "planted"), default="complete")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=64)
    p.add_argument("--n-step", type=int, default=0, help="0 means doubling")
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--k", type=int, default=6, help="planted clique size")
    p.add_argument("--trials", type=int, default=1)
    p.set_defaults(run=cmd_bench)

    p = sub.add_parser("gen", help="write a seeded random instance")
    p.add_argument("--family", "--model", dest="family",
                   choices=("gnp", "planted", "complete", "relation"), default="gnp")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--k", type=int, default=4, help="planted clique size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(run=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (ThresholdSyntaxError, ThresholdValidationError, ArithmeticCapacityError,
            FormatError, PreconditionError, SolverRefused, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
