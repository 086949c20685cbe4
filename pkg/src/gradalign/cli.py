"""Command-line entry point: ``gradalign {align,perturb,eval,bench,gradcheck}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .bench import results_json, results_table, run_bench
from .config import RunConfig, load_config, parse_config
from .dataio import load_attributes, load_edge_list, load_pairs, save_attributes, save_edge_list, save_pairs
from .encoder import TrainConfig, gradient_check, theorem_bound_check
from .graph import AlignmentProblem
from .metrics import accuracy
from .pipeline import run_alignment
from .synthetic import PerturbConfig, perturb, sample_anchors, shuffle_nodes

log = logging.getLogger("gradalign")

GRADCHECK_TOL = 1e-4
BOUND_EPSILONS = (0.0, 0.01, 0.1, 1.0)


class CLIError(Exception):
    pass


def _load_run_config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    if args.set:
        cfg = parse_config("\n".join(args.set), cfg)
    return cfg


def _load_graph(edges: str, attrs: str | None):
    g, ids = load_edge_list(edges)
    if attrs:
        g = g.with_attributes(load_attributes(attrs, g.node_count))
    return g, ids


def _write_text(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def cmd_align(args) -> int:
    cfg = _load_run_config(args)
    g_s, src_ids = _load_graph(args.source, args.source_attrs)
    g_t, tgt_ids = _load_graph(args.target, args.target_attrs)
    gt = load_pairs(args.ground_truth, src_ids, tgt_ids) if args.ground_truth else []
    if args.anchors:
        seeds = load_pairs(args.anchors, src_ids, tgt_ids)
    elif cfg.anchor_fraction > 0:
        if not gt:
            raise CLIError("anchors.t > 0 needs --ground-truth to sample anchors from")
        seeds = sample_anchors(gt, cfg.anchor_fraction, cfg.anchor_seed)
    else:
        seeds = []
    problem = AlignmentProblem(g_s, g_t, gt, seeds)

    trace_fh = open(args.trace, "w", encoding="utf-8", newline="\n") if args.trace else None
    try:
        def on_iteration(record):
            log.info("iteration %(iteration)d: committed %(committed)d, matched %(matched)d", record)
            if trace_fh is not None:
                trace_fh.write(json.dumps(record, sort_keys=True) + "\n")

        result = run_alignment(problem, cfg, on_iteration)
    finally:
        if trace_fh is not None:
            trace_fh.close()

    save_pairs(result.mapping.pairs, args.output, src_ids, tgt_ids)
    if result.report is not None:
        text = result.report.to_json()
        if args.metrics:
            _write_text(args.metrics, text)
        else:
            sys.stdout.write(text)
    elif args.metrics:
        raise CLIError("--metrics needs --ground-truth with at least one non-seed pair")
    return 0


def cmd_perturb(args) -> int:
    g, ids = _load_graph(args.input, args.attrs)
    noisy, gt = perturb(g, PerturbConfig(args.edge_removal, args.attr_flip, args.seed))
    if args.no_shuffle:
        out_ids = ids
    else:
        noisy, gt = shuffle_nodes(noisy, args.seed)
        out_ids = [str(i) for i in range(noisy.node_count)]
    save_edge_list(noisy, args.output, out_ids)
    if noisy.attributes is not None:
        if not args.output_attrs:
            raise CLIError("--attrs given without --output-attrs")
        save_attributes(noisy.attributes, args.output_attrs)
    save_pairs(gt, args.ground_truth, ids, out_ids)
    return 0


def _read_id_pairs(path: str) -> list[tuple[str, str]]:
    # external ids are compared as strings, so both files share one id space
    ids: list[str] = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                ids.extend(line.split())
    uniq = sorted(set(ids))
    return [(uniq[u], uniq[v]) for u, v in load_pairs(path, uniq, uniq)]


def cmd_eval(args) -> int:
    mapping = _read_id_pairs(args.mapping)
    gt = _read_id_pairs(args.ground_truth)
    seeds = _read_id_pairs(args.anchors) if args.anchors else []
    out = {"accuracy": accuracy(mapping, gt, seeds), "matched_count": len(mapping)}
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return 0


def cmd_bench(args) -> int:
    cfg = _load_run_config(args)
    overrides = []
    if args.seeds:
        overrides.append(f"bench.seeds = {args.seeds}")
    if args.n is not None:
        overrides.append(f"bench.n = {args.n}")
    if args.edge_prob is not None:
        overrides.append(f"bench.edge_prob = {args.edge_prob}")
    if args.t is not None:
        overrides.append(f"anchors.t = {args.t}")
    if args.no_augment:
        overrides.append("augment.enabled = false")
    if overrides:
        cfg = parse_config("\n".join(overrides), cfg)
    results = run_bench(cfg, workers=args.workers)
    if args.output:
        _write_text(args.output, results_json(results))
    sys.stdout.write(results_table(results))
    return 0


def cmd_gradcheck(args) -> int:
    ok = True
    cfg = TrainConfig(num_layers=2, hidden_dim=6, activation=args.activation)
    worst = 0.0
    for seed in range(args.seeds):
        err = gradient_check(cfg, seed)
        worst = max(worst, err)
        if err > GRADCHECK_TOL:
            ok = False
            print(f"gradient seed {seed}: relative error {err:.3e} > {GRADCHECK_TOL:g}")
    print(f"gradient check ({args.activation}, {args.seeds} seeds): max relative error {worst:.3e}"
          f" -> {'ok' if worst <= GRADCHECK_TOL else 'FAIL'}")
    for eps in BOUND_EPSILONS:
        res = theorem_bound_check(eps, args.trials, rng_seed=args.rng_seed)
        ok &= res.ok
        line = f"bound check eps={eps:g}: {res.trials} trials, worst ratio {res.worst_ratio:.6f}"
        if not res.ok:
            line += f" FAIL first violation {res.first_violation}"
        print(line)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gradalign", description="Centrality-augmented gradual network alignment.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config(p):
        p.add_argument("--config", help="key = value config file")
        p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override one config key (repeatable)")

    p = sub.add_parser("align", help="align two graphs")
    p.add_argument("--source", required=True, help="source edge list")
    p.add_argument("--target", required=True, help="target edge list")
    p.add_argument("--source-attrs", help="source attribute CSV")
    p.add_argument("--target-attrs", help="target attribute CSV")
    p.add_argument("--ground-truth", help="ground-truth TSV (enables metrics and anchors.t sampling)")
    p.add_argument("--anchors", help="seed anchor TSV (overrides anchors.t)")
    p.add_argument("-o", "--output", required=True, help="mapping TSV to write")
    p.add_argument("--metrics", help="metrics JSON to write (stdout when omitted)")
    p.add_argument("--trace", help="per-iteration JSON-lines trace to write")
    add_config(p)
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("perturb", help="write a noisy, relabelled copy of a graph")
    p.add_argument("--input", required=True, help="input edge list")
    p.add_argument("--attrs", help="input binary attribute CSV")
    p.add_argument("-o", "--output", required=True, help="noisy edge list to write")
    p.add_argument("--output-attrs", help="noisy attribute CSV to write")
    p.add_argument("--ground-truth", required=True, help="ground-truth TSV to write")
    p.add_argument("--edge-removal", type=float, default=0.1)
    p.add_argument("--attr-flip", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-shuffle", action="store_true", help="keep the input node ids")
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("eval", help="score a mapping against ground truth")
    p.add_argument("--mapping", required=True)
    p.add_argument("--ground-truth", required=True)
    p.add_argument("--anchors", help="seed pairs excluded from scoring")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", help="run the synthetic benchmark over seeds")
    add_config(p)
    p.add_argument("--seeds", help="comma-separated seeds")
    p.add_argument("--n", type=int)
    p.add_argument("--edge-prob", type=float)
    p.add_argument("--t", type=float, help="anchor fraction")
    p.add_argument("--no-augment", action="store_true", help="all-ones input attributes")
    p.add_argument("--output", help="results JSON to write")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gradcheck", help="gradient and attribute-bound checks")
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--activation", default="tanh", choices=("tanh", "relu", "identity"))
    p.set_defaults(func=cmd_gradcheck)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (CLIError, ValueError, OSError, RuntimeError) as exc:
        print(f"gradalign {args.command}: error: {exc}", file=sys.stderr)
        return 2
