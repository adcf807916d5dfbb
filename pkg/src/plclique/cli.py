"""Command-line interface: generate, clique, predict, experiment, gof."""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from . import theory
from .cliques import DEFAULT_NODE_BUDGET, METHODS, run_method
from .errors import BudgetExceeded, ValidationError
from .experiments import ExperimentConfig, poisson_gof, run_experiment, sample_instance
from .graphio import read_graph, write_graph
from .model import KERNELS, NORMALIZATIONS, ModelParams
from .weights import read_weights, write_weights

EXIT_OK, EXIT_VALIDATION, EXIT_IO, EXIT_BUDGET = 0, 1, 2, 3


def _model_args(p):
    p.add_argument("--a", type=float, default=1.0, help="tail constant a")
    p.add_argument("--b", type=float, default=1.0, help="intensity constant b")
    p.add_argument("--alpha", type=float, required=True, help="tail exponent")
    p.add_argument("--kernel", choices=KERNELS, default="exponential")
    p.add_argument("--normalization", choices=NORMALIZATIONS, default="by-n")


def _params(args):
    return ModelParams(a=args.a, b=args.b, alpha=args.alpha, kernel=args.kernel,
                       normalization=args.normalization)


def build_parser():
    parser = argparse.ArgumentParser(prog="plclique",
                                     description="Cliques in power-law random graphs.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="sample weights and a graph to files")
    _model_args(p)
    p.add_argument("--n", type=float, required=True,
                   help="vertex count (Poisson mean for --weights poisson-count)")
    p.add_argument("--weights", choices=("iid", "deterministic", "poisson-count"), default="iid")
    p.add_argument("--sampler", choices=("fast", "pairwise", "multigraph"), default="fast")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("edgelist", "dimacs"), default="edgelist")
    p.add_argument("--out", required=True, help="graph file; weights go to <out>.weights")

    p = sub.add_parser("clique", help="run one clique method on a graph file")
    p.add_argument("graph")
    p.add_argument("--weights", required=True, help="weight file, one weight per line")
    p.add_argument("--method", choices=METHODS, default="greedy")
    p.add_argument("--format", choices=("edgelist", "dimacs"), default="edgelist")
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)

    p = sub.add_parser("predict", help="print theoretical predictions as JSON")
    _model_args(p)
    p.add_argument("--n", type=float)

    p = sub.add_parser("experiment", help="run the Monte Carlo harness from a TOML config")
    p.add_argument("config")
    p.add_argument("--seed", type=int, help="override master_seed")
    p.add_argument("--workers", type=int, help="override workers")
    p.add_argument("--out", help="override output_path (a directory)")

    p = sub.add_parser("gof", help="chi-square test of counts against a Poisson law")
    p.add_argument("counts", help="file of nonnegative integers, whitespace separated")
    p.add_argument("--rate", type=float, required=True)
    return parser


def cmd_generate(args):
    params = _params(args)
    n = args.n if args.weights == "poisson-count" else int(args.n)
    weights, g = sample_instance(n, params, args.seed, args.weights, args.sampler)
    write_graph(args.out, g.collapse(), args.format)
    write_weights(args.out + ".weights", weights)
    print(f"wrote {args.out} (n={g.n}, m={g.edge_count}) and {args.out}.weights")


def cmd_clique(args):
    weights = read_weights(args.weights)
    g = read_graph(args.graph, args.format, weights)
    res = run_method(g, args.method, args.node_budget)
    print(" ".join(str(v + 1) for v in res.vertices))
    print(f"size {res.size}")


def cmd_predict(args):
    print(json.dumps(theory.predictions(_params(args), args.n), indent=2, sort_keys=True))


def cmd_experiment(args):
    cfg = ExperimentConfig.from_toml(args.config).to_dict()
    for key, val in (("master_seed", args.seed), ("workers", args.workers), ("output_path", args.out)):
        if val is not None:
            cfg[key] = val
    config = ExperimentConfig.from_dict(cfg)
    records = run_experiment(config)
    print(f"{len(records)} records" + (f" written to {config.output_path}" if config.output_path else ""))


def cmd_gof(args):
    with open(args.counts) as fh:
        text = fh.read()
    try:
        counts = np.array([int(t) for t in text.split()], dtype=np.int64)
    except ValueError as e:
        raise ValidationError(f"{args.counts}: {e}") from None
    chi2, p = poisson_gof(counts, args.rate)
    print(json.dumps({"chi_square": chi2, "p_value": p, "samples": int(counts.size)}))


COMMANDS = {"generate": cmd_generate, "clique": cmd_clique, "predict": cmd_predict,
            "experiment": cmd_experiment, "gof": cmd_gof}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as e:
        print(f"error: {e.filename or ''}: {e.strerror or e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
