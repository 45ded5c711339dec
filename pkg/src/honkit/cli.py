"""Command-line entry point.

Subcommands: stats, build, order, report, pagerank, predict, compare, synth.
JSON is the default structured output; `report` and `build` default to CSV
because their natural shape is tabular. Every report embeds the effective
run configuration, outputs are byte-identical across runs for identical
inputs, and exit codes are 0 (success), 1 (usage error), 2 (data error).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .analytics import multi_order_reports
from .compare import comparison_report
from .config import RunConfig, from_environment
from .corpus import parse_paths, path_stats, split_corpus
from .errors import HonkitError
from .graph import first_order_graph
from .hon import MultiOrderModel, build_hon
from .prediction import prediction_counts
from .ranking import pagerank_alignment
from .selection import optimal_order
from .synth import generate_corpus, random_planted_chain

USAGE_ERROR = 1
DATA_ERROR = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="honkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"honkit {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    def add_common(p, input_arg=True):
        if input_arg:
            p.add_argument("--input", "-i", required=True, help="path corpus file")
            p.add_argument(
                "--input-format", choices=("lines", "ngram"), default="lines",
                help="corpus file format (default: lines)",
            )
        p.add_argument("--max-order", type=int, default=None)
        p.add_argument("--epsilon", type=float, default=None)
        p.add_argument("--damping", type=float, default=None)
        p.add_argument("--pagerank-tol", type=float, default=None)
        p.add_argument("--kl-epsilon", type=float, default=None)
        p.add_argument("--kl-direction", choices=("in", "out", "total"), default=None)
        p.add_argument("--split", type=float, default=None, help="held-out test fraction")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--exact-sp-threshold", type=int, default=None)
        p.add_argument("--format", choices=("json", "csv"), default=None)
        p.add_argument("--output", "-o", default=None, help="output file (default: stdout)")

    p = sub.add_parser("stats", help="path-length statistics of a corpus")
    add_common(p)

    p = sub.add_parser("build", help="serialize the higher-order network at one order")
    add_common(p)
    p.add_argument("--order", type=int, default=1, help="memory order to build")
    p.add_argument(
        "--topology", action="store_true",
        help="emit the first-order graph as u,v,count rows instead",
    )

    p = sub.add_parser("order", help="optimal memory order via likelihood-ratio tests")
    add_common(p)

    p = sub.add_parser("report", help="structural metrics for orders 1..max")
    add_common(p)

    p = sub.add_parser("pagerank", help="rank agreement with empirical usage per order")
    add_common(p)
    p.add_argument("--scores-out", default=None, help="also write per-node score CSV here")

    p = sub.add_parser("predict", help="next-node prediction accuracy per order")
    add_common(p)
    p.add_argument(
        "--holdout", action="store_true",
        help="also evaluate on a held-out split (fraction --split, seeded)",
    )

    p = sub.add_parser("compare", help="representativeness report for two scenarios")
    add_common(p, input_arg=False)
    p.add_argument("--a", required=True, help="first corpus file")
    p.add_argument("--b", required=True, help="second corpus file")
    p.add_argument(
        "--input-format", choices=("lines", "ngram"), default="lines",
        help="corpus file format (default: lines)",
    )

    p = sub.add_parser("synth", help="generate a planted-order synthetic corpus")
    add_common(p, input_arg=False)
    p.add_argument("--nodes", type=int, default=10)
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--branching", type=int, default=3)
    p.add_argument("--determinism", type=float, default=0.9)
    p.add_argument("--n-paths", type=int, default=1000)
    p.add_argument("--min-len", type=int, default=8)
    p.add_argument("--max-len", type=int, default=15)
    return parser


def _effective_config(args) -> RunConfig:
    try:
        config = from_environment()
    except ValueError as exc:
        raise UsageError(f"bad HONKIT_* environment value: {exc}") from None
    overrides = {
        "max_order": args.max_order,
        "epsilon": args.epsilon,
        "damping": args.damping,
        "pagerank_tol": args.pagerank_tol,
        "kl_epsilon": args.kl_epsilon,
        "kl_direction": args.kl_direction,
        "split_fraction": args.split,
        "seed": args.seed,
        "exact_sp_threshold": args.exact_sp_threshold,
        "format": args.format,
    }
    for name, value in overrides.items():
        if value is not None:
            setattr(config, name, value)
    try:
        config.validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return config


def _load_corpus(path: str, fmt: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_paths(fh, fmt)
    except OSError as exc:
        raise HonkitError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_doc(payload: dict, config: RunConfig) -> str:
    doc = {"config": config.as_dict()}
    doc.update(payload)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _csv_doc(header: list[str], rows: list[list], config: RunConfig) -> str:
    lines = [f"# config {k}={v}" for k, v in sorted(config.as_dict().items())]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def _cmd_stats(args, config: RunConfig) -> None:
    corpus = _load_corpus(args.input, args.input_format)
    stats = path_stats(corpus)
    payload = {
        "path_count": stats.path_count,
        "length_histogram": {str(k): v for k, v in stats.length_histogram.items()},
        "mean_length": stats.mean_length,
        "mean_transitions": stats.mean_transitions,
        "node_count": corpus.n_nodes,
    }
    if config.format == "csv":
        rows = [[length, count] for length, count in stats.length_histogram.items()]
        _emit(_csv_doc(["length", "count"], rows, config), args.output)
    else:
        _emit(_json_doc(payload, config), args.output)


def _cmd_build(args, config: RunConfig) -> None:
    corpus = _load_corpus(args.input, args.input_format)
    if args.topology:
        graph = first_order_graph(corpus)
        rows = [[u, v, c] for u, v, c in graph.edges_tokens()]
        _emit(_csv_doc(["u", "v", "count"], rows, config), args.output)
        return
    if args.order < 1:
        raise UsageError(f"--order must be >= 1, got {args.order}")
    hon = build_hon(corpus, args.order)
    lines = [f"# config {k}={v}" for k, v in sorted(config.as_dict().items())]
    lines.append("from_state,to_state,count,probability")
    lines.extend(hon.to_csv_lines())
    _emit("\n".join(lines) + "\n", args.output)


def _cmd_order(args, config: RunConfig) -> None:
    corpus = _load_corpus(args.input, args.input_format)
    model = MultiOrderModel(corpus, config.max_order)
    selection = optimal_order(model, corpus, config.epsilon, config.max_order)
    payload = {
        "optimal_order": selection.optimal_order,
        "epsilon": selection.epsilon,
        "truncated": selection.truncated,
        "trace": [
            {"k": r.null_order, "lambda": r.lam, "delta_d": r.delta_d, "p_value": r.p_value}
            for r in selection.trace
        ],
    }
    _emit(_json_doc(payload, config), args.output)


def _cmd_report(args, config: RunConfig) -> None:
    corpus = _load_corpus(args.input, args.input_format)
    reports = multi_order_reports(
        corpus, config.max_order, config.exact_sp_threshold, seed=config.seed
    )
    fmt = args.format or "csv"
    if fmt == "json":
        _emit(_json_doc({"reports": [r.as_dict() for r in reports]}, config), args.output)
    else:
        header = [
            "order", "nodes", "edges", "mean_in_degree", "mean_out_degree",
            "diameter", "avg_shortest_path", "density", "gcc_ratio", "estimated",
        ]
        rows = [
            [
                r.order, r.node_count, r.edge_count,
                f"{r.mean_in_degree:.6g}", f"{r.mean_out_degree:.6g}",
                r.diameter, f"{r.avg_shortest_path:.6g}",
                f"{r.density:.6g}", f"{r.gcc_ratio:.6g}", str(r.estimated).lower(),
            ]
            for r in reports
        ]
        _emit(_csv_doc(header, rows, config), args.output)


def _cmd_pagerank(args, config: RunConfig) -> None:
    corpus = _load_corpus(args.input, args.input_format)
    alignment = pagerank_alignment(
        corpus, config.max_order, config.damping, config.pagerank_tol
    )
    payload = {
        "alignment": [
            {
                "order": k,
                "tau": alignment[k]["tau"],
                "converged": alignment[k]["converged"],
                "iterations": alignment[k]["iterations"],
            }
            for k in sorted(alignment)
        ]
    }
    _emit(_json_doc(payload, config), args.output)
    if args.scores_out:
        from .ranking import aggregate_pagerank, hon_pagerank

        model = MultiOrderModel(corpus, config.max_order)
        rows = []
        for k in range(1, config.max_order + 1):
            layer = model.layers[k]
            if layer.node_count == 0:
                continue
            pr = hon_pagerank(layer, config.damping, config.pagerank_tol)
            agg = aggregate_pagerank(pr)
            rows.extend([k, tok, repr(score)] for tok, score in sorted(agg.scores.items()))
        _emit(_csv_doc(["order", "node", "score"], rows, config), args.scores_out)


def _cmd_predict(args, config: RunConfig) -> None:
    corpus = _load_corpus(args.input, args.input_format)
    records = []
    model = MultiOrderModel(corpus, config.max_order)
    for k in range(1, config.max_order + 1):
        correct, total, nones = prediction_counts(model, corpus, k)
        records.append(
            {
                "order": k,
                "accuracy": correct / total,
                "evaluated_transitions": total,
                "none_rate": nones / total,
                "protocol": "in-sample",
            }
        )
    if args.holdout:
        train, test = split_corpus(corpus, config.split_fraction, config.seed)
        if train.n_distinct == 0 or test.n_distinct == 0:
            raise HonkitError("held-out split produced an empty side; corpus too small")
        holdout_model = MultiOrderModel(train, config.max_order)
        for k in range(1, config.max_order + 1):
            correct, total, nones = prediction_counts(holdout_model, test, k)
            records.append(
                {
                    "order": k,
                    "accuracy": correct / total,
                    "evaluated_transitions": total,
                    "none_rate": nones / total,
                    "protocol": "holdout",
                }
            )
    _emit(_json_doc({"prediction": records}, config), args.output)


def _cmd_compare(args, config: RunConfig) -> None:
    corpus_a = _load_corpus(args.a, args.input_format)
    corpus_b = _load_corpus(args.b, args.input_format)
    report = comparison_report(
        corpus_a,
        corpus_b,
        config.max_order,
        label_a=args.a,
        label_b=args.b,
        kl_epsilon=config.kl_epsilon,
        kl_direction=config.kl_direction,
        damping=config.damping,
        exact_threshold=config.exact_sp_threshold,
        seed=config.seed,
    )
    payload = report.as_dict()
    payload["csv"] = _comparison_csv_blocks(report)
    _emit(_json_doc(payload, config), args.output)


def _comparison_csv_blocks(report) -> dict[str, str]:
    """Plot-ready CSV text blocks, one per figure family."""
    metric_rows = []
    for side, reports in (("a", report.reports_a), ("b", report.reports_b)):
        for r in reports:
            metric_rows.append(
                f"{side},{r.order},{r.node_count},{r.edge_count},{r.diameter},"
                f"{r.avg_shortest_path!r},{r.density!r},{r.gcc_ratio!r}"
            )
    cosine_rows = [f"{m},{report.cosine[m]!r}" for m in sorted(report.cosine)]
    kl_rows = [f"{k},{report.kl[k]!r}" for k in sorted(report.kl)]
    curve_rows = []
    for k in sorted(report.accuracy_a):
        curve_rows.append(
            f"{k},{report.tau_a[k]!r},{report.tau_b[k]!r},"
            f"{report.accuracy_a[k]!r},{report.accuracy_b[k]!r}"
        )
    return {
        "metric_curves": "\n".join(
            ["scenario,order,nodes,edges,diameter,avg_shortest_path,density,gcc_ratio"]
            + metric_rows
        ),
        "cosine": "\n".join(["metric,cosine"] + cosine_rows),
        "kl": "\n".join(["order,kl"] + kl_rows),
        "alignment": "\n".join(["order,tau_a,tau_b,accuracy_a,accuracy_b"] + curve_rows),
    }


def _cmd_synth(args, config: RunConfig) -> None:
    try:
        chain = random_planted_chain(
            args.nodes, args.order, args.branching, args.determinism, config.seed
        )
        corpus = generate_corpus(
            chain, args.n_paths, args.min_len, args.max_len, config.seed + 1
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit("\n".join(corpus.to_lines()) + "\n", args.output)


_COMMANDS = {
    "stats": _cmd_stats,
    "build": _cmd_build,
    "order": _cmd_order,
    "report": _cmd_report,
    "pagerank": _cmd_pagerank,
    "predict": _cmd_predict,
    "compare": _cmd_compare,
    "synth": _cmd_synth,
}


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required (see --help)")
        config = _effective_config(args)
        _COMMANDS[args.command](args, config)
        return 0
    except UsageError as exc:
        print(f"honkit: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (HonkitError, ValueError) as exc:
        print(f"honkit: {exc}", file=sys.stderr)
        return DATA_ERROR


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
