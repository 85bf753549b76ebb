"""Command-line interface.

Results go to stdout, diagnostics to stderr.  Exit status is 0 on success,
1 when an operation's precondition fails (e.g. the input is not a flow
graph) and 2 on unreadable or malformed input and usage errors.
"""

import argparse
import json
import math
import os
import sys
import warnings
from pathlib import Path

from . import cover, features, flow, graph, metric, spectral
from .exceptions import FlowmagError, ParseError, SchemaError
from .report import render_csv, render_json

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib


class UsageError(Exception):
    pass


def _nonneg_float(s):
    x = float(s)
    if not x >= 0:
        raise argparse.ArgumentTypeError(f"{s!r} is not a nonnegative number")
    return x


def _probability(s):
    x = float(s)
    if not 0.0 <= x <= 1.0:
        raise argparse.ArgumentTypeError(f"{s!r} is not a probability")
    return x


def _nonneg_int(s):
    x = int(s)
    if x < 0:
        raise argparse.ArgumentTypeError(f"{s!r} is negative")
    return x


def _scales(s):
    try:
        ts = [float(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad scale list {s!r}") from None
    if not ts or any(not t >= 0 for t in ts):
        raise argparse.ArgumentTypeError("scales must be a nonempty list of nonnegative numbers")
    return ts


def _load(args):
    D = graph.load_digraph(args.input, args.input_format or (
        graph.guess_format(args.input) if args.input != "-" else "edge-list"))
    if getattr(args, "strip_loops", False):
        D = graph.strip_loops(D)
    return D


def _vertex(D, label):
    try:
        return D.index(label)
    except KeyError as exc:
        raise FlowmagError(str(exc)) from None


def _labelled_edge(F, e):
    return list(F.label_edge(e))


# ---------------------------------------------------------------------------
# Subcommands


def cmd_validate_flow(args, out):
    F = flow.validate_flow(_load(args))
    out.write(render_json({
        "source": F.graph.labels[F.source],
        "target": F.graph.labels[F.target],
        "entry": _labelled_edge(F, F.entry),
        "exit": _labelled_edge(F, F.exit),
        "n": F.n,
        "edges": len(F.edges),
    }))


def cmd_entropy(args, out):
    D = _load(args)
    rho = spectral.spectral_radius(D)
    result = {"n": D.n, "edges": len(D.edges), "rho": rho,
              "h": math.log(rho) if rho > 0 else -math.inf}
    if D.n <= args.exact_cap:
        result["charpoly"] = spectral.char_poly(D, args.exact_cap)
        result["zeta_denominator"] = spectral.zeta_denominator(D, args.exact_cap)
    else:
        result["charpoly"] = None
        result["zeta_denominator"] = None
    out.write(render_json(result))


def cmd_compose(args, out):
    fs = []
    for path in args.inputs:
        fmt = args.input_format or graph.guess_format(path)
        fs.append(flow.validate_flow(graph.load_digraph(path, fmt)))
    F = flow.parallel_compose(fs) if args.parallel else flow.series_compose(fs)
    out.write(graph.dumps_edge_list(F.graph))


def cmd_flow_magnitude(args, out):
    F = flow.validate_flow(_load(args))
    Z = flow.tropical_similarity_matrix(F, 0.0 if args.unit_entropy else -math.inf)
    v_hat, w_hat = flow.principal_solutions(Z)
    mag = flow.tropical_magnitude(Z)
    out.write(render_json({
        "edges": [_labelled_edge(F, e) for e in Z.edges],
        "Z": Z.values,
        "v_hat": v_hat,
        "w_hat": w_hat,
        "magnitude": mag.value if mag.defined else "undefined",
        "lhs": mag.lhs,
        "rhs": mag.rhs,
    }))


def cmd_cover_ball(args, out):
    D = _load(args)
    v0 = _vertex(D, args.base)
    direction = "reverse" if args.reverse else "forward"
    sizes = cover.ball_sizes(D, v0, max(args.radius, args.sequence or 0), direction)
    per_depth = [sizes[0]] + [b - a for a, b in zip(sizes, sizes[1:])]
    L = args.radius
    result = {
        "base": args.base,
        "radius": L,
        "t": args.t,
        "direction": direction,
        "counts": per_depth[: L + 1],
        "cumulative_counts": sizes[: L + 1],
        "magnitude": cover.magnitude_from_count(sizes[L], args.t),
        "log_magnitude": cover.log_magnitude_from_count(sizes[L], args.t),
    }
    seq = None
    if args.sequence:
        seq = cover.volume_entropy_sequence(D, v0, args.t, args.sequence, direction)
        result["sequence"] = [[i + 1, s] for i, s in enumerate(seq)]
    if args.output == "csv":
        if seq is None:
            raise UsageError("--output csv needs --sequence")
        out.write(render_csv(["L", "s_L"], [(i + 1, s) for i, s in enumerate(seq)]))
    else:
        out.write(render_json(result))


def cmd_metric_magnitude(args, out):
    D = _load(args)
    if args.weights:
        rows = []
        for value, w, v in metric.magnitude_function(D, args.t, weights=True):
            for i, label in enumerate(D.labels):
                rows.append((value.t, label, w.w[i], v.w[i], value.magnitude,
                             value.method, value.residual))
        out.write(render_csv(
            ["t", "vertex", "w", "v", "magnitude", "method", "residual"], rows))
    else:
        rows = [(m.t, m.magnitude, m.method, m.residual)
                for m in metric.magnitude_function(D, args.t)]
        out.write(render_csv(["t", "magnitude", "method", "residual"], rows))


def cmd_features(args, out):
    D = _load(args)
    if args.largest_component:
        D = graph.largest_weak_component(D)
    table = features.feature_table(D)
    for name, why in table.missing.items():
        print(f"feature {name} unavailable: {why}", file=sys.stderr)
    out.write(render_csv(["vertex"] + table.names,
                         [[v] + vals for v, vals in table.rows()]))


def _read_config(path):
    text = Path(path).read_text(encoding="utf-8")
    try:
        if Path(path).suffix.lower() == ".toml":
            data = tomllib.loads(text)
        else:
            data = json.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
        raise ParseError(f"cannot parse config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise SchemaError("experiment config must be a table/object")
    known = set(features.ExperimentConfig.__dataclass_fields__)
    unknown = set(data) - known
    if unknown:
        raise SchemaError(f"unknown config keys: {sorted(unknown)}")
    if "seed" not in data:
        raise SchemaError("experiment config must set an explicit 'seed'")
    if data.get("source", "er") != "er" and not Path(data["source"]).is_absolute():
        data["source"] = str(Path(path).parent / data["source"])
    return data


def cmd_correlate(args, out):
    data = _read_config(args.config)
    if args.threads is not None:
        data["threads"] = args.threads
    data.setdefault("threads", os.cpu_count() or 1)
    cfg = features.ExperimentConfig(**data)
    if not 0.0 <= cfg.p_remove <= 1.0 or not 0.0 <= cfg.edge_probability <= 1.0:
        raise FlowmagError("probabilities must lie in [0, 1]")
    if cfg.N < 1 or cfg.n < 1 or cfg.threads < 1:
        raise FlowmagError("N, n and threads must be positive")
    report = features.run_experiment(cfg)
    out.write(render_json(report))
    if args.long_csv:
        Path(args.long_csv).write_text(
            render_csv(["trial", "feature", "coefficient"], report.long_rows()),
            encoding="utf-8")


def cmd_gen_er(args, out):
    D = graph.erdos_renyi(args.n, args.q, args.seed)
    out.write(graph.dumps_edge_list(D))


# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(
        prog="flowmag",
        description="Entropy and magnitude invariants of digraphs and flow graphs.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def with_input(sp):
        sp.add_argument("input", help="graph file, or - for stdin")
        sp.add_argument("--input-format", choices=graph.FORMATS,
                        help="default: guessed from the file suffix")
        return sp

    sp = with_input(sub.add_parser("validate-flow", help="check the flow-graph axioms"))
    sp.set_defaults(func=cmd_validate_flow)

    sp = with_input(sub.add_parser("entropy", help="spectral radius, entropy, char. polynomial"))
    sp.add_argument("--exact-cap", type=_nonneg_int, default=spectral.EXACT_CAP,
                    help="largest n for exact polynomials (default %(default)s)")
    sp.set_defaults(func=cmd_entropy)

    sp = sub.add_parser("compose", help="series (default) or parallel composition")
    sp.add_argument("inputs", nargs="+")
    sp.add_argument("--input-format", choices=graph.FORMATS)
    sp.add_argument("--parallel", action="store_true")
    sp.set_defaults(func=cmd_compose)

    sp = with_input(sub.add_parser("flow-magnitude", help="max-plus magnitude of sub-flow graphs"))
    sp.add_argument("--unit-entropy", action="store_true",
                    help="give acyclic hom-objects entropy 0 instead of -inf")
    sp.set_defaults(func=cmd_flow_magnitude)

    sp = with_input(sub.add_parser("cover-ball", help="balls in the universal cover"))
    sp.add_argument("--base", required=True, help="basepoint label")
    sp.add_argument("--radius", type=_nonneg_int, required=True)
    sp.add_argument("--t", type=_nonneg_float, default=100.0)
    sp.add_argument("--reverse", action="store_true")
    sp.add_argument("--sequence", type=_nonneg_int, metavar="LMAX")
    sp.add_argument("--strip-loops", action="store_true")
    sp.add_argument("--output", choices=("json", "csv"), default="json")
    sp.set_defaults(func=cmd_cover_ball)

    sp = with_input(sub.add_parser("metric-magnitude", help="Lawvere-metric magnitude function"))
    sp.add_argument("--t", type=_scales, default=[0.0, 1.0, 10.0], help="comma-separated scales")
    sp.add_argument("--weights", action="store_true", help="per-vertex weighting/coweighting")
    sp.set_defaults(func=cmd_metric_magnitude)

    sp = with_input(sub.add_parser("features", help="per-vertex feature table (CSV)"))
    sp.add_argument("--strip-loops", action="store_true")
    sp.add_argument("--largest-component", action="store_true",
                    help="restrict to the largest weak component first")
    sp.set_defaults(func=cmd_features)

    sp = sub.add_parser("correlate", help="subgraph-pair correlation experiment")
    sp.add_argument("--config", required=True, help="JSON or TOML experiment file")
    sp.add_argument("--long-csv", help="also write (trial, feature, coefficient) rows here")
    sp.add_argument("--threads", type=int, help="default: available cores")
    sp.set_defaults(func=cmd_correlate)

    sp = sub.add_parser("gen-er", help="directed Erdos-Renyi graph as an edge list")
    sp.add_argument("--n", type=_nonneg_int, required=True)
    sp.add_argument("--q", type=_probability, required=True)
    sp.add_argument("--seed", type=_nonneg_int, required=True)
    sp.set_defaults(func=cmd_gen_er)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    warnings.simplefilter("always", graph.DuplicateEdgeWarning)
    try:
        args.func(args, out)
    except FlowmagError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, SchemaError, UsageError, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
