"""Command-line entry points: precompute, serve, snapshot, rules."""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from pathlib import Path

from .dataset import BinningSpec, Dataset, load_csv
from .errors import DimscopeError
from .jsonutil import canonical_json
from .metrics import DistanceMetric, distance_matrix, load_distance_cache, save_distance_cache
from .rules import RuleDirection, RuleThresholds, mine_rules, rules_to_payload
from .session import Mode, Session, SessionConfig
from .svg import render_view_svg

log = logging.getLogger("dimscope")

METRICS = {m.value: m for m in DistanceMetric}
DEFAULT_PORT = 8765


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("csv", help="input CSV file (header row required)")
    p.add_argument("--schema", help="JSON sidecar {column: 'numeric'|'categorical'}")
    p.add_argument("--metric", choices=sorted(METRICS), default=DistanceMetric.ABSOLUTE.value,
                   help="distance metric (default: abs)")


def _load(args) -> Dataset:
    return load_csv(args.csv, schema=args.schema)


def _distance_for(args, dataset, cache_path=None):
    metric = METRICS[args.metric]
    if cache_path and Path(cache_path).exists():
        dm = load_distance_cache(cache_path, dataset)
        if dm.metric is not metric:
            log.warning("cache metric %s overrides --metric %s", dm.metric.value, metric.value)
        log.info("distance cache hit: %s", cache_path)
        return dm
    t0 = time.perf_counter()
    dm = distance_matrix(dataset, metric)
    log.info("distance precompute took %.2fs (%d dims)", time.perf_counter() - t0, dm.n_v)
    if cache_path:
        save_distance_cache(dm, cache_path)
        log.info("distance cache written: %s", cache_path)
    return dm


def cmd_precompute(args) -> int:
    dataset = _load(args)
    dm = distance_matrix(dataset, METRICS[args.metric])
    save_distance_cache(dm, args.output)
    log.info("wrote %s (%d dims)", args.output, dm.n_v)
    return 0


def resolve_port(flag_value: int) -> int:
    """DIMSCOPE_PORT, when set, wins over the --port flag."""
    env = os.environ.get("DIMSCOPE_PORT", "").strip()
    if not env:
        return flag_value
    try:
        return int(env)
    except ValueError:
        raise DimscopeError(f"DIMSCOPE_PORT is not an integer: {env!r}") from None


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    dataset = _load(args)
    dm = _distance_for(args, dataset, cache_path=args.cache)
    config = SessionConfig(metric=dm.metric, bin_count=args.bins, sampling_seed=args.seed)
    session = Session(dataset, dm=dm, config=config)
    static_dir = args.static if args.static and Path(args.static).is_dir() else None
    app = create_app(session, static_dir=static_dir)
    uvicorn.run(app, host=args.host, port=resolve_port(args.port), log_level="info")
    return 0


def _snapshot_view(args, dataset, dm):
    config = SessionConfig(
        metric=dm.metric,
        bin_count=args.bins,
        d_select=args.d_select,
        d_remove=args.d_remove,
        sampling_seed=args.seed,
    )
    session = Session(dataset, dm=dm, config=config)
    if args.cat is not None:
        cat_ids = {d.label: d.id for d in dataset.categorical_dims}
        if args.cat not in cat_ids:
            raise DimscopeError(f"no categorical column named {args.cat!r}")
        session.apply({"type": "SetCatDim", "dim": cat_ids[args.cat]})
        session.apply({"type": "SetColorSource", "source": "categorical"})
    if args.mode == "rules":
        if args.cat is None:
            raise DimscopeError("--mode rules requires --cat")
        session.apply(
            {"type": "SetRuleThresholds", "t_sup": args.tsup, "t_con": args.tcon,
             "direction": args.direction}
        )
        session.apply({"type": "SetMode", "mode": Mode.LABEL_RULES.value})
    view = session.build_fresh()
    session.stop()
    return view


def cmd_snapshot(args) -> int:
    dataset = _load(args)
    dm = _distance_for(args, dataset, cache_path=args.cache)
    view = _snapshot_view(args, dataset, dm)
    svg = render_view_svg(view, title=dataset.name)
    Path(args.output).write_text(svg, encoding="utf-8")
    log.info("wrote %s (%d panels)", args.output, len(view["panels"]))
    return 0


def cmd_rules(args) -> int:
    dataset = _load(args)
    cat_ids = {d.label: d.id for d in dataset.categorical_dims}
    if args.cat not in cat_ids:
        raise DimscopeError(f"no categorical column named {args.cat!r}")
    binning = BinningSpec(args.bins)
    thresholds = RuleThresholds(args.tsup, args.tcon, RuleDirection(args.direction))
    dm = _distance_for(args, dataset, cache_path=args.cache) if args.order_axes else None
    ruleset = mine_rules(dataset, binning, cat_ids[args.cat], thresholds, distances=dm)
    payload = rules_to_payload(ruleset, dataset, binning)
    text = canonical_json({"rules": payload})
    if args.output == "-":
        print(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
        log.info("wrote %s (%d rules)", args.output, len(payload))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dimscope",
        description="Decompose a high-dimensional table into low-dimensional parallel-coordinate plots.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("precompute", help="compute the pairwise dimension distances and cache them")
    _add_common(p)
    p.add_argument("-o", "--output", required=True, help="cache file to write")
    p.set_defaults(func=cmd_precompute)

    p = sub.add_parser("serve", help="serve the interactive session over HTTP")
    _add_common(p)
    p.add_argument("--cache", help="distance cache file (loaded if present, else written)")
    p.add_argument("--port", type=int, default=DEFAULT_PORT,
                   help=f"TCP port (default {DEFAULT_PORT}; env DIMSCOPE_PORT overrides)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--bins", type=int, default=8, help="bin count for rule mining")
    p.add_argument("--seed", type=int, default=0, help="dimension sampling seed")
    p.add_argument("--static", help="directory of UI assets to serve at /")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("snapshot", help="render a static SVG of the graph and panels")
    _add_common(p)
    p.add_argument("--cache", help="distance cache file (loaded if present, else written)")
    p.add_argument("--d-select", type=float, required=True, dest="d_select")
    p.add_argument("--d-remove", type=float, default=0.0, dest="d_remove")
    p.add_argument("--mode", choices=["distance", "rules"], default="distance")
    p.add_argument("--cat", help="categorical column for coloring / rule mining")
    p.add_argument("--tsup", type=float, default=0.1)
    p.add_argument("--tcon", type=float, default=0.5)
    p.add_argument("--direction", choices=[d.value for d in RuleDirection],
                   default=RuleDirection.RANGE_TO_LABEL.value)
    p.add_argument("--bins", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True, help="SVG file to write")
    p.set_defaults(func=cmd_snapshot)

    p = sub.add_parser("rules", help="mine label/subrange rules and export them as JSON")
    _add_common(p)
    p.add_argument("--cache", help="distance cache used for axis ordering")
    p.add_argument("--cat", required=True, help="categorical column holding the labels")
    p.add_argument("--tsup", type=float, required=True)
    p.add_argument("--tcon", type=float, required=True)
    p.add_argument("--direction", choices=[d.value for d in RuleDirection],
                   default=RuleDirection.RANGE_TO_LABEL.value)
    p.add_argument("--bins", type=int, default=8)
    p.add_argument("--order-axes", action="store_true",
                   help="also compute distances to order panel axes")
    p.add_argument("-o", "--output", required=True, help="JSON file to write ('-' for stdout)")
    p.set_defaults(func=cmd_rules)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DimscopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
