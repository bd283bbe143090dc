"""Command-line front end.

    ripsrank stats        --input graph.txt
    ripsrank rank         --input graph.txt --beta 0.15 [--method rips|degree|ks|...]
    ripsrank ground-truth --input graph.txt --beta 0.15 --runs 10000
    ripsrank evaluate     --reference gt_rank.tsv --candidate rank.tsv
    ripsrank sweep        --input graph.txt --param samples --grid 25,50,100,200
    ripsrank replay       result.tsv.manifest.json

Results go to ``--output`` (or stdout); every file output gets a JSON
manifest sidecar ``<output>.manifest.json`` recording the resolved
parameters, which ``replay`` re-executes.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import logging
import os
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from ripsrank import __version__
from ripsrank.baselines import BASELINES, baseline
from ripsrank.dynamics import (
    DEFAULT_RUNS,
    GroundTruth,
    SirConfig,
    ground_truth,
    ground_truth_ranking,
    read_ground_truth_tsv,
    write_ground_truth_tsv,
)
from ripsrank.graph import Graph, GraphError, ThresholdConvention, graph_stats, load_edge_list
from ripsrank.metrics import evaluate, kendall_tau, monotonicity
from ripsrank.percolation import exact_percolation
from ripsrank.ranking import Ranking, competition_ranks, rank_scores, read_ranking_tsv, write_ranking_tsv
from ripsrank.rips import DEFAULT_SAMPLES, RipsConfig, WeightMode, rips_rank, rips_weights

log = logging.getLogger("ripsrank")

METHODS = ["rips", *BASELINES]


class CliError(Exception):
    """A documented user error; reported on stderr with exit status 1."""


def _probability(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= x <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {x}")
    return x


def _positive_int(text: str) -> int:
    x = int(text)
    if x < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {x}")
    return x


def _read_graph(path: str) -> tuple[Graph, bytes]:
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}") from None
    try:
        return load_edge_list(io.StringIO(raw.decode("utf-8"))), raw
    except (GraphError, UnicodeDecodeError) as e:
        raise CliError(f"{path}: {e}") from None


@contextmanager
def _open_out(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _write_manifest(args: argparse.Namespace, argv: list[str], started: float, extra: dict | None = None) -> None:
    if args.output in (None, "-"):
        return
    params = {k: v for k, v in vars(args).items() if k not in ("func",) and not callable(v)}
    manifest = {
        "command": args.command,
        "parameters": params,
        "argv": argv,
        "version": __version__,
        "duration_seconds": round(time.perf_counter() - started, 6),
    }
    if extra:
        manifest.update(extra)
    Path(args.output + ".manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _gt_cache_path(cache_dir: str, raw: bytes, beta: float, runs: int, seed: int) -> Path:
    digest = hashlib.sha256(raw).hexdigest()[:16]
    return Path(cache_dir) / f"gt-{digest}-b{beta!r}-r{runs}-s{seed}.tsv"


def _ground_truth(g: Graph, raw: bytes, beta: float, runs: int, seed: int, cache_dir: str | None, workers: int) -> GroundTruth:
    if cache_dir:
        path = _gt_cache_path(cache_dir, raw, beta, runs, seed)
        if path.exists():
            log.info("ground truth cache hit: %s", path)
            with path.open() as fh:
                return read_ground_truth_tsv(fh, g, beta)
    gt = ground_truth(g, SirConfig(beta=beta, runs=runs, master_seed=seed), workers=workers)
    if cache_dir:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        with tmp.open("w") as fh:
            write_ground_truth_tsv(gt, g, fh)
        os.replace(tmp, path)
        # reload so cached and fresh runs rank identically
        with path.open() as fh:
            gt = read_ground_truth_tsv(fh, g, beta)
    return gt


def _method_ranking(g: Graph, args: argparse.Namespace, beta: float, samples: int, seed: int) -> Ranking:
    if args.method == "rips":
        cfg = RipsConfig(beta=beta, samples=samples, threshold=args.threshold, mode=WeightMode(args.mode), master_seed=seed)
        return rips_rank(rips_weights(g, cfg, workers=args.workers), g)
    return baseline(args.method, g)


def cmd_stats(args, argv) -> None:
    g, _ = _read_graph(args.input)
    conv = ThresholdConvention(args.convention)
    st = graph_stats(g, conv)
    with _open_out(args.output) as out:
        out.write(f"nodes\t{st.node_count}\nedges\t{st.edge_count}\nmax_degree\t{st.max_degree}\n")
        out.write(f"avg_degree\t{st.avg_degree:.6f}\nbeta_th\t{st.beta_th:.6f}\nconvention\t{conv.value}\n")
        out.write(f"dropped_self_loops\t{g.dropped_self_loops}\ndropped_duplicates\t{g.dropped_duplicates}\n")


def cmd_rank(args, argv) -> None:
    if args.method not in METHODS:
        raise CliError(f"unknown method {args.method!r}; choose from {', '.join(METHODS)}")
    g, _ = _read_graph(args.input)
    r = _method_ranking(g, args, args.beta, args.samples, args.seed)
    with _open_out(args.output) as out:
        write_ranking_tsv(r, g, out)


def cmd_ground_truth(args, argv) -> None:
    g, raw = _read_graph(args.input)
    gt = _ground_truth(g, raw, args.beta, args.runs, args.seed, args.cache_dir, args.workers)
    with _open_out(args.output) as out:
        if args.as_ranking:
            write_ranking_tsv(ground_truth_ranking(gt, g), g, out)
        else:
            write_ground_truth_tsv(gt, g, out)


def _load_ranks(path: str) -> dict[str, int]:
    try:
        with open(path, encoding="utf-8") as fh:
            rows = read_ranking_tsv(fh)
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}") from None
    except ValueError as e:
        raise CliError(f"{path}: {e}") from None
    return {label: rank for rank, label, _ in rows}


def cmd_evaluate(args, argv) -> None:
    ref = _load_ranks(args.reference)
    cand = _load_ranks(args.candidate)
    if set(ref) != set(cand):
        only_ref = sorted(set(ref) - set(cand))
        only_cand = sorted(set(cand) - set(ref))
        raise CliError(
            "rankings cover different nodes; "
            f"only in reference: {only_ref[:20]}, only in candidate: {only_cand[:20]}"
        )
    labels = sorted(ref)
    a = np.array([ref[x] for x in labels])
    b = np.array([cand[x] for x in labels])
    ra = Ranking(order=np.argsort(a, kind="stable"), scores=-a.astype(float), ranks=a)
    rb = Ranking(order=np.argsort(b, kind="stable"), scores=-b.astype(float), ranks=b)
    report = evaluate(ra, rb)
    with _open_out(args.output) as out:
        out.write(report.to_text())


def _parse_grid(text: str, kind: str) -> list:
    items = [t for t in text.split(",") if t.strip()]
    if not items:
        raise CliError("grid is empty")
    try:
        return [float(t) if kind == "beta" else int(t) for t in items]
    except ValueError:
        raise CliError(f"bad grid value in {text!r}") from None


def cmd_sweep(args, argv) -> None:
    if args.method not in METHODS:
        raise CliError(f"unknown method {args.method!r}; choose from {', '.join(METHODS)}")
    g, raw = _read_graph(args.input)
    grid = _parse_grid(args.grid, args.param)
    if args.param == "beta" and any(not 0.0 <= b <= 1.0 for b in grid):
        raise CliError("beta grid values must lie in [0, 1]")
    seeds = list(range(args.seed, args.seed + args.repeats))
    truth: dict[float, Ranking] = {}

    def reference(beta: float) -> Ranking:
        if beta not in truth:
            if args.exact:
                scores = np.array([exact_percolation(g, beta, v).expected_cc_size for v in range(g.node_count)])
                truth[beta] = rank_scores(scores, g)
            elif args.ground_truth:
                with open(args.ground_truth) as fh:
                    truth[beta] = ground_truth_ranking(read_ground_truth_tsv(fh, g, beta), g)
            else:
                gt = _ground_truth(g, raw, beta, args.runs, args.gt_seed, args.cache_dir, args.workers)
                truth[beta] = ground_truth_ranking(gt, g)
        return truth[beta]

    timings = []
    with _open_out(args.output) as out:
        cols = ["beta", "samples", "seed", "tau", "monotonicity"] + (["seconds"] if args.timings else [])
        out.write("\t".join(cols) + "\n")
        for value in grid:
            beta = value if args.param == "beta" else args.beta
            samples = value if args.param == "samples" else args.samples
            ref = reference(beta)
            for seed in seeds:
                t0 = time.perf_counter()
                r = _method_ranking(g, args, beta, samples, seed)
                dt = time.perf_counter() - t0
                timings.append(dt)
                row = [repr(beta), str(samples), str(seed), f"{kendall_tau(ref, r):.6f}", f"{monotonicity(r):.6f}"]
                if args.timings:
                    row.append(f"{dt:.6f}")
                out.write("\t".join(row) + "\n")
    args._timings = timings


def cmd_replay(args, argv) -> int:
    try:
        manifest = json.loads(Path(args.manifest).read_text())
    except (OSError, ValueError) as e:
        raise CliError(f"cannot read manifest {args.manifest}: {e}") from None
    return main(manifest["argv"])


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ripsrank", description="Dynamics-sensitive influential node ranking.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, beta_required=False):
        sp.add_argument("--input", required=True, help="edge-list file")
        sp.add_argument("--output", help="output file (default stdout)")
        sp.add_argument("--workers", type=_positive_int, default=1)

    def rips_opts(sp):
        sp.add_argument("--method", default="rips", help=f"one of: {', '.join(METHODS)}")
        sp.add_argument("--beta", type=_probability, default=0.15)
        sp.add_argument("--samples", type=_positive_int, default=DEFAULT_SAMPLES)
        sp.add_argument("--threshold", type=int, default=1)
        sp.add_argument("--mode", choices=[m.value for m in WeightMode], default="weighted")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("stats", help="structural statistics and epidemic threshold")
    common(sp)
    sp.add_argument("--convention", choices=[c.value for c in ThresholdConvention], default="mean_over_mean_square")
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("rank", help="rank nodes with RIPS or a baseline")
    common(sp)
    rips_opts(sp)
    sp.set_defaults(func=cmd_rank)

    sp = sub.add_parser("baseline", help="rank nodes with a structural baseline")
    common(sp)
    sp.add_argument("--method", required=True, choices=list(BASELINES))
    sp.set_defaults(func=cmd_rank, beta=0.0, samples=1, threshold=1, mode="weighted", seed=0)

    sp = sub.add_parser("ground-truth", help="Monte-Carlo SIR spread per seed node")
    common(sp)
    sp.add_argument("--beta", type=_probability, required=True)
    sp.add_argument("--runs", type=_positive_int, default=DEFAULT_RUNS)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cache-dir", help="reuse/store results keyed by (dataset hash, beta, runs, seed)")
    sp.add_argument("--as-ranking", action="store_true", help="write a ranking TSV instead of spreads")
    sp.set_defaults(func=cmd_ground_truth)

    sp = sub.add_parser("evaluate", help="Kendall tau, monotonicity and rank histogram")
    sp.add_argument("--reference", required=True, help="reference ranking TSV (e.g. ground truth)")
    sp.add_argument("--candidate", required=True, help="ranking TSV to evaluate")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_evaluate)

    sp = sub.add_parser("sweep", help="tau over a grid of beta or sample counts")
    common(sp)
    rips_opts(sp)
    sp.add_argument("--param", choices=["beta", "samples"], required=True)
    sp.add_argument("--grid", required=True, help="comma-separated values")
    sp.add_argument("--repeats", type=_positive_int, default=1, help="seeds per grid point, starting at --seed")
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--exact", action="store_true", help="exact percolation reference (small graphs)")
    src.add_argument("--ground-truth", help="ground-truth TSV to use as reference (single beta)")
    sp.add_argument("--runs", type=_positive_int, default=DEFAULT_RUNS)
    sp.add_argument("--gt-seed", type=int, default=0)
    sp.add_argument("--cache-dir")
    sp.add_argument("--timings", action="store_true", help="add a wall-clock seconds column")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("replay", help="re-run the command recorded in a manifest")
    sp.add_argument("manifest")
    sp.set_defaults(func=cmd_replay)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    started = time.perf_counter()
    try:
        rc = args.func(args, argv)
    except CliError as e:
        print(f"ripsrank: error: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"ripsrank: error: {e}", file=sys.stderr)
        return 1
    if args.command != "replay":
        extra = {"timings_seconds": getattr(args, "_timings", None)} if args.command == "sweep" else None
        if hasattr(args, "_timings"):
            del args._timings
        _write_manifest(args, argv, started, extra)
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
