"""Command-line interface.

Subcommands: generate, coeffs, heatmaps, ccdf, sweep, validate.  Every run
writes a ``<prefix>manifest.json`` (full config, tool version, seed, realized
stats, wall time) next to its outputs.  Exit codes: 0 success, 1 validation
failure, 2 usage error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .coefficients import coefficient_report, hill_estimator
from .edgelist import read_edge_list, write_edge_list
from .errors import DegmixError, EdgeListFormatError, ParameterError
from .gen import (ModelParams, calibrate_avg_degree, generate, generate_naive,
                  generate_rgg, generate_tgirg_fast)
from .gen.naive import NAIVE_VERTEX_CAP
from .jointdist import (bucket_scheme, conditional_change_heatmap,
                        degree_ccdf_curves, joint_degree_histogram)
from .rng import PHASE_EDGES, PHASE_POSITIONS, PHASE_WEIGHTS, stream
from .theory import (monte_carlo_intersection_fraction,
                     rgg_conditional_degree_check,
                     rgg_expected_intersection_fraction)
from .coefficients import pearson_assortativity
from . import render

DEFAULT_SEED = 1
EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_IO = 3

SWEEP_SIGMAS = tuple(round(0.2 * i, 1) for i in range(1, 10))  # 0.2 .. 1.8
SWEEP_TAUS = (2.2, 2.4, 2.6, 2.8)


def _out_dir(args) -> str:
    d = args.out_dir or os.environ.get("DEGMIX_OUT_DIR", ".")
    os.makedirs(d, exist_ok=True)
    return d


def _seed(args) -> int:
    if args.seed == "random":
        return int(np.random.SeedSequence().entropy % (2**63))
    try:
        return int(args.seed)
    except ValueError:
        raise ParameterError(f"--seed expects an integer or 'random', got {args.seed!r}")


def _write_manifest(out_dir, prefix, payload):
    path = os.path.join(out_dir, f"{prefix}manifest.json")
    payload = {"tool": "degmix", "version": __version__, **payload}
    render.write_json(payload, path)
    return path


def _params_from_args(args, seed) -> ModelParams:
    alpha = math.inf
    if args.temp is not None:
        if not 0 <= args.temp < 1:
            raise ParameterError("--temp must be in [0, 1)")
        alpha = math.inf if args.temp == 0 else 1.0 / args.temp
    if args.alpha is not None:
        alpha = args.alpha
    return ModelParams(model=args.model, n=args.n, tau=args.tau,
                       sigma=args.sigma, alpha=alpha, dim=args.dim,
                       target_avg_degree=args.avg_deg, rgg_radius=args.radius,
                       seed=seed)


def cmd_generate(args) -> int:
    seed = _seed(args)
    params = _params_from_args(args, seed).validate(strict_sigma=True)
    out_dir = _out_dir(args)
    t0 = time.perf_counter()
    calibration = None
    if params.model == "rgg":
        graph = generate(params)
        scale = None
    else:
        cal = calibrate_avg_degree(params)
        calibration = {"scale": cal.scale, "iterations": cal.iterations,
                       "converged": cal.converged,
                       "history": [[c, a] for c, a in cal.history]}
        scale = cal.scale
        if args.naive:
            if params.n > NAIVE_VERTEX_CAP:
                raise ParameterError(f"--naive capped at n={NAIVE_VERTEX_CAP}")
            from .gen.weights import sample_positions, sample_weights
            w = sample_weights(params.n, params.tau, stream(seed, PHASE_WEIGHTS))
            x = (sample_positions(params.n, params.dim,
                                  stream(seed, PHASE_POSITIONS))
                 if params.is_geometric else None)
            graph = generate_naive(params, w, x, scale, stream(seed, PHASE_EDGES))
        else:
            graph = generate(params, scale=scale)
    wall = time.perf_counter() - t0
    edge_path = os.path.join(out_dir, f"{args.prefix}edges.txt")
    write_edge_list(graph, edge_path)
    manifest = {
        "subcommand": "generate",
        "params": {"model": params.model, "n": params.n, "tau": params.tau,
                   "sigma": params.sigma, "alpha": (None if math.isinf(params.alpha)
                                                    else params.alpha),
                   "temperature": params.temperature if params.is_geometric else None,
                   "dim": params.dim if params.is_geometric else None,
                   "target_avg_degree": params.target_avg_degree,
                   "rgg_radius": params.rgg_radius},
        "seed": seed,
        "scale": scale,
        "calibration": calibration,
        "realized": {"vertices": graph.n, "edges": graph.m,
                     "avg_degree": (graph.average_degree() if graph.n else 0.0)},
        "wall_time_s": wall,
        "outputs": [os.path.basename(edge_path)],
    }
    _write_manifest(out_dir, args.prefix, manifest)
    print(f"wrote {edge_path}: n={graph.n} m={graph.m} "
          f"avg_deg={manifest['realized']['avg_degree']:.3f} ({wall:.2f}s)")
    return EXIT_OK


def _load_graph(args):
    graph, report = read_edge_list(args.input,
                                   allow_extra_columns=args.extra_columns)
    return graph, report


def cmd_coeffs(args) -> int:
    graph, report = _load_graph(args)
    out_dir = _out_dir(args)
    t0 = time.perf_counter()
    rep = coefficient_report(graph)
    hill = None
    nonzero = int((graph.degrees > 0).sum())
    k_tail = min(args.hill_k, max(nonzero - 1, 0))
    if k_tail >= 10:
        est = hill_estimator(graph.degrees, k_tail)
        if est is not None:
            hill = {"tau_hat": est[0], "k_tail": est[1]}
    payload = {
        "schema_version": render.SCHEMA_VERSION,
        "input": str(args.input),
        "vertices": graph.n, "edges": graph.m,
        "pearson": rep.pearson, "spearman": rep.spearman, "kendall": rep.kendall,
        "undefined": {"pearson": rep.pearson is None,
                      "spearman": rep.spearman is None,
                      "kendall": rep.kendall is None},
        "diagnostics": {"concordant": rep.concordant,
                        "discordant": rep.discordant,
                        "excluded_same_edge_pairs": rep.excluded_same_edge_pairs,
                        "tie_fraction": rep.tie_fraction,
                        "dropped_self_loops": report.dropped_self_loops,
                        "dropped_duplicates": report.dropped_duplicates},
        "hill": hill,
    }
    path = os.path.join(out_dir, f"{args.prefix}coefficients.json")
    render.write_json(payload, path)
    _write_manifest(out_dir, args.prefix, {
        "subcommand": "coeffs", "input": str(args.input), "seed": None,
        "wall_time_s": time.perf_counter() - t0,
        "outputs": [os.path.basename(path)]})
    print(json.dumps({k: payload[k] for k in ("pearson", "spearman", "kendall")}))
    return EXIT_OK


def _emit_formats(args):
    return set(args.formats.split(","))


def cmd_heatmaps(args) -> int:
    graph, _ = _load_graph(args)
    if graph.m == 0:
        raise ParameterError("graph has no edges")
    out_dir = _out_dir(args)
    formats = _emit_formats(args)
    t0 = time.perf_counter()
    scheme = bucket_scheme(int(graph.degrees.max()), args.buckets)
    joint = joint_degree_histogram(graph, scheme)
    cond = conditional_change_heatmap(joint)
    outputs = []

    def emit(name, writer):
        path = os.path.join(out_dir, f"{args.prefix}{name}")
        writer(path)
        outputs.append(os.path.basename(path))

    if "csv" in formats:
        emit("joint.csv", lambda p: render.matrix_to_csv(
            joint.probs, scheme.lower_bounds(), p))
        emit("conditional.csv", lambda p: render.matrix_to_csv(
            cond.change, scheme.lower_bounds(), p))
    if "json" in formats:
        emit("heatmaps.json", lambda p: render.write_json(
            render.heatmap_payload(joint, cond), p))
    if "svg" in formats:
        emit("joint.svg", lambda p: render.joint_heatmap_svg(joint, p))
        emit("conditional.svg", lambda p: render.conditional_heatmap_svg(cond, p))
    _write_manifest(out_dir, args.prefix, {
        "subcommand": "heatmaps", "input": str(args.input),
        "num_buckets": scheme.num_buckets, "bucket_base": scheme.base,
        "seed": None, "wall_time_s": time.perf_counter() - t0,
        "outputs": outputs})
    print(f"wrote {', '.join(outputs)}")
    return EXIT_OK


def cmd_ccdf(args) -> int:
    graph, _ = _load_graph(args)
    if graph.m == 0:
        raise ParameterError("graph has no edges")
    out_dir = _out_dir(args)
    formats = _emit_formats(args)
    t0 = time.perf_counter()
    scheme = bucket_scheme(int(graph.degrees.max()), args.buckets)
    curves = degree_ccdf_curves(graph, scheme)
    outputs = []
    if "csv" in formats:
        path = os.path.join(out_dir, f"{args.prefix}ccdf.csv")
        render.curves_to_csv(curves, path)
        outputs.append(os.path.basename(path))
    if "json" in formats:
        path = os.path.join(out_dir, f"{args.prefix}ccdf.json")
        render.write_json(render.ccdf_payload(curves), path)
        outputs.append(os.path.basename(path))
    if "svg" in formats:
        path = os.path.join(out_dir, f"{args.prefix}ccdf.svg")
        render.ccdf_curves_svg(curves, path)
        outputs.append(os.path.basename(path))
    _write_manifest(out_dir, args.prefix, {
        "subcommand": "ccdf", "input": str(args.input), "seed": None,
        "wall_time_s": time.perf_counter() - t0, "outputs": outputs})
    print(f"wrote {', '.join(outputs)}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    seed = _seed(args)
    out_dir = _out_dir(args)
    t0 = time.perf_counter()
    taus = [float(t) for t in args.taus.split(",")]
    sigmas = [float(s) for s in args.sigmas.split(",")]
    models = args.models.split(",")
    rows = []
    for model in models:
        for tau in taus:
            for sigma in sigmas:
                if sigma >= tau - 1 and not args.allow_heavy_sigma:
                    continue
                cell_seed = abs(hash((model, tau, sigma, seed))) % (2**63)
                params = ModelParams(model=model, n=args.n, tau=tau,
                                     sigma=sigma, alpha=math.inf,
                                     dim=args.dim,
                                     target_avg_degree=args.avg_deg,
                                     seed=cell_seed)
                params.validate(strict_sigma=not args.allow_heavy_sigma)
                cal = calibrate_avg_degree(params)
                stats = {"pearson": [], "spearman": [], "kendall": [],
                         "avg_degree": []}
                for rep in range(args.replicates):
                    g = generate(params.with_seed(cell_seed + 1 + rep),
                                 scale=cal.scale)
                    r = coefficient_report(g)
                    stats["pearson"].append(r.pearson)
                    stats["spearman"].append(r.spearman)
                    stats["kendall"].append(r.kendall)
                    stats["avg_degree"].append(g.average_degree())
                row = {"model": model, "tau": tau, "sigma": sigma,
                       "replicates": args.replicates, "scale": cal.scale}
                for key, vals in stats.items():
                    defined = [v for v in vals if v is not None]
                    row[f"{key}_mean"] = float(np.mean(defined)) if defined else None
                    row[f"{key}_sd"] = (float(np.std(defined, ddof=1))
                                        if len(defined) > 1 else None)
                rows.append(row)
                print(f"{model} tau={tau} sigma={sigma}: "
                      f"spearman={row['spearman_mean']}")
    csv_path = os.path.join(out_dir, f"{args.prefix}sweep.csv")
    cols = list(rows[0].keys()) if rows else []
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(",".join(cols) + "\n")
        for row in rows:
            fh.write(",".join("" if row[c] is None else f"{row[c]:.10g}"
                              if isinstance(row[c], float) else str(row[c])
                              for c in cols) + "\n")
    json_path = os.path.join(out_dir, f"{args.prefix}sweep.json")
    render.write_json({"schema_version": render.SCHEMA_VERSION, "rows": rows},
                      json_path)
    _write_manifest(out_dir, args.prefix, {
        "subcommand": "sweep", "seed": seed, "n": args.n,
        "models": models, "taus": taus, "sigmas": sigmas,
        "replicates": args.replicates,
        "wall_time_s": time.perf_counter() - t0,
        "outputs": [os.path.basename(csv_path), os.path.basename(json_path)]})
    return EXIT_OK


def _check(name, passed, **details):
    return {"name": name, "passed": bool(passed), "details": details}


def _suite_rgg(args, seed):
    checks = []
    est, se = monte_carlo_intersection_fraction(args.dim, args.samples,
                                                stream(seed, 1))
    want = rgg_expected_intersection_fraction(args.dim)
    checks.append(_check("rgg-intersection-fraction",
                         abs(est - want) <= 3 * se,
                         estimate=est, stderr=se, expected=want, dim=args.dim))
    n, target = 10_000, 10.0
    r = (target / (n - 1)) ** (1.0 / 1) / 2.0
    rep = rgg_conditional_degree_check(n, 1, r, k=int(target), replicates=20,
                                       rng=stream(seed, 2))
    checks.append(_check("rgg-neighbor-degree-slope",
                         (not rep.inconclusive) and rep.slope_positive
                         and rep.slope_p_one_sided < 0.01,
                         slope=rep.slope, p=rep.slope_p_one_sided))
    return checks


def _suite_pearson(args, seed):
    checks = []
    tau = args.tau
    values = []
    for i in range(args.replicates):
        params = ModelParams(model="tunable_chung_lu", n=args.n, tau=tau,
                             sigma=1.0, target_avg_degree=10.0,
                             seed=seed + 17 * i)
        cal = calibrate_avg_degree(params)
        g = generate(params, scale=cal.scale)
        values.append(pearson_assortativity(g))
    ok = all(v is not None and v < 0 for v in values)
    checks.append(_check("pearson-negative-every-replicate", ok,
                         tau=tau, n=args.n, values=values))
    return checks


def _suite_sampler_equivalence(args, seed):
    import scipy.stats as st
    from .gen.weights import sample_positions, sample_weights
    checks = []
    params = ModelParams(model="tgirg", n=args.n, tau=2.8, sigma=1.6,
                         alpha=math.inf, dim=2, target_avg_degree=10.0,
                         seed=seed)
    cal = calibrate_avg_degree(params)
    deg_naive, deg_fast, m_naive, m_fast = [], [], [], []
    for rep in range(args.replicates):
        s = seed + 1000 + rep
        w = sample_weights(params.n, params.tau, stream(s, PHASE_WEIGHTS))
        x = sample_positions(params.n, params.dim, stream(s, PHASE_POSITIONS))
        gn = generate_naive(params, w, x, cal.scale, stream(s, PHASE_EDGES))
        gf = generate_tgirg_fast(params, cal.scale, weights=w, positions=x,
                                 rng=stream(s, PHASE_EDGES, 1))
        deg_naive.append(gn.degrees)
        deg_fast.append(gf.degrees)
        m_naive.append(gn.m)
        m_fast.append(gf.m)
    ks = st.ks_2samp(np.concatenate(deg_naive), np.concatenate(deg_fast))
    checks.append(_check("sampler-equivalence-degrees", ks.pvalue > 0.01,
                         ks_p=float(ks.pvalue), n=args.n))
    same_mean = abs(np.mean(m_naive) - np.mean(m_fast)) \
        <= 4 * np.sqrt(np.var(m_naive) / len(m_naive) + 1e-9)
    checks.append(_check("sampler-equivalence-edge-counts", same_mean,
                         naive_mean=float(np.mean(m_naive)),
                         fast_mean=float(np.mean(m_fast))))
    return checks


def cmd_validate(args) -> int:
    seed = _seed(args)
    out_dir = _out_dir(args)
    t0 = time.perf_counter()
    suites = {"rgg": _suite_rgg, "pearson-negativity": _suite_pearson,
              "sampler-equivalence": _suite_sampler_equivalence}
    if args.suite == "all":
        selected = list(suites)
    elif args.suite in suites:
        selected = [args.suite]
    else:
        raise ParameterError(f"unknown suite {args.suite!r}; "
                             f"choose from {sorted(suites)} or 'all'")
    checks = []
    for name in selected:
        checks.extend(suites[name](args, seed))
    passed = all(c["passed"] for c in checks)
    payload = {"schema_version": render.SCHEMA_VERSION, "suite": args.suite,
               "seed": seed, "passed": passed, "checks": checks,
               "wall_time_s": time.perf_counter() - t0}
    path = os.path.join(out_dir, f"{args.prefix}validation.json")
    render.write_json(payload, path)
    _write_manifest(out_dir, args.prefix, {
        "subcommand": "validate", "suite": args.suite, "seed": seed,
        "wall_time_s": payload["wall_time_s"],
        "outputs": [os.path.basename(path)]})
    for c in checks:
        print(f"[{'PASS' if c['passed'] else 'FAIL'}] {c['name']}")
    return EXIT_OK if passed else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="degmix",
        description="Scale-free geometric random graphs and degree-mixing "
                    "analytics")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--out-dir", default=None,
                       help="output directory (default $DEGMIX_OUT_DIR or .)")
        p.add_argument("--prefix", default="", help="output filename prefix")
        p.add_argument("--seed", default=str(DEFAULT_SEED),
                       help="integer seed or 'random' (default fixed: "
                            f"{DEFAULT_SEED})")
        p.add_argument("--workers", type=int, default=1,
                       help="worker count (results are invariant to it)")

    g = sub.add_parser("generate", help="generate a calibrated instance")
    common(g)
    g.add_argument("--model", required=True,
                   choices=["chung_lu", "tunable_chung_lu", "rgg", "girg", "tgirg"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--tau", type=float, default=None)
    g.add_argument("--sigma", type=float, default=None)
    g.add_argument("--alpha", type=float, default=None)
    g.add_argument("--temp", type=float, default=None,
                   help="temperature = 1/alpha; 0 means threshold")
    g.add_argument("--dim", type=int, default=1)
    g.add_argument("--avg-deg", type=float, default=None, dest="avg_deg")
    g.add_argument("--radius", type=float, default=None, help="rgg threshold radius")
    g.add_argument("--naive", action="store_true",
                   help="use the O(n^2) reference sampler")
    g.set_defaults(func=cmd_generate)

    def input_cmd(name, help_txt):
        p = sub.add_parser(name, help=help_txt)
        common(p)
        p.add_argument("--input", required=True, help="edge-list file")
        p.add_argument("--extra-columns", action="store_true",
                       help="tolerate extra columns in the edge list")
        p.add_argument("--formats", default="csv,json,svg")
        p.add_argument("--buckets", type=int, default=21)
        return p

    c = sub.add_parser("coeffs", help="assortativity coefficients of a graph")
    common(c)
    c.add_argument("--input", required=True)
    c.add_argument("--extra-columns", action="store_true")
    c.add_argument("--hill-k", type=int, default=1000,
                   help="tail size for the Hill estimate")
    c.set_defaults(func=cmd_coeffs)

    h = input_cmd("heatmaps", "joint + conditional degree heatmaps")
    h.set_defaults(func=cmd_heatmaps)
    d = input_cmd("ccdf", "node/edge/conditional degree CCDF curves")
    d.set_defaults(func=cmd_ccdf)

    s = sub.add_parser("sweep", help="coefficient table over a sigma grid")
    common(s)
    s.add_argument("--models", default="tunable_chung_lu,tgirg")
    s.add_argument("--taus", default=",".join(str(t) for t in SWEEP_TAUS))
    s.add_argument("--sigmas", default=",".join(str(s) for s in SWEEP_SIGMAS))
    s.add_argument("--n", type=int, default=50_000)
    s.add_argument("--dim", type=int, default=2)
    s.add_argument("--avg-deg", type=float, default=15.0, dest="avg_deg")
    s.add_argument("--replicates", type=int, default=5)
    s.add_argument("--allow-heavy-sigma", action="store_true",
                   help="keep sigma >= tau-1 grid cells instead of skipping")
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("validate", help="run theory-validation suites")
    common(v)
    v.add_argument("--suite", default="all",
                   help="rgg | pearson-negativity | sampler-equivalence | all")
    v.add_argument("--dim", type=int, default=2)
    v.add_argument("--samples", type=int, default=100_000)
    v.add_argument("--tau", type=float, default=2.2)
    v.add_argument("--n", type=int, default=2000)
    v.add_argument("--replicates", type=int, default=10)
    v.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        parser.exit(EXIT_USAGE, f"degmix: usage error: {exc}\n")
    except (EdgeListFormatError, OSError) as exc:
        print(f"degmix: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DegmixError as exc:
        print(f"degmix: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
