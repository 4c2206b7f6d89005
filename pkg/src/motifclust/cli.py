"""Command line entry points.

Subcommands: gen (random graph families), motif-graph (exact or
approximate pattern adjacency), cluster (spectral partition as TSV),
perturb (relative weight noise), cost (query-cost table), regime
(power-law exponent table), phi-diff (perturbation stability runs) and
verify (built-in identity checks).
"""

from __future__ import annotations

import argparse
import sys

from .checks import CHECKS, run_checks
from .counting import ExactCounter, NoisyCounter
from .engine import build_motif_graph_approx, build_motif_graph_exact, emit_motif_graph
from .experiments import (GENERATORS, make_graph, phi_diff_experiment,
                          records_csv, summary_csv)
from .generators import (gen_circles, gen_cluster_graph, gen_community_graph,
                         gen_powerlaw_graph)
from .graph import emit_graph, parse_graph, perturb_weights
from .motif import named_motif, parse_motif
from .spectral import MODE_CONDUCTANCE, MODE_RATIO_CUT, spectral_cluster
from .costs import algorithm_costs, powerlaw_analysis


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_motif(name_or_path: str):
    # a name like triangle2, or a path to a motif file
    try:
        return named_motif(name_or_path)
    except ValueError:
        return parse_motif(_read(name_or_path))


def cmd_gen(args: argparse.Namespace) -> None:
    if args.kind == "cluster":
        g = gen_cluster_graph(args.n, k_centers=args.centers, spread=args.spread,
                              edge_radius=args.radius, seed=args.seed).graph
    elif args.kind == "circles":
        g = gen_circles(args.n, noise=args.noise, threshold=args.threshold,
                        seed=args.seed).graph
    elif args.kind == "community":
        g = gen_community_graph(args.n, tau_degree=args.tau_degree, mu=args.mu,
                                avg_degree=args.avg_degree, seed=args.seed).graph
    else:
        g = gen_powerlaw_graph(args.n, args.tau, seed=args.seed).graph
    _write(emit_graph(g), args.output)


def cmd_motif_graph(args: argparse.Namespace) -> None:
    g = parse_graph(_read(args.graph))
    m = _load_motif(args.motif)
    if args.mode == "exact":
        mg = build_motif_graph_exact(m, g)
    else:
        counter = (ExactCounter() if args.noiseless else
                   NoisyCounter(eps=args.eps, delta=args.delta, seed=args.seed))
        mg = build_motif_graph_approx(m, g, eps=args.eps, delta=args.delta,
                                      counter=counter)
    _write(emit_motif_graph(mg), args.output)


def cmd_cluster(args: argparse.Namespace) -> None:
    g = parse_graph(_read(args.graph))
    part = spectral_cluster(g, args.k, mode=args.mode, seed=args.seed)
    _write(part.to_tsv(vertex_labels=g.labels), args.output)


def cmd_perturb(args: argparse.Namespace) -> None:
    g = parse_graph(_read(args.graph))
    _write(emit_graph(perturb_weights(g, args.eps, seed=args.seed)), args.output)


def cmd_cost(args: argparse.Namespace) -> None:
    report = algorithm_costs(n=args.n, d=args.d, s=args.s, l=args.l,
                             instances=args.instances, preprocess=args.preprocess)
    _write(report.to_csv(), args.output)


def cmd_regime(args: argparse.Namespace) -> None:
    out = []
    for tau in args.tau:
        out.append(powerlaw_analysis(args.s, tau).to_csv())
    _write("".join(out), args.output)


def cmd_phi_diff(args: argparse.Namespace) -> None:
    records, summaries = phi_diff_experiment(
        args.generator, args.n, args.eps, trials=args.trials, k=args.k,
        mode=args.mode, seed=args.seed, jobs=args.jobs)
    if args.records is not None:
        _write(records_csv(records, args.k, args.mode, args.seed), args.records)
    _write(summary_csv(summaries, args.k, args.mode, args.seed), args.output)


def cmd_verify(args: argparse.Namespace) -> None:
    unknown = [n for n in args.checks if n not in CHECKS]
    if unknown:
        sys.exit(f"unknown checks: {', '.join(unknown)}; "
                 f"have {', '.join(sorted(CHECKS))}")
    results = run_checks(args.checks or None)
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'} {r.name}: {r.detail}")
    if not all(r.ok for r in results):
        sys.exit(1)


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(prog="motifclust",
                                     description="Motif spectral clustering toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random graph")
    kinds = p.add_subparsers(dest="kind", required=True)
    pc = kinds.add_parser("cluster", help="gaussian blobs on a circle")
    pc.add_argument("--n", type=int, default=600)
    pc.add_argument("--centers", type=int, default=5)
    pc.add_argument("--spread", type=float, default=0.25)
    pc.add_argument("--radius", type=float, default=0.35, help="edge radius")
    pg = kinds.add_parser("circles", help="two concentric circles")
    pg.add_argument("--n", type=int, default=500)
    pg.add_argument("--noise", type=float, default=0.05)
    pg.add_argument("--threshold", type=float, default=0.6)
    pl = kinds.add_parser("community", help="planted power-law communities")
    pl.add_argument("--n", type=int, default=2000)
    pl.add_argument("--tau-degree", type=float, default=2.5)
    pl.add_argument("--mu", type=float, default=0.2, help="mixing fraction")
    pl.add_argument("--avg-degree", type=float, default=15.0)
    ph = kinds.add_parser("powerlaw", help="hidden-variable power-law graph")
    ph.add_argument("--n", type=int, default=2000)
    ph.add_argument("--tau", type=float, default=2.5)
    for q in (pc, pg, pl, ph):
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("motif-graph", help="build the pattern adjacency of a graph")
    p.add_argument("graph", help="graph file, or - for stdin")
    p.add_argument("--motif", default="triangle2",
                   help="motif name or file (default: triangle2)")
    p.add_argument("--mode", choices=("exact", "approx"), default="exact")
    p.add_argument("--eps", type=float, default=0.1, help="approx relative error")
    p.add_argument("--delta", type=float, default=0.01, help="approx failure budget")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noiseless", action="store_true",
                   help="approx pipeline with an exact counter")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_motif_graph)

    p = sub.add_parser("cluster", help="spectral clustering to TSV")
    p.add_argument("graph", help="graph file, or - for stdin")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--mode", choices=(MODE_CONDUCTANCE, MODE_RATIO_CUT),
                   default=MODE_CONDUCTANCE)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("perturb", help="multiply weights by uniform noise")
    p.add_argument("graph", help="graph file, or - for stdin")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("cost", help="query-cost table for one instance size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--instances", type=float, required=True)
    p.add_argument("--preprocess", action="store_true")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("regime", help="power-law exponents per algorithm")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--tau", type=float, nargs="+", required=True)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_regime)

    p = sub.add_parser("phi-diff", help="perturbation stability experiment")
    p.add_argument("--generator", choices=GENERATORS, default="cluster")
    p.add_argument("--n", type=int, nargs="+", default=[600])
    p.add_argument("--eps", type=float, nargs="+", default=[0.1])
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--mode", choices=(MODE_CONDUCTANCE, MODE_RATIO_CUT),
                   default=MODE_CONDUCTANCE)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--records", default=None, help="also write per-trial CSV here")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_phi_diff)

    p = sub.add_parser("verify", help="run built-in identity checks")
    p.add_argument("checks", nargs="*", metavar="check",
                   help=f"subset of {', '.join(sorted(CHECKS))} (default: all)")
    p.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    args.func(args)


if __name__ == "__main__":
    main()
