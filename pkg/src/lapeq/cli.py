"""Command-line interface: build graphs, print spectra, run verification checks.

Exit codes: 0 success / all checks pass, 1 verification failure, 2 usage or
input error. The LAPEQ_OUT environment variable sets the default output
directory (default: current directory).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import checks
from .construct import (
    StarlikeSpec,
    build_mirror,
    build_starlike,
    insert_cross_edges,
    spider,
    write_family,
)
from .graphs import (
    Graph,
    classify,
    cycle,
    format_dot,
    format_edge_list,
    load_graph,
    path,
    star,
)
from .spectra import energy_report, laplacian_spectrum
from .treecount import jt_locate


def _outdir() -> str:
    return os.environ.get("LAPEQ_OUT", ".")


def parse_graph_arg(text: str) -> Graph:
    """Graph shorthand: path:k, cycle:k, star:k, file:PATH, or a bare file path."""
    kind, sep, arg = text.partition(":")
    if sep:
        if kind == "path":
            return path(int(arg))
        if kind == "cycle":
            return cycle(int(arg))
        if kind == "star":
            return star(int(arg))
        if kind == "file":
            return load_graph(arg)
        raise ValueError(f"unknown graph shorthand {kind!r} (use path:, cycle:, star:, file:)")
    return load_graph(text)


def parse_branches(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"branches must be comma-separated integers, got {text!r}")


def parse_binary(text: str) -> tuple[int, ...]:
    digits = text.replace(",", "")
    if not digits or any(ch not in "01" for ch in digits):
        raise ValueError(f"expected a 0/1 string like 101, got {text!r}")
    return tuple(int(ch) for ch in digits)


def parse_alpha(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"alpha must be an integer, fraction p/q, or decimal, got {text!r}")


def _write(path_out: str, content: str) -> None:
    os.makedirs(os.path.dirname(path_out) or ".", exist_ok=True)
    with open(path_out, "w") as fh:
        fh.write(content)
    print(f"wrote {path_out}")


def _print_graph_summary(g: Graph) -> None:
    print(f"n: {g.n}")
    print(f"edges: {g.num_edges}")
    print(f"class: {classify(g)}")


def cmd_build_starlike(args) -> int:
    g = build_starlike(parse_branches(args.branches))
    _print_graph_summary(g)
    out = args.out or os.path.join(
        _outdir(), f"starlike_{'-'.join(args.branches.split(','))}.edges"
    )
    _write(out, format_edge_list(g))
    if args.dot:
        _write(args.dot, format_dot(g))
    return 0


def cmd_build_family(args) -> int:
    placement = args.placement
    if placement not in ("even", "odd"):
        placement = [int(x) for x in placement.split(",")] if placement else []
    tag = args.placement if isinstance(placement, str) else "-".join(map(str, placement))
    outdir = args.outdir or os.path.join(
        _outdir(), f"family_ell{args.ell}_gamma{args.gamma}_{tag}"
    )
    manifest = write_family(outdir, args.ell, args.gamma, placement)
    print(f"n: {manifest['n']}")
    print(f"graphs: {len(manifest['graphs'])}")
    print(f"wrote {os.path.join(outdir, 'manifest.json')}")
    return 0


def cmd_build_mirror(args) -> int:
    core = parse_graph_arg(args.core)
    host = parse_graph_arg(args.host)
    dec = build_mirror(core, host, args.root, parse_binary(args.link))
    g = dec.graph
    if args.cross is not None:
        g = insert_cross_edges(dec, parse_binary(args.cross))
    _print_graph_summary(g)
    out = args.out or os.path.join(
        _outdir(),
        f"mirror_k{dec.k}_n{dec.n}{'_crossed' if args.cross is not None else ''}.edges",
    )
    _write(out, format_edge_list(g))
    if args.dot:
        _write(args.dot, format_dot(g))
    return 0


def cmd_spectrum(args) -> int:
    g = parse_graph_arg(args.graph)
    spec = laplacian_spectrum(g)
    report = energy_report(g)
    if args.format == "json":
        payload = dict(report)
        payload["class"] = classify(g)
        payload["spectrum"] = list(spec.values)
        payload["spectrum_5dp"] = list(spec.rounded(5))
        print(json.dumps(payload, sort_keys=True))
    elif args.format == "csv":
        print(spec.to_csv(), end="")
    else:
        _print_graph_summary(g)
        print(f"avg_degree: {report['avg_degree']!r}")
        print(f"sigma: {report['sigma']}")
        print(f"energy: {report['energy']!r}")
        print(f"spectrum: {list(spec.values)!r}")
        print(f"spectrum_5dp: {list(spec.rounded(5))!r}")
    return 0


def cmd_jt(args) -> int:
    g = parse_graph_arg(args.graph)
    res = jt_locate(g, parse_alpha(args.alpha), root=args.root)
    cut = sorted(res.cut_edges)
    if args.format == "json":
        payload = {
            "alpha": args.alpha,
            "above": res.above,
            "equal": res.equal,
            "below": res.below,
            "cut_edges": [list(e) for e in cut],
        }
        if args.values:
            payload["values"] = {str(v): str(res.final_values[v]) for v in sorted(res.final_values)}
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"alpha: {args.alpha}")
        print(f"above: {res.above}")
        print(f"equal: {res.equal}")
        print(f"below: {res.below}")
        print(f"cut_edges: {cut!r}")
        if args.values:
            for v in sorted(res.final_values):
                print(f"a({v}) = {res.final_values[v]}")
    return 0


def _finish_verify(reports, args) -> int:
    print(checks.format_report_table(reports))
    out = args.report or os.path.join(_outdir(), f"verify_{args.claim}.json")
    payload = [rep.to_dict() for rep in reports]
    _write(out, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0 if all(rep.ok for rep in reports) else 1


def cmd_verify_replacement(args) -> int:
    rep = checks.replacement_suite(
        count=args.count,
        seed=args.seed,
        max_core=args.max_core,
        max_host=args.max_host,
        tol=args.tol,
    )
    return _finish_verify([rep], args)


def cmd_verify_path_replacement(args) -> int:
    if args.branches:
        if args.k is None:
            raise ValueError("--k is required with --branches")
        rep = checks.check_path_replacement(spider(parse_branches(args.branches)), args.k, args.tol)
    else:
        rep = checks.path_replacement_examples(args.tol)
    return _finish_verify([rep], args)


def cmd_verify_energy(args) -> int:
    if args.branches:
        if args.k is None:
            raise ValueError("--k is required with --branches")
        rep = checks.check_energy_equality(StarlikeSpec(parse_branches(args.branches)), args.k, args.tol)
    else:
        rep = checks.energy_sweep(max_n=args.max_n, tol=args.tol)
    return _finish_verify([rep], args)


def cmd_verify_sigma(args) -> int:
    if args.branches:
        if args.k is None:
            raise ValueError("--k is required with --branches")
        rep = checks.check_sigma(StarlikeSpec(parse_branches(args.branches)), args.k)
    else:
        rep = checks.sigma_sweep(max_n=args.max_n)
    return _finish_verify([rep], args)


def cmd_verify_family(args) -> int:
    placement = args.placement
    if placement not in ("even", "odd"):
        placement = [int(x) for x in placement.split(",")]
    rep = checks.check_family(args.ell, args.gamma, placement, args.tol)
    return _finish_verify([rep], args)


def cmd_verify_trig(args) -> int:
    return _finish_verify([checks.check_trig_identity(args.kmax, args.tol)], args)


def cmd_verify_all(args) -> int:
    reports = checks.run_all(seed=args.seed, budget=args.budget, experiments=args.experiments)
    return _finish_verify(reports, args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lapeq",
        description="Laplacian spectra of mirrored graphs, controlled eigenvalue "
        "replacement, and equal-energy families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="construct graphs and write edge lists")
    bsub = build.add_subparsers(dest="target", required=True)

    b_star = bsub.add_parser("starlike", help="starlike tree from branch lengths")
    b_star.add_argument("--branches", required=True, help="comma-separated lengths, e.g. 2,2,1")
    b_star.add_argument("--out", help="edge-list output path")
    b_star.add_argument("--dot", help="also write DOT here")
    b_star.set_defaults(func=cmd_build_starlike)

    b_fam = bsub.add_parser("family", help="equal-energy family with manifest")
    b_fam.add_argument("--ell", type=int, required=True)
    b_fam.add_argument("--gamma", type=int, default=1)
    b_fam.add_argument("--placement", default="even", help="even, odd, or explicit list like 4,2")
    b_fam.add_argument("--outdir", help="output directory")
    b_fam.set_defaults(func=cmd_build_family)

    b_mir = bsub.add_parser("mirror", help="two core copies glued to a rooted host")
    b_mir.add_argument("--core", required=True, help="path:k | cycle:k | star:k | file:PATH")
    b_mir.add_argument("--host", required=True, help="same shorthand as --core")
    b_mir.add_argument("--root", type=int, required=True, help="root vertex in the host")
    b_mir.add_argument("--link", required=True, help="0/1 attachment vector, e.g. 111")
    b_mir.add_argument("--cross", help="0/1 cross-edge vector; writes the inserted graph")
    b_mir.add_argument("--out", help="edge-list output path")
    b_mir.add_argument("--dot", help="also write DOT here")
    b_mir.set_defaults(func=cmd_build_mirror)

    spec = sub.add_parser("spectrum", help="Laplacian spectrum, energy, sigma of a graph")
    spec.add_argument("graph", help="graph shorthand or edge-list file")
    spec.add_argument("--format", choices=("text", "json", "csv"), default="text")
    spec.set_defaults(func=cmd_spectrum)

    verify = sub.add_parser("verify", help="run a verification check, exit 1 on failure")
    vsub = verify.add_subparsers(dest="claim", required=True)

    v_rep = vsub.add_parser("replacement", help="random mirror structures: spectra replace as claimed")
    v_rep.add_argument("--count", type=int, default=50)
    v_rep.add_argument("--seed", type=int, default=7)
    v_rep.add_argument("--max-core", type=int, default=6)
    v_rep.add_argument("--max-host", type=int, default=10)
    v_rep.add_argument("--tol", type=float, default=1e-8)

    v_path = vsub.add_parser("path-replacement", help="closed-form cosine replacement on path cores")
    v_path.add_argument("--branches", help="custom starlike branches (with --k)")
    v_path.add_argument("--k", type=int)
    v_path.add_argument("--tol", type=float, default=1e-8)

    v_energy = vsub.add_parser("energy", help="cross edge preserves Laplacian energy")
    v_energy.add_argument("--branches", help="single instance (with --k); default sweeps n <= max-n")
    v_energy.add_argument("--k", type=int)
    v_energy.add_argument("--max-n", type=int, default=20, dest="max_n")
    v_energy.add_argument("--tol", type=float, default=1e-8)

    v_sigma = vsub.add_parser("sigma", help="eigenvalues at/above average degree number n/2")
    v_sigma.add_argument("--branches", help="single instance (with --k); default sweeps n <= max-n")
    v_sigma.add_argument("--k", type=int)
    v_sigma.add_argument("--max-n", type=int, default=20, dest="max_n")

    v_fam = vsub.add_parser("family", help="equal energies, pairwise noncospectral")
    v_fam.add_argument("--ell", type=int, required=True)
    v_fam.add_argument("--gamma", type=int, default=1)
    v_fam.add_argument("--placement", default="even")
    v_fam.add_argument("--tol", type=float, default=1e-8)

    v_trig = vsub.add_parser("trig", help="cosine half-sum identity")
    v_trig.add_argument("--kmax", type=int, default=1000)
    v_trig.add_argument("--tol", type=float, default=1e-12)

    v_all = vsub.add_parser("all", help="the whole battery")
    v_all.add_argument("--seed", type=int, default=7)
    v_all.add_argument("--budget", choices=("small", "full"), default="small")
    v_all.add_argument("--experiments", action="store_true", help="include beyond-proven-bound probes")

    for sp, fn in (
        (v_rep, cmd_verify_replacement),
        (v_path, cmd_verify_path_replacement),
        (v_energy, cmd_verify_energy),
        (v_sigma, cmd_verify_sigma),
        (v_fam, cmd_verify_family),
        (v_trig, cmd_verify_trig),
        (v_all, cmd_verify_all),
    ):
        sp.add_argument("--report", help="JSON report path")
        sp.set_defaults(func=fn)

    jt = sub.add_parser("jt", help="exact above/at/below eigenvalue counts for a tree")
    jt.add_argument("graph", help="graph shorthand or edge-list file")
    jt.add_argument("--alpha", required=True, help="exact shift: 2, 9/5, or 1.8")
    jt.add_argument("--root", type=int, default=1)
    jt.add_argument("--values", action="store_true", help="print the final per-vertex values")
    jt.add_argument("--format", choices=("text", "json"), default="text")
    jt.set_defaults(func=cmd_jt)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
