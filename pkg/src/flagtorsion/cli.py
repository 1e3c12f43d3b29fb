"""Command-line interface: ``flagtorsion <subcommand> ...``.

Exit status is 0 on success, 1 when a reproduce or verify check fails and
2 on bad usage or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import betti as bt
from . import construction as cons
from . import density as dens
from .complexes import SimplicialComplex, dumps_complex, loads_complex
from .experiments import ExperimentConfig, run_threshold_experiment
from .homology import homology_all, homology_dim_mod
from .random_flag import FlagModelParams, sample_flag_complex
from .reproduce import TABLE_IDS, reproduce, verify_xm_range

BUILTINS = "rp2, xm:<m>, group:<m1,m2,...>, telescope:<nk>, sphere:<i>, punctured:<k>"


class UsageError(Exception):
    pass


def resolve_complex(spec: str) -> SimplicialComplex:
    """A builtin name or a path to a complex JSON file."""
    path = Path(spec)
    if path.exists():
        try:
            return loads_complex(path.read_text())
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"{spec}: not a complex file ({exc})") from exc
    name, _, arg = spec.partition(":")
    try:
        if name == "rp2" and not arg:
            return cons.rp2_flag()
        if name == "xm":
            return cons.build_xm(int(arg))[0]
        if name == "group":
            return cons.build_group_complex([int(x) for x in arg.split(",")])
        if name == "telescope":
            return cons.build_telescope(int(arg))
        if name == "sphere":
            return cons.build_sphere_stage(int(arg))
        if name == "punctured":
            return cons.build_punctured_sphere(int(arg))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    raise UsageError(f"{spec!r} is neither a file nor a builtin ({BUILTINS})")


def _emit(text: str, out: str | None = None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj, args) -> None:
    _emit(json.dumps(obj, indent=1, sort_keys=True) + "\n", getattr(args, "out", None))


def _sizes(text: str | None):
    if text is None:
        return None
    out = []
    for part in text.split(","):
        lo, _, hi = part.partition("-")
        out.extend(range(int(lo), int(hi or lo) + 1))
    return out


# -- subcommands --------------------------------------------------------------


def cmd_construct(args) -> int:
    c = resolve_complex(args.name)
    _emit(dumps_complex(c), args.out)
    return 0


def cmd_verify(args) -> int:
    certs = verify_xm_range(args.m_min, args.m_max if args.m_max is not None else args.m_min)
    if args.format == "json":
        _dump([c.as_dict() for c in certs], args)
    else:
        for cert in certs:
            status = "PASS" if cert.passed else "FAIL " + ",".join(cert.failures())
            print(f"X_{cert.m}: f={cert.fvector} maxdeg={cert.maxdeg} H1={cert.h1} flag={cert.is_flag} {status}")
        print(f"{sum(c.passed for c in certs)}/{len(certs)} passed")
    return 0 if all(c.passed for c in certs) else 1


def cmd_homology(args) -> int:
    c = resolve_complex(args.complex)
    if args.char is None:
        groups = homology_all(c, reduced=args.reduced)
        lo = -1 if args.reduced else 0
        rows = [{"d": d, **g.as_dict(), "group": str(g)} for d, g in enumerate(groups, start=lo)]
    else:
        lo = -1 if args.reduced else 0
        rows = [
            {"d": d, "dim": homology_dim_mod(c, d, args.char, reduced=args.reduced)} for d in range(lo, c.dim + 1)
        ]
    if args.format == "json":
        _dump({"fvector": list(c.fvector()), "homology": rows}, args)
    else:
        print(f"f-vector {c.fvector()}")
        for r in rows:
            print(f"H_{r['d']} = {r['group'] if 'group' in r else r['dim']}")
    return 0


def cmd_betti(args) -> int:
    c = resolve_complex(args.complex)
    try:
        table = bt.betti_table(c, args.char, sizes=_sizes(args.sizes), max_subsets=args.max_subsets)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        _emit(table.to_json(), args.out)
    else:
        if table.partial:
            print(f"partial table: columns j in {list(table.sizes)}")
        _emit(table.to_text(), args.out)
    return 0


def cmd_torsion(args) -> int:
    c = resolve_complex(args.complex)
    try:
        rep = bt.torsion_primes(
            c, subset_size_cap=args.cap, sizes=_sizes(args.sizes), primes_up_to=args.primes_up_to,
            max_subsets=args.max_subsets,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        _dump(rep.as_dict(), args)
    else:
        print("primes:", sorted(rep.primes) or "none", "(partial scan)" if rep.partial else "")
        for p, (alpha, d) in sorted(rep.witness.items()):
            print(f"  {p}: H_{d} of the subcomplex on {list(alpha)} has torsion {list(rep.invariant_factors[p])}")
    return 0


def cmd_density(args) -> int:
    g = resolve_complex(args.graph).skeleton_graph()
    try:
        rep = dens.essential_density(g, args.mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    lo, hi = dens.density_bounds(g)
    if args.format == "json":
        _dump({**rep.as_dict(), "bounds": [str(lo), str(hi)]}, args)
    else:
        print(f"m(G) = {rep.density}  strictly balanced: {rep.strictly_balanced}")
        print(f"witness: {list(rep.witness)}")
        print(f"bounds: {lo} <= m(G) <= {hi}")
        if rep.per_size_max_edges:
            for s, (e, w) in rep.per_size_max_edges.items():
                print(f"  {s:3d} {e:4d}  {list(w)}")
    return 0


def cmd_search(args) -> int:
    pattern = resolve_complex(args.pattern).skeleton_graph()
    host = resolve_complex(args.host).skeleton_graph()
    res = dens.contains_induced(pattern, host, budget=args.budget, induced=not args.subgraph)
    if args.format == "json":
        _dump({"status": res.status, "nodes": res.nodes, "embedding": res.embedding}, args)
    else:
        print(f"{res.status} after {res.nodes} search nodes")
        if res.embedding is not None:
            print("embedding:", list(res.embedding))
    return 0


def cmd_sample(args) -> int:
    try:
        params = FlagModelParams(args.n, args.p, args.seed, args.max_dim)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(dumps_complex(sample_flag_complex(params)), args.out)
    return 0


def cmd_experiment(args) -> int:
    try:
        cfg = ExperimentConfig(
            pattern=args.pattern,
            n_values=args.n,
            p_values=args.p,
            trials=args.trials,
            seed=args.seed,
            budget=args.budget,
            mode=args.mode,
            subgraph=args.subgraph,
            size_cap=args.cap,
        )
        result = run_threshold_experiment(cfg, threads=args.threads)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.plot:
        Path(args.plot).write_text(result.to_gnuplot())
    _emit(result.to_json(timing=args.timing) if args.format == "json" else result.to_csv(), args.out)
    return 0


def cmd_reproduce(args) -> int:
    ids = TABLE_IDS if args.table == "all" else (args.table,)
    reports = [reproduce(t) for t in ids]
    if args.format == "json":
        _dump([r.as_dict() for r in reports], args)
    else:
        for r in reports:
            print(r.text())
    return 0 if all(r.passed for r in reports) else 1


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    common.add_argument("--threads", type=int, default=1, help="worker processes for experiments")
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--out", help="write the main output here instead of stdout")

    parser = argparse.ArgumentParser(prog="flagtorsion", description="Flag complexes with prescribed torsion.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="write a builtin complex as JSON")
    p.add_argument("name", help=BUILTINS)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="certify X_m for a range of m")
    p.add_argument("m_min", type=int)
    p.add_argument("m_max", type=int, nargs="?")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("homology", parents=[common], help="integer or field homology")
    p.add_argument("complex")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--char", type=int, help="field characteristic (0 or prime); integer homology if omitted")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("betti", parents=[common], help="Betti table via Hochster's formula")
    p.add_argument("complex")
    p.add_argument("--char", type=int, default=0)
    p.add_argument("--sizes", help="restrict subset sizes, e.g. 24-26 or 3,5")
    p.add_argument("--max-subsets", type=int, default=bt.DEFAULT_MAX_SUBSETS)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("torsion", parents=[common], help="torsion primes of induced subcomplexes")
    p.add_argument("complex")
    p.add_argument("--primes-up-to", type=int)
    p.add_argument("--cap", type=int, help="largest subset size to scan")
    p.add_argument("--sizes", help="restrict subset sizes, e.g. 24-26")
    p.add_argument("--max-subsets", type=int, default=bt.DEFAULT_MAX_SUBSETS)
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("density", parents=[common], help="exact essential density of the 1-skeleton")
    p.add_argument("graph")
    p.add_argument("--mode", choices=("exhaustive", "maxflow"), default="exhaustive")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("search", parents=[common], help="induced-subgraph search")
    p.add_argument("pattern")
    p.add_argument("host")
    p.add_argument("--budget", type=int, default=dens.DEFAULT_BUDGET)
    p.add_argument("--subgraph", action="store_true", help="plain (non-induced) subgraph containment")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("sample", parents=[common], help="sample a random flag complex")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", required=True, help="edge probability as an exact decimal")
    p.add_argument("--max-dim", type=int, default=2)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("experiment", parents=[common], help="Monte Carlo appearance frequencies")
    p.add_argument("--pattern", required=True, help="rp2, xm:<m> or a complex file")
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--p", nargs="+", required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--budget", type=int, default=10**7)
    p.add_argument("--mode", choices=("detect-pattern", "detect-torsion"), default="detect-pattern")
    p.add_argument("--subgraph", action="store_true")
    p.add_argument("--cap", type=int, help="subset size cap in detect-torsion mode")
    p.add_argument("--plot", help="also write a gnuplot data file here")
    p.add_argument("--timing", action="store_true", help="include per-trial wall time in JSON output")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("reproduce", parents=[common], help="recompute a published table and diff it")
    p.add_argument("table", choices=TABLE_IDS + ("all",))
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
