"""Command-line surface: generate, solve, verify, audit, and benchmark.

Reports are canonical JSON (sorted keys, no timestamps), so identical
configurations including the seed produce byte-identical output.  Theorem
bounds that fail are soft outcomes (exit 0, satisfied=false); invalid
configuration, violated hard preconditions, and oracle size overruns exit
nonzero.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from .bounds import (
    bounded_degree_cut_fraction,
    edwards_bound,
    judicious_min_degree_fraction,
    tight_bisection_bound,
)
from .coloring import bounded_degree_bisection, regular_bisection
from .core import Bipartition, Graph, cut_stats, is_bisection, parse_graph
from .generators import GeneratorSpec, generate
from .greedy import alpha_bisection, tight_bisection
from .mindegree import inequality_audit, min_degree_bisection
from .oracle import (
    OracleSizeError,
    brute_judicious_optimum,
    brute_max_bisection,
    brute_tight_check,
)
from .randomized import (
    judicious_bisection_variance,
    judicious_tight_bisection,
    lambda_bound,
)
from .tight import tau_from_matching

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PRECONDITION = 3
EXIT_ORACLE_SIZE = 4

DEFAULT_SEED = 0  # absent seed is a fixed constant, never entropy


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _load_graph(args) -> Graph:
    if getattr(args, "gen", None):
        return generate(GeneratorSpec.parse(args.gen))
    if getattr(args, "input", None):
        if args.input == "-":
            return parse_graph(sys.stdin.read())
        with open(args.input, "r", encoding="utf-8") as fh:
            return parse_graph(fh.read())
    raise SystemExit2("one of --input or --gen is required")


class SystemExit2(Exception):
    """Configuration error; mapped to exit code 2."""


def _emit(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _graph_meta(g: Graph) -> dict:
    return {"n": g.n, "m": g.m, "hash": g.content_hash()}


def _solve_dispatch(g: Graph, args):
    algo = args.algo
    seed = args.seed
    trials = args.max_trials
    if algo == "tight":
        return tight_bisection(g)
    if algo == "alpha":
        return alpha_bisection(g, Fraction(args.alpha))
    if algo == "variance":
        return judicious_bisection_variance(g, seed=seed, max_trials=trials)
    if algo == "star":
        return judicious_tight_bisection(
            g, eps=args.eps, seed=seed, max_trials=trials
        )
    if algo == "mindeg":
        part, rep = min_degree_bisection(
            g, delta=args.delta, eps=args.eps, seed=seed, max_trials=trials
        )
        return part, rep
    if algo == "bounded":
        return bounded_degree_bisection(g, args.r)
    if algo == "regular":
        return regular_bisection(g)
    raise SystemExit2(f"unknown algorithm {algo!r}")


def _report_json(rep) -> dict:
    return rep.to_json()


def cmd_gen(args) -> int:
    g = _load_graph(args)
    _emit(args, g.edge_list_text())
    return EXIT_OK


def cmd_solve(args) -> int:
    g = _load_graph(args)
    part, rep = _solve_dispatch(g, args)
    payload = {
        "command": "solve",
        "algo": args.algo,
        "seed": args.seed,
        "graph": _graph_meta(g),
        "partition": part.to_json(),
        "report": _report_json(rep),
    }
    satisfied = payload["report"].get("satisfied", True)
    if args.format == "json":
        _emit(args, _canonical(payload))
    elif args.format == "human":
        lines = [
            f"algo={args.algo} n={g.n} m={g.m} hash={payload['graph']['hash']}",
            f"bound={payload['report'].get('bound')} "
            f"achieved={payload['report'].get('achieved')} satisfied={satisfied}",
        ]
        _emit(args, "\n".join(lines) + "\n")
    else:  # csv
        stats = cut_stats(g, part)
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(
            ["algo", "n", "m", "seed", "bound", "achieved", "crossing", "satisfied"]
        )
        w.writerow(
            [
                args.algo,
                g.n,
                g.m,
                args.seed,
                payload["report"].get("bound"),
                payload["report"].get("achieved"),
                stats.crossing,
                satisfied,
            ]
        )
        _emit(args, buf.getvalue())
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _load_graph(args)
    try:
        if args.which == "maxbis":
            res = brute_max_bisection(g)
            payload = {"command": "oracle", "which": "maxbis", **res.to_json()}
        elif args.which == "judicious":
            res = brute_judicious_optimum(g)
            payload = {"command": "oracle", "which": "judicious", **res.to_json()}
        else:  # tight
            comps = []
            tau = 0
            for comp in g.components():
                flag = brute_tight_check(g, comp)
                tau += flag
                comps.append({"vertices": list(comp), "tight": flag})
            payload = {
                "command": "oracle",
                "which": "tight",
                "tau": tau,
                "components": comps,
            }
    except OracleSizeError as exc:
        sys.stderr.write(f"oracle size overrun: {exc}\n")
        return EXIT_ORACLE_SIZE
    payload["graph"] = _graph_meta(g)
    _emit(args, _canonical(payload))
    return EXIT_OK


def _verify_theorem(g: Graph, part: Bipartition, args) -> dict:
    stats = cut_stats(g, part)
    name = args.theorem
    result: dict = {
        "theorem": name,
        "graph": _graph_meta(g),
        "cut": stats.to_json(),
    }
    if name == "edwards":
        bound = edwards_bound(g.m)
        result["bound"] = bound
        result["satisfied"] = stats.crossing >= bound
    elif name == "tight":
        tau = tau_from_matching(g)
        bound = tight_bisection_bound(g.n, g.m, tau, g.max_degree())
        result["bound"] = float(bound)
        result["tau"] = tau
        result["satisfied"] = (
            is_bisection(g, part) and Fraction(stats.crossing) >= bound
        )
    elif name == "alpha":
        alpha = Fraction(args.alpha)
        bound = Fraction(g.m, 2) + alpha * g.n
        floor_side = int((Fraction(1, 2) - alpha) * g.n)
        ceil_bound = -(-bound.numerator // bound.denominator)
        result["bound"] = float(bound)
        result["min_side_floor"] = floor_side
        result["satisfied"] = (
            min(stats.size1, stats.size2) >= floor_side
            and stats.crossing >= ceil_bound - 1
        )
    elif name == "variance":
        lam, cap = lambda_bound(g)
        result["bound"] = cap
        result["satisfied"] = (
            is_bisection(g, part)
            and stats.inside1 <= cap
            and stats.inside2 <= cap
        )
    elif name == "star":
        tau = tau_from_matching(g)
        cap = Fraction(g.m, 4) - Fraction(g.n - tau, 8) + Fraction(args.eps) * g.n
        result["bound"] = float(cap)
        result["tau"] = tau
        result["satisfied"] = (
            is_bisection(g, part)
            and stats.inside1 <= cap
            and stats.inside2 <= cap
        )
    elif name == "mindeg":
        delta_even = args.delta if args.delta % 2 == 0 else args.delta - 1
        cap = (judicious_min_degree_fraction(delta_even) + Fraction(args.eps)) * g.m
        result["bound"] = float(cap)
        result["satisfied"] = (
            is_bisection(g, part)
            and stats.inside1 <= cap
            and stats.inside2 <= cap
        )
    elif name == "bounded":
        bound = bounded_degree_cut_fraction(args.r) * g.m
        result["bound"] = float(bound)
        result["satisfied"] = (
            Fraction(stats.crossing) >= bound
            and abs(stats.size1 - stats.size2) <= args.r // 2 + 1
        )
    elif name == "regular":
        degs = set(g.degrees())
        if len(degs) != 1:
            raise SystemExit2("graph is not regular")
        r = degs.pop()
        bound = bounded_degree_cut_fraction(r) * g.m if r else Fraction(0)
        result["bound"] = float(bound)
        result["satisfied"] = (
            is_bisection(g, part) and Fraction(stats.crossing) >= bound
        )
    else:
        raise SystemExit2(f"unknown theorem {name!r}")
    return result


def cmd_verify(args) -> int:
    g = _load_graph(args)
    with open(args.partition, "r", encoding="utf-8") as fh:
        side = json.load(fh)
    if not isinstance(side, list) or len(side) != g.n:
        raise SystemExit2("partition file must be a JSON list of n side labels")
    part = Bipartition(tuple(int(s) for s in side))
    payload = {"command": "verify", **_verify_theorem(g, part, args)}
    _emit(args, _canonical(payload))
    return EXIT_OK


def cmd_audit(args) -> int:
    report = inequality_audit(args.delta, args.resolution)
    payload = {"command": "audit", **report.to_json()}
    _emit(args, _canonical(payload))
    return EXIT_OK


def _parse_seeds(text: str) -> list[int]:
    if ":" in text:
        lo, hi = text.split(":", 1)
        return list(range(int(lo), int(hi)))
    return [int(s) for s in text.split(",") if s.strip()]


def cmd_bench(args) -> int:
    families = [f.strip() for f in args.families.split(";") if f.strip()]
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    seeds = _parse_seeds(args.seeds)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        [
            "family", "params", "n", "m", "algo", "seed", "bound",
            "achieved1", "achieved2", "crossing", "satisfied", "runtime_ms",
        ]
    )
    for fam in families:
        spec = GeneratorSpec.parse(fam)
        g = generate(spec)
        for algo in algos:
            for seed in seeds:
                ns = argparse.Namespace(
                    algo=algo,
                    seed=seed,
                    max_trials=args.max_trials,
                    eps=args.eps,
                    delta=args.delta,
                    alpha=args.alpha,
                    r=args.r,
                )
                t0 = time.perf_counter()
                try:
                    part, rep = _solve_dispatch(g, ns)
                except (ValueError, SystemExit2) as exc:
                    writer.writerow(
                        [spec.family, spec.to_string(), g.n, g.m, algo, seed,
                         "", "", "", "", f"error:{exc}", ""]
                    )
                    continue
                ms = int((time.perf_counter() - t0) * 1000)
                stats = cut_stats(g, part)
                rj = rep.to_json()
                writer.writerow(
                    [
                        spec.family, spec.to_string(), g.n, g.m, algo, seed,
                        rj.get("bound"), stats.inside1, stats.inside2,
                        stats.crossing, rj.get("satisfied"), ms,
                    ]
                )
    _emit(args, buf.getvalue())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="graphbisect",
        description="Graph bisection toolkit: solvers, oracles, and audits.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, need_algo=False):
        sp.add_argument("--input", help="graph file (edge list or DIMACS); '-' for stdin")
        sp.add_argument("--gen", help="generator spec, e.g. 'family1:delta=2,x=4,y=3'")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--max-trials", type=int, default=64, dest="max_trials")
        sp.add_argument("--eps", type=float, default=0.05)
        sp.add_argument("--delta", type=int, default=2)
        sp.add_argument("--alpha", default="1/6")
        sp.add_argument("--r", type=int, default=3)
        sp.add_argument("--format", choices=("json", "csv", "human"), default="json")
        sp.add_argument("--out", help="write output to a file instead of stdout")
        if need_algo:
            sp.add_argument(
                "--algo",
                required=True,
                choices=("tight", "alpha", "variance", "star", "mindeg",
                         "bounded", "regular"),
            )

    sp = sub.add_parser("gen", help="emit a generated graph as an edge list")
    add_common(sp)
    sp.set_defaults(fn=cmd_gen)

    sp = sub.add_parser("solve", help="run a bisection algorithm")
    add_common(sp, need_algo=True)
    sp.set_defaults(fn=cmd_solve)

    sp = sub.add_parser("oracle", help="exact brute-force answers (small n)")
    sp.add_argument("which", choices=("maxbis", "judicious", "tight"))
    add_common(sp)
    sp.set_defaults(fn=cmd_oracle)

    sp = sub.add_parser("verify", help="recheck a partition against a theorem bound")
    add_common(sp)
    sp.add_argument("--partition", required=True, help="JSON list of side labels")
    sp.add_argument(
        "--theorem",
        required=True,
        choices=("edwards", "tight", "alpha", "variance", "star", "mindeg",
                 "bounded", "regular"),
    )
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("audit", help="exact-rational inequality audit")
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--resolution", type=int, default=200)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_audit)

    sp = sub.add_parser("bench", help="sweep families x algorithms, emit CSV")
    sp.add_argument("--families", required=True, help="semicolon-separated specs")
    sp.add_argument("--algos", required=True, help="comma-separated algorithms")
    sp.add_argument("--seeds", default="0:1", help="'lo:hi' range or comma list")
    sp.add_argument("--max-trials", type=int, default=64, dest="max_trials")
    sp.add_argument("--eps", type=float, default=0.05)
    sp.add_argument("--delta", type=int, default=2)
    sp.add_argument("--alpha", default="1/6")
    sp.add_argument("--r", type=int, default=3)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_bench)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit2 as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG
    except OracleSizeError as exc:
        sys.stderr.write(f"oracle size overrun: {exc}\n")
        return EXIT_ORACLE_SIZE
    except (ValueError, FileNotFoundError) as exc:
        sys.stderr.write(f"precondition violated: {exc}\n")
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
