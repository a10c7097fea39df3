"""Command-line interface: ``lptkit <command> ...``.

Exit status is 0 when every recorded check passed, 1 when any bound or
internal assertion failed, and 2 on input errors.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import __version__
from .census import connected_graphs, connected_graphs_upto
from .checks import Record, Recorder, _jsonable, recording
from .corpus import LEMMA_RUNNERS, sweep_graphs
from .decomp import (
    Society,
    block_cut_tree,
    build_linear_decomposition,
    max_transaction,
    tutte_decomposition,
    verify_linear_decomposition,
    verify_tree_decomposition,
)
from .engine import transversal, verify_certificate
from .errors import BoundViolation, InputError, InternalError, OracleInfeasible
from .generators import random_connected_graph, random_two_connected, substream
from .graph import is_two_connected
from .io import parse_graph, to_graph6
from .oracle import CYCLE, DEFAULT_CAP, PATH, enumerate_longest, exact_transversal_number
from .report import build_report, write_csv, write_report
from .vt import connected_circulants, corollary_check, gen_cayley, gen_circulant, load_group_table, petersen

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


def _graph_from_args(args):
    if not args.input:
        raise InputError("--input is required")
    return parse_graph(args.input, args.format)


def _cmd_transversal(args, rec):
    g = _graph_from_args(args)
    fam = enumerate_longest(g, args.kind, cap=args.cap)
    cert = transversal(g, args.kind, fam=fam, force_split=args.force_split, cap=args.cap)
    exact = exact_transversal_number(g, args.kind, fam, cap=args.cap)
    problems = verify_certificate(g, cert, fam)
    if problems:
        raise InternalError("certificate failed re-validation", {"problems": problems})
    return {"graph6": to_graph6(g), "n": g.n, "m": g.m}, {
        "certificate": cert.to_dict(),
        "lpt_exact": exact.size,
        "family_size": len(fam),
    }


def _cmd_oracle(args, rec):
    g = _graph_from_args(args)
    fam = enumerate_longest(g, args.kind, cap=args.cap)
    hs = exact_transversal_number(g, args.kind, fam, cap=args.cap)
    shown = [list(m.vertices) for m in fam.members[: args.show]]
    return {"graph6": to_graph6(g), "n": g.n, "m": g.m}, {
        "kind": args.kind,
        "length": fam.length,
        "family_size": len(fam),
        "members": shown,
        "transversal": hs.to_dict(),
    }


def _cmd_decompose(args, rec):
    g = _graph_from_args(args)
    out = {"block_cut_tree": block_cut_tree(g).to_dict()}
    if is_two_connected(g):
        td = tutte_decomposition(g)
        ok, info = verify_tree_decomposition(g, td)
        out["tutte"] = td.to_dict()
        out["tutte_valid"] = ok
        out["tutte_adhesion"] = info["adhesion"]
    return {"graph6": to_graph6(g), "n": g.n, "m": g.m}, out


def _cmd_society(args, rec):
    g = _graph_from_args(args)
    if args.omega:
        try:
            omega = tuple(int(x) for x in args.omega.split(","))
        except ValueError:
            raise InputError("--omega must be a comma-separated list of vertex ids") from None
    else:
        omega = tuple(range(g.n))
    s = Society(g, omega)
    out = {"omega": list(omega)}
    p = 0
    if s.t >= 2:
        tr = max_transaction(s)
        p = tr.order
        out["transaction"] = tr.to_dict()
    ld = build_linear_decomposition(s, bound=p if s.t >= 2 else None)
    ok, adhesion, violations = verify_linear_decomposition(s, ld)
    out.update({"decomposition": ld.to_dict(), "valid": ok, "adhesion": adhesion, "violations": violations})
    if not ok or adhesion > p:
        raise InternalError("linear decomposition rejected by its verifier", out)
    return {"graph6": to_graph6(g), "n": g.n, "m": g.m}, out


def _cmd_lemmas(args, rec):
    names = sorted(LEMMA_RUNNERS) if args.check == "all" else [args.check]
    results = {}
    for name in names:
        results[name] = LEMMA_RUNNERS[name](args.seed, args.samples)
    return {"checks": names, "seed": args.seed, "samples": args.samples}, results


def _sweep_graphs(args):
    if args.exhaustive is not None:
        n = args.exhaustive
        if args.kind == CYCLE:
            graphs = [g for g in (connected_graphs_upto(n, minimum=3) if args.upto else connected_graphs(n))
                      if is_two_connected(g)]
        else:
            graphs = connected_graphs_upto(n, minimum=2) if args.upto else connected_graphs(n)
        return graphs, {"exhaustive": n, "upto": args.upto}
    rng = substream(args.seed, f"sweep-{args.kind}")
    graphs = []
    for _ in range(args.samples or 50):
        n = rng.randint(max(3, args.min_n), args.max_n)
        graphs.append(random_two_connected(rng, n) if args.kind == CYCLE else random_connected_graph(rng, n))
    return graphs, {"random": len(graphs), "seed": args.seed, "max_n": args.max_n}


def _cmd_sweep(args, rec):
    graphs, desc = _sweep_graphs(args)
    rows = sweep_graphs(graphs, args.kind, force_split=args.force_split, cap=args.cap, jobs=args.jobs,
                        timing=args.timing, recorder=rec)
    if args.csv:
        write_csv(args.csv, rows)
    branches = {}
    for r in rows:
        branches[r["branch"]] = branches.get(r["branch"], 0) + 1
    desc.update({"kind": args.kind, "instances": len(rows), "force_split": args.force_split})
    return desc, {"rows": len(rows), "branches": branches,
                  "failed_rows": [r for r in rows if r["branch"] in ("FAILED", "infeasible")]}


def _cmd_vt(args, rec):
    instances = []
    if args.group:
        instances.append(gen_cayley(load_group_table(args.group)))
    if args.circulant:
        try:
            n_txt, conn_txt = args.circulant.split(":")
            instances.append(gen_circulant(int(n_txt), [int(x) for x in conn_txt.split(",")]))
        except ValueError:
            raise InputError("--circulant expects N:s1,s2,...") from None
    if not instances:
        instances = connected_circulants(args.max_n) + [petersen()]
    reports = [corollary_check(inst) for inst in instances]
    return {"instances": len(instances)}, reports


COMMANDS = {
    "transversal": _cmd_transversal,
    "oracle": _cmd_oracle,
    "decompose": _cmd_decompose,
    "society": _cmd_society,
    "lemmas": _cmd_lemmas,
    "sweep": _cmd_sweep,
    "vt": _cmd_vt,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report here")
    common.add_argument("--seed", type=int, default=0, help="master seed for every random corpus")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="oracle vertex cap")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    common.add_argument("--timing", action="store_true",
                        help="record wall-clock times (reports are then no longer byte-reproducible)")
    common.add_argument("--quiet", action="store_true")

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("--input", help="graph file (edge list or graph6)")
    graph_in.add_argument("--format", choices=["edgelist", "graph6"], help="input format (default: detect)")

    kind = argparse.ArgumentParser(add_help=False)
    kind.add_argument("--kind", choices=[PATH, CYCLE], default=PATH)

    p = argparse.ArgumentParser(prog="lptkit", description="Certified longest path and cycle transversals.")
    p.add_argument("--version", action="version", version=f"lptkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transversal", parents=[common, graph_in, kind], help="certified transversal of one graph")
    t.add_argument("--force-split", action="store_true", help="run the geodetic case split even for short cycles")

    o = sub.add_parser("oracle", parents=[common, graph_in, kind], help="exact longest family and transversal")
    o.add_argument("--show", type=int, default=20, help="number of members listed in the report")

    sub.add_parser("decompose", parents=[common, graph_in], help="block-cut tree and Tutte decomposition")

    s = sub.add_parser("society", parents=[common, graph_in], help="transaction and linear decomposition")
    s.add_argument("--omega", help="comma-separated cyclic order (default: all vertices in id order)")

    lm = sub.add_parser("lemmas", parents=[common], help="randomized and exhaustive lemma checks")
    lm.add_argument("--check", choices=sorted(LEMMA_RUNNERS) + ["all"], default="all")
    lm.add_argument("--samples", type=int, default=None, help="sample count (default per check)")

    sw = sub.add_parser("sweep", parents=[common, kind], help="run the engine over a corpus")
    sw.add_argument("--exhaustive", type=int, metavar="N", help="all connected graphs of order N")
    sw.add_argument("--upto", action="store_true", help="with --exhaustive: include every order 2..N")
    sw.add_argument("--samples", type=int, default=None, help="random instances when not exhaustive")
    sw.add_argument("--min-n", type=int, default=4)
    sw.add_argument("--max-n", type=int, default=10)
    sw.add_argument("--csv", help="write the per-instance CSV summary here")
    sw.add_argument("--force-split", action="store_true")

    v = sub.add_parser("vt", parents=[common], help="vertex-transitive corollary checks")
    v.add_argument("--max-n", type=int, default=16, help="largest circulant order in the default corpus")
    v.add_argument("--group", help="group table file for a Cayley graph")
    v.add_argument("--circulant", help="single circulant N:s1,s2,...")
    return p


def run_command(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    rec = Recorder()
    start = time.perf_counter()
    status = EXIT_OK
    instance, results, error = {}, None, None
    with recording(rec):
        try:
            instance, results = COMMANDS[args.command](args, rec)
        except (InputError, OracleInfeasible) as exc:
            status, error = EXIT_INPUT, {"type": type(exc).__name__, "message": str(exc)}
        except BoundViolation as exc:
            status, error = EXIT_FAIL, {"type": "BoundViolation", "check": exc.check_id,
                                        "message": str(exc), "witness": exc.witness}
        except InternalError as exc:
            rec.add(Record("internal", "", 0, ">=", 1, -1, False, {"error": str(exc)}))
            status, error = EXIT_FAIL, {"type": "InternalError", "message": str(exc), "witness": exc.witness}
    if status == EXIT_OK and not rec.ok:
        status = EXIT_FAIL
    timing = {"seconds": round(time.perf_counter() - start, 3)} if args.timing else None
    report = build_report(args.command, instance, rec, results, timing=timing)
    if error is not None:
        report["error"] = _jsonable(error)
    report["exit_code"] = status
    if args.out:
        write_report(args.out, report)
    if not args.quiet:
        verdict = {EXIT_OK: "ok", EXIT_FAIL: "FAILED", EXIT_INPUT: "input error"}[status]
        print(f"lptkit {args.command}: {verdict}; {rec.total} checks, {len(rec.failures)} failed, "
              f"digest {rec.records_digest()}")
        if error is not None:
            print(f"  {error['type']}: {error['message']}", file=sys.stderr)
    return status


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
