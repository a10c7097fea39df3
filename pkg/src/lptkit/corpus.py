"""Seeded experiment corpora shared by the CLI and the acceptance suite.

Each runner records its checks through :func:`lptkit.checks.ensure` into
whatever recorder is active and returns plain result rows.
"""

from __future__ import annotations

import math
import time

from .brute import best_cubic_gain, distinct_admissible_placements, max_matching_path_count
from .checks import Record, Recorder, ensure, ensure_true, recording
from .decomp import build_linear_decomposition, max_transaction, tutte_decomposition, verify_linear_decomposition
from .decomp import verify_tree_decomposition
from .engine import transversal, verify_certificate
from .errors import BoundViolation, InternalError, OracleInfeasible
from .generators import (
    random_connected_graph,
    random_cubic_instance,
    random_matching_instance,
    random_society,
    random_two_connected,
    substream,
)
from .graph import CycleSeq, Graph, induced_subgraph, shortest_path
from .io import parse_graph6, to_graph6
from .lemmas import (
    check_longest_intersection,
    cubic_cycle_finder,
    distant_pairs_sum,
    extremal_distant_pairs,
    inequality_check,
    matching_traverse_path,
    nice_hitting_set,
    separate_cycle_from_longest,
)
from .oracle import (
    CYCLE,
    DEFAULT_CAP,
    PATH,
    enumerate_longest,
    exact_transversal_number,
    is_transversal,
    longest_length,
)


# --------------------------------------------------------------------------
# transversal sweeps


def pairwise_intersect(fam) -> tuple[int, int] | None:
    """First pair of disjoint members, or None."""
    masks = fam.masks
    full = 0
    for m in masks:
        full |= m
    if all(m == full for m in masks):
        return None
    for i in range(len(masks)):
        mi = masks[i]
        for j in range(i + 1, len(masks)):
            if not mi & masks[j]:
                return i, j
    return None


def transversal_row(g: Graph, kind: str, name: str, *, force_split: bool = False,
                    cap: int = DEFAULT_CAP, timing: bool = False) -> dict:
    t0 = time.perf_counter()
    fam = enumerate_longest(g, kind, cap=cap)
    ins = {"graph": g.to_dict(), "kind": kind}
    clash = pairwise_intersect(fam)
    ensure_true("lemma.intersect.pairs", clash is None, inputs=ins,
                witness={"pair": clash} if clash else None)
    cert = transversal(g, kind, fam=fam, force_split=force_split, cap=cap)
    exact = exact_transversal_number(g, kind, fam).size
    ensure("oracle.dominance", exact, "<=", cert.size, inputs=ins)
    problems = verify_certificate(g, cert, fam)
    ensure_true("certificate.valid", not problems, inputs=ins, witness={"problems": problems})
    row = {
        "instance": name,
        "n": g.n,
        "m": g.m,
        "kind": kind,
        "ell": fam.length,
        "lpt_exact": exact,
        "S_size": cert.size,
        "branch": cert.branch,
        "bound": cert.bound_used,
        "margin": cert.margin,
        "ms": round((time.perf_counter() - t0) * 1000, 3) if timing else 0,
    }
    if cert.branch == "case2-society":
        row["p"] = cert.witness["p"]
        row["cycle_len"] = len(cert.witness["cycle"])
    return row


def _sweep_task(args):
    g6, kind, force_split, cap, timing = args
    g = parse_graph6(g6)
    rec = Recorder(max_details=10**9)
    with recording(rec):
        try:
            row = transversal_row(g, kind, g6, force_split=force_split, cap=cap, timing=timing)
        except BoundViolation as exc:
            row = _failed_row(g, g6, kind, "FAILED", str(exc))
        except InternalError as exc:
            rec.add(Record("internal", g6, 0, ">=", 1, -1, False, {"error": str(exc), "witness": exc.witness}))
            row = _failed_row(g, g6, kind, "FAILED", str(exc))
        except OracleInfeasible as exc:
            row = _failed_row(g, g6, kind, "infeasible", str(exc))
    return row, rec.details


def _failed_row(g, name, kind, branch, error):
    return {"instance": name, "n": g.n, "m": g.m, "kind": kind, "ell": "", "lpt_exact": "",
            "S_size": "", "branch": branch, "bound": "", "margin": "", "ms": 0, "error": error}


def sweep_graphs(graphs, kind: str, *, force_split=False, cap=DEFAULT_CAP, jobs=1, timing=False,
                 recorder: Recorder | None = None) -> list[dict]:
    """Run the engine on every graph; rows and records come back in canonical order."""
    tasks = sorted({(to_graph6(g), kind, force_split, cap, timing) for g in graphs})
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outs = list(pool.map(_sweep_task, tasks, chunksize=8))
    else:
        outs = [_sweep_task(t) for t in tasks]
    rows = []
    for row, records in outs:
        rows.append(row)
        if recorder is not None:
            recorder.extend(records)
    return rows


# --------------------------------------------------------------------------
# lemma corpora


def run_matchings(seed: int, samples: int = 200, max_m: int = 30, oracle_max: int = 12) -> list[dict]:
    rng = substream(seed, "matchings")
    out = []
    for i in range(samples):
        inst = random_matching_instance(rng, max_m)
        path = matching_traverse_path(inst)
        count = inst.matching_count(path)
        row = {"i": i, "m": len(inst.m), "count": count, "bound": 0.1 * len(inst.m) ** 0.8}
        if len(inst.m) <= oracle_max:
            best = max_matching_path_count(inst)
            ensure("matchings.oracle", count, "<=", best, inputs=inst.to_dict())
            row["oracle"] = best
        out.append(row)
    return out


def run_cubic(seed: int, samples: int = 100, max_n: int = 20) -> list[dict]:
    rng = substream(seed, "cubic")
    out = []
    for i in range(samples):
        inst = random_cubic_instance(rng, max_n)
        cyc = cubic_cycle_finder(inst)
        gain = inst.gain(cyc)
        best = best_cubic_gain(inst)
        ensure("cubic.oracle", gain, "<=", best, inputs=inst.to_dict())
        x = len(inst.outside())
        out.append({"i": i, "n": inst.graph.n, "outside": x, "gain": gain, "optimum": best,
                    "bound": 0.15 * x**0.8})
    return out


def run_distant_pairs(max_t: int = 12, max_k: int = 4, extremal_k: int = 6) -> list[dict]:
    out = []
    for t in range(2, max_t + 1):
        for k in range(1, max_k + 1):
            if 2 * k > t:
                continue
            count = 0
            worst = math.inf
            for cycle, pairs in distinct_admissible_placements(t, k):
                total, bound, _ = distant_pairs_sum(cycle, pairs)
                worst = min(worst, total - bound)
                count += 1
            out.append({"t": t, "k": k, "placements": count, "min_margin": worst})
    for k in range(1, extremal_k + 1):
        cycle, pairs = extremal_distant_pairs(k)
        total, _, _ = distant_pairs_sum(cycle, pairs)
        ensure("distantpairs.extremal", total, "==", math.ceil(k * k / 2), inputs={"k": k})
        out.append({"extremal_k": k, "sum": total})
    return out


def run_inequality(seed: int, samples: int = 100_000, max_k: int = 6, high: float = 100.0) -> list[dict]:
    rng = substream(seed, "inequality")
    worst = math.inf
    worst_sample = None
    for _ in range(samples):
        c = 0.18 * (1.0 - rng.random())
        k = rng.randint(1, max_k)
        x = rng.uniform(0, high)
        ys = [rng.uniform(0, high) for _ in range(k)]
        lhs, rhs, _ = inequality_check(c, x, ys)
        ratio = lhs / rhs if rhs > 0 else math.inf
        if ratio < worst:
            worst, worst_sample = ratio, {"c": c, "x": x, "ys": ys}
    return [{"samples": samples, "min_ratio": worst, "tightest": worst_sample}]


def run_decompositions(seed: int, tutte_samples: int = 100, max_n: int = 30,
                       society_samples: int = 100, society_max_n: int = 18) -> list[dict]:
    out = []
    rng = substream(seed, "tutte")
    for i in range(tutte_samples):
        n = rng.randint(3, max_n)
        g = random_two_connected(rng, n)
        td = tutte_decomposition(g)
        ok, info = verify_tree_decomposition(g, td)
        ins = {"graph": g.to_dict()}
        ensure_true("decomp.tutte_valid", ok, inputs=ins, witness=info)
        ensure("decomp.tutte_adhesion", info["adhesion"], "<=", 2, inputs=ins)
        out.append({"tutte": i, "n": n, "bags": len(td.bags), "kinds": sorted(td.torso_kinds)})
    rng = substream(seed, "society")
    for i in range(society_samples):
        s = random_society(rng, society_max_n)
        ins = {"graph": s.graph.to_dict(), "omega": s.omega}
        if s.t >= 2:
            p = max_transaction(s).order
            if s.t <= 8:
                ensure("decomp.transaction_exhaustive", max_transaction(s, exhaustive=True).order, "==", p,
                       inputs=ins)
        else:
            p = 0
        ld = build_linear_decomposition(s, bound=p if s.t >= 2 else None)
        ok, adhesion, violations = verify_linear_decomposition(s, ld)
        ensure_true("decomp.linear_valid", ok, inputs=ins, witness={"violations": violations})
        ensure("decomp.linear_adhesion", adhesion, "<=", p, inputs=ins)
        out.append({"society": i, "n": s.graph.n, "t": s.t, "p": p, "adhesion": adhesion})
    return out


def run_intersect(seed: int, samples: int = 50, max_n: int = 12, certified_pairs: int = 10) -> list[dict]:
    """Longest-cycle pairs in random 2-connected graphs, longest-path pairs in connected ones."""
    rng = substream(seed, "intersect")
    out = []
    for i in range(samples):
        kind = CYCLE if i % 2 == 0 else PATH
        n = rng.randint(4, max_n)
        if kind == CYCLE:
            g = random_two_connected(rng, n)
        else:
            g = random_connected_graph(rng, min(n, 10), rng.uniform(0.15, 0.35))
        ell = longest_length(g, kind)
        if ell == (g.n if kind == CYCLE else g.n - 1):
            # spanning members all contain every vertex
            ensure_true("lemma.intersect.pairs", True, inputs={"graph": g.to_dict(), "kind": kind})
            out.append({"i": i, "kind": kind, "n": g.n, "members": "spanning"})
            continue
        fam = enumerate_longest(g, kind)
        clash = pairwise_intersect(fam)
        ensure_true("lemma.intersect.pairs", clash is None, inputs={"graph": g.to_dict(), "kind": kind})
        members = fam.members
        for _ in range(min(certified_pairs, len(members) ** 2)):
            a, b = rng.choice(members), rng.choice(members)
            check_longest_intersection(a, b, g, check_pre=False)
        out.append({"i": i, "kind": kind, "n": g.n, "members": len(members)})
    return out


def _graph_with_spare_cycles(rng, n: int) -> Graph:
    """A path backbone and a disjoint cycle joined by a few random connector edges."""
    clen = rng.randint(3, max(3, n // 3))
    blen = n - clen
    edges = {(i, i + 1) for i in range(blen - 1)}
    edges |= {(blen + i, blen + (i + 1) % clen) for i in range(clen)}
    for _ in range(rng.randint(1, 4)):
        edges.add((rng.randrange(blen), blen + rng.randrange(clen)))
    for _ in range(rng.randint(0, 2)):
        u, v = sorted(rng.sample(range(blen), 2))
        edges.add((u, v))
    return Graph.from_edges(n, {(min(e), max(e)) for e in edges})


def run_separate(seed: int, samples: int = 50, max_n: int = 16, max_attempts: int = 20_000) -> list[dict]:
    rng = substream(seed, "separate")
    out = []
    for _ in range(max_attempts):
        if len(out) >= samples:
            break
        n = rng.randint(6, max_n)
        g = _graph_with_spare_cycles(rng, n)
        try:
            fam = enumerate_longest(g, PATH, max_members=20_000, max_steps=300_000)
        except OracleInfeasible:
            continue
        for path in fam.members[:50]:
            rest = [v for v in range(n) if v not in path.vertex_set()]
            cyc = _some_cycle(g, rest)
            if cyc is not None:
                break
        if cyc is None:
            continue
        cut = separate_cycle_from_longest(cyc, path, g, ell=fam.length)
        out.append({"i": len(out), "n": n, "ell": fam.length, "cut": cut.size,
                    "bound": math.sqrt(2 * fam.length)})
    return out


def _some_cycle(g: Graph, keep) -> CycleSeq | None:
    """A shortest cycle inside G[keep], lifted to g's ids."""
    if len(keep) < 3:
        return None
    h, ids = induced_subgraph(g, keep)
    best = None
    for u, v in h.edges():
        # shortest u-v path avoiding the edge uv closes a cycle
        h2 = Graph.from_edges(h.n, [e for e in h.edges() if e != (u, v)])
        p = shortest_path(h2, u, v)
        if p is not None and (best is None or len(p) < len(best)):
            best = p
    if best is None:
        return None
    return CycleSeq(tuple(ids[x] for x in best))


def run_nicehitting(seed: int, samples: int = 50, max_n: int = 10) -> list[dict]:
    rng = substream(seed, "nicehitting")
    out = []
    for i in range(samples):
        kind = CYCLE if i % 2 else PATH
        n = rng.randint(3, max_n)
        g = random_two_connected(rng, n) if kind == CYCLE else random_connected_graph(rng, n)
        fam = enumerate_longest(g, kind)
        res = nice_hitting_set(g, kind, fam)
        hit = [res] if isinstance(res, int) else res.vertices
        ensure_true("nicehitting.check", is_transversal(hit, fam), inputs={"graph": g.to_dict()})
        out.append({"i": i, "kind": kind, "n": n, "result": "vertex" if isinstance(res, int) else "cycle"})
    return out


LEMMA_RUNNERS = {
    "intersect": lambda seed, samples: run_intersect(seed, samples or 50),
    "separate": lambda seed, samples: run_separate(seed, samples or 50),
    "nicehitting": lambda seed, samples: run_nicehitting(seed, samples or 50),
    "distantpairs": lambda seed, samples: run_distant_pairs(),
    "inequality": lambda seed, samples: run_inequality(seed, samples or 100_000),
    "cubic": lambda seed, samples: run_cubic(seed, samples or 100),
    "matchings": lambda seed, samples: run_matchings(seed, samples or 200),
    "decomp": lambda seed, samples: run_decompositions(seed, samples or 100, society_samples=samples or 100),
}
