"""Run the engines over a corpus of graphs and tally checker verdicts."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterator, Sequence

from .coloring import (
    BrooksError,
    Coloring,
    Verdict,
    brooks_color,
    classify_critical,
    color_via_partition,
    omega_d,
)
from .graph import Graph, build_complete, build_o_n, is_complete, is_odd_cycle, reach
from .oracle import exact_chi, enumerate_graphs, quick_critical
from .partition import (
    EngineError,
    PreconditionError,
    borodin_partition,
    find_partition_t1,
    find_partition_t2,
    local_search_f,
)
from .verify import check_coloring, verify_certificate

ENGINES = ("t1", "t2", "borodin", "color", "brooks", "local_search", "classify")


@dataclass
class CorpusSpec:
    """What to run.  ``grid`` holds explicit ``(r, d)`` pairs; ``None`` picks
    the tight automatic grid (``wt(r)`` equal to its lower bound or one more)."""

    max_n: int = 6
    min_n: int = 1
    connected_only: bool = True
    random_count: int = 0
    random_n: tuple[int, int] = (5, 40)
    random_p: tuple[float, ...] = (0.2, 0.5, 0.8)
    families: tuple[str, ...] = ()
    engines: tuple[str, ...] = ("t1",)
    ks: tuple[int, ...] = (2,)
    grid: tuple[tuple[tuple[int, ...], int], ...] | None = None
    seed: int = 0
    workers: int = 1


@dataclass
class CorpusReport:
    graphs: int = 0
    checks: int = 0
    passed: int = 0
    failed: int = 0
    errors: int = 0
    skipped: int = 0
    by_engine: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.errors == 0

    def as_dict(self) -> dict:
        out = asdict(self)
        out["ok"] = self.ok
        return out


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def _family(name: str) -> Graph:
    kind, size = name[0].upper(), int(name[1:])
    if kind == "K":
        return build_complete(size)
    if kind == "O":
        return build_o_n(size)
    raise ValueError(f"unknown family {name!r}")


def corpus_graphs(spec: CorpusSpec) -> list[tuple[str, Graph]]:
    out = []
    for n in range(spec.min_n, spec.max_n + 1):
        for i, g in enumerate(enumerate_graphs(n, spec.connected_only)):
            out.append((f"enum{n}-{i}", g))
    rng = random.Random(spec.seed)
    lo, hi = spec.random_n
    for i in range(spec.random_count):
        n = rng.randint(lo, hi)
        p = rng.choice(spec.random_p)
        out.append((f"gnp{i}-n{n}-p{p}", random_graph(n, p, rng)))
    for name in spec.families:
        out.append((name, _family(name)))
    return out


def compositions(total: int, k: int, lo: int) -> Iterator[tuple[int, ...]]:
    """Ordered ``k``-tuples of integers ``>= lo`` summing to ``total``."""
    if k == 1:
        if total >= lo:
            yield (total,)
        return
    for first in range(lo, total - lo * (k - 1) + 1):
        for rest in compositions(total - first, k - 1, lo):
            yield (first,) + rest


def auto_grid(g: Graph, engine: str, ks: Sequence[int]) -> list[tuple[tuple[int, ...], int]]:
    delta = g.max_degree()
    lo = 2 if engine in ("t1", "color") else 1
    out = []
    for k in ks:
        for d in range(0, delta + 2):
            base = max(delta + 1 - k, d, lo * k)
            for wt in (base, base + 1):
                for r in compositions(wt, k, lo):
                    if engine == "t2" and sum(1 for x in r if x == 1) > 1:
                        continue
                    out.append((r, d))
    return out


def _t1_pre(g: Graph, r, d) -> bool:
    return len(r) >= 2 and min(r) >= 2 and sum(r) >= max(g.max_degree() + 1 - len(r), d)


def _t2_pre(g: Graph, r, d) -> bool:
    return (len(r) >= 2 and min(r) >= 1 and sum(1 for x in r if x == 1) <= 1
            and sum(r) >= max(g.max_degree() + 1 - len(r), d))


def check_graph(name: str, g: Graph, spec: CorpusSpec) -> dict:
    """All checks for one graph; returns per-engine tallies and failures."""
    tally: dict[str, list[int]] = {}
    failures = []

    def record(engine: str, status: str, detail=None) -> None:
        row = tally.setdefault(engine, [0, 0, 0, 0])  # passed, failed, errors, skipped
        row[("passed", "failed", "error", "skipped").index(status)] += 1
        if status in ("failed", "error"):
            failures.append({"graph": name, "n": g.n, "edges": g.edges(), "engine": engine,
                             "status": status, "detail": detail})

    for engine in spec.engines:
        if engine in ("t1", "t2", "color", "local_search"):
            grid = spec.grid if spec.grid is not None else auto_grid(g, "t2" if engine == "t2" else "t1", spec.ks)
            for r, d in grid:
                r = tuple(r)
                pre = _t2_pre if engine == "t2" else _t1_pre
                if engine == "local_search":
                    if len(r) < 2 or sum(r) < g.max_degree() + 1 - len(r):
                        record(engine, "skipped")
                        continue
                elif not pre(g, r, d):
                    record(engine, "skipped")
                    continue
                try:
                    if engine == "t1":
                        cert = find_partition_t1(g, r, d, seed=spec.seed or None, check=False)
                        ok, rep = verify_certificate(g, cert)
                    elif engine == "t2":
                        cert = find_partition_t2(g, r, d, seed=spec.seed or None, check=False)
                        ok, rep = verify_certificate(g, cert)
                    elif engine == "local_search":
                        p = local_search_f(g, r)
                        ok = all(
                            (g.adj[v] & sum(1 << u for u in part)).bit_count() <= r[i]
                            for i, part in enumerate(p.parts) for v in part
                        )
                        rep = []
                    else:
                        if min(r) < omega_d(g, d) + 1:
                            record(engine, "skipped")
                            continue
                        out = color_via_partition(g, r, d, seed=spec.seed or None)
                        if isinstance(out, Coloring):
                            ok, rep = verify_certificate(g, out, max_colors=sum(r))
                        else:
                            ok, rep = verify_certificate(g, out, omega_d=omega_d(g, d))
                except PreconditionError:
                    record(engine, "skipped")
                    continue
                except EngineError as exc:
                    record(engine, "error", {"r": list(r), "d": d, "message": str(exc)})
                    continue
                if ok:
                    record(engine, "passed")
                else:
                    record(engine, "failed", {"r": list(r), "d": d,
                                              "clauses": [c.name for c in rep if not c.passed]})
        elif engine == "borodin":
            delta = g.max_degree()
            if delta < 3:
                record(engine, "skipped")
                continue
            for r1 in range(1, delta + 1):
                for r2 in range(1, delta + 1):
                    if r1 + r2 < delta:
                        continue
                    try:
                        p = borodin_partition(g, r1, r2, seed=spec.seed or None)
                    except PreconditionError:
                        record(engine, "skipped")
                        continue
                    except EngineError as exc:
                        record(engine, "error", {"r": [r1, r2], "message": str(exc)})
                        continue
                    ok = _borodin_ok(g, p, (r1, r2))
                    record(engine, "passed" if ok else "failed", None if ok else {"r": [r1, r2]})
        elif engine == "brooks":
            if not g.n or reach(g.adj, g.all_mask, 0) != g.all_mask or is_complete(g) or is_odd_cycle(g):
                record(engine, "skipped")
                continue
            delta = g.max_degree()
            try:
                col = brooks_color(g, max(delta, 1))
            except BrooksError as exc:
                record(engine, "error", {"message": str(exc)})
                continue
            ok, rep = check_coloring(g, [col.as_dict()[v] for v in range(g.n)], max(delta, 1))
            record(engine, "passed" if ok else "failed")
        elif engine == "classify":
            if g.n > 12:
                record(engine, "skipped")
                continue
            chi = exact_chi(g)
            if not quick_critical(g, chi.chi):
                record(engine, "skipped")
                continue
            for p in range(0, g.max_degree() + 1):
                v = classify_critical(g, p, assume_critical=True, chi=chi)
                if v.verdict is Verdict.THEOREM_VIOLATION:
                    record(engine, "failed", {"p": p, "reason": v.reason})
                else:
                    record(engine, "passed")
        else:
            raise ValueError(f"unknown engine {engine!r}")
    return {"tally": tally, "failures": failures}


def _borodin_ok(g: Graph, p, r) -> bool:
    from .graph import degeneracy

    for i, part in enumerate(p.parts):
        sub = g.induced(part)
        if sub.max_degree() > r[i] or (part and degeneracy(sub) > r[i] - 1):
            return False
    return True


def _worker(args):
    name, g, spec = args
    return check_graph(name, g, spec)


def corpus_verify(spec: CorpusSpec, graphs: list[tuple[str, Graph]] | None = None) -> CorpusReport:
    """Run every engine in ``spec`` over the corpus and merge the results in
    corpus order, whatever order workers finish in."""
    start = time.perf_counter()
    graphs = corpus_graphs(spec) if graphs is None else graphs
    jobs = [(name, g, spec) for name, g in graphs]
    if spec.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(spec.workers) as pool:
            results = list(pool.map(_worker, jobs, chunksize=16))
    else:
        results = [_worker(job) for job in jobs]
    report = CorpusReport(graphs=len(graphs))
    for res in results:
        for engine, (ok, bad, err, skip) in res["tally"].items():
            row = report.by_engine.setdefault(engine, {"passed": 0, "failed": 0, "errors": 0, "skipped": 0})
            row["passed"] += ok
            row["failed"] += bad
            row["errors"] += err
            row["skipped"] += skip
            report.passed += ok
            report.failed += bad
            report.errors += err
            report.skipped += skip
            report.checks += ok + bad + err
        report.failures.extend(res["failures"])
    report.seconds = round(time.perf_counter() - start, 3)
    return report


def parse_grid(text: str) -> tuple[tuple[tuple[int, ...], int], ...] | None:
    """``"2,2:2,3,4; 2,2,2:4"`` -> r=(2,2) with d in {2,3,4}, r=(2,2,2) with d=4.

    ``"auto"`` (or empty) selects the automatic grid.
    """
    text = text.strip()
    if not text or text == "auto":
        return None
    out = []
    for entry in text.split(";"):
        entry = entry.strip()
        if not entry:
            continue
        r_text, _, d_text = entry.partition(":")
        r = tuple(int(x) for x in r_text.split(","))
        ds = [int(x) for x in d_text.split(",")] if d_text else [sum(r)]
        out.extend((r, d) for d in ds)
    return tuple(out)


__all__ = [
    "CorpusSpec", "CorpusReport", "corpus_verify", "corpus_graphs", "auto_grid",
    "compositions", "parse_grid", "random_graph", "check_graph", "ENGINES",
]
