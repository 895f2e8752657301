"""Per-graph reports, batch sweeps, identity checks and family tables.

Everything here returns plain data (dataclasses or dicts) so that the CLI
only has to parse arguments and print.
"""

from __future__ import annotations

import json
import os
import random
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Iterator

import numpy as np

from . import families
from .catalog import are_isomorphic, cubic_catalog, graph_catalog
from .errors import ParseError, ResourceLimitError, SearchTimeout
from .graph import (
    SimpleGraph,
    adjacency_matrix,
    connected_components,
    is_bipartite,
    is_connected,
    line_graph,
    parse_edge_list,
)
from .graph6 import from_graph6, read_graph6_lines, to_graph6
from .invariants import (
    bipartite_collapse_check,
    triangle_census_combinatorial,
    triangle_census_trace,
)
from .optimization import (
    LIMITS,
    complete_multipartite_closed_form,
    cubic_exactness_check,
    defect_amplification_upper,
    defect_bound_chain,
    frustration_index_exact,
    imbalance_identity_check,
    max_imbalance_energy,
    maxcut_exact,
    oct_exact,
    vertex_frustration_set,
)
from .signed import audit_induced_cycle_signs, build_alg, lifted_cycle_parity_check
from .spectral import (
    cubic_oct_spectral_bound,
    edge_space_identity_check,
    matrix_tree_values,
    odd_cycle_spectral_closed_form,
    regular_bound,
    signed_inertia,
    spectral_lower_bound,
    symmetric_eigenvalues,
    transported_modes_check,
)

STAGES = ("census", "inertia", "frustration", "energy", "maxcut", "oct", "vf")
DEFAULT_CUTOFF_MS = 10_000
BOUND_TOL = 1e-9


def fmt_float(x: float | None) -> float | None:
    """Round to 12 significant digits so JSON output is stable."""
    return None if x is None else float(f"{x:.12g}")


def read_graphs(text: str) -> list[SimpleGraph]:
    """Parse graph6 (one graph per line) or a single edge list, auto-detected."""
    lines = [ln.strip() for ln in text.splitlines()]
    body = [ln for ln in lines if ln and not ln.startswith("#")]
    if body and all(" " not in ln and "=" not in ln and not ln.isdigit() for ln in body):
        out = []
        for lineno, item in read_graph6_lines(text.splitlines()):
            if isinstance(item, ParseError):
                raise ParseError(f"line {lineno}: {item.detail}", item.offset)
            out.append(item)
        return out
    return [parse_edge_list(text)]


@dataclass
class InvariantReport:
    graph6: str
    n: int
    m: int
    values: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    timeouts: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    @property
    def timeout_flag(self) -> bool:
        return bool(self.timeouts)

    def to_dict(self, *, with_timings: bool = False) -> dict:
        out = {"graph6": self.graph6, "n": self.n, "m": self.m}
        out.update(self.values)
        out["bounds"] = {k: fmt_float(v) if isinstance(v, float) else v
                         for k, v in self.bounds.items()}
        out["witnesses"] = self.witnesses
        out["timeouts"] = list(self.timeouts)
        out["timeout_flag"] = self.timeout_flag
        if with_timings:
            out["timings"] = {k: round(v, 3) for k, v in self.timings.items()}
        return out

    def bound_violations(self) -> list[str]:
        """Inequalities between bounds and exact values that fail in this report."""
        v, b, bad = self.values, self.bounds, []
        ell, dfc = v.get("l_alg"), v.get("defect")

        def need(ok: bool, what: str) -> None:
            if not ok:
                bad.append(what)

        if ell is not None:
            if dfc is not None:
                need(dfc <= ell, "def <= l")
            if b.get("lower_spectral") is not None:
                need(b["lower_spectral"] <= ell + BOUND_TOL, "spectral <= l")
            if b.get("upper_amplified") is not None:
                need(ell <= b["upper_amplified"], "l <= amplified")
            if v.get("m_energy") is not None:
                need(4 * ell + v["m_energy"] == sum(d * d for d in v["degrees"]), "4l + M == sum d^2")
        if b.get("upper_amplified") is not None and b.get("upper_delta") is not None:
            need(b["upper_amplified"] <= b["upper_delta"], "amplified <= (Delta-1) def")
        if v.get("vf") is not None and dfc is not None:
            need(v["vf"] == dfc, "vf == def")
        if b.get("cubic_oct_spectral") is not None and v.get("oct") is not None:
            need(b["cubic_oct_spectral"] <= v["oct"] + BOUND_TOL, "cubic spectral <= oct")
        return bad


def _deadline(cutoff_ms: float | None) -> float | None:
    return None if cutoff_ms is None else time.monotonic() + cutoff_ms / 1000.0


def analyze(g: SimpleGraph, *, skip: Iterable[str] = (), cutoff_ms: float | None = None,
            catch_limits: bool = False) -> InvariantReport:
    """Run every stage not in ``skip``.  A stage past its cutoff is recorded
    in ``timeouts``; resource limits propagate unless ``catch_limits``."""
    skip = set(skip)
    rep = InvariantReport(to_graph6(g), g.n, g.m)
    rep.values["degrees"] = list(g.degrees)

    def run(stage: str, fn: Callable[[float | None], None]) -> None:
        if stage in skip:
            return
        start = time.perf_counter()
        try:
            fn(_deadline(cutoff_ms))
        except SearchTimeout:
            rep.timeouts.append(stage)
        except ResourceLimitError:
            if not catch_limits:
                raise
            rep.timeouts.append(stage)
        rep.timings[stage] = (time.perf_counter() - start) * 1000.0

    def census(_):
        c = triangle_census_combinatorial(g)
        if c != triangle_census_trace(build_alg(g)):
            raise AssertionError("trace census disagrees with the combinatorial count")
        rep.values["census"] = c.to_dict()

    def inertia(_):
        i = signed_inertia(build_alg(g))
        rep.values["inertia"] = list(i.as_tuple())
        rep.values["inertia_uncertain"] = i.uncertain

    def frustration(dl):
        r = frustration_index_exact(g, deadline=dl)
        rep.values["l_alg"] = r.best_value
        rep.values["nodes_explored"] = r.nodes_explored
        rep.witnesses["orientation"] = list(r.witness)

    def energy(dl):
        rep.values["m_energy"] = max_imbalance_energy(g, deadline=dl)

    def cut(dl):
        c = maxcut_exact(g, deadline=dl)
        rep.values["maxcut"] = c.maxcut_value
        rep.values["defect"] = c.defect
        rep.witnesses["partition"] = sorted(c.partition)
        rep.witnesses["defect_edges"] = list(c.defect_edges)
        rep.bounds["lower_def"] = c.defect
        rep.bounds["upper_amplified"] = defect_amplification_upper(g, c)
        rep.bounds["upper_delta"] = max(g.max_degree - 1, 0) * c.defect

    def oct_(dl):
        o = oct_exact(g, deadline=dl)
        rep.values["oct"] = o.oct_value
        rep.witnesses["oct_transversal"] = sorted(o.transversal)

    def vf(dl):
        S = vertex_frustration_set(g, deadline=dl)
        rep.values["vf"] = len(S)
        rep.witnesses["vf_edges"] = sorted(S)

    for name, fn in (("census", census), ("inertia", inertia), ("frustration", frustration),
                     ("energy", energy), ("maxcut", cut), ("oct", oct_), ("vf", vf)):
        run(name, fn)

    sb = spectral_lower_bound(g)
    rep.bounds["lower_spectral"] = sb
    if "lower_def" in rep.bounds:
        d = rep.bounds["lower_def"]
        rep.bounds["lower_combined"] = max(float(d), sb)
        rep.bounds["active_lower"] = ("tie" if abs(d - sb) <= BOUND_TOL
                                      else "defect" if d > sb else "spectral")
    if g.n and set(g.degrees) == {3}:
        rep.bounds["cubic_oct_spectral"] = cubic_oct_spectral_bound(g)
    return rep


def format_table(rep: InvariantReport) -> str:
    d = rep.to_dict()
    rows = ["| field | value |", "|---|---|"]
    for k, v in d.items():
        if isinstance(v, dict):
            for k2, v2 in v.items():
                rows.append(f"| {k}.{k2} | {json.dumps(v2)} |")
        else:
            rows.append(f"| {k} | {json.dumps(v)} |")
    return "\n".join(rows)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=False, separators=(",", ":"))


# ---------------------------------------------------------------- sweep


def worker_count() -> int:
    raw = os.environ.get("ALG_THREADS", "").strip()
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


def _sweep_one(job: tuple[int, str, float | None]) -> dict:
    lineno, g6, cutoff_ms = job
    g = from_graph6(g6)
    rep = analyze(g, skip=("energy",), cutoff_ms=cutoff_ms, catch_limits=True)
    rec = rep.to_dict()
    rec["line"] = lineno
    rec["line_graph_spectrum"] = [fmt_float(x) for x in
                                  symmetric_eigenvalues(adjacency_matrix(line_graph(g))).eigenvalues]
    return rec


def _power_traces(g: SimpleGraph) -> tuple[int, ...]:
    A = adjacency_matrix(line_graph(g)).astype(object)
    out, P = [], np.eye(A.shape[0], dtype=object) if A.size else None
    for _ in range(A.shape[0]):
        P = P @ A
        out.append(int(np.trace(P)))
    return tuple(out)


@dataclass
class SweepSummary:
    instances: int = 0
    malformed: int = 0
    timeouts: int = 0
    completed: int = 0
    pearson_r: float | None = None
    pairs: list = field(default_factory=list)

    @property
    def delta3_separated(self) -> int:
        return sum(p["delta3_separated"] for p in self.pairs)

    @property
    def inertia_separated(self) -> int:
        return sum(p["inertia_separated"] for p in self.pairs)

    def to_dict(self) -> dict:
        return {
            "instances": self.instances,
            "malformed": self.malformed,
            "timeouts": self.timeouts,
            "completed": self.completed,
            "pearson_r": fmt_float(self.pearson_r),
            "cospectral_pairs": len(self.pairs),
            "delta3_separated": self.delta3_separated,
            "inertia_separated": self.inertia_separated,
            "pairs": self.pairs,
        }


def cospectral_pairs(records: list[dict]) -> list[dict]:
    """Non-isomorphic pairs with equal ``n``, ``m``, degree multiset and
    line-graph adjacency spectrum.  Float spectra only propose candidates;
    equality of ``tr(A^k)`` for ``k = 1..m`` (exact integers) decides."""
    groups: dict[tuple, list[dict]] = {}
    for r in records:
        if "census" not in r or "inertia" not in r:
            continue
        key = (r["n"], r["m"], tuple(sorted(r["degrees"])),
               tuple(round(x, 6) + 0.0 for x in r["line_graph_spectrum"]))
        groups.setdefault(key, []).append(r)
    pairs = []
    for members in groups.values():
        for a, b in combinations(members, 2):
            ga, gb = from_graph6(a["graph6"]), from_graph6(b["graph6"])
            if _power_traces(ga) != _power_traces(gb) or are_isomorphic(ga, gb):
                continue
            pairs.append({
                "graphs": [a["graph6"], b["graph6"]],
                "delta3": [a["census"]["delta3"], b["census"]["delta3"]],
                "inertia": [a["inertia"], b["inertia"]],
                "delta3_separated": a["census"]["delta3"] != b["census"]["delta3"],
                "inertia_separated": a["inertia"] != b["inertia"],
            })
    return pairs


def pair_records(graphs: Iterable[SimpleGraph]) -> list[dict]:
    """The fields :func:`cospectral_pairs` reads, without the exact searches."""
    out = []
    for g in graphs:
        out.append({
            "graph6": to_graph6(g), "n": g.n, "m": g.m, "degrees": list(g.degrees),
            "census": triangle_census_combinatorial(g).to_dict(),
            "inertia": list(signed_inertia(build_alg(g)).as_tuple()),
            "line_graph_spectrum": [fmt_float(x) for x in symmetric_eigenvalues(
                adjacency_matrix(line_graph(g))).eigenvalues],
        })
    return out


def pearson(xs: list[float], ys: list[float]) -> float | None:
    if len(xs) < 2:
        return None
    try:
        return statistics.correlation(xs, ys)
    except statistics.StatisticsError:
        return None


def sweep(lines: Iterable[str], cutoff_ms: float | None = DEFAULT_CUTOFF_MS,
          workers: int | None = None) -> tuple[SweepSummary, list[dict]]:
    jobs, summary = [], SweepSummary()
    for lineno, item in read_graph6_lines(lines):
        if isinstance(item, ParseError):
            summary.malformed += 1
            continue
        jobs.append((lineno, to_graph6(item), cutoff_ms))
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_sweep_one, jobs, chunksize=8))
    else:
        records = [_sweep_one(j) for j in jobs]
    summary.instances = len(records)
    summary.timeouts = sum(1 for r in records if r["timeout_flag"])
    done = [r for r in records if "l_alg" in r and "defect" in r]
    summary.completed = len(done)
    summary.pearson_r = pearson([r["l_alg"] for r in done], [r["defect"] for r in done])
    summary.pairs = cospectral_pairs(records)
    return summary, records


# ---------------------------------------------------------------- samples


def nonbipartite_sample(n_max: int = 7, m_max: int = 12) -> list[SimpleGraph]:
    """Connected non-bipartite graphs with ``n <= n_max`` and ``m <= m_max``."""
    return [g for g in graph_catalog(n_max, connected=True, n_min=2)
            if g.m <= m_max and not is_bipartite(g)]


EXAMPLE_PAIRS = {
    "G1": [(0, 1), (0, 2), (0, 4), (0, 5), (1, 2), (1, 5), (2, 3), (2, 5), (2, 6), (3, 4)],
    "G2": [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (2, 3), (2, 5), (3, 4), (4, 6)],
    "H1": [(0, 1), (0, 2), (0, 5), (1, 4), (2, 3), (3, 5), (3, 6)],
    "H2": [(0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 5), (2, 6)],
}
DEFECT_WITNESS = {
    "G": [(0, 1), (0, 2), (1, 2), (1, 4), (2, 3), (3, 4), (3, 5), (3, 6), (5, 6)],
    "H": [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (2, 3), (5, 6)],
}


def named_graph(name: str) -> SimpleGraph:
    from .graph import from_edge_list

    table = {**EXAMPLE_PAIRS, **DEFECT_WITNESS}
    return from_edge_list(table[name], n=7)


# ---------------------------------------------------------------- verify


def multipartite_parts(g: SimpleGraph) -> list[int] | None:
    """Part sizes if ``g`` is complete multipartite (complement is a union of cliques)."""
    comp = SimpleGraph(g.n, tuple((u, v) for u in range(g.n) for v in range(u + 1, g.n)
                                  if not g.has_edge(u, v)))
    parts = []
    for cc in connected_components(comp):
        k = len(cc)
        if sum(1 for u, v in comp.edges if u in cc) != k * (k - 1) // 2:
            return None
        parts.append(k)
    return parts


def _check_multipartite(g: SimpleGraph) -> bool:
    parts = multipartite_parts(g)
    if parts is None or len(parts) < 3:
        return False
    ell = frustration_index_exact(g, max_edges=max(g.m, LIMITS.max_edges_frustration)).best_value
    return (ell == complete_multipartite_closed_form(parts)
            and abs(spectral_lower_bound(g) / ell - 0.75) <= 1e-9)


def _check_matrix_tree(g: SimpleGraph) -> bool:
    approx, exact = matrix_tree_values(g)
    return abs(approx - exact) <= 1e-6 * max(exact, 1)


def _check_sandwich(g: SimpleGraph) -> bool:
    a, b, c, d = defect_bound_chain(g)
    return a <= b <= c <= d


def _check_spectral_sound(g: SimpleGraph) -> bool:
    ok = spectral_lower_bound(g) <= frustration_index_exact(g).best_value + BOUND_TOL
    if g.n and set(g.degrees) == {3}:
        ok = ok and cubic_oct_spectral_bound(g) <= oct_exact(g).oct_value + BOUND_TOL
    if g.n and g.is_regular():
        ok = ok and abs(regular_bound(g) - spectral_lower_bound(g)) <= 1e-9 * max(1.0, g.m)
    return ok


def _connected(g: SimpleGraph) -> bool:
    return g.n > 0 and is_connected(g)


@dataclass(frozen=True)
class Identity:
    check: Callable[[SimpleGraph], bool]
    applies: Callable[[SimpleGraph], bool]
    source: str  # "catalog", "cubic", "multipartite" or "random"
    default_n_max: int
    about: str


IDENTITIES: dict[str, Identity] = {
    "parity": Identity(lambda g: lifted_cycle_parity_check(g, max_len=7), _connected,
                       "catalog", 6, "lifted k-cycles have sign (-1)^k"),
    "induced-audit": Identity(lambda g: not audit_induced_cycle_signs(build_alg(g), 7), _connected,
                              "catalog", 6, "induced cycles of length >= 4 in A(G) have sign (-1)^k"),
    "dual-census": Identity(lambda g: triangle_census_trace(build_alg(g))
                            == triangle_census_combinatorial(g), lambda g: True,
                            "catalog", 7, "trace and combinatorial triangle counts agree"),
    "imbalance": Identity(imbalance_identity_check, _connected, "random", 6,
                          "4 l + M == sum of squared degrees"),
    "vf-def": Identity(lambda g: len(vertex_frustration_set(g)) == maxcut_exact(g).defect,
                       _connected, "catalog", 6, "vertex frustration equals Max-Cut defect"),
    "sandwich": Identity(_check_sandwich, _connected, "catalog", 6,
                         "def <= l <= amplified bound <= (Delta-1) def"),
    "cubic-oct": Identity(cubic_exactness_check, lambda g: g.n > 0 and set(g.degrees) == {3},
                          "cubic", 10, "l == 2 oct on cubic graphs"),
    "multipartite": Identity(_check_multipartite, lambda g: True, "multipartite", 0,
                             "l == e3(parts) and spectral bound == 3/4 l"),
    "matrix-tree": Identity(_check_matrix_tree, _connected, "catalog", 6,
                            "spanning trees from nonzero eigenvalues of S + 2I"),
    "edge-space": Identity(lambda g: edge_space_identity_check(g) and transported_modes_check(g),
                           _connected, "catalog", 6, "S + 2I = D^T D spectra and transported modes"),
    "bipartite-collapse": Identity(bipartite_collapse_check, is_bipartite, "catalog", 6,
                                   "A(G) of a bipartite G switches to the positive line graph"),
    "spectral-sound": Identity(_check_spectral_sound, _connected, "catalog", 6,
                               "spectral lower bounds never exceed exact values"),
}

MULTIPARTITE_PARTS = ([1, 1, 1], [2, 2, 2], [1, 2, 3], [3, 3, 3], [2, 3, 4])


def random_sample(count: int, m_max: int, seed: int) -> list[SimpleGraph]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(3, 8)
        g = families.random_connected_graph(n, rng.uniform(0.2, 0.7), rng)
        if g.m <= m_max:
            out.append(g)
    return out


def identity_instances(name: str, n_max: int | None = None, samples: int = 50,
                       seed: int = 0) -> list[SimpleGraph]:
    ident = IDENTITIES[name]
    k = ident.default_n_max if n_max is None else n_max
    if ident.source == "cubic":
        pool: Iterable[SimpleGraph] = (g for g in cubic_catalog() if g.n <= k)
    elif ident.source == "multipartite":
        pool = (families.complete_multipartite(p) for p in MULTIPARTITE_PARTS)
    elif ident.source == "random" and n_max is None:
        pool = random_sample(samples, 14, seed)
    else:
        pool = graph_catalog(k)
    return [g for g in pool if ident.applies(g)]


def verify(name: str, graphs: Iterable[SimpleGraph]) -> Iterator[tuple[SimpleGraph, bool]]:
    ident = IDENTITIES[name]
    for g in graphs:
        if ident.applies(g):
            yield g, bool(ident.check(g))


# ---------------------------------------------------------------- families


def odd_cycle_rows(ks: Iterable[int]) -> list[dict]:
    rows = []
    for k in ks:
        g = families.cycle(2 * k + 1)
        ell = frustration_index_exact(g).best_value
        sb = spectral_lower_bound(g)
        rows.append({"k": k, "n": g.n, "l_closed": 1, "l_search": ell,
                     "def": maxcut_exact(g).defect, "spectral": fmt_float(sb),
                     "spectral_closed": fmt_float(odd_cycle_spectral_closed_form(k)),
                     "ratio": fmt_float(sb / ell)})
    return rows


def multipartite_rows(parts_list: Iterable[list[int]]) -> list[dict]:
    rows = []
    for parts in parts_list:
        g = families.complete_multipartite(parts)
        closed = complete_multipartite_closed_form(parts)
        ell = (frustration_index_exact(g).best_value
               if g.m <= LIMITS.max_edges_frustration else None)
        sb = spectral_lower_bound(g)
        cut = maxcut_exact(g) if g.n <= LIMITS.max_vertices_maxcut else None
        rows.append({"parts": "-".join(map(str, parts)), "m": g.m, "l_closed": closed,
                     "l_search": ell, "def": None if cut is None else cut.defect,
                     "spectral": fmt_float(sb),
                     "ratio": fmt_float(sb / closed) if closed else None})
    return rows


def cubic_rows(n_range: range) -> list[dict]:
    rows = []
    for g in cubic_catalog():
        if g.n not in n_range:
            continue
        ell = frustration_index_exact(g).best_value
        oc = oct_exact(g).oct_value
        rows.append({"graph6": to_graph6(g), "n": g.n, "l": ell, "oct": oc,
                     "l_eq_2oct": ell == 2 * oc, "def": maxcut_exact(g).defect,
                     "oct_spectral": fmt_float(cubic_oct_spectral_bound(g))})
    return rows


def render_rows(rows: list[dict], fmt: str = "markdown") -> str:
    if not rows:
        return ""
    cols = list(rows[0])

    def cell(v) -> str:
        return "" if v is None else str(v)

    if fmt == "csv":
        import csv
        import io

        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([cell(r[c]) for c in cols])
        return buf.getvalue().rstrip("\n")
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    lines += ["| " + " | ".join(cell(r[c]) for c in cols) + " |" for r in rows]
    return "\n".join(lines)


__all__ = [
    "STAGES", "InvariantReport", "analyze", "format_table", "read_graphs", "sweep",
    "SweepSummary", "cospectral_pairs", "pair_records", "nonbipartite_sample", "EXAMPLE_PAIRS",
    "DEFECT_WITNESS", "named_graph", "IDENTITIES", "identity_instances", "verify",
    "odd_cycle_rows", "multipartite_rows", "cubic_rows", "render_rows",
]
