"""Desk-scale verification sweeps for the radius condition and its lemmas.

The main-theorem scan enumerates every labeled graph whose complement has
at most n-2 edges (the only region where a counterexample could live,
since the radius floor forces near-complete graphs), filters by a
vectorized certified upper bound on the spectral radius, escalates
borderline graphs to exact characteristic-polynomial comparison, and
demands a parity factor from everything at or above the threshold that is
not the extremal graph itself.

Determinism contract: work is cut into fixed-size chunks addressed by
combination rank (or candidate index in sample mode), each chunk's output
is a pure function of its index, and partial results merge in chunk order.
Reports are therefore byte-identical for any worker count.  Random
candidates draw from per-index substreams of the scan seed, never from a
shared sequential stream.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from math import comb
from multiprocessing import Pool

import numpy as np

from . import exact, spectral
from .factors import CapacityError, FactorSpec, decide_matching, eta_parity, q_count, validate_factor
from .formats import write_graph6
from .graphs import (
    Graph,
    GraphError,
    SplitMix64,
    complete,
    derive_seed,
    h_extremal,
    l_graph,
    clique_join,
    mask_of,
    pair_slots,
    recognize_h_extremal,
)

EXHAUSTIVE_CHUNK = 4096
SAMPLE_CHUNK = 1024
ENUMERATION_LIMIT = 50_000_000
EXHAUSTIVE_ORDER_LIMIT = 18  # orders at or above this fall back to sampling
PREFILTER_MARGIN = 1e-9


# ---------------------------------------------------------------------------
# reports


@dataclass
class ScanReport:
    kind: str
    params: dict
    counts: dict
    violations: list[str]
    decisions: dict
    notes: dict
    runtime_ms: int = 0

    def to_json(self, include_runtime: bool = True) -> dict:
        out = {
            "kind": self.kind,
            "params": self.params,
            "counts": self.counts,
            "violations": self.violations,
            "decisions": self.decisions,
            "notes": self.notes,
        }
        if include_runtime:
            out["runtime_ms"] = self.runtime_ms
        return out

    def json_str(self, include_runtime: bool = True) -> str:
        return json.dumps(self.to_json(include_runtime), sort_keys=True, separators=(",", ":"))


@dataclass
class LemmaPoint:
    params: dict
    passed: bool
    slack: float


@dataclass
class LemmaReport:
    lemma: str
    points: list[LemmaPoint] = field(default_factory=list)
    decisions: dict = field(default_factory=lambda: {"float": 0, "exact": 0})
    runtime_ms: int = 0

    @property
    def failures(self) -> list[LemmaPoint]:
        return [p for p in self.points if not p.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def max_slack(self) -> float:
        return max((p.slack for p in self.points), default=0.0)

    @property
    def min_slack(self) -> float:
        return min((p.slack for p in self.points), default=0.0)

    def to_json(self, include_runtime: bool = True) -> dict:
        out = {
            "kind": "lemma",
            "lemma": self.lemma,
            "points": [{"params": p.params, "passed": p.passed, "slack": p.slack} for p in self.points],
            "failures": [p.params for p in self.failures],
            "max_slack": self.max_slack,
            "min_slack": self.min_slack,
            "decisions": self.decisions,
        }
        if include_runtime:
            out["runtime_ms"] = self.runtime_ms
        return out

    def json_str(self, include_runtime: bool = True) -> str:
        return json.dumps(self.to_json(include_runtime), sort_keys=True, separators=(",", ":"))

    def to_csv(self) -> str:
        keys = sorted({k for p in self.points for k in p.params})
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["lemma", *keys, "passed", "slack"])
        for p in self.points:
            row = [self.lemma]
            for k in keys:
                v = p.params.get(k, "")
                row.append(" ".join(str(x) for x in v) if isinstance(v, list) else str(v))
            row += ["1" if p.passed else "0", repr(p.slack)]
            writer.writerow(row)
        return buf.getvalue()


# ---------------------------------------------------------------------------
# labeled co-sparse enumeration by combination rank


def cosparse_total(n: int, k_max: int) -> int:
    slots = n * (n - 1) // 2
    return sum(comb(slots, j) for j in range(k_max + 1))


def _unrank_combination(rank: int, size: int, slots: int) -> list[int]:
    out = []
    x = 0
    r = rank
    for pos in range(size):
        while True:
            block = comb(slots - x - 1, size - pos - 1)
            if r < block:
                break
            r -= block
            x += 1
        out.append(x)
        x += 1
    return out

def _next_combination(c: list[int], slots: int) -> bool:
    """Advance to the lexicographic successor in place; False at the end."""
    size = len(c)
    i = size - 1
    while i >= 0 and c[i] == slots - size + i:
        i -= 1
    if i < 0:
        return False
    c[i] += 1
    for k in range(i + 1, size):
        c[k] = c[k - 1] + 1
    return True


def _complement_graph(n: int, slots: list[tuple[int, int]], removed) -> Graph:
    full = (1 << n) - 1
    rows = [full ^ (1 << v) for v in range(n)]
    for idx in removed:
        u, v = slots[idx]
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
    return Graph(n, tuple(rows))


def enumerate_cosparse(n: int, k_max: int, limit: int = ENUMERATION_LIMIT):
    """Yield the complement of every labeled edge set of size 0..k_max.

    Order: complement size ascending, then lexicographic combination order
    over pair slots.  Guarded by ``limit`` against runaway totals.
    """
    slots = pair_slots(n)
    if k_max > len(slots):
        raise GraphError(f"k_max {k_max} exceeds {len(slots)} slots")
    total = cosparse_total(n, k_max)
    if total > limit:
        raise CapacityError(f"enumeration of {total} graphs exceeds limit {limit}")
    for j in range(k_max + 1):
        if j == 0:
            yield complete(n)
            continue
        cur = list(range(j))
        while True:
            yield _complement_graph(n, slots, cur)
            if not _next_combination(cur, len(slots)):
                break


# ---------------------------------------------------------------------------
# main-theorem scan


def _seed_factor_cache(n: int, a: int, b: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Known factors reusable via subgraph containment, in a fixed order.

    A factor of a subgraph is a factor of every supergraph on the same
    vertices, so factors of the extremal graph plus one edge (and of the
    complete graph) settle most above-threshold candidates with a cheap
    containment test instead of a fresh matching run.
    """
    spec = FactorSpec(a, b)
    cache: list[tuple[tuple[int, int], ...]] = []
    res = decide_matching(complete(n), spec)
    if res.exists:
        cache.append(tuple(sorted(res.factor)))
    h = h_extremal(n, a)
    slots = pair_slots(n)
    for idx, (u, v) in enumerate(slots):
        if h.adj[u] >> v & 1:
            continue
        rows = list(h.adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        res = decide_matching(Graph(n, tuple(rows)), spec)
        if res.exists:
            entry = tuple(sorted(res.factor))
            if entry not in cache:
                cache.append(entry)
    return tuple(cache)


def _cached_factor(g: Graph, cache, spec: FactorSpec):
    for entry in cache:
        if all(g.adj[u] >> v & 1 for u, v in entry):
            factor = frozenset(entry)
            if validate_factor(g, factor, spec):
                return factor
    return None


def _candidate_pipeline(rows: tuple[int, ...], task: dict, partial: dict) -> None:
    """Full certified pipeline for one graph that survived the pre-filter."""
    n = task["n"]
    a = task["a"]
    spec = FactorSpec(a, task["b"])
    g = Graph(n, rows)
    enc = spectral.spectral_radius(g, task["tol"])
    thr_lo = task["thr_lo"]
    thr_hi = task["thr_hi"]
    if enc.hi < thr_lo:
        partial["below_threshold"] += 1
        return
    if enc.lo > thr_hi:
        method = "float"
        at_or_above = True
    else:
        sign = exact.compare_largest_roots(
            exact.char_poly_exact(g), exact.IntPolynomial(task["h_poly"])
        )
        method = "exact"
        at_or_above = sign >= 0
    if not at_or_above:
        partial["below_threshold"] += 1
        return
    partial["spectral_candidates"] += 1
    partial["decisions"][method] += 1
    if recognize_h_extremal(g, a):
        partial["recognized_extremal"] += 1
        return
    if _cached_factor(g, task["factor_cache"], spec) is not None:
        partial["factor_yes"] += 1
        return
    res = decide_matching(g, spec)
    if res.exists:
        partial["factor_yes"] += 1
    else:
        partial["violations"].append(write_graph6(g))


def _new_partial() -> dict:
    return {
        "scanned": 0,
        "below_threshold": 0,
        "spectral_candidates": 0,
        "recognized_extremal": 0,
        "factor_yes": 0,
        "violations": [],
        "decisions": {"float": 0, "exact": 0},
    }


def _scan_chunk(task: dict) -> dict:
    n = task["n"]
    slots = pair_slots(n)
    removed_sets: list[tuple[int, ...]] = []
    if task["mode"] == "exhaustive":
        start, end = task["start"], task["end"]
        offsets = task["offsets"]
        for j in range(len(offsets) - 1):
            lo = max(start, offsets[j])
            hi = min(end, offsets[j + 1])
            if lo >= hi:
                continue
            size = j
            if size == 0:
                removed_sets.append(())
                continue
            cur = _unrank_combination(lo - offsets[j], size, len(slots))
            for _ in range(hi - lo):
                removed_sets.append(tuple(cur))
                if not _next_combination(cur, len(slots)):
                    break
    else:
        for index in range(task["start"], task["end"]):
            removed_sets.append(_sample_candidate(task, index))
    partial = _new_partial()
    partial["scanned"] = len(removed_sets)
    if not removed_sets:
        return partial
    batch = np.ones((len(removed_sets), n, n)) - np.eye(n)
    g_idx: list[int] = []
    i_idx: list[int] = []
    j_idx: list[int] = []
    for gi, removed in enumerate(removed_sets):
        for idx in removed:
            u, v = slots[idx]
            g_idx.append(gi)
            i_idx.append(u)
            j_idx.append(v)
    if g_idx:
        batch[g_idx, i_idx, j_idx] = 0.0
        batch[g_idx, j_idx, i_idx] = 0.0
    hi_bounds = spectral.batch_radius_upper_bounds(batch, iterations=task["prefilter_iters"])
    cutoff = task["thr_lo"] - PREFILTER_MARGIN
    full = (1 << n) - 1
    for gi, removed in enumerate(removed_sets):
        if hi_bounds[gi] < cutoff:
            partial["below_threshold"] += 1
            continue
        rows = [full ^ (1 << v) for v in range(n)]
        for idx in removed:
            u, v = slots[idx]
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        _candidate_pipeline(tuple(rows), task, partial)
    return partial


def _sample_candidate(task: dict, index: int) -> tuple[int, ...]:
    """Complement slot set of sample-mode candidate ``index`` (stable)."""
    h_slots: tuple[int, ...] = task["h_comp_slots"]
    perturbations: tuple[tuple[int, ...], ...] = task["perturbations"]
    if index < len(perturbations):
        toggles = set(perturbations[index])
        base = set(h_slots)
        return tuple(sorted(base ^ toggles))
    sample_i = index - len(perturbations)
    n = task["n"]
    nslots = n * (n - 1) // 2
    rng = SplitMix64(derive_seed(task["seed"], sample_i))
    k = rng.below(n - 1)  # complement size 0..n-2
    idx = list(range(nslots))
    for i in range(k):
        j = i + rng.below(nslots - i)
        idx[i], idx[j] = idx[j], idx[i]
    return tuple(sorted(idx[:k]))


def verify_main_theorem(
    a: int,
    b: int,
    n: int,
    mode: str = "exhaustive",
    seed: int = 0,
    samples: int = 10_000,
    jobs: int = 1,
    tol: float = spectral.DEFAULT_TOL,
    limit: int = ENUMERATION_LIMIT,
) -> ScanReport:
    """Scan for counterexamples: every graph at or above the extremal radius
    must carry a parity factor unless it is the extremal graph itself.

    Exhaustive mode walks all labeled graphs with complement at most n-2
    edges; sample mode walks all distance-<=2 complement perturbations of
    the extremal graph plus seeded co-sparse random graphs.  Orders where
    exhaustive enumeration is out of desk reach fall back to sample mode
    (noted in the report).  The extremal graph itself is checked on the
    side (recognized, and certified factor-free) whether or not the
    enumerated family contains it.
    """
    spec = FactorSpec(a, b)
    if (n * a) % 2 == 1:
        raise GraphError(f"n*a must be even, got n={n}, a={a}")
    if mode not in ("exhaustive", "sample"):
        raise GraphError(f"unknown mode {mode!r}")
    started = time.monotonic()
    notes: dict = {}
    bound = spectral.theorem_n_bound(a, b)
    if n < bound:
        notes["below_order_bound"] = bound
    requested_mode = mode
    if mode == "exhaustive" and n >= EXHAUSTIVE_ORDER_LIMIT:
        mode = "sample"
        notes["exhaustive_infeasible"] = True
    h = h_extremal(n, a)
    thr = spectral.spectral_radius(h, tol)
    h_poly = exact.char_poly_exact(h)
    cache = _seed_factor_cache(n, a, b)
    slots = pair_slots(n)
    h_comp_slots = tuple(i for i, (u, v) in enumerate(slots) if not h.adj[u] >> v & 1)
    task_base = {
        "mode": mode,
        "n": n,
        "a": a,
        "b": b,
        "tol": tol,
        "thr_lo": thr.lo,
        "thr_hi": thr.hi,
        "h_poly": h_poly.coeffs,
        "factor_cache": cache,
        "prefilter_iters": 64,
        "seed": seed,
        "h_comp_slots": h_comp_slots,
    }
    if mode == "exhaustive":
        k_max = n - 2
        total = cosparse_total(n, k_max)
        if total > limit:
            raise CapacityError(f"enumeration of {total} graphs exceeds limit {limit}")
        offsets = [0]
        nslots = len(slots)
        for j in range(k_max + 1):
            offsets.append(offsets[-1] + comb(nslots, j))
        task_base["offsets"] = tuple(offsets)
        chunk = EXHAUSTIVE_CHUNK
    else:
        perturbations: list[tuple[int, ...]] = [()]
        nslots = len(slots)
        perturbations += [(i,) for i in range(nslots)]
        perturbations += [(i, j) for i in range(nslots) for j in range(i + 1, nslots)]
        task_base["perturbations"] = tuple(perturbations)
        total = len(perturbations) + samples
        chunk = SAMPLE_CHUNK
    tasks = []
    for start in range(0, total, chunk):
        t = dict(task_base)
        t["start"] = start
        t["end"] = min(start + chunk, total)
        tasks.append(t)
    if jobs <= 1:
        partials = [_scan_chunk(t) for t in tasks]
    else:
        with Pool(processes=jobs) as pool:
            partials = list(pool.imap(_scan_chunk, tasks, chunksize=1))
    counts = {
        "scanned": 0,
        "below_threshold": 0,
        "spectral_candidates": 0,
        "recognized_extremal": 0,
        "factor_yes": 0,
        "violations": 0,
    }
    violations: list[str] = []
    decisions = {"float": 0, "exact": 0}
    for p in partials:
        for key in ("scanned", "below_threshold", "spectral_candidates", "recognized_extremal", "factor_yes"):
            counts[key] += p[key]
        violations.extend(p["violations"])
        decisions["float"] += p["decisions"]["float"]
        decisions["exact"] += p["decisions"]["exact"]
    h_recognized = recognize_h_extremal(h, a)
    h_factor = decide_matching(h, spec)
    notes["exception_graph"] = {
        "graph6": write_graph6(h),
        "recognized": h_recognized,
        "has_factor": h_factor.exists,
    }
    if h_factor.exists or not h_recognized:
        violations.append(write_graph6(h))
    counts["violations"] = len(violations)
    params = {
        "a": a,
        "b": b,
        "n": n,
        "mode": mode,
        "requested_mode": requested_mode,
        "seed": seed if mode == "sample" else None,
        "samples": samples if mode == "sample" else None,
        "threshold": [thr.lo, thr.hi],
    }
    report = ScanReport(
        kind="theorem",
        params=params,
        counts=counts,
        violations=violations,
        decisions=decisions,
        notes=notes,
    )
    report.runtime_ms = int((time.monotonic() - started) * 1000)
    return report


# ---------------------------------------------------------------------------
# lemma sweeps


def verify_lemma_no_factor(a: int, b: int, n_list) -> LemmaReport:
    """The extremal graph has no parity factor, certified two ways.

    The matching decider must say no, and the singleton certificate
    (S empty, T the low-degree vertex) must recompute to deficiency -2
    exactly with a single odd component.
    """
    spec = FactorSpec(a, b)
    started = time.monotonic()
    report = LemmaReport(lemma="nofactor")
    for n in n_list:
        if (n * a) % 2 == 1:
            raise GraphError(f"n*a must be even, got n={n}, a={a}")
        h = h_extremal(n, a)
        solo = a - 1  # construction places the low-degree vertex at index a-1
        t_mask = 1 << solo
        eta = eta_parity(h, 0, t_mask, spec)
        q = q_count(h, 0, t_mask, a)
        res = decide_matching(h, spec)
        passed = (not res.exists) and eta == -2 and q == 1
        report.points.append(
            LemmaPoint(params={"a": a, "b": b, "n": n, "eta": eta, "q": q}, passed=passed, slack=float(-1 - eta))
        )
    report.runtime_ms = int((time.monotonic() - started) * 1000)
    return report


def _partitions_desc(total: int, parts: int, cap: int | None = None):
    """Non-increasing positive tuples of the given length summing to total."""
    cap = total if cap is None else cap
    if parts == 1:
        if 1 <= total <= cap:
            yield (total,)
        return
    top = min(cap, total - parts + 1)
    bottom = -(-total // parts)
    for first in range(top, bottom - 1, -1):
        for rest in _partitions_desc(total - first, parts - 1, first):
            yield (first, *rest)


def verify_zhw(s: int, n: int, q_max: int) -> LemmaReport:
    """Clique-parts comparison: among joins of K_s with q cliques of fixed
    total order, the one big clique plus q-1 singletons maximizes the
    radius, strictly except at that tuple itself."""
    started = time.monotonic()
    report = LemmaReport(lemma="zhw")
    for q in range(1, q_max + 1):
        if n - s < q:
            continue
        star_parts = (n - s - q + 1,) + (1,) * (q - 1)
        ref = clique_join(s, star_parts)
        for parts in _partitions_desc(n - s, q):
            g = clique_join(s, parts)
            res = spectral.compare_radius(g, ref)
            if parts == star_parts:
                passed = res.order is spectral.Order.EQUAL
            else:
                passed = res.order is spectral.Order.LESS
            report.decisions[res.method] += 1
            enc_g = spectral.spectral_radius(g)
            enc_r = spectral.spectral_radius(ref)
            slack = enc_r.midpoint - enc_g.midpoint
            report.points.append(
                LemmaPoint(
                    params={"s": s, "n": n, "q": q, "parts": list(parts), "order": res.order.name, "method": res.method},
                    passed=passed,
                    slack=slack,
                )
            )
    report.runtime_ms = int((time.monotonic() - started) * 1000)
    return report


def verify_spectral_lemmas(
    s_values=range(1, 9),
    n_width: int = 40,
    small_join_ns=range(4, 61),
    tol: float = spectral.DEFAULT_TOL,
) -> LemmaReport:
    """Radius stays below n-2 across both special join families.

    For the K_s join with one big clique and three isolated vertices the
    quotient eigenvalue, the dense enclosure, and the exact polynomial
    values must all agree; the K_1 join with two isolated vertices is the
    companion family checked by enclosure alone.
    """
    started = time.monotonic()
    report = LemmaReport(lemma="spectral")
    for s in s_values:
        for n in range(4 * s + 1, 4 * s + 1 + n_width):
            cap = max(n, 64)
            g = l_graph(n, s, cap=cap)
            classes = (
                mask_of(range(s)),
                mask_of(range(n - 3, n)),
                mask_of(range(s, n - 3)),
            )
            q = spectral.quotient_matrix(g, classes)
            expected = [
                [s - 1, 3, n - s - 3],
                [s, 0, 0],
                [s, 0, n - s - 4],
            ]
            entries_ok = q.equitable and all(
                q.entries[i][j] == expected[i][j] for i in range(3) for j in range(3)
            )
            lam_q = spectral.quotient_lambda1(q, tol)
            enc = spectral.spectral_radius(g, tol)
            agreement = abs(lam_q - enc.midpoint)
            spectral.lemma6_poly_values(n, s)  # raises on mismatch
            slack = (n - 2) - enc.hi
            passed = entries_ok and slack > 0 and agreement <= 1e-8
            report.points.append(
                LemmaPoint(
                    params={"family": "three-singles", "s": s, "n": n, "agreement": agreement},
                    passed=passed,
                    slack=slack,
                )
            )
    for n in small_join_ns:
        g = clique_join(1, [n - 3, 1, 1], cap=max(n, 64))
        enc = spectral.spectral_radius(g, tol)
        slack = (n - 2) - enc.hi
        report.points.append(
            LemmaPoint(params={"family": "two-singles", "s": 1, "n": n}, passed=slack > 0, slack=slack)
        )
    report.runtime_ms = int((time.monotonic() - started) * 1000)
    return report
