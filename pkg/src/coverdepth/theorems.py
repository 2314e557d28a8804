"""Executable verification of the package's theorems on graph corpora.

Each verifier checks one statement relating cover-ideal depth, edge-ideal
regularity, and matching numbers on a concrete graph, and returns a
:class:`VerificationOutcome` that is `passed`, `failed` (with an expected
vs computed payload), or `skipped` (resource guards; never silent).
:func:`run_corpus` sweeps every verifier over exhaustively enumerated
small graphs and yields a deterministic, machine-readable report.
"""

from __future__ import annotations

import csv
import hashlib
import io
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import GuardError, InputError
from .graphs import (
    Graph,
    _search_ordered,
    enumerate_graphs,
    independence_number,
    induced_matching_number,
    is_bipartite,
    isolated_vertices,
    isomorphism_representatives,
    largest_stable_s,
    ordered_matching_number,
    s_ordered_matching_number,
    whisker,
)
from .homology import (
    RATIONALS,
    FieldChoice,
    depth_symbolic_cover,
    reg_edge_ideal,
    reg_edge_ideal_layered,
)
from .ideals import cover_ideal, equal, power, symbolic_power_cover
from .layered import (
    as_plain_graph,
    build_gk,
    is_induced_matching_layered,
    ordered_matching_b_independent,
    proof_matching_bipartite,
    proof_matching_main,
)

THEOREM_IDS = ("main", "whisker", "regind", "regupper", "bipartite", "proofmatch")

#: largest base-graph size whiskered instances are generated from
WHISKER_BASE_LIMIT = 4


def stability_threshold(t: int, s: int) -> int:
    """Exponent from which the depth of symbolic cover-ideal powers is
    guaranteed to equal its limit value: 2t - 1 in general (s = 1), and
    the smaller 2t - 2s + 2 when the ordered matching is s-ordered."""
    if t < 1 or s < 1 or s > t:
        raise InputError(f"need 1 <= s <= t, got s={s}, t={t}")
    return 2 * t - 1 if s == 1 else 2 * t - 2 * s + 2


@dataclass(frozen=True)
class StabilityReport:
    """Observed depth behaviour of symbolic cover-ideal powers of a graph.

    `depths` maps each computed exponent k to depth(S / J^(k)); every entry
    at or beyond `threshold` must equal `limit_depth` = n - t - 1.
    `sdstab_observed_upper` is the smallest exponent from which the depths
    stay at the limit within the computed window, or None when the window
    never reaches the limit.
    """

    graph: Graph
    ord_match: int
    largest_stable_s: int
    threshold: int
    depths: tuple[tuple[int, int], ...]
    limit_depth: int
    sdstab_observed_upper: int | None

    def __post_init__(self) -> None:
        expected = stability_threshold(self.ord_match, self.largest_stable_s)
        if self.threshold != expected:
            raise InputError(
                f"threshold {self.threshold} does not match the two-case "
                f"formula value {expected}"
            )
        for k, depth in self.depths:
            if k >= self.threshold and depth != self.limit_depth:
                raise InputError(
                    f"depth {depth} at k={k} >= threshold must equal the "
                    f"limit {self.limit_depth}"
                )

    @property
    def depth_map(self) -> dict[int, int]:
        return dict(self.depths)

    def to_json(self) -> dict:
        return {
            "graph": _graph_json(self.graph),
            "ord_match": self.ord_match,
            "largest_stable_s": self.largest_stable_s,
            "threshold": self.threshold,
            "depths": {str(k): d for k, d in self.depths},
            "limit_depth": self.limit_depth,
            "sdstab_observed_upper": self.sdstab_observed_upper,
        }


@dataclass(frozen=True)
class VerificationOutcome:
    """Result of one verifier on one instance. `status` is `passed`,
    `failed`, or `skipped`; anything other than a pass carries details."""

    theorem_id: str
    instance: dict
    status: str
    details: dict

    def __post_init__(self) -> None:
        if self.status not in ("passed", "failed", "skipped"):
            raise InputError(f"unknown outcome status {self.status!r}")
        if self.status != "passed" and not self.details:
            raise InputError("failed and skipped outcomes need details")

    @property
    def passed(self) -> bool:
        return self.status == "passed"

    def to_json(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "instance": self.instance,
            "status": self.status,
            "passed": self.passed,
            "details": self.details,
        }


def _graph_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}


def _pairs_json(pairs: Sequence) -> list:
    return [[list(a), list(b)] for a, b in pairs]


def _require_no_isolated(g: Graph) -> None:
    bad = isolated_vertices(g)
    if bad:
        raise InputError(f"graph must have no isolated vertices, found {bad}")


def _observed_stabilization(depths: dict[int, int], limit: int) -> int | None:
    """Smallest k in the window from which every later depth equals the
    limit, or None if the window never settles there."""
    ks = sorted(depths)
    if not ks or depths[ks[-1]] != limit:
        return None
    start = ks[-1]
    for k in reversed(ks):
        if depths[k] != limit:
            break
        start = k
    return start


def verify_main(
    g: Graph,
    k_extra: int = 1,
    f: FieldChoice = RATIONALS,
    guard: int | None = None,
) -> VerificationOutcome:
    """Depth stabilization: depth(S/J(g)^(k)) equals n - t - 1 for every
    exponent at or beyond the two-case threshold, and never dips below that
    limit earlier. Checks exponents 1 .. threshold + k_extra."""
    _require_no_isolated(g)
    if k_extra < 0:
        raise InputError("k_extra must be >= 0")
    t, _ = ordered_matching_number(g)
    s = largest_stable_s(g)
    threshold = stability_threshold(t, s)
    limit = g.n - t - 1
    instance = {"graph": _graph_json(g), "k_extra": k_extra, "field": f.label}
    depths: dict[int, int] = {}
    guard_hit: str | None = None
    for k in range(1, threshold + k_extra + 1):
        try:
            depths[k] = depth_symbolic_cover(g, k, f, guard)
        except GuardError as err:
            guard_hit = f"k={k}: {err}"
            break
    failures = {}
    for k, depth in depths.items():
        if k >= threshold and depth != limit:
            failures[f"depth at k={k}"] = {"expected": limit, "computed": depth}
        elif depth < limit:
            failures[f"depth at k={k}"] = {"lower_bound": limit, "computed": depth}
    base = {
        "t": t,
        "s": s,
        "threshold": threshold,
        "limit_depth": limit,
        "depths": {str(k): d for k, d in sorted(depths.items())},
    }
    if failures:
        return VerificationOutcome("main", instance, "failed", {**base, **failures})
    if guard_hit is not None:
        return VerificationOutcome(
            "main", instance, "skipped", {**base, "reason": guard_hit}
        )
    report = StabilityReport(
        g,
        t,
        s,
        threshold,
        tuple(sorted(depths.items())),
        limit,
        _observed_stabilization(depths, limit),
    )
    return VerificationOutcome("main", instance, "passed", {"report": report.to_json()})


def verify_whisker(
    g: Graph,
    pi: Sequence[Iterable[int]],
    k_max: int = 3,
    f: FieldChoice = RATIONALS,
    guard: int | None = None,
) -> VerificationOutcome:
    """Whiskered graphs: attaching one vertex per block of a clique
    partition pi of g yields a graph whose symbolic cover-ideal depth is
    n + m - alpha(g) - 1 at k = 1 and n - 1 for every k >= 2 (n = |V(g)|,
    m = number of blocks), and whose ordered matching number is m with an
    m-ordered certificate."""
    if k_max < 1:
        raise InputError("k_max must be >= 1")
    w = whisker(g, pi)
    m = len(list(pi))
    alpha = independence_number(g)
    blocks = [sorted(set(b)) for b in pi]
    instance = {
        "graph": _graph_json(g),
        "partition": blocks,
        "k_max": k_max,
        "field": f.label,
    }
    t_w, _ = ordered_matching_number(w)
    failures = {}
    if t_w != m:
        failures["ord_match"] = {"expected": m, "computed": t_w}
    if s_ordered_matching_number(w, m) != m:
        failures["m_ordered_certificate"] = {
            "expected": m,
            "computed": s_ordered_matching_number(w, m),
        }
    depths: dict[int, int] = {}
    guard_hit: str | None = None
    for k in range(1, k_max + 1):
        try:
            depths[k] = depth_symbolic_cover(w, k, f, guard)
        except GuardError as err:
            guard_hit = f"k={k}: {err}"
            break
    expected = {
        k: (g.n + m - alpha - 1 if k == 1 else g.n - 1) for k in depths
    }
    for k, depth in depths.items():
        if depth != expected[k]:
            failures[f"depth at k={k}"] = {
                "expected": expected[k],
                "computed": depth,
            }
    base = {
        "whiskered": _graph_json(w),
        "m": m,
        "alpha": alpha,
        "depths": {str(k): d for k, d in sorted(depths.items())},
        "expected_depths": {str(k): d for k, d in sorted(expected.items())},
        "stabilizes_by": 2,
    }
    if failures:
        return VerificationOutcome("whisker", instance, "failed", {**base, **failures})
    if guard_hit is not None:
        return VerificationOutcome(
            "whisker", instance, "skipped", {**base, "reason": guard_hit}
        )
    return VerificationOutcome("whisker", instance, "passed", base)


def verify_regind(
    g: Graph,
    f: FieldChoice = RATIONALS,
    guard: int | None = None,
) -> VerificationOutcome:
    """At the stabilization threshold (and one past it, guards allowing),
    the layered graph satisfies the double equality
    reg(I(G_k)) = ind-match(G_k) + 1 = ord-match(g) + 1."""
    _require_no_isolated(g)
    t, _ = ordered_matching_number(g)
    s = largest_stable_s(g)
    threshold = stability_threshold(t, s)
    instance = {"graph": _graph_json(g), "field": f.label}
    limit = 18 if guard is None else guard
    checked: dict[str, dict] = {}
    failures = {}
    guard_notes = {}
    for k in (threshold, threshold + 1):
        if g.n * k > limit:
            guard_notes[f"k={k}"] = (
                f"layered computation needs {g.n * k} vertices, guard is {limit}"
            )
            continue
        gk = build_gk(g, k)
        reg = reg_edge_ideal_layered(gk, f)
        plain, _labels = as_plain_graph(gk)
        ind = induced_matching_number(plain)
        checked[f"k={k}"] = {"reg": reg, "ind_match": ind, "expected": t + 1}
        if not (reg == ind + 1 == t + 1):
            failures[f"k={k}"] = {"reg": reg, "ind_match_plus_1": ind + 1,
                                  "ord_match_plus_1": t + 1}
    base = {"t": t, "s": s, "threshold": threshold, "checked": checked}
    if guard_notes:
        base["guard_skips"] = guard_notes
    if failures:
        return VerificationOutcome("regind", instance, "failed", {**base, **failures})
    if not checked:
        return VerificationOutcome(
            "regind", instance, "skipped",
            {**base, "reason": "all exponents exceed the guard"},
        )
    return VerificationOutcome("regind", instance, "passed", base)


def verify_reg_upper(
    g: Graph,
    f: FieldChoice = RATIONALS,
    guard: int | None = None,
) -> VerificationOutcome:
    """Edge-ideal regularity is sandwiched by matching numbers:
    ind-match(g) + 1 <= reg(I(g)) <= ord-match(g) + 1."""
    if not g.edges:
        raise InputError("needs a graph with at least one edge")
    instance = {"graph": _graph_json(g), "field": f.label}
    try:
        reg = reg_edge_ideal(g, f, guard)
    except GuardError as err:
        return VerificationOutcome(
            "regupper", instance, "skipped", {"reason": str(err)}
        )
    t, _ = ordered_matching_number(g)
    ind = induced_matching_number(g)
    details = {
        "reg_edge_ideal": reg,
        "ord_match": t,
        "ind_match": ind,
        "upper_bound_ok": reg <= t + 1,
        "lower_bound_ok": reg >= ind + 1,
    }
    status = "passed" if details["upper_bound_ok"] and details["lower_bound_ok"] else "failed"
    return VerificationOutcome("regupper", instance, status, details)


def verify_bipartite(
    g: Graph,
    k_max: int = 3,
    f: FieldChoice = RATIONALS,
    guard: int | None = None,
) -> VerificationOutcome:
    """Bipartite graphs: symbolic and ordinary cover-ideal powers agree for
    k <= k_max, and the depth already sits at its limit n - t - 1 for every
    k from t = ord-match(g) on (so the powers, symbolic or not, stabilize
    no later than t)."""
    bip, _coloring = is_bipartite(g)
    if not bip:
        raise InputError("graph must be bipartite")
    _require_no_isolated(g)
    if k_max < 1:
        raise InputError("k_max must be >= 1")
    t, _ = ordered_matching_number(g)
    instance = {"graph": _graph_json(g), "k_max": k_max, "field": f.label}
    j = cover_ideal(g)
    powers_equal = {}
    failures = {}
    for k in range(1, k_max + 1):
        same = equal(symbolic_power_cover(g, k), power(j, k))
        powers_equal[k] = same
        if not same:
            failures[f"symbolic vs ordinary at k={k}"] = {"equal": False}
    depths: dict[int, int] = {}
    guard_hit: str | None = None
    for k in range(t, k_max + 1):
        try:
            depths[k] = depth_symbolic_cover(g, k, f, guard)
        except GuardError as err:
            guard_hit = f"k={k}: {err}"
            break
    limit = g.n - t - 1
    for k, depth in depths.items():
        if depth != limit:
            failures[f"depth at k={k}"] = {"expected": limit, "computed": depth}
    base = {
        "t": t,
        "limit_depth": limit,
        "symbolic_equals_ordinary": {str(k): v for k, v in powers_equal.items()},
        "depths": {str(k): d for k, d in sorted(depths.items())},
    }
    if failures:
        return VerificationOutcome(
            "bipartite", instance, "failed", {**base, **failures}
        )
    if guard_hit is not None:
        return VerificationOutcome(
            "bipartite", instance, "skipped", {**base, "reason": guard_hit}
        )
    return VerificationOutcome("bipartite", instance, "passed", base)


def verify_proof_matchings(
    g: Graph,
    f: FieldChoice = RATIONALS,
) -> VerificationOutcome:
    """Builds the explicit layered matchings behind the stabilization
    results at their smallest admissible exponent and checks they are
    induced matchings of G_k of size t, which witnesses
    ind-match(G_k) >= ord-match(g).

    The general construction needs an s-ordered certificate with s >= 2;
    the bipartite construction needs a maximum ordered matching whose
    second endpoints form an independent set. A graph offering neither
    hypothesis is reported as skipped, not failed."""
    _require_no_isolated(g)
    t, _ = ordered_matching_number(g)
    s = largest_stable_s(g)
    instance = {"graph": _graph_json(g), "field": f.label}
    details: dict = {"t": t, "s": s}
    failures = {}
    ran_any = False

    if s >= 2:
        _size, cert = _search_ordered(g, s)
        k = stability_threshold(t, s)
        matching = proof_matching_main(g, cert, s, k)
        induced = is_induced_matching_layered(build_gk(g, k), matching)
        details["main"] = {
            "k": k,
            "certificate": [list(p) for p in cert],
            "matching": _pairs_json(matching),
            "induced": induced,
            "size": len(matching),
        }
        ran_any = True
        if not induced or len(matching) != t:
            failures["main"] = details["main"]
    else:
        details["main"] = {
            "status": "skipped",
            "reason": "no explicit construction applies when the largest "
            "stable order parameter is 1",
        }

    bip, _coloring = is_bipartite(g)
    if bip:
        size_b, cert_b = ordered_matching_b_independent(g)
        if cert_b is None or size_b < t:
            details["bipartite"] = {
                "status": "anomaly",
                "reason": "no maximum ordered matching with independent "
                "second endpoints exists",
            }
        else:
            matching = proof_matching_bipartite(g, cert_b, t)
            induced = is_induced_matching_layered(build_gk(g, t), matching)
            details["bipartite"] = {
                "k": t,
                "certificate": [list(p) for p in cert_b],
                "matching": _pairs_json(matching),
                "induced": induced,
                "size": len(matching),
            }
            ran_any = True
            if not induced or len(matching) != t:
                failures["bipartite"] = details["bipartite"]
    else:
        details["bipartite"] = {
            "status": "skipped",
            "reason": "graph is not bipartite",
        }

    if failures:
        return VerificationOutcome("proofmatch", instance, "failed", details)
    if not ran_any:
        return VerificationOutcome(
            "proofmatch", instance, "skipped",
            {**details, "reason": "no construction hypothesis applies"},
        )
    return VerificationOutcome("proofmatch", instance, "passed", details)


# ---------------------------------------------------------------------------
# corpus sweep
# ---------------------------------------------------------------------------


def clique_partitions(g: Graph) -> Iterator[list[tuple[int, ...]]]:
    """All partitions of the vertex set into cliques, in a deterministic
    order (the smallest unassigned vertex anchors each new block)."""

    def rec(remaining: tuple[int, ...]) -> Iterator[list[tuple[int, ...]]]:
        if not remaining:
            yield []
            return
        v, rest = remaining[0], remaining[1:]
        neighbors = [u for u in rest if g.has_edge(v, u)]
        for size in range(len(neighbors) + 1):
            for comb in itertools.combinations(neighbors, size):
                if any(
                    not g.has_edge(a, b)
                    for a, b in itertools.combinations(comb, 2)
                ):
                    continue
                block = (v, *comb)
                left = tuple(u for u in rest if u not in comb)
                for tail in rec(left):
                    yield [block, *tail]

    yield from rec(tuple(g.vertices))


def _corpus_graphs(max_vertices: int, dedupe: bool, no_isolated: bool) -> list[Graph]:
    out: list[Graph] = []
    lo = 2 if no_isolated else 1
    for n in range(lo, max_vertices + 1):
        batch = list(enumerate_graphs(n, no_isolated=no_isolated))
        if dedupe:
            batch = isomorphism_representatives(batch)
        out.extend(batch)
    return out


def _run_item(item: tuple) -> VerificationOutcome:
    kind = item[0]
    if kind == "main":
        _, g, k_extra, f, guard = item
        return verify_main(g, k_extra, f, guard)
    if kind == "whisker":
        _, g, pi, k_max, f, guard = item
        return verify_whisker(g, pi, k_max, f, guard)
    if kind == "regind":
        _, g, f, guard = item
        return verify_regind(g, f, guard)
    if kind == "regupper":
        _, g, f, guard = item
        return verify_reg_upper(g, f, guard)
    if kind == "bipartite":
        _, g, k_max, f, guard = item
        return verify_bipartite(g, k_max, f, guard)
    if kind == "proofmatch":
        _, g, f = item
        return verify_proof_matchings(g, f)
    raise InputError(f"unknown theorem id {kind!r}")


def run_corpus(
    max_vertices: int = 5,
    k_max: int = 3,
    field: FieldChoice = RATIONALS,
    theorems: Sequence[str] = THEOREM_IDS,
    dedupe: bool = True,
    jobs: int = 1,
    guard: int | None = None,
) -> list[VerificationOutcome]:
    """Runs the requested verifiers over every graph without isolated
    vertices on up to `max_vertices` vertices (whiskered instances are built
    from all graphs on up to four vertices and every clique partition).
    The report order is deterministic and independent of `jobs`."""
    requested = tuple(tid for tid in THEOREM_IDS if tid in set(theorems))
    unknown = set(theorems) - set(THEOREM_IDS)
    if unknown:
        raise InputError(f"unknown theorem ids {sorted(unknown)}")
    if jobs < 1:
        raise InputError("jobs must be >= 1")
    corpus = _corpus_graphs(max_vertices, dedupe, no_isolated=True)
    items: list[tuple] = []
    for tid in requested:
        if tid == "main":
            items.extend(("main", g, 1, field, guard) for g in corpus)
        elif tid == "whisker":
            bases = _corpus_graphs(
                min(max_vertices, WHISKER_BASE_LIMIT), dedupe, no_isolated=False
            )
            items.extend(
                ("whisker", g, pi, k_max, field, guard)
                for g in bases
                for pi in clique_partitions(g)
            )
        elif tid == "regind":
            items.extend(("regind", g, field, guard) for g in corpus)
        elif tid == "regupper":
            items.extend(("regupper", g, field, guard) for g in corpus)
        elif tid == "bipartite":
            items.extend(
                ("bipartite", g, k_max, field, guard)
                for g in corpus
                if is_bipartite(g)[0]
            )
        elif tid == "proofmatch":
            items.extend(("proofmatch", g, field) for g in corpus)
    if jobs == 1:
        return [_run_item(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_item, items, chunksize=8))


def instance_hash(instance: dict) -> str:
    """Stable short fingerprint of a serialized instance."""
    payload = json.dumps(instance, sort_keys=True).encode()
    return hashlib.sha256(payload).hexdigest()[:12]


def report_to_json(outcomes: Sequence[VerificationOutcome]) -> str:
    return json.dumps(
        [o.to_json() for o in outcomes], indent=2, sort_keys=True
    ) + "\n"


def report_to_csv(outcomes: Sequence[VerificationOutcome]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["theorem_id", "n", "instance_hash", "status"])
    for o in outcomes:
        writer.writerow(
            [o.theorem_id, o.instance["graph"]["n"], instance_hash(o.instance), o.status]
        )
    return buf.getvalue()
