"""Command-line front end: graph and ideal files in, exact invariants,
ideal constructions, layered graphs, two-route depths, and verification
reports out.

Exit codes: 0 success; 1 verification found failures; 2 unparseable or
rejected input; 3 resource guard exceeded; 4 operation precondition
violated; 5 two internal computation routes disagreed (a bug, never a
property of the input).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    DEFAULT_ENUM_GUARD,
    DEFAULT_HOCHSTER_GUARD,
    DEFAULT_TAYLOR_GUARD,
    GUARD_OVERRIDE_ENV,
    ConsistencyError,
    GuardError,
    InputError,
    ParseError,
    guard_override_enabled,
)
from .graphs import (
    NEG_INF,
    Graph,
    independence_number,
    induced_matching_number,
    is_bipartite,
    largest_stable_s,
    ordered_matching_number,
    s_ordered_matching_number,
)
from .homology import F2, RATIONALS, FieldChoice, depth_symbolic_cover
from .ideals import (
    alexander_dual,
    cover_ideal,
    edge_ideal,
    format_ideal_text,
    ideal_to_json,
    intersect,
    parse_ideal_text,
    polarize,
    power,
    symbolic_power_cover,
)
from .layered import LayeredGraph, build_gk
from .theorems import (
    THEOREM_IDS,
    instance_hash,
    report_to_csv,
    report_to_json,
    run_corpus,
    verify_bipartite,
    verify_main,
    verify_proof_matchings,
    verify_reg_upper,
    verify_regind,
    verify_whisker,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_GUARD = 3
EXIT_PRECONDITION = 4
EXIT_INCONSISTENT = 5

FIELDS = {"q": RATIONALS, "f2": F2}


@dataclass(frozen=True)
class CliConfig:
    """Validated run configuration shared by every subcommand."""

    field: FieldChoice
    max_k: int
    max_vertices: int
    hochster_guard: int
    taylor_guard: int
    jobs: int
    format: str

    def __post_init__(self) -> None:
        for name, value in (
            ("--max-k", self.max_k),
            ("--max-vertices", self.max_vertices),
            ("--hochster-guard", self.hochster_guard),
            ("--taylor-guard", self.taylor_guard),
            ("--jobs", self.jobs),
        ):
            if value < 1:
                raise InputError(f"{name} must be >= 1, got {value}")
        if self.format not in ("json", "csv", "text"):
            raise InputError(f"unknown format {self.format!r}")


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------


def parse_graph_text(text: str) -> Graph:
    """Graph file: first line "n <count>", then one edge "u v" per line."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty graph file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "n" or not head[1].isdigit():
        raise ParseError(f"graph file must start with 'n <count>', got {lines[0]!r}")
    n = int(head[1])
    edges = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(f"bad edge line {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if not 1 <= u < v <= n:
            raise ParseError(f"edge {u} {v} is not 1 <= u < v <= {n}")
        edges.add((u, v))
    try:
        return Graph(n, frozenset(edges))
    except InputError as exc:
        raise ParseError(str(exc)) from exc


def format_graph_text(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def parse_partition_text(text: str) -> list[tuple[int, ...]]:
    """Clique-partition file: one block per line, space-separated vertices."""
    blocks = []
    for ln in text.splitlines():
        if not ln.strip():
            continue
        parts = ln.split()
        if not all(p.isdigit() for p in parts):
            raise ParseError(f"bad partition line {ln!r}")
        blocks.append(tuple(int(p) for p in parts))
    if not blocks:
        raise ParseError("empty partition file")
    return blocks


def _layered_token(v: tuple[int, int]) -> str:
    return f"{v[0]}_{v[1]}"


def _parse_layered_token(token: str) -> tuple[int, int]:
    parts = token.split("_")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError(f"bad layered vertex token {token!r}")
    return int(parts[0]), int(parts[1])


def format_layered_text(gk: LayeredGraph) -> str:
    lines = [f"n {gk.base_n} k {gk.k}"]
    lines.extend(
        f"{_layered_token(a)} {_layered_token(b)}" for a, b in gk.sorted_edges()
    )
    return "\n".join(lines) + "\n"


def parse_layered_text(text: str) -> LayeredGraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty layered-graph file")
    head = lines[0].split()
    if (
        len(head) != 4
        or head[0] != "n"
        or head[2] != "k"
        or not (head[1].isdigit() and head[3].isdigit())
    ):
        raise ParseError(
            f"layered file must start with 'n <count> k <power>', got {lines[0]!r}"
        )
    edges = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"bad layered edge line {ln!r}")
        edges.add(tuple(sorted((_parse_layered_token(parts[0]), _parse_layered_token(parts[1])))))
    try:
        return LayeredGraph(int(head[1]), int(head[3]), frozenset(edges))
    except InputError as exc:
        raise ParseError(str(exc)) from exc


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _load_graph(path: str) -> Graph:
    return parse_graph_text(_read_file(path))


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _reject_csv(cfg: CliConfig) -> None:
    if cfg.format == "csv":
        raise ParseError("csv format is only available for verify reports")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def invariants_report(g: Graph) -> dict:
    t, cert = ordered_matching_number(g)
    s_values = {}
    for s in range(1, t + 2):
        value = s_ordered_matching_number(g, s)
        s_values[str(s)] = "-inf" if value == NEG_INF else value
    return {
        "n": g.n,
        "alpha": independence_number(g),
        "ind_match": induced_matching_number(g),
        "ord_match": t,
        "s_ord_match": s_values,
        "largest_stable_s": largest_stable_s(g) if t else None,
        "certificate": [list(p) for p in cert] if cert else None,
    }


def _render_invariants_text(rep: dict) -> str:
    lines = [
        f"n {rep['n']}",
        f"alpha {rep['alpha']}",
        f"ind_match {rep['ind_match']}",
        f"ord_match {rep['ord_match']}",
    ]
    for s, value in rep["s_ord_match"].items():
        lines.append(f"s_ord_match s={s} {value}")
    stable = rep["largest_stable_s"]
    lines.append(f"largest_stable_s {stable if stable is not None else 'none'}")
    cert = rep["certificate"]
    cert_text = " ".join(f"{a},{b}" for a, b in cert) if cert else "none"
    lines.append(f"certificate {cert_text}")
    return "\n".join(lines) + "\n"


def cmd_invariants(args, cfg: CliConfig) -> int:
    _reject_csv(cfg)
    g = _load_graph(args.graph)
    if g.n > DEFAULT_ENUM_GUARD:
        raise GuardError(
            f"invariant search on {g.n} vertices exceeds guard {DEFAULT_ENUM_GUARD}"
        )
    rep = invariants_report(g)
    text = _json_text(rep) if cfg.format == "json" else _render_invariants_text(rep)
    _emit(text, args.output)
    return EXIT_OK


def cmd_ideal(args, cfg: CliConfig) -> int:
    _reject_csv(cfg)
    op = args.ideal_op
    if op == "cover":
        ideal = cover_ideal(_load_graph(args.graph))
    elif op == "edge":
        ideal = edge_ideal(_load_graph(args.graph))
    elif op == "sympow":
        ideal = symbolic_power_cover(_load_graph(args.graph), args.k)
    elif op == "pow":
        ideal = power(parse_ideal_text(_read_file(args.ideal)), args.k)
    elif op == "polarize":
        ideal = polarize(parse_ideal_text(_read_file(args.ideal)))
    elif op == "dual":
        ideal = alexander_dual(parse_ideal_text(_read_file(args.ideal)))
    else:
        ideal = intersect(
            parse_ideal_text(_read_file(args.ideal_a)),
            parse_ideal_text(_read_file(args.ideal_b)),
        )
    if cfg.format == "json":
        text = _json_text(ideal_to_json(ideal))
    else:
        text = format_ideal_text(ideal) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def cmd_gk(args, cfg: CliConfig) -> int:
    _reject_csv(cfg)
    gk = build_gk(_load_graph(args.graph), args.k)
    if cfg.format == "json":
        text = _json_text(
            {
                "n": gk.base_n,
                "k": gk.k,
                "edges": [[list(a), list(b)] for a, b in gk.sorted_edges()],
            }
        )
    else:
        text = format_layered_text(gk)
    _emit(text, args.output)
    return EXIT_OK


def cmd_depth(args, cfg: CliConfig) -> int:
    _reject_csv(cfg)
    g = _load_graph(args.graph)
    depth = depth_symbolic_cover(g, args.k, cfg.field, cfg.hochster_guard)
    if cfg.format == "json":
        text = _json_text(
            {
                "n": g.n,
                "k": args.k,
                "field": cfg.field.label,
                "depth": depth,
                "routes_agree": True,
            }
        )
    else:
        text = (
            f"depth {depth}\n"
            "routes polarized-betti-table layered-regularity agree\n"
        )
    _emit(text, args.output)
    return EXIT_OK


def report_to_text(outcomes) -> str:
    lines = [
        f"{o.theorem_id} {o.status} n={o.instance['graph']['n']} "
        f"{instance_hash(o.instance)}"
        for o in outcomes
    ]
    counts = {"passed": 0, "failed": 0, "skipped": 0}
    for o in outcomes:
        counts[o.status] += 1
    lines.append(
        f"passed {counts['passed']} failed {counts['failed']} "
        f"skipped {counts['skipped']}"
    )
    return "\n".join(lines) + "\n"


def _verify_single(args, cfg: CliConfig, theorems) -> list:
    g = _load_graph(args.graph)
    partition = (
        parse_partition_text(_read_file(args.partition)) if args.partition else None
    )
    outcomes = []
    for tid in theorems:
        if tid == "whisker":
            if partition is None:
                if args.theorem == "whisker":
                    raise InputError("verify whisker needs --partition")
                continue
            outcomes.append(
                verify_whisker(g, partition, cfg.max_k, cfg.field, cfg.hochster_guard)
            )
        elif tid == "main":
            outcomes.append(verify_main(g, 1, cfg.field, cfg.hochster_guard))
        elif tid == "regind":
            outcomes.append(verify_regind(g, cfg.field, cfg.hochster_guard))
        elif tid == "regupper":
            outcomes.append(verify_reg_upper(g, cfg.field, cfg.hochster_guard))
        elif tid == "bipartite":
            if args.theorem == "all" and not is_bipartite(g)[0]:
                continue
            outcomes.append(
                verify_bipartite(g, cfg.max_k, cfg.field, cfg.hochster_guard)
            )
        elif tid == "proofmatch":
            outcomes.append(verify_proof_matchings(g, cfg.field))
    return outcomes


def cmd_verify(args, cfg: CliConfig) -> int:
    theorems = THEOREM_IDS if args.theorem == "all" else (args.theorem,)
    try:
        if args.graph:
            outcomes = _verify_single(args, cfg, theorems)
        else:
            outcomes = run_corpus(
                max_vertices=cfg.max_vertices,
                k_max=cfg.max_k,
                field=cfg.field,
                theorems=theorems,
                jobs=cfg.jobs,
                guard=cfg.hochster_guard,
            )
    except InputError as exc:
        # a rejected instance is an input problem, not a disproved theorem
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if cfg.format == "json":
        text = report_to_json(outcomes)
    elif cfg.format == "csv":
        text = report_to_csv(outcomes)
    else:
        text = report_to_text(outcomes)
    _emit(text, args.output)
    return EXIT_VERIFY_FAILED if any(o.status == "failed" for o in outcomes) else EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", choices=sorted(FIELDS), default="q")
    common.add_argument("--max-k", type=int, default=3)
    common.add_argument("--max-vertices", type=int, default=5)
    common.add_argument("--hochster-guard", type=int, default=DEFAULT_HOCHSTER_GUARD)
    common.add_argument("--taylor-guard", type=int, default=DEFAULT_TAYLOR_GUARD)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--format", choices=["json", "csv", "text"], default="text")
    common.add_argument("--output", default=None)
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coverdepth",
        description="Exact depth, regularity, and matching computations for "
        "vertex-cover ideals of graphs, with a theorem-verification harness.",
    )
    common = _common_flags()
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common],
                       help="matching and independence invariants of a graph")
    p.add_argument("graph")

    ideal = sub.add_parser("ideal", help="monomial-ideal constructions")
    isub = ideal.add_subparsers(dest="ideal_op", required=True)
    for name in ("cover", "edge"):
        q = isub.add_parser(name, parents=[common])
        q.add_argument("graph")
    q = isub.add_parser("sympow", parents=[common])
    q.add_argument("graph")
    q.add_argument("k", type=int)
    q = isub.add_parser("pow", parents=[common])
    q.add_argument("ideal")
    q.add_argument("k", type=int)
    for name in ("polarize", "dual"):
        q = isub.add_parser(name, parents=[common])
        q.add_argument("ideal")
    q = isub.add_parser("intersect", parents=[common])
    q.add_argument("ideal_a")
    q.add_argument("ideal_b")

    p = sub.add_parser("gk", parents=[common],
                       help="build the layered graph for a symbolic power")
    p.add_argument("graph")
    p.add_argument("k", type=int)

    p = sub.add_parser("depth", parents=[common],
                       help="depth of the symbolic cover-ideal power")
    p.add_argument("graph")
    p.add_argument("k", type=int)

    p = sub.add_parser("verify", parents=[common],
                       help="run theorem verifiers over a corpus or one graph")
    p.add_argument("theorem", choices=[*THEOREM_IDS, "all"])
    p.add_argument("--graph", default=None,
                   help="verify a single graph file instead of the corpus")
    p.add_argument("--partition", default=None,
                   help="clique-partition file for whisker verification")
    return parser


def _config_from_args(args) -> CliConfig:
    for name, value, default in (
        ("--hochster-guard", args.hochster_guard, DEFAULT_HOCHSTER_GUARD),
        ("--taylor-guard", args.taylor_guard, DEFAULT_TAYLOR_GUARD),
    ):
        if value > default and not guard_override_enabled():
            raise InputError(
                f"{name} {value} is above the default {default}; set "
                f"{GUARD_OVERRIDE_ENV}=1 to raise guards"
            )
    return CliConfig(
        field=FIELDS[args.field],
        max_k=args.max_k,
        max_vertices=args.max_vertices,
        hochster_guard=args.hochster_guard,
        taylor_guard=args.taylor_guard,
        jobs=args.jobs,
        format=args.format,
    )


_HANDLERS = {
    "invariants": cmd_invariants,
    "ideal": cmd_ideal,
    "gk": cmd_gk,
    "depth": cmd_depth,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _HANDLERS[args.command](args, cfg)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
