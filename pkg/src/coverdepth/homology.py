"""Exact homological invariants of monomial quotients.

The pipeline: squarefree ideals become simplicial complexes, reduced homology
is computed by exact ranks of boundary matrices, graded Betti numbers of the
quotient come from summing restricted-complex homology over vertex subsets,
and pd / reg / depth are read off the Betti table (depth through the
projective-dimension complement in the original variable count).

Two independent cross-checks keep the main engine honest: a Taylor-complex
oracle that minimalizes the generator resolution by linear algebra, and a
dual-route depth computation for symbolic powers of cover ideals that must
agree with itself (`depth_symbolic_cover`).

Performance notes, all homology-preserving and therefore invisible in the
results:

* vertices whose neighborhood contains another vertex's neighborhood are
  folded away before any matrix is built (independence complexes only);
* disjoint graph components are combined by the join rule for reduced
  homology over a field;
* component homology is memoized under graph canonical forms, per field.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass

from ._bits import iter_bits
from ._linalg import rank
from .errors import (
    DEFAULT_HOCHSTER_GUARD,
    DEFAULT_TAYLOR_GUARD,
    ConsistencyError,
    GuardError,
    InputError,
)
from .graphs import Graph, adjacency_masks, canonical_form, graph, independence_number
from .ideals import (
    MonomialIdeal,
    alexander_dual,
    is_squarefree,
    polarize,
    support,
    symbolic_power_cover,
    total_degree,
)
from .layered import LayeredGraph, as_plain_graph, build_gk


# ---------------------------------------------------------------------------
# coefficient fields
# ---------------------------------------------------------------------------

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldChoice:
    """Coefficient field for all homology: characteristic 0 is the rationals,
    a prime characteristic p is the p-element field."""

    char: int

    def __post_init__(self) -> None:
        if self.char != 0 and not _is_prime(self.char):
            raise InputError(f"field characteristic must be 0 or prime, got {self.char}")

    @property
    def label(self) -> str:
        return "q" if self.char == 0 else f"f{self.char}"


RATIONALS = FieldChoice(0)
F2 = FieldChoice(2)


# ---------------------------------------------------------------------------
# simplicial complexes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex given by its minimal non-faces: a subset of the
    vertex set is a face iff it contains no minimal non-face. The empty
    frozenset as a non-face encodes the void complex (no faces at all)."""

    vertex_set: tuple
    non_faces: frozenset[frozenset]

    def __post_init__(self) -> None:
        vs = set(self.vertex_set)
        if len(vs) != len(self.vertex_set):
            raise InputError("duplicate vertices in complex")
        for nf in self.non_faces:
            if not nf <= vs:
                raise InputError(f"non-face {set(nf)} outside the vertex set")
        for a in self.non_faces:
            for b in self.non_faces:
                if a < b:
                    raise InputError("minimal non-faces must form an antichain")

    @property
    def is_void(self) -> bool:
        return frozenset() in self.non_faces

    def is_face(self, vertices) -> bool:
        face = frozenset(vertices)
        if not face <= set(self.vertex_set):
            raise InputError(f"vertices {set(face)} outside the vertex set")
        return not any(nf <= face for nf in self.non_faces)


def stanley_reisner_complex(ideal: MonomialIdeal) -> SimplicialComplex:
    """Complex on the ideal's variables whose minimal non-faces are the
    supports of the minimal generators. Requires a squarefree, non-unit
    ideal; the zero ideal gives the full simplex."""
    if not is_squarefree(ideal):
        raise InputError("Stanley-Reisner complex needs a squarefree ideal")
    if ideal.is_unit:
        raise InputError("the unit ideal has no Stanley-Reisner complex")
    labels = ideal.ring.labels
    non_faces = frozenset(
        frozenset(labels[i] for i in support(m)) for m in ideal.gens
    )
    return SimplicialComplex(tuple(labels), non_faces)


def independence_complex(g: Graph) -> SimplicialComplex:
    """Faces are the independent vertex sets of g; minimal non-faces are the
    edges. For an edgeless graph this is the full simplex."""
    return SimplicialComplex(
        tuple(range(1, g.n + 1)),
        frozenset(frozenset(e) for e in g.edges),
    )


# ---------------------------------------------------------------------------
# reduced homology by exact ranks
# ---------------------------------------------------------------------------

def _faces_by_dim(vertices: tuple, non_faces) -> dict[int, list[tuple]]:
    """All faces grouped by dimension, each list in lexicographic order; the
    empty face sits in dimension -1."""
    nf = [tuple(sorted(f)) for f in non_faces]
    faces: dict[int, list[tuple]] = {-1: [()]}

    def extend(prefix: tuple, candidates: tuple) -> None:
        for idx, v in enumerate(candidates):
            face = prefix + (v,)
            fs = set(face)
            if any(fs >= set(f) for f in nf):
                continue
            faces.setdefault(len(face) - 1, []).append(face)
            extend(face, candidates[idx + 1 :])

    extend((), tuple(sorted(vertices)))
    return faces


def _dims_from_faces(faces: dict[int, list[tuple]], char: int) -> dict[int, int]:
    """Reduced homology dimensions from face lists: for each degree d,
    dim = #faces - rank(boundary_d) - rank(boundary_{d+1})."""
    top = max(faces)
    index = {
        d: {f: i for i, f in enumerate(faces[d])} for d in faces
    }
    ranks: dict[int, int] = {}
    for d in range(0, top + 1):
        rows = []
        lower = index[d - 1]
        for face in faces.get(d, []):
            row = [0] * len(lower)
            for i in range(len(face)):
                sub = face[:i] + face[i + 1 :]
                row[lower[sub]] = (-1) ** i
            rows.append(row)
        ranks[d] = rank(rows, char) if rows else 0
    dims = {}
    for d in range(-1, top + 1):
        dims[d] = len(faces.get(d, ())) - ranks.get(d, 0) - ranks.get(d + 1, 0)
    return dims


# memo for component homology: (char, canonical graph) -> sparse dims
_COMPONENT_DIMS: dict[tuple, dict[int, int]] = {}


def _component_dims(adj: tuple[int, ...], comp_mask: int, char: int) -> dict[int, int]:
    """Sparse reduced-homology dims of the independence complex of one
    connected induced subgraph, memoized under its canonical form."""
    verts = sorted(iter_bits(comp_mask))
    local = {v: i + 1 for i, v in enumerate(verts)}
    edges = [
        (local[u], local[v])
        for u in verts
        for v in iter_bits(adj[u] & comp_mask)
        if u < v
    ]
    g = graph(len(verts), edges)
    key = (char, canonical_form(g))
    cached = _COMPONENT_DIMS.get(key)
    if cached is None:
        masks = adjacency_masks(g)
        faces: dict[int, list[tuple]] = {-1: [()]}

        def extend(prefix: tuple, allowed: int) -> None:
            for v in iter_bits(allowed):
                face = prefix + (v,)
                faces.setdefault(len(face) - 1, []).append(face)
                extend(face, allowed & ~masks[v] & ~((2 << v) - 1))

        extend((), (1 << g.n) - 1)
        dense = _dims_from_faces(faces, char)
        cached = {d: c for d, c in dense.items() if c}
        _COMPONENT_DIMS[key] = cached
    return cached


def _join_dims(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    """Reduced homology of a join of complexes over a field:
    dim_d = sum over p+q = d-1 of dim_p(X) * dim_q(Y)."""
    out: dict[int, int] = defaultdict(int)
    for p, cp in a.items():
        for q, cq in b.items():
            out[p + q + 1] += cp * cq
    return dict(out)


def _ind_dims(adj: tuple[int, ...], mask: int, char: int) -> dict[int, int]:
    """Sparse reduced-homology dims of the independence complex of the
    induced subgraph on `mask`. Folds dominated vertices, splits into
    components (independence complexes of disjoint unions are joins), and
    returns {} when everything vanishes; {-1: 1} is the empty subgraph."""
    while True:
        for v in iter_bits(mask):
            if adj[v] & mask == 0:
                return {}  # isolated vertex: cone, no reduced homology
        folded = False
        bits = list(iter_bits(mask))
        for u in bits:
            nu = adj[u] & mask
            for v in bits:
                if v != u and (adj[v] & mask) & ~nu == 0:
                    mask &= ~(1 << u)
                    folded = True
                    break
            if folded:
                break
        if not folded:
            break
    total = {-1: 1}
    remaining = mask
    while remaining:
        start = remaining & -remaining
        comp = start
        frontier = start
        while frontier:
            grown = comp
            for v in iter_bits(frontier):
                grown |= adj[v] & mask
            frontier = grown & ~comp
            comp = grown
        remaining &= ~comp
        dims = _component_dims(adj, comp, char)
        if not dims:
            return {}
        total = _join_dims(total, dims)
    return total


def reduced_homology_dims(
    c: SimplicialComplex,
    f: FieldChoice = RATIONALS,
    guard: int | None = None,
) -> dict[int, int]:
    """Reduced homology dimensions of the complex over the chosen field, for
    every degree from -1 up to the complex dimension. The void complex has
    no faces and returns an empty map."""
    limit = DEFAULT_HOCHSTER_GUARD if guard is None else guard
    if len(c.vertex_set) > limit:
        raise GuardError(
            f"complex has {len(c.vertex_set)} vertices, guard is {limit}"
        )
    if c.is_void:
        return {}
    if c.vertex_set and c.non_faces and all(len(nf) == 2 for nf in c.non_faces):
        # conflict-graph fast path: the complex is the independence complex
        # of the graph whose edges are the non-faces
        order = {v: i for i, v in enumerate(sorted(c.vertex_set))}
        n = len(order)
        adj = [0] * n
        for nf in c.non_faces:
            u, v = sorted(nf)
            adj[order[u]] |= 1 << order[v]
            adj[order[v]] |= 1 << order[u]
        h = graph(
            n,
            [
                (order[u] + 1, order[v] + 1)
                for u, v in (sorted(nf) for nf in c.non_faces)
            ],
        )
        top = independence_number(h) - 1
        sparse = _ind_dims(tuple(adj), (1 << n) - 1, f.char)
        return {d: sparse.get(d, 0) for d in range(-1, top + 1)}
    return _dims_from_faces(_faces_by_dim(c.vertex_set, c.non_faces), f.char)


# ---------------------------------------------------------------------------
# Betti tables
# ---------------------------------------------------------------------------

def _hochster_position(j: int, d: int) -> tuple[int, int]:
    """The Betti position (i, j) receiving homology of degree d computed
    over a vertex subset of size j: i = j - d - 1. This single definition
    pins the homological-degree convention for the whole package."""
    return (j - d - 1, j)


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers beta_{i,j} of a quotient ring, stored as sorted
    (i, j, beta) triples with beta > 0."""

    num_vars: int
    entries: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if list(self.entries) != sorted(self.entries):
            raise InputError("Betti entries must be sorted by (i, j)")
        for i, j, b in self.entries:
            if b <= 0 or i < 0 or j < 0 or i > self.num_vars:
                raise InputError(f"invalid Betti entry ({i}, {j}, {b})")
        if self.beta(0, 0) != 1:
            raise InputError("a quotient ring has beta_{0,0} = 1")

    def beta(self, i: int, j: int) -> int:
        for ei, ej, b in self.entries:
            if (ei, ej) == (i, j):
                return b
        return 0

    @property
    def pd(self) -> int:
        return max(i for i, _, _ in self.entries)

    @property
    def reg(self) -> int:
        return max(j - i for i, j, _ in self.entries)

    def to_json(self) -> dict:
        return {
            "num_vars": self.num_vars,
            "entries": [[i, j, b] for i, j, b in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BettiTable":
        return cls(
            int(data["num_vars"]),
            tuple(sorted((int(i), int(j), int(b)) for i, j, b in data["entries"])),
        )


def _betti_from_counts(num_vars: int, counts: dict[tuple[int, int], int]) -> BettiTable:
    entries = tuple(sorted((i, j, b) for (i, j), b in counts.items() if b))
    return BettiTable(num_vars, entries)


def _independent_masks(adj: tuple[int, ...], n: int):
    """All independent vertex subsets as bitmasks, in subset-lex order."""

    def extend(mask: int, allowed: int):
        yield mask
        for v in iter_bits(allowed):
            yield from extend(
                mask | (1 << v), allowed & ~adj[v] & ~((2 << v) - 1)
            )

    yield from extend(0, (1 << n) - 1)


def betti_table_squarefree(
    ideal: MonomialIdeal,
    f: FieldChoice = RATIONALS,
    guard: int | None = None,
) -> BettiTable:
    """Betti table of the quotient by a squarefree ideal: homology of the
    restricted Stanley-Reisner complexes, summed over vertex subsets.

    When every generator of the Alexander dual is a quadric, the subset sum
    is reorganized through duality into a sweep over independent sets W of
    the dual graph H, each contributing homology of the independence complex
    of H minus the closed neighborhood of W in degree i-2. Both forms are
    the same sum; the reorganized one never enumerates subsets with vanishing
    contributions. The guard bounds the number of swept vertices.
    """
    if not is_squarefree(ideal):
        raise InputError("Betti table via complexes needs a squarefree ideal")
    if ideal.is_unit:
        raise InputError("the unit ideal is not a quotient ring input")
    limit = DEFAULT_HOCHSTER_GUARD if guard is None else guard
    sweep = sorted({i for m in ideal.gens for i in support(m)})
    if len(sweep) > limit:
        raise GuardError(f"{len(sweep)} active variables exceed guard {limit}")
    counts: dict[tuple[int, int], int] = defaultdict(int)
    counts[(0, 0)] = 1
    if not ideal.gens:
        return _betti_from_counts(ideal.ring.num_vars, counts)

    dual = alexander_dual(ideal)
    dual_supports = [support(m) for m in dual.sorted_gens()]
    if all(len(s) == 2 for s in dual_supports):
        pos = {v: i for i, v in enumerate(sweep)}
        m = len(sweep)
        adj = [0] * m
        for u, v in dual_supports:
            adj[pos[u]] |= 1 << pos[v]
            adj[pos[v]] |= 1 << pos[u]
        adj_t = tuple(adj)
        full = (1 << m) - 1
        for w in _independent_masks(adj_t, m):
            closed = w
            for v in iter_bits(w):
                closed |= adj_t[v]
            rest = full & ~closed
            j = m - w.bit_count()
            if j == 0:
                continue  # the empty subset is the manual beta_{0,0}
            # duality within the size-j subset V \ W: degree d homology of
            # the residual independence complex sits at degree j - (d+2) - 1
            # of the restricted complex, i.e. _hochster_position(j, j-d-3)
            for d, c in _ind_dims(adj_t, rest, f.char).items():
                counts[_hochster_position(j, j - d - 3)] += c
        return _betti_from_counts(ideal.ring.num_vars, counts)

    # generic subset sweep with cone pruning
    gen_supports = [frozenset(support(m)) for m in ideal.sorted_gens()]
    for mask in range(1, 1 << len(sweep)):
        sigma = frozenset(sweep[i] for i in iter_bits(mask))
        inside = [s for s in gen_supports if s <= sigma]
        if any(all(v not in s for s in inside) for v in sigma):
            continue  # some vertex lies in every face: a cone
        faces = _faces_by_dim(tuple(sorted(sigma)), inside)
        j = len(sigma)
        for d, c in _dims_from_faces(faces, f.char).items():
            if c:
                counts[_hochster_position(j, d)] += c
    return _betti_from_counts(ideal.ring.num_vars, counts)


def taylor_betti_oracle(
    ideal: MonomialIdeal,
    f: FieldChoice = RATIONALS,
    guard: int | None = None,
) -> BettiTable:
    """Independent Betti-number oracle: the generator-subset resolution,
    minimalized per multidegree by exact linear algebra. A subset maps to a
    sub-subset with coefficient ±1 exactly when dropping the generator keeps
    the least common multiple; homology of those strands is the Betti table.
    Works for arbitrary monomial ideals, squarefree or not.
    """
    if ideal.is_unit:
        raise InputError("the unit ideal is not a quotient ring input")
    limit = DEFAULT_TAYLOR_GUARD if guard is None else guard
    gens = ideal.sorted_gens()
    if len(gens) > limit:
        raise GuardError(f"{len(gens)} generators exceed the guard {limit}")
    zero = tuple([0] * ideal.ring.num_vars)

    def lcm_of(subset: tuple[int, ...]) -> tuple[int, ...]:
        exps = list(zero)
        for idx in subset:
            exps = [max(a, b) for a, b in zip(exps, gens[idx])]
        return tuple(exps)

    strands: dict[tuple, dict[int, list[tuple[int, ...]]]] = defaultdict(
        lambda: defaultdict(list)
    )
    for size in range(len(gens) + 1):
        for subset in itertools.combinations(range(len(gens)), size):
            strands[lcm_of(subset)][size].append(subset)

    counts: dict[tuple[int, int], int] = defaultdict(int)
    for degree, by_size in sorted(strands.items()):
        j = total_degree(degree)
        index = {
            size: {s: i for i, s in enumerate(subsets)}
            for size, subsets in by_size.items()
        }
        ranks: dict[int, int] = {}
        for size, subsets in sorted(by_size.items()):
            lower = index.get(size - 1, {})
            rows = []
            for subset in subsets:
                row = [0] * len(lower)
                for i in range(len(subset)):
                    sub = subset[:i] + subset[i + 1 :]
                    if sub in lower:  # same multidegree survives the tensor
                        row[lower[sub]] = (-1) ** i
                rows.append(row)
            ranks[size] = rank(rows, f.char) if rows and lower else 0
        for size, subsets in by_size.items():
            h = len(subsets) - ranks.get(size, 0) - ranks.get(size + 1, 0)
            if h:
                counts[(size, j)] += h
    return _betti_from_counts(ideal.ring.num_vars, counts)


# ---------------------------------------------------------------------------
# derived invariants
# ---------------------------------------------------------------------------

def pd_reg_depth(
    ideal: MonomialIdeal,
    f: FieldChoice = RATIONALS,
    guard: int | None = None,
) -> tuple[int, int, int]:
    """(pd, reg, depth) of the quotient ring. Non-squarefree input is
    polarized first (pd and reg are preserved); depth is always counted in
    the original variable space: depth = original variables - pd."""
    original_vars = ideal.ring.num_vars
    work = ideal if is_squarefree(ideal) else polarize(ideal)
    table = betti_table_squarefree(work, f, guard)
    return table.pd, table.reg, original_vars - table.pd


def reg_edge_ideal(
    g: Graph,
    f: FieldChoice = RATIONALS,
    guard: int | None = None,
) -> int:
    """Regularity of the edge ideal I(g) (one more than the regularity of
    the quotient), via homology of independence complexes of all induced
    subgraphs. Needs at least one edge."""
    if not g.edges:
        raise InputError("regularity of an edge ideal needs at least one edge")
    limit = DEFAULT_HOCHSTER_GUARD if guard is None else guard
    if g.n > limit:
        raise GuardError(f"{g.n} vertices exceed the guard {limit}")
    adj = adjacency_masks(g)
    best = 0
    for mask in range(1 << g.n):
        if any(adj[v] & mask == 0 for v in iter_bits(mask)):
            continue  # isolated vertex in the subgraph: cone
        for d, c in _ind_dims(adj, mask, f.char).items():
            if c and d + 1 > best:
                best = d + 1
    return best + 1


def reg_edge_ideal_layered(gk: LayeredGraph, f: FieldChoice = RATIONALS) -> int:
    """Regularity of the edge ideal of a layered graph.

    Within one grid column the neighborhoods of (i,p) shrink as the layer p
    grows, so any subset holding two vertices of a column folds onto a
    smaller subset with identical homology. The maximum over all subsets is
    therefore attained among subsets with at most one vertex per column, and
    only those are swept.
    """
    if not gk.edges:
        raise InputError("regularity of an edge ideal needs at least one edge")
    plain, labels = as_plain_graph(gk)
    adj = adjacency_masks(plain)
    columns: dict[int, list[int]] = defaultdict(list)
    for idx, (i, _p) in enumerate(labels):
        if adj[idx]:
            columns[i].append(idx)
    best = 0
    options = [[None, *column] for column in columns.values()]
    for choice in itertools.product(*options):
        mask = 0
        for v in choice:
            if v is not None:
                mask |= 1 << v
        if any(adj[v] & mask == 0 for v in iter_bits(mask)):
            continue
        for d, c in _ind_dims(adj, mask, f.char).items():
            if c and d + 1 > best:
                best = d + 1
    return best + 1


def depth_symbolic_cover(
    g: Graph,
    k: int,
    f: FieldChoice = RATIONALS,
    guard: int | None = None,
) -> int:
    """Depth of S / J(g)^(k), where J is the cover ideal, computed by two
    independent routes that must agree:

    A. polarize the symbolic power and read pd off its Betti table; the
       depth is (vertex count) - pd since polarization preserves pd;
    B. (vertex count) - reg(I(G_k)) on the layered graph, converting the
       depth question into edge-ideal regularity.

    A disagreement is an internal error, never resolved silently.
    """
    if not g.edges:
        raise InputError("needs a graph with at least one edge")
    if k < 1:
        raise InputError("symbolic power exponent must be >= 1")
    limit = DEFAULT_HOCHSTER_GUARD if guard is None else guard
    if g.n * k > limit:
        raise GuardError(
            f"layered computation needs {g.n * k} vertices, guard is {limit}"
        )
    table = betti_table_squarefree(polarize(symbolic_power_cover(g, k)), f, limit)
    depth_a = g.n - table.pd
    depth_b = g.n - reg_edge_ideal_layered(build_gk(g, k), f)
    if depth_a != depth_b:
        raise ConsistencyError(
            f"depth routes disagree on k={k}: polarized Betti table gives "
            f"{depth_a}, layered regularity gives {depth_b}"
        )
    return depth_a
