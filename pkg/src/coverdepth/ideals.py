"""Monomial ideals with exact antichain arithmetic.

A ring is a tuple of variable labels; a label is either an integer i
(base variable x_i) or a pair (i, p) (layered variable x_{i,p}, layer p of
base variable i). Monomials are exponent tuples aligned with the ring's
label order; an ideal stores its inclusion-minimal generators only.

Operations: intersection (pairwise lcm), ordinary power, minimal primes,
symbolic power (intersection of minimal-prime powers), the cover/edge ideals
of a graph, polarization into the layered variable space, and squarefree
Alexander duality (minimal hitting sets of generator supports).
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterable
from dataclasses import dataclass

from ._bits import iter_bits, mask_of, minimal_hitting_sets
from .errors import InputError, ParseError
from .graphs import Graph

# A variable label is an int (base x_i) or an (i, p) pair (layered x_{i,p}).
Monomial = tuple[int, ...]


@dataclass(frozen=True)
class Ring:
    """An ordered tuple of variable labels (all ints, or all layer pairs)."""

    labels: tuple

    def __post_init__(self) -> None:
        if len(set(self.labels)) != len(self.labels):
            raise InputError("duplicate variable labels")
        kinds = {isinstance(lab, tuple) for lab in self.labels}
        if len(kinds) > 1:
            raise InputError("cannot mix base and layered variables")
        if tuple(sorted(self.labels)) != self.labels:
            raise InputError("ring labels must be sorted")

    @property
    def num_vars(self) -> int:
        return len(self.labels)

    @property
    def is_layered(self) -> bool:
        return bool(self.labels) and isinstance(self.labels[0], tuple)

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"label {label!r} not in ring") from None


def base_ring(n: int) -> Ring:
    if n < 1:
        raise InputError("ring needs at least one variable")
    return Ring(tuple(range(1, n + 1)))


def layered_ring(labels: Iterable[tuple[int, int]]) -> Ring:
    labs = tuple(sorted(set(labels)))
    if not labs:
        raise InputError("ring needs at least one variable")
    for lab in labs:
        if not (isinstance(lab, tuple) and len(lab) == 2 and lab[0] >= 1 and lab[1] >= 1):
            raise InputError(f"bad layered label {lab!r}")
    return Ring(labs)


def var_name(label) -> str:
    if isinstance(label, tuple):
        return f"x{label[0]}_{label[1]}"
    return f"x{label}"


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal, stored by its minimal generators."""

    ring: Ring
    gens: frozenset[Monomial]

    def __post_init__(self) -> None:
        for g in self.gens:
            if len(g) != self.ring.num_vars or any(e < 0 for e in g):
                raise InputError(f"bad exponent tuple {g!r}")

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return tuple([0] * self.ring.num_vars) in self.gens

    def sorted_gens(self) -> list[Monomial]:
        """Generators sorted by (total degree, exponent vector descending)."""
        return sorted(self.gens, key=lambda g: (sum(g), tuple(-e for e in g)))


def _minimalize(gens: Iterable[Monomial]) -> frozenset[Monomial]:
    ordered = sorted(set(gens), key=lambda g: (sum(g), g))
    kept: list[Monomial] = []
    for g in ordered:
        if not any(all(x <= y for x, y in zip(h, g)) for h in kept):
            kept.append(g)
    return frozenset(kept)


def monomial_ideal(ring: Ring, gens: Iterable[Iterable[int]]) -> MonomialIdeal:
    """Build an ideal from any generating set; generators are minimalized."""
    return MonomialIdeal(ring, _minimalize(tuple(g) for g in gens))


def minimalize(ring: Ring, gens: Iterable[Iterable[int]]) -> MonomialIdeal:
    """Public alias of the antichain reduction."""
    return monomial_ideal(ring, gens)


def support(mono: Monomial) -> tuple[int, ...]:
    return tuple(i for i, e in enumerate(mono) if e > 0)


def is_squarefree(ideal: MonomialIdeal) -> bool:
    return all(e <= 1 for g in ideal.gens for e in g)


def total_degree(mono: Monomial) -> int:
    return sum(mono)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def contains_monomial(ideal: MonomialIdeal, mono: Monomial) -> bool:
    return any(divides(g, mono) for g in ideal.gens)


def _require_same_ring(a: MonomialIdeal, b: MonomialIdeal) -> None:
    if a.ring != b.ring:
        raise InputError("ideals live in different rings; embed them first")


def intersect(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """Intersection via pairwise least common multiples."""
    _require_same_ring(a, b)
    return monomial_ideal(a.ring, (lcm(g, h) for g in a.gens for h in b.gens))


def power(ideal: MonomialIdeal, k: int) -> MonomialIdeal:
    """Ordinary k-th power; k = 0 gives the unit ideal."""
    if k < 0:
        raise InputError("power needs k >= 0")
    if k == 0:
        return monomial_ideal(ideal.ring, [tuple([0] * ideal.ring.num_vars)])
    if ideal.is_zero:
        return ideal
    prods = []
    for combo in itertools.combinations_with_replacement(sorted(ideal.gens), k):
        prods.append(tuple(sum(col) for col in zip(*combo)))
    return monomial_ideal(ideal.ring, prods)


def edge_ideal(g: Graph) -> MonomialIdeal:
    """Ideal generated by x_u x_v over the edges of g."""
    ring = base_ring(g.n)
    gens = []
    for u, v in g.sorted_edges():
        exps = [0] * g.n
        exps[u - 1] = 1
        exps[v - 1] = 1
        gens.append(tuple(exps))
    return MonomialIdeal(ring, frozenset(gens))


def cover_ideal(g: Graph) -> MonomialIdeal:
    """Ideal whose generators are the minimal vertex covers of g; equals the
    intersection of (x_u, x_v) over all edges."""
    if not g.edges:
        raise InputError("cover ideal needs at least one edge")
    ring = base_ring(g.n)
    edge_masks = [mask_of((u - 1, v - 1)) for u, v in g.sorted_edges()]
    gens = []
    for cover in minimal_hitting_sets(edge_masks):
        exps = [0] * g.n
        for i in iter_bits(cover):
            exps[i] = 1
        gens.append(tuple(exps))
    return MonomialIdeal(ring, frozenset(gens))


def minimal_primes(ideal: MonomialIdeal) -> list[tuple]:
    """Minimal primes of a nonzero proper monomial ideal, each given as a
    sorted tuple of variable labels; these are the minimal transversals of
    the generator supports."""
    if ideal.is_zero or ideal.is_unit:
        raise InputError("minimal primes need a nonzero proper ideal")
    support_masks = [mask_of(support(g)) for g in ideal.gens]
    primes = []
    for h in minimal_hitting_sets(support_masks):
        primes.append(tuple(ideal.ring.labels[i] for i in iter_bits(h)))
    return sorted(primes, key=lambda p: (len(p), p))


def _prime_power(ring: Ring, prime_indices: tuple[int, ...], k: int) -> MonomialIdeal:
    gens = []
    for combo in itertools.combinations_with_replacement(prime_indices, k):
        exps = [0] * ring.num_vars
        for i in combo:
            exps[i] += 1
        gens.append(tuple(exps))
    return MonomialIdeal(ring, frozenset(gens))


def symbolic_power(ideal: MonomialIdeal, k: int) -> MonomialIdeal:
    """k-th symbolic power of a squarefree ideal: the intersection of the
    k-th powers of its minimal primes."""
    if not is_squarefree(ideal):
        raise InputError("symbolic power implemented for squarefree ideals")
    if k < 1:
        raise InputError("symbolic power needs k >= 1")
    result: MonomialIdeal | None = None
    for prime in minimal_primes(ideal):
        idx = tuple(ideal.ring.index(lab) for lab in prime)
        pk = _prime_power(ideal.ring, idx, k)
        result = pk if result is None else intersect(result, pk)
    assert result is not None
    return result


def symbolic_power_cover(g: Graph, k: int) -> MonomialIdeal:
    """k-th symbolic power of the cover ideal of g.

    A monomial x^a lies in the intersection of (x_u, x_v)^k over the edges
    exactly when a_u + a_v >= k for every edge, and minimal such vectors have
    entries <= k, so the minimal generators are enumerated directly. The
    generic route (symbolic_power of cover_ideal) is the same definition and
    the two are cross-checked in tests.
    """
    if not g.edges:
        raise InputError("cover ideal needs at least one edge")
    if k < 1:
        raise InputError("symbolic power needs k >= 1")
    edges = g.sorted_edges()
    satisfying = []
    for vec in itertools.product(range(k + 1), repeat=g.n):
        if all(vec[u - 1] + vec[v - 1] >= k for u, v in edges):
            satisfying.append(vec)
    return monomial_ideal(base_ring(g.n), satisfying)


def polarize(ideal: MonomialIdeal) -> MonomialIdeal:
    """Exponent-splitting transform into the layered variable space.

    x_i^a contributes the product x_{i,1} x_{i,2} ... x_{i,a}; the result is
    squarefree and has the same graded Betti numbers as the input. Input must
    live in a base ring (no double polarization).
    """
    if ideal.ring.is_layered:
        raise InputError("ideal is already polarized")
    if ideal.is_zero:
        raise InputError("polarization needs a nonzero ideal")
    n = ideal.ring.num_vars
    max_exp = [0] * n
    for gmono in ideal.gens:
        for i, e in enumerate(gmono):
            max_exp[i] = max(max_exp[i], e)
    labels = [
        (ideal.ring.labels[i], p)
        for i in range(n)
        for p in range(1, max_exp[i] + 1)
    ]
    ring = layered_ring(labels)
    gens = []
    for gmono in ideal.gens:
        exps = [0] * ring.num_vars
        for i, e in enumerate(gmono):
            for p in range(1, e + 1):
                exps[ring.index((ideal.ring.labels[i], p))] = 1
        gens.append(tuple(exps))
    return MonomialIdeal(ring, frozenset(gens))


def alexander_dual(ideal: MonomialIdeal) -> MonomialIdeal:
    """Squarefree Alexander dual: generators are the minimal transversals of
    the generator supports. An involution on squarefree ideals."""
    if not is_squarefree(ideal):
        raise InputError("Alexander dual implemented for squarefree ideals")
    if ideal.is_zero or ideal.is_unit:
        raise InputError("Alexander dual needs a nonzero proper ideal")
    support_masks = [mask_of(support(g)) for g in ideal.gens]
    gens = []
    for h in minimal_hitting_sets(support_masks):
        exps = [0] * ideal.ring.num_vars
        for i in iter_bits(h):
            exps[i] = 1
        gens.append(tuple(exps))
    return MonomialIdeal(ideal.ring, frozenset(gens))


def as_label_dict(ring: Ring, mono: Monomial) -> frozenset:
    return frozenset(
        (lab, e) for lab, e in zip(ring.labels, mono) if e > 0
    )


def equal(a: MonomialIdeal, b: MonomialIdeal) -> bool:
    """Ideal equality; ideals in different rings are compared through the
    variable-label bijection (ambient variables that appear in no generator
    are immaterial)."""
    if a.ring == b.ring:
        return a.gens == b.gens
    da = {as_label_dict(a.ring, g) for g in a.gens}
    db = {as_label_dict(b.ring, g) for g in b.gens}
    return da == db


def embed(ideal: MonomialIdeal, ring: Ring) -> MonomialIdeal:
    """Re-express an ideal in a larger ring containing all its labels."""
    positions = [ring.index(lab) for lab in ideal.ring.labels]
    gens = []
    for g in ideal.gens:
        exps = [0] * ring.num_vars
        for pos, e in zip(positions, g):
            exps[pos] = e
        gens.append(tuple(exps))
    return MonomialIdeal(ring, frozenset(gens))


# ---------------------------------------------------------------------------
# text and JSON forms
# ---------------------------------------------------------------------------

_FACTOR_RE = re.compile(r"^x(\d+)(?:_(\d+))?(?:\^(\d+))?$")


def format_monomial(ring: Ring, mono: Monomial) -> str:
    if all(e == 0 for e in mono):
        return "1"
    parts = []
    for lab, e in zip(ring.labels, mono):
        if e == 1:
            parts.append(var_name(lab))
        elif e > 1:
            parts.append(f"{var_name(lab)}^{e}")
    return " ".join(parts)


def format_ideal_text(ideal: MonomialIdeal) -> str:
    if ideal.is_zero:
        return "(0)"
    return "(" + ", ".join(format_monomial(ideal.ring, g) for g in ideal.sorted_gens()) + ")"


def parse_ideal_text(text: str) -> MonomialIdeal:
    """Parse the canonical text form; the variable space is inferred from the
    labels that appear (base x3, layered x3_2)."""
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ParseError("ideal literal must be wrapped in parentheses")
    body = body[1:-1].strip()
    if body == "0":
        raise ParseError("zero ideal literal has no variable space to infer")
    terms = [t.strip() for t in body.split(",")]
    if any(not t for t in terms):
        raise ParseError("empty generator in ideal literal")
    parsed: list[dict] = []
    labels: set = set()
    layered = None
    for term in terms:
        factors = {}
        if term != "1":
            for factor in term.split():
                m = _FACTOR_RE.match(factor)
                if not m:
                    raise ParseError(f"bad monomial factor {factor!r}")
                i, p, e = m.groups()
                lab = (int(i), int(p)) if p is not None else int(i)
                is_layer = p is not None
                if layered is None:
                    layered = is_layer
                elif layered != is_layer:
                    raise ParseError("cannot mix base and layered variables")
                exp = int(e) if e is not None else 1
                if lab in factors:
                    raise ParseError(f"repeated variable in {term!r}")
                factors[lab] = exp
                labels.add(lab)
        parsed.append(factors)
    if not labels:
        raise ParseError("unit ideal literal has no variable space to infer")
    if layered:
        ring = layered_ring(labels)
    else:
        ring = base_ring(max(labels))
    gens = []
    for factors in parsed:
        exps = [0] * ring.num_vars
        for lab, e in factors.items():
            exps[ring.index(lab)] = e
        gens.append(tuple(exps))
    return monomial_ideal(ring, gens)


def ideal_to_json(ideal: MonomialIdeal) -> dict:
    labels = [list(lab) if isinstance(lab, tuple) else lab for lab in ideal.ring.labels]
    return {"vars": labels, "gens": [list(g) for g in ideal.sorted_gens()]}


def ideal_from_json(data: dict) -> MonomialIdeal:
    try:
        labels = tuple(
            tuple(lab) if isinstance(lab, list) else int(lab) for lab in data["vars"]
        )
        gens = [tuple(int(e) for e in g) for g in data["gens"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad ideal JSON: {exc}") from exc
    ring = Ring(tuple(sorted(labels)))
    if ring.labels != labels:
        raise ParseError("ideal JSON variables must be sorted")
    return monomial_ideal(ring, gens)
