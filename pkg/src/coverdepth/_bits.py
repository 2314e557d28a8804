"""Bitmask helpers for set families over a small ground set.

Sets over a ground set of at most ~30 elements are represented as Python
ints; element i corresponds to bit i (0-based). All public functions here are
pure and deterministic.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    """Build a mask from an iterable of 0-based element indices."""
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def minimalize_masks(masks: Iterable[int]) -> list[int]:
    """Return the inclusion-minimal elements of a family of set masks.

    Duplicates are dropped. The result is sorted by (popcount, value) so that
    downstream iteration is deterministic.
    """
    ordered = sorted(set(masks), key=lambda m: (m.bit_count(), m))
    kept: list[int] = []
    for m in ordered:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def minimal_hitting_sets(masks: Iterable[int]) -> list[int]:
    """Return all inclusion-minimal transversals of a family of set masks.

    Incremental Berge dualization: fold each set into the running antichain
    of minimal hitting sets. Applied twice it is the identity on antichains
    of nonempty sets. An empty family has the empty set as its unique
    transversal; a family containing the empty set has none.
    """
    current = [0]
    for s in sorted(set(masks), key=lambda m: (m.bit_count(), m)):
        if s == 0:
            return []
        hitting = [h for h in current if h & s]
        missing = [h for h in current if not h & s]
        candidates = hitting + [h | (1 << v) for h in missing for v in iter_bits(s)]
        current = minimalize_masks(candidates)
    return current
