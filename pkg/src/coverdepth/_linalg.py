"""Exact rank computation for small integer matrices.

Ranks drive every homology dimension in this package, so they must be exact:
over the rationals a fraction-free Bareiss elimination on Python integers,
over F2 a bitmask XOR elimination, and over other prime fields a modular
Gaussian elimination. Characteristic 0 means the rationals throughout.
"""

from __future__ import annotations

from collections.abc import Sequence


def rank_over_q(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals of an integer matrix, by fraction-free
    (Bareiss) elimination; all intermediate values stay integers."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    cols = len(m[0])
    rank = 0
    prev = 1
    for c in range(cols):
        pivot = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(rank + 1, len(m)):
            for j in range(c + 1, cols):
                m[i][j] = (m[i][j] * m[rank][c] - m[i][c] * m[rank][j]) // prev
            m[i][c] = 0
        prev = m[rank][c]
        rank += 1
        if rank == len(m):
            break
    return rank


def rank_mod_2(rows: Sequence[Sequence[int]]) -> int:
    """Rank over F2; rows are packed into integers and eliminated by XOR."""
    basis: list[int] = []
    for r in rows:
        v = 0
        for j, e in enumerate(r):
            if e & 1:
                v |= 1 << j
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank over the prime field F_p by modular Gaussian elimination."""
    m = [[e % p for e in r] for r in rows]
    m = [r for r in m if any(r)]
    if not m:
        return 0
    cols = len(m[0])
    rank = 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [e * inv % p for e in m[rank]]
        for i in range(rank + 1, len(m)):
            if m[i][c]:
                f = m[i][c]
                m[i] = [(e - f * er) % p for e, er in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def rank(rows: Sequence[Sequence[int]], char: int) -> int:
    """Rank over the field of the given characteristic (0 = rationals)."""
    if char == 0:
        return rank_over_q(rows)
    if char == 2:
        return rank_mod_2(rows)
    return rank_mod_p(rows, char)
