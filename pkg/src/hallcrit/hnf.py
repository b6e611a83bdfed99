"""Exact integer row reduction: Hermite normal form, membership, kernels.

Convention (row style): basis rows are in echelon form with strictly increasing
pivot columns, every pivot is positive, and every entry above a pivot lies in
``[0, pivot)``. Zero rows are dropped. This form is unique for a given
subgroup of Z^n, so two spans are equal iff their forms are equal.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Vector = tuple[int, ...]
Basis = tuple[Vector, ...]


def _echelon(rows: list[list[int]], ncols: int, track: list[list[int]] | None = None):
    """In-place unimodular row reduction on the first ``ncols`` columns.

    Returns the pivot columns; rows below ``len(pivots)`` are zero in those
    columns. ``track`` receives the same row operations.
    """
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][c]]
            if not nz:
                break
            i = min(nz, key=lambda k: abs(rows[k][c]))
            if i != r:
                rows[r], rows[i] = rows[i], rows[r]
                if track is not None:
                    track[r], track[i] = track[i], track[r]
            p = rows[r][c]
            done = True
            for k in range(r + 1, len(rows)):
                q = rows[k][c] // p
                if q:
                    rows[k] = [a - q * b for a, b in zip(rows[k], rows[r])]
                    if track is not None:
                        track[k] = [a - q * b for a, b in zip(track[k], track[r])]
                if rows[k][c]:
                    done = False
            if done:
                break
        if any(rows[i][c] for i in range(r, len(rows))):
            if rows[r][c] < 0:
                rows[r] = [-a for a in rows[r]]
                if track is not None:
                    track[r] = [-a for a in track[r]]
            pivots.append(c)
            r += 1
    return pivots


def hnf(vectors: Iterable[Sequence[int]], n: int | None = None) -> Basis:
    """Canonical basis of the integer span of ``vectors``."""
    rows = [[int(x) for x in v] for v in vectors]
    if n is None:
        n = len(rows[0]) if rows else 0
    for v in rows:
        if len(v) != n:
            raise ValueError(f"vector of length {len(v)} in ambient rank {n}")
    pivots = _echelon(rows, n)
    rows = rows[: len(pivots)]
    for r, c in enumerate(pivots):
        p = rows[r][c]
        for k in range(r):
            q = rows[k][c] // p
            if q:
                rows[k] = [a - q * b for a, b in zip(rows[k], rows[r])]
    return tuple(tuple(v) for v in rows)


def pivot_columns(basis: Basis) -> list[int]:
    return [next(i for i, x in enumerate(row) if x) for row in basis]


def coordinates(basis: Basis, v: Sequence[int]) -> tuple[int, ...] | None:
    """Integer coefficients expressing ``v`` in an HNF ``basis``, or None if
    ``v`` is not in the span."""
    v = list(v)
    coeffs = []
    for row, c in zip(basis, pivot_columns(basis)):
        q, rem = divmod(v[c], row[c])
        if rem:
            return None
        coeffs.append(q)
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    if any(v):
        return None
    return tuple(coeffs)


def contains(basis: Basis, v: Sequence[int]) -> bool:
    return coordinates(basis, v) is not None


def kernel(matrix: Sequence[Sequence[int]], n: int) -> Basis:
    """Canonical basis of ``{v in Z^n : matrix @ v = 0}`` for an m x n matrix."""
    m = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise ValueError("matrix rows must have length n")
    # rows of the transpose, each tagged with a unit vector tracking the combination
    rows = [[int(matrix[i][j]) for i in range(m)] for j in range(n)]
    track = [[int(i == j) for i in range(n)] for j in range(n)]
    rank = len(_echelon(rows, m, track))
    return hnf(track[rank:], n)


def matvec(matrix: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in matrix)
