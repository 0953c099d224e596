"""Exact sparse linear algebra over Q(q): echelon forms, ranks, inverses."""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping, Sequence

from .scalars import ONE, ZERO, Scalar


def _reduce(v: dict, basis: list[tuple[Hashable, dict]]) -> dict:
    for piv, row in basis:
        c = v.get(piv)
        if c:
            for k, r in row.items():
                s = v.get(k, ZERO) - c * r
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
    return v


def echelon(vectors: Iterable[Mapping[Hashable, Scalar]]) -> list[tuple[Hashable, dict]]:
    """Reduce ``vectors`` to a list of ``(pivot, row)`` with ``row[pivot] == 1``.

    Each row vanishes at the pivots of the rows before it.
    """
    basis: list[tuple[Hashable, dict]] = []
    for vec in vectors:
        v = _reduce({k: c for k, c in vec.items() if c}, basis)
        if not v:
            continue
        piv = min(v, key=repr)
        inv = ONE / v[piv]
        basis.append((piv, {k: c * inv for k, c in v.items()}))
    return basis


def rank(vectors: Iterable[Mapping[Hashable, Scalar]]) -> int:
    return len(echelon(vectors))


def in_span(vec: Mapping[Hashable, Scalar], basis: list[tuple[Hashable, dict]]) -> bool:
    return not _reduce({k: c for k, c in vec.items() if c}, basis)


def inverse(matrix: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    """Gauss-Jordan inverse of a square matrix; raises ``ValueError`` if singular."""
    n = len(matrix)
    a = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = ONE / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]
