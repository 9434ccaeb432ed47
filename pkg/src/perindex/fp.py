"""Linear algebra over prime fields, via sympy's sparse DomainMatrix."""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from sympy import GF
from sympy.polys.matrices import DomainMatrix


class NotPrime(ValueError):
    pass


@lru_cache(maxsize=None)
def field(p: int):
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise NotPrime(f"{p} is not prime")
    return GF(p, symmetric=False)


def matrix(rows: Sequence[Sequence[int]] | dict, shape: tuple[int, int], p: int) -> DomainMatrix:
    """Sparse F_p matrix from dense rows or a {(i, j): v} dict."""
    F = field(p)
    sdm: dict[int, dict[int, object]] = {}
    items = rows.items() if isinstance(rows, dict) else (
        ((i, j), v) for i, row in enumerate(rows) for j, v in enumerate(row))
    for (i, j), v in items:
        v %= p
        if v:
            sdm.setdefault(i, {})[j] = F(v)
    return DomainMatrix(sdm, shape, F)


def _to_int_rows(M: DomainMatrix, p: int) -> list[list[int]]:
    return [[int(x) % p for x in row] for row in M.to_list()]


def rank(rows, shape: tuple[int, int], p: int) -> int:
    if 0 in shape:
        return 0
    return matrix(rows, shape, p).rank()


def nullspace(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {x : A x = 0} over F_p (A given by dense rows)."""
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    ns = matrix(rows, (len(rows), ncols), p).nullspace()
    if ns.shape[0] == 0 or ns.shape[1] == 0:
        return []
    return _to_int_rows(ns, p)


def solve(rows: Sequence[Sequence[int]], rhs: Sequence[int], p: int) -> list[int] | None:
    """One solution of A x = b over F_p, or None when inconsistent."""
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    if m == 0:
        return [0] * ncols
    R, pivots = matrix(aug, (m, ncols + 1), p).rref()
    if ncols in pivots:
        return None
    dense = _to_int_rows(R, p)
    x = [0] * ncols
    for r, c in enumerate(pivots):
        x[c] = dense[r][ncols]
    return x


def rref(rows: Sequence[Sequence[int]], ncols: int, p: int) -> tuple[list[list[int]], tuple[int, ...]]:
    if not rows:
        return [], ()
    R, piv = matrix(rows, (len(rows), ncols), p).rref()
    return _to_int_rows(R, p), tuple(piv)
