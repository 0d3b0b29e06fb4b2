"""Closed-form reference values the computations are compared against."""

from __future__ import annotations

from math import comb


def _c(n: int, k: int) -> int:
    return comb(n, k) if n >= 0 and 0 <= k <= n else 0


def polygon_betti(m: int, d: int) -> tuple[int, ...]:
    """Betti numbers of the two-point orbit configuration space over an m-gon."""
    if m == 3:
        return (1, 7) if d == 1 else (1, 1, 6)
    if d == 1:
        return (1, 2 * m + 1, m * (m - 3))
    return (1, 1, 2 * m, 0, m * (m - 3))


def simplex_betti(n: int, d: int) -> tuple[int, ...]:
    """Mod 2 Betti numbers (d=1) or integral Betti numbers (d=2) over the n-simplex."""
    if d == 1:
        return tuple(range(1, n)) + ((3 ** (n + 1) + 2 * n - 3) // 4,)

    def f(i):
        return sum(_c(n + 1, s) * _c(n - s - 1, i - s) for s in range(i + 1)) if i >= 0 else 0

    return tuple((k // 2 + 1 + f(k - n + 1)) if k % 2 == 0 else f(k - n + 1) for k in range(2 * n - 1))


def kij_top_betti(n: int, i: int, j: int) -> int:
    return sum((-1) ** (s + j) * _c(n + 1, s) * _c(n - s, n - i - s) for s in range(j + 1))


def kij_betti(n: int, i: int, j: int) -> tuple[int, ...]:
    """Betti numbers of K^n_{i,j}, indexed by degree 0 .. n-i-j-1."""
    if n == i + j + 1:
        return (_c(n + 1, i + 1),)
    top = n - i - j - 1
    out = [0] * (top + 1)
    out[0] = 1
    out[top] += kij_top_betti(n, i, j)
    return tuple(out)


def simplex_e2(n: int) -> dict[tuple[int, int], int]:
    """Nonzero dims of E^2_{p,q} for the d=1 simplex model mod 2 (q counts generators, not degree)."""
    out = {}
    for q in range(n):
        out[(0, q)] = q + 1 if q < n - 1 else 2 ** (n + 1) - 2
    for p in range(1, n):
        q = n - 1 - p
        v = sum(kij_top_betti(n, i, q - i) for i in range(q + 1))
        if v:
            out[(p, q)] = v
    return out


def annulus_counts(m: int) -> tuple[int, int, int]:
    """Face counts of the annulus subcomplex for m >= 5."""
    return (m * (m - 3), m * (3 * m - 11), 2 * m * (m - 4))
