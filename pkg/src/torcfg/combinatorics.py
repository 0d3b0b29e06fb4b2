"""Integer partitions and the signed subgraph counts C_I.

C_I is the sum of (-1)^|E| over all edge subsets E of the complete graph
on [k] whose connected components (isolated vertices included) have sizes
given by the partition I.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import factorial, prod

from .errors import BadParameter, TooLarge

BRUTEFORCE_MAX_K = 6


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts or any(p < 1 for p in self.parts):
            raise BadParameter(f"invalid partition {self.parts}")
        if list(self.parts) != sorted(self.parts, reverse=True):
            object.__setattr__(self, "parts", tuple(sorted(self.parts, reverse=True)))

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @property
    def k(self) -> int:
        return sum(self.parts)

    @property
    def s(self) -> int:
        return len(self.parts)

    @cached_property
    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.parts))

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def partitions(k: int) -> list[Partition]:
    """All partitions of k, in lexicographically descending order."""
    if k < 1:
        raise BadParameter(f"k must be >= 1, got {k}")
    out: list[Partition] = []

    def rec(remaining: int, largest: int, prefix: list[int]):
        if remaining == 0:
            out.append(Partition(tuple(prefix)))
            return
        for part in range(min(remaining, largest), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(k, k, [])
    return out


def cycle_type_count(I: Partition) -> int:
    """Number of permutations of [k] with cycle type I."""
    denom = prod(factorial(r) for r in I.multiplicities.values()) * prod(I.parts)
    return factorial(I.k) // denom


def set_partition_count(I: Partition) -> int:
    """Number of set partitions of [k] whose block sizes are I."""
    denom = prod(factorial(p) for p in I.parts) * prod(factorial(r) for r in I.multiplicities.values())
    return factorial(I.k) // denom


def coeff_closed(I: Partition) -> int:
    k, s = I.k, I.s
    num = factorial(k)
    denom = prod(factorial(r) for r in I.multiplicities.values()) * prod(I.parts)
    q, rem = divmod(num, denom)
    assert rem == 0
    return (-1) ** (k - s) * q


def _component_partition(k: int, edges: list[tuple[int, int]], mask: int) -> tuple[int, ...]:
    parent = list(range(k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    e = 0
    while mask:
        if mask & 1:
            a, b = edges[e]
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        mask >>= 1
        e += 1
    sizes = Counter(find(v) for v in range(k))
    return tuple(sorted(sizes.values(), reverse=True))


def _bucket_range(args) -> dict[tuple[int, ...], int]:
    k, lo, hi = args
    edges = list(combinations(range(k), 2))
    acc: dict[tuple[int, ...], int] = {}
    for mask in range(lo, hi):
        key = _component_partition(k, edges, mask)
        sign = -1 if bin(mask).count("1") & 1 else 1
        acc[key] = acc.get(key, 0) + sign
    return acc


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("TORCFG_THREADS", "1")))
    except ValueError:
        return 1


def coeff_bruteforce(k: int, workers: int | None = None) -> dict[Partition, int]:
    """C_I for every partition of k, by enumerating all edge subsets of K_k."""
    if k > BRUTEFORCE_MAX_K:
        raise TooLarge(f"brute force over 2^{k * (k - 1) // 2} edge subsets refused (k <= {BRUTEFORCE_MAX_K})")
    if k < 1:
        raise BadParameter(f"k must be >= 1, got {k}")
    total = 1 << (k * (k - 1) // 2)
    workers = worker_count() if workers is None else workers
    if workers > 1 and total >= 1 << 10:
        step = -(-total // workers)
        chunks = [(k, lo, min(total, lo + step)) for lo in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_bucket_range, chunks))
    else:
        parts = [_bucket_range((k, 0, total))]
    merged: dict[tuple[int, ...], int] = {}
    for part in parts:
        for key, v in part.items():
            merged[key] = merged.get(key, 0) + v
    return {I: merged.get(I.parts, 0) for I in partitions(k)}
