from collections import Counter
from itertools import combinations, permutations
from math import factorial, prod

import pytest

from torcfg.combinatorics import (Partition, coeff_bruteforce, coeff_closed, cycle_type_count, partitions,
                                  set_partition_count)
from torcfg.errors import BadParameter, TooLarge

P = Partition.of


def falling_factorial_coeffs(k):
    """Coefficients of x(x-1)...(x-k+1), lowest degree first."""
    poly = [1]
    for l in range(k):
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= l * c
        poly = nxt
    return poly


def test_partition_counts():
    assert partitions(1) == [P(1)]
    assert len(partitions(4)) == 5
    assert len(partitions(7)) == 15
    assert partitions(3) == [P(3), P(2, 1), P(1, 1, 1)]
    with pytest.raises(BadParameter):
        partitions(0)


def test_partition_canonical_order():
    assert P(1, 3, 2).parts == (3, 2, 1)
    assert P(2, 2, 1).multiplicities == {2: 2, 1: 1}


def test_closed_examples():
    for k in range(1, 8):
        assert coeff_closed(P(k)) == (-1) ** (k - 1) * factorial(k - 1)
        assert coeff_closed(P(*[1] * k)) == 1
    assert coeff_closed(P(2, 1)) == -3


def test_bruteforce_examples():
    assert coeff_bruteforce(3) == {P(3): 2, P(2, 1): -3, P(1, 1, 1): 1}
    assert coeff_bruteforce(2) == {P(2): -1, P(1, 1): 1}
    assert coeff_bruteforce(4)[P(2, 2)] == 3
    with pytest.raises(TooLarge):
        coeff_bruteforce(7)


def test_bruteforce_parallel_matches_serial():
    assert coeff_bruteforce(5, workers=3) == coeff_bruteforce(5, workers=1)


def test_cycle_type_counts_against_permutations():
    for k in range(1, 7):
        counts = Counter()
        for perm in permutations(range(k)):
            seen, lengths = set(), []
            for s in range(k):
                if s in seen:
                    continue
                n, x = 0, s
                while x not in seen:
                    seen.add(x)
                    x = perm[x]
                    n += 1
                lengths.append(n)
            counts[P(*lengths)] += 1
        for I in partitions(k):
            assert cycle_type_count(I) == counts[I]
    assert cycle_type_count(P(2, 2)) == 3


def test_closed_is_signed_cycle_count():
    for k in range(1, 11):
        for I in partitions(k):
            assert coeff_closed(I) == (-1) ** (k - I.s) * cycle_type_count(I)


def test_stirling_identity():
    for k in range(1, 9):
        poly = falling_factorial_coeffs(k)
        for s in range(1, k + 1):
            assert sum(coeff_closed(I) for I in partitions(k) if I.s == s) == poly[s]


def connected_signed_count(n):
    """Sum of (-1)^|E| over connected spanning subgraphs of K_n, by enumeration."""
    edges = list(combinations(range(n), 2))
    total = 0
    for mask in range(1 << len(edges)):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x
        for e, (a, b) in enumerate(edges):
            if mask >> e & 1:
                parent[find(a)] = find(b)
        if len({find(v) for v in range(n)}) == 1:
            total += (-1) ** bin(mask).count("1")
    return total


def test_bucket_totals_factor_by_block_placement():
    # subgraphs with component sizes I = a choice of vertex blocks times a connected graph on each
    per_shape = {n: connected_signed_count(n) for n in range(1, 7)}
    for k in range(1, 7):
        brute = coeff_bruteforce(k)
        for I in partitions(k):
            assert brute[I] == set_partition_count(I) * prod(per_shape[n] for n in I.parts)
            blocks = factorial(k) // (prod(factorial(n) for n in I.parts)
                                      * prod(factorial(r) for r in I.multiplicities.values()))
            assert set_partition_count(I) == blocks
