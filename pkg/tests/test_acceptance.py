"""Acceptance criteria, one test each.

Every test is tagged with its criterion number; ``conftest.py`` prints one
PASS/FAIL line per criterion at the end of the run.  Running this file
directly does the same without pytest.
"""

from __future__ import annotations

import time
from math import factorial

from torcfg import expected
from torcfg.combinatorics import coeff_bruteforce, coeff_closed, partitions
from torcfg.complexes import complement_vertex_map, k_ij, k_p, l_pm
from torcfg.cover import polygon_cover_model, simplex_cover_model
from torcfg.euler import chi_orbit_config
from torcfg.homology import betti, homology, oriented_chain_complex, verify_simplicial_iso
from torcfg.linalg import Q, Z, Z2
from torcfg.polytope import cube, diagonal_preimage_cell_vector, eval_h, h_polynomial, ngon, simplex
from torcfg.spectral import convergence_report, double_complex, pages, row_doubling_check, total_homology

CRITERIA: dict[int, tuple[str, object]] = {}


def criterion(number: int, title: str):
    def mark(fn):
        fn.criterion = (number, title)
        CRITERIA[number] = (title, fn)
        return fn
    return mark


def trim(b) -> tuple:
    b = list(b)
    while b and b[-1] == 0:
        b.pop()
    return tuple(b)


_models: dict = {}


def polygon_model(m, d):
    key = ("polygon", m, d)
    if key not in _models:
        dc = double_complex(polygon_cover_model(m, d, Z))
        _models[key] = (dc, total_homology(dc))
    return _models[key]


def simplex_model(n, d):
    key = ("simplex", n, d)
    if key not in _models:
        dc = double_complex(simplex_cover_model(n, d))
        _models[key] = (dc, total_homology(dc))
    return _models[key]


def falling_factorial_coeffs(k):
    poly = [1]
    for l in range(k):
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= l * c
        poly = nxt
    return poly


@criterion(1, "closed-form C_I equals brute force for k <= 6, under 10 s")
def test_coefficient_oracle():
    start = time.perf_counter()
    for k in range(1, 7):
        brute = coeff_bruteforce(k)
        for I in partitions(k):
            assert coeff_closed(I) == brute[I], (k, I)
    assert time.perf_counter() - start < 10


@criterion(2, "sum of C_I over s-part partitions is the x^s coefficient of the falling factorial, k <= 8")
def test_stirling_identity():
    for k in range(1, 9):
        poly = falling_factorial_coeffs(k)
        for s in range(1, k + 1):
            assert sum(coeff_closed(I) for I in partitions(k) if I.s == s) == poly[s]


@criterion(3, "Euler characteristics over the interval: k! 2^(k-2) (d=1), 2 or 0 (d=2), 2 <= k <= 7")
def test_interval_point_counts():
    seg = simplex(1)
    for k in range(2, 8):
        assert chi_orbit_config(seg, 1, k) == factorial(k) * 2 ** (k - 2)
        assert chi_orbit_config(seg, 2, k) == (2 if k == 2 else 0)


@criterion(4, "diagonal-preimage chi equals h(1-2^l) (d=1) and h(1) (d=2), polygons 3..8, simplices 2..5, l <= 5")
def test_diagonal_preimage_identity():
    for p in [ngon(m) for m in range(3, 9)] + [simplex(n) for n in range(2, 6)]:
        h = h_polynomial(p)
        for ell in range(1, 6):
            assert diagonal_preimage_cell_vector(p, 1, ell)[1] == eval_h(h, 1 - 2 ** ell)
            assert diagonal_preimage_cell_vector(p, 2, ell)[1] == eval_h(h, 1)


@criterion(5, "annulus face counts for 5 <= m <= 12 and nerve vertex counts m(m-3) for m <= 9")
def test_complex_counts():
    for m in range(5, 13):
        assert l_pm(m).f_vector() == expected.annulus_counts(m)
    for m in range(4, 10):
        assert len(k_p(ngon(m)).vertices) == m * (m - 3)


@criterion(6, "K^n_{i,j} integral homology torsion-free with the closed-form Betti numbers, n <= 6, "
              "complement map gives K_{i,j} = K_{j,i}, under 2 min")
def test_kij_homology():
    start = time.perf_counter()
    for n in range(1, 7):
        cmap = complement_vertex_map(n)
        for i in range(n):
            for j in range(n - i):
                k = k_ij(n, i, j)
                h = homology(oriented_chain_complex(k, Z))
                assert h.torsion_free, (n, i, j)
                assert h.betti == expected.kij_betti(n, i, j), (n, i, j)
                assert verify_simplicial_iso(k, k_ij(n, j, i), cmap), (n, i, j)
    assert time.perf_counter() - start < 120


@criterion(7, "polygon models: integral total homology (1,7)/(1,1,6) at m=3 and (1,2m+1,m(m-3))/(1,1,2m,0,m(m-3)) "
              "for 4 <= m <= 8, torsion-free, under 2 min")
def test_polygon_tables():
    start = time.perf_counter()
    for m in range(3, 9):
        for d in (1, 2):
            _, h = polygon_model(m, d)
            assert trim(h.betti) == expected.polygon_betti(m, d), (m, d, h.betti)
            assert h.torsion_free
    assert time.perf_counter() - start < 120


@criterion(8, "simplex models: mod 2 Betti (1,2,...,n-1,(3^(n+1)+2n-3)/4) for d=1, n = 2..5, integral Betti "
              "from the b_k/f_i formula for d=2, n = 2..4, under 5 min")
def test_simplex_tables():
    start = time.perf_counter()
    for n in range(2, 6):
        _, h = simplex_model(n, 1)
        assert h.coeff == Z2
        assert trim(h.betti) == expected.simplex_betti(n, 1), (n, h.betti)
    for n in range(2, 5):
        _, h = simplex_model(n, 2)
        assert h.coeff == Z
        assert trim(h.betti) == trim(expected.simplex_betti(n, 2)), (n, h.betti)
    assert time.perf_counter() - start < 300


@criterion(9, "E^infinity sums to total homology, collapse at E^2, and the mod 2 E^2 of the d=1 simplex models "
              "matches K^n_{i,j} homology and its closed form")
def test_convergence_and_collapse():
    cases = [(polygon_model(m, d), [Q, Z2]) for m in range(3, 9) for d in (1, 2)]
    cases += [(simplex_model(n, 1), [Z2]) for n in range(2, 6)]
    cases += [(simplex_model(n, 2), [Q, Z2]) for n in range(2, 5)]
    for (dc, _), coeffs in cases:
        for coeff in coeffs:
            rep = convergence_report(pages(dc, coeff=coeff), total_homology(dc, coeff))
            assert rep.passed, (dc.model.context, dc.model.size, dc.model.d, coeff)
            assert rep.collapse_page <= 2
    for n in range(2, 6):
        dc, _ = simplex_model(n, 1)
        e2 = pages(dc).page(2)
        assert {k: v for k, v in e2.items() if v} == expected.simplex_e2(n)
        for q in range(n):
            parts = [homology(oriented_chain_complex(k_ij(n, i, q - i), Z2)) for i in range(q + 1)]
            for p in range(n):
                assert e2.get((p, q), 0) == sum(h.betti_in(p) for h in parts)
        assert e2[(0, n - 1)] == 2 ** (n + 1) - 2


@criterion(10, "mod 2: dim E^2_{p,q} (d=1) = dim E^2_{p,2q} (d=2), polygons m <= 6, simplices n <= 4")
def test_mod2_e2_comparison():
    for m in range(3, 7):
        assert row_doubling_check("polygon", m).passed, m
    for n in range(2, 5):
        assert row_doubling_check("simplex", n).passed, n


@criterion(11, "alternating Betti sums of every model equal the k=2 Euler characteristic formula")
def test_euler_cross_consistency():
    for m in range(3, 9):
        for d in (1, 2):
            _, h = polygon_model(m, d)
            assert h.euler_characteristic() == chi_orbit_config(ngon(m), d, 2), (m, d)
    for n in range(2, 6):
        _, h = simplex_model(n, 1)
        assert h.euler_characteristic() == chi_orbit_config(simplex(n), 1, 2), n
    for n in range(2, 5):
        _, h = simplex_model(n, 2)
        assert h.euler_characteristic() == chi_orbit_config(simplex(n), 2, 2), n


@criterion(12, "nerve K_P has the Betti numbers of S^(n-1) for the triangle, tetrahedron, polygons 3..9, cube")
def test_nerve_sphere():
    for p in [simplex(2), simplex(3), cube(3)] + [ngon(m) for m in range(3, 10)]:
        b = betti(k_p(p))
        assert trim(b) == (1,) + (0,) * (p.dim - 2) + (1,), (p.dim, p.n_facets, b)


if __name__ == "__main__":
    failed = 0
    for number in sorted(CRITERIA):
        title, fn = CRITERIA[number]
        try:
            fn()
            verdict = "PASS"
        except AssertionError as e:
            verdict, failed = f"FAIL ({e})", failed + 1
        print(f"criterion {number:2d}: {verdict}  {title}")
    raise SystemExit(1 if failed else 0)
