import pytest

from torcfg.complexes import (FacePair, complement_vertex_map, k_ij, k_p, k_pm, l_pm, locally_nice_check,
                              maximal_disjoint_pairs, sd_boundary_simplex)
from torcfg.errors import BadParameter, VertexMismatch
from torcfg.homology import SimplicialComplex, betti, verify_simplicial_iso
from torcfg.polytope import cube, ngon, simplex


def labels(k):
    return {str(v) for v in k.vertices}


def test_kp_examples():
    hexagon = k_p(simplex(2))
    assert hexagon.f_vector() == (6, 6)
    assert betti(hexagon) == [1, 1]
    square = k_p(ngon(4))
    assert square.f_vector() == (4, 4)
    assert labels(square) == {"F1xF3", "F2xF4", "F3xF1", "F4xF2"}
    assert len(k_p(ngon(7)).vertices) == 28
    with pytest.raises(BadParameter):
        k_p(simplex(1))


@pytest.mark.parametrize("m", range(3, 10))
def test_explicit_polygon_complex_is_the_nerve(m):
    assert k_pm(m) == k_p(ngon(m))
    assert len(k_pm(m).vertices) == (6 if m == 3 else m * (m - 3))


def test_kpm_examples():
    assert len(k_pm(5).vertices) == 10
    assert betti(k_pm(5))[:2] == [1, 1]
    six = k_pm(6)
    tet = {"F1xF4", "F2xF4", "F1xF5", "F2xF5"}
    assert any({str(v) for v in s} == tet for s in six.simplices(3))
    # adjacent edges meet, so F2xF3 is not a vertex at all
    assert "F2xF3" not in labels(six)


def test_lpm_examples():
    assert l_pm(7).f_vector() == (28, 70, 42)
    assert betti(l_pm(6)) == [1, 1, 0]
    assert l_pm(4) == k_pm(4)
    assert l_pm(6).is_subcomplex_of(k_pm(6))


def test_sd_boundary():
    assert sd_boundary_simplex(2).f_vector() == (6, 6)
    assert sd_boundary_simplex(3).f_vector()[0] == 14
    assert betti(sd_boundary_simplex(3)) == [1, 0, 1]
    assert betti(sd_boundary_simplex(4)) == [1, 0, 0, 1]
    with pytest.raises(BadParameter):
        sd_boundary_simplex(1)


def test_kij_examples():
    six = k_ij(3, 1, 1)
    assert six.f_vector() == (6,)
    assert k_ij(2, 0, 0) == sd_boundary_simplex(2)
    assert betti(k_ij(4, 1, 0)) == [1, 0, 4]
    with pytest.raises(BadParameter):
        k_ij(3, 2, 1)


def test_kij_monotone():
    n = 4
    for i in range(n):
        for j in range(n - i):
            for i2 in range(i + 1):
                for j2 in range(j + 1):
                    assert k_ij(n, i, j).is_subcomplex_of(k_ij(n, i2, j2))


def test_kij_connectivity():
    from math import comb
    for n in range(2, 6):
        for i in range(n):
            for j in range(n - i):
                b0 = betti(k_ij(n, i, j))[0]
                assert b0 == (comb(n + 1, i + 1) if n == i + j + 1 else 1)


def test_complement_map():
    c2 = complement_vertex_map(2)
    assert c2[frozenset({1})] == frozenset({2, 3})
    c3 = complement_vertex_map(3)
    assert c3[frozenset({1, 2})] == frozenset({3, 4})
    assert all(c3[c3[s]] == s for s in c3)
    assert verify_simplicial_iso(sd_boundary_simplex(3), sd_boundary_simplex(3), c3)


@pytest.mark.parametrize("p", [simplex(2), simplex(3), cube(3)] + [ngon(m) for m in range(3, 10)],
                         ids=lambda p: f"dim{p.dim}-{p.n_facets}facets")
def test_nerve_is_homology_sphere(p):
    b = betti(k_p(p))
    sphere = [1] + [0] * (p.dim - 2) + [1]
    assert b[:p.dim] == sphere and not any(b[p.dim:])


def test_maximal_pairs_are_disjoint_and_maximal():
    pairs = maximal_disjoint_pairs(cube(3))
    assert all(not (x.first & x.second) for x in pairs)
    assert all(not (a != b and b.contains(a)) for a in pairs for b in pairs)


def test_locally_nice():
    assert locally_nice_check(l_pm(6), ngon(6)).passed
    assert locally_nice_check(k_pm(5), ngon(5)).passed
    full = l_pm(6)
    drop = full.vertices[0]
    smaller = SimplicialComplex((s for s in full.all_simplices() if drop not in s),
                                vertices=[v for v in full.vertices if v != drop])
    with pytest.raises(VertexMismatch):
        locally_nice_check(smaller, ngon(6))


def test_locally_nice_detects_a_bad_subcomplex():
    # the bare vertex set of K_P(6) is not locally nice: supports of vertex x vertex faces are disconnected
    verts = k_pm(6).vertices
    bare = SimplicialComplex([(v,) for v in verts], vertices=verts)
    assert not locally_nice_check(bare, ngon(6)).passed


def test_facepair_equality_ignores_label():
    a = FacePair(frozenset({1}), frozenset({2}), "x")
    b = FacePair(frozenset({1}), frozenset({2}), "y")
    assert a == b
