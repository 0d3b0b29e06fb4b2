import pytest

from torcfg.complexes import k_ij
from torcfg.cover import CoverModel, circle, point, polygon_cover_model, simplex_cover_model
from torcfg.errors import CoefficientMismatch, NonFieldCoefficients
from torcfg.homology import SimplicialComplex, homology, oriented_chain_complex
from torcfg.linalg import Q, Z, Z2
from torcfg.spectral import (convergence_report, double_complex, e1_from_pieces, pages, row_doubling_check,
                             total_homology)

SMALL_MODELS = ([(f"polygon-{m}-{d}", lambda m=m, d=d: polygon_cover_model(m, d, Z)) for m in (3, 4, 5, 6) for d in (1, 2)]
                + [(f"simplex-{n}-1", lambda n=n: simplex_cover_model(n, 1)) for n in (2, 3)]
                + [(f"simplex-{n}-2", lambda n=n: simplex_cover_model(n, 2)) for n in (2, 3)])


def field_for(model):
    return [Z2] if model.coeff == Z2 else [Q, Z2]


def test_single_vertex_nerve():
    cm = CoverModel(SimplicialComplex([(0,)]), {(0,): circle() * circle()}, Z, 1, "custom", 0)
    dc = double_complex(cm)
    assert not dc.d2
    assert total_homology(dc).betti == (1, 2, 1)
    sp = pages(dc, coeff=Q)
    assert sp.stable_page == 1
    assert sp.page(1) == sp.infinity == {(0, 0): 1, (0, 1): 2, (0, 2): 1}


def test_two_pieces_glued_at_a_point():
    cm = CoverModel(SimplicialComplex([(0, 1)]), {(0,): circle(), (1,): circle(), (0, 1): point()}, Z, 1, "custom", 0)
    h = total_homology(double_complex(cm))
    assert h.betti == (1, 2)  # wedge of two circles


def test_polygon_d0_dimension():
    dc = double_complex(polygon_cover_model(4, 1, Z))
    assert dc.dim(0, 2) == 4


@pytest.mark.parametrize("name,make", SMALL_MODELS, ids=[n for n, _ in SMALL_MODELS])
def test_double_complex_identities(name, make):
    assert double_complex(make()).check() == []


def test_total_homology_examples():
    assert total_homology(double_complex(polygon_cover_model(3, 1, Z))).betti == (1, 7)
    h = total_homology(double_complex(polygon_cover_model(5, 2, Z)))
    assert h.betti == (1, 1, 10, 0, 10) and h.torsion_free
    assert total_homology(double_complex(simplex_cover_model(2, 1))).betti == (1, 7)


@pytest.mark.parametrize("name,make", SMALL_MODELS, ids=[n for n, _ in SMALL_MODELS])
def test_pairs_agree_with_subquotient(name, make):
    dc = double_complex(make())
    for coeff in field_for(dc.model):
        fast = pages(dc, coeff=coeff)
        slow = pages(dc, coeff=coeff, method="subquotient")
        assert fast.stable_page == slow.stable_page
        assert fast.infinity == slow.infinity
        for r in range(1, fast.stable_page + 1):
            assert fast.page(r) == slow.page(r)


@pytest.mark.parametrize("name,make", SMALL_MODELS, ids=[n for n, _ in SMALL_MODELS])
def test_page_invariants(name, make):
    dc = double_complex(make())
    for coeff in field_for(dc.model):
        sp = pages(dc, coeff=coeff)
        # E^1 is the homology of the pieces
        e1 = e1_from_pieces(dc, coeff)
        assert {k: v for k, v in sp.page(1).items() if v} == {k: v for k, v in e1.items() if v}
        # dims only drop, and the Euler characteristic is the same on every page
        chi = sum((-1) ** (p + q) * dc.dim(p, q) for p, q in dc.bases)
        prev = None
        for r in range(1, sp.stable_page + 2):
            page = sp.page(r)
            assert sum((-1) ** (p + q) * v for (p, q), v in page.items()) == chi
            if prev is not None:
                assert all(page[k] <= prev[k] for k in page)
            prev = page
        # pieces are connected, so the bottom row of E^2 is the homology of the nerve
        nerve_h = homology(oriented_chain_complex(dc.model.nerve, coeff))
        for p in range(dc.model.nerve.dim + 1):
            assert sp.dim(2, p, 0) == nerve_h.betti_in(p)


def test_polygon_e2_example():
    sp = pages(double_complex(polygon_cover_model(4, 1, Z)), coeff=Q)
    assert sp.dim(2, 0, 1) == 8
    assert sp.dim(2, 1, 1) == 0


def test_simplex_e2_example():
    sp = pages(double_complex(simplex_cover_model(3, 1)))
    assert sp.dim(2, 0, 0) == 1 and sp.dim(2, 0, 1) == 2
    assert sp.dim(2, 0, 2) == 2 ** 4 - 2


@pytest.mark.parametrize("n", [2, 3, 4])
def test_simplex_e2_is_kij_homology(n):
    sp = pages(double_complex(simplex_cover_model(n, 1)))
    for q in range(n):
        parts = [homology(oriented_chain_complex(k_ij(n, i, q - i), Z2)) for i in range(q + 1)]
        for p in range(n):
            assert sp.dim(2, p, q) == sum(h.betti_in(p) for h in parts)


def test_convergence_reports():
    for m in (3, 5, 7):
        for d in (1, 2):
            dc = double_complex(polygon_cover_model(m, d, Z))
            for coeff in (Q, Z2):
                rep = convergence_report(pages(dc, coeff=coeff), total_homology(dc, coeff))
                assert rep.passed and rep.collapse_page <= 2
    dc = double_complex(simplex_cover_model(3, 2))
    rep = convergence_report(pages(dc, coeff=Q), total_homology(dc, Q))
    assert rep.passed and rep.collapse_page <= 2


def test_coefficient_errors():
    dc = double_complex(polygon_cover_model(4, 1, Z))
    with pytest.raises(NonFieldCoefficients):
        pages(dc)
    with pytest.raises(CoefficientMismatch):
        convergence_report(pages(dc, coeff=Q), total_homology(dc, Z2))
    dz2 = double_complex(simplex_cover_model(2, 1))
    with pytest.raises(CoefficientMismatch):
        total_homology(dz2, Q)


def test_r_max_truncates():
    dc = double_complex(polygon_cover_model(5, 1, Z))
    sp = pages(dc, coeff=Q, r_max=1)
    assert not sp.stabilized and list(sp.pages) == [1]


@pytest.mark.parametrize("context,size", [("polygon", 4), ("polygon", 6), ("simplex", 3)])
def test_mod2_e2_of_d1_matches_even_rows_of_d2(context, size):
    rep = row_doubling_check(context, size)
    assert rep.passed and rep.compared > 0
