"""Euler characteristics of orbit configuration spaces and their relatives."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .combinatorics import coeff_closed, partitions
from .errors import BadParameter
from .polytope import SimplePolytope, eval_h, h_polynomial


@dataclass(frozen=True)
class OrbitConfigSpec:
    polytope: SimplePolytope
    d: int
    k: int

    def __post_init__(self):
        if self.d not in (1, 2):
            raise BadParameter(f"d must be 1 or 2, got {self.d}")
        if self.k < 2:
            raise BadParameter(f"k must be >= 2, got {self.k}")


def chi_orbit_config(p: SimplePolytope, d: int, k: int) -> int:
    """chi of the k-point orbit configuration space of a G_d^n-manifold over P."""
    spec = OrbitConfigSpec(p, d, k)
    h = h_polynomial(spec.polytope)
    n = p.dim
    total = 0
    if d == 1:
        for I in partitions(k):
            total += coeff_closed(I) * prod(eval_h(h, 1 - 2 ** ki) for ki in I.parts)
        return (-1) ** (k * n) * total
    chi_m = eval_h(h, 1)
    for I in partitions(k):
        total += coeff_closed(I) * chi_m ** I.s
    return total


def chi_classical_closed(chi_m: int, n: int, k: int) -> int:
    """(-1)^(kn) chi(M)(chi(M)-1)...(chi(M)-k+1)."""
    if k < 1:
        raise BadParameter(f"k must be >= 1, got {k}")
    return (-1) ** (k * n) * prod(chi_m - i for i in range(k))


def chi_classical_partition(chi_m: int, n: int, k: int) -> int:
    if k < 1:
        raise BadParameter(f"k must be >= 1, got {k}")
    return (-1) ** (k * n) * sum(coeff_closed(I) * chi_m ** I.s for I in partitions(k))


def chi_real_moment_angle(p: SimplePolytope, k: int, *, assume_small_cover: bool = False) -> int:
    """chi for the real moment-angle manifold; only valid when a small cover over P exists.

    Existence of the small cover is not checked; the caller has to vouch for
    it with ``assume_small_cover=True``.
    """
    if not assume_small_cover:
        raise BadParameter("the real moment-angle formula needs a small cover over P; "
                           "pass assume_small_cover=True to assert one exists")
    m, n = p.n_facets, p.dim
    return 2 ** ((m - n) * k) * chi_orbit_config(p, 1, k)


def chi_moment_angle_torus(p: SimplePolytope, k: int) -> int:
    # the diagonal circle acts freely, so the space fibres over a circle quotient
    if k < 2:
        raise BadParameter(f"k must be >= 2, got {k}")
    return 0
