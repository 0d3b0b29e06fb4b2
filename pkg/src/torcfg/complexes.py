"""The simplicial complexes attached to F(P, 2).

``k_p`` builds the nerve of the maximal disjoint face pairs of a simple
polytope directly from its face lattice; the polygon constructors
``k_pm``/``l_pm`` and the barycentric-subdivision family ``k_ij`` are
explicit descriptions that the tests cross-check against it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import BadParameter, VertexMismatch
from .homology import SimplicialComplex, is_acyclic, label_key
from .polytope import Face, SimplePolytope, ngon, simplex


@dataclass(frozen=True)
class FacePair:
    """The face first x second of P x P, with first and second disjoint."""

    first: frozenset
    second: frozenset
    label: str = field(default="", compare=False)
    key: tuple = field(default=(), compare=False, repr=False)

    def sort_key(self):
        return self.key

    def __str__(self) -> str:
        return self.label or f"{sorted(self.first)}x{sorted(self.second)}"

    def contains(self, other: "FacePair") -> bool:
        return other.first <= self.first and other.second <= self.second


def _face_key(face: Face) -> tuple:
    return (tuple(sorted(face.facets)), face.dim)


def face_pair(p: SimplePolytope, f1: Face, f2: Face) -> FacePair:
    return FacePair(f1.vertices, f2.vertices,
                    f"{p.facet_label(f1)}x{p.facet_label(f2)}",
                    (_face_key(f1), _face_key(f2)))


def disjoint_pairs(p: SimplePolytope) -> list[FacePair]:
    faces = [f for f in p.faces if f.dim < p.dim]
    return [face_pair(p, a, b) for a in faces for b in faces if not (a.vertices & b.vertices)]


def maximal_disjoint_pairs(p: SimplePolytope) -> list[FacePair]:
    """B(P): disjoint pairs not properly contained in another disjoint pair."""
    pairs = disjoint_pairs(p)
    out = [a for a in pairs if not any(b != a and b.contains(a) for b in pairs)]
    return sorted(out, key=FacePair.sort_key)


def _nerve(vertices: list[FacePair]) -> list[tuple[FacePair, ...]]:
    """Maximal families of pairs with a common point in P x P."""
    found: list[tuple[FacePair, ...]] = []

    def grow(chosen: list[int], first: frozenset, second: frozenset, start: int):
        extended = False
        for j in range(start, len(vertices)):
            v = vertices[j]
            f, s = first & v.first, second & v.second
            if f and s:
                extended = True
                chosen.append(j)
                grow(chosen, f, s, j + 1)
                chosen.pop()
        if not extended:
            found.append(tuple(vertices[i] for i in chosen))

    for i, v in enumerate(vertices):
        grow([i], v.first, v.second, i + 1)
    return found


def k_p(p: SimplePolytope) -> SimplicialComplex:
    """Nerve of B(P): simplices are families whose faces intersect in P x P."""
    if p.dim < 2:
        raise BadParameter("K_P needs dim P >= 2 (F(P,2) is disconnected for a segment)")
    verts = maximal_disjoint_pairs(p)
    return SimplicialComplex(_nerve(verts), vertices=verts)


# ---------------------------------------------------------------------------
# Polygons
# ---------------------------------------------------------------------------

class _PolygonPairs:
    """Face-pair factory for P(m) with 1-based cyclic facet/vertex indices."""

    def __init__(self, m: int):
        self.m = m
        self.p = ngon(m)

    def _idx(self, i: int) -> int:
        return (i - 1) % self.m + 1

    def facet(self, i: int) -> Face:
        return self.p.face_of(self.p.facets[self._idx(i) - 1])

    def vertex(self, i: int) -> Face:
        return self.p.face_of({self._idx(i)})

    def ff(self, i: int, j: int) -> FacePair | None:
        a, b = self.facet(i), self.facet(j)
        if a.vertices & b.vertices:
            return None
        return face_pair(self.p, a, b)

    def vf(self, i: int, j: int) -> FacePair:
        return face_pair(self.p, self.vertex(i), self.facet(j))

    def fv(self, i: int, j: int) -> FacePair:
        return face_pair(self.p, self.facet(i), self.vertex(j))

    def all_ff(self) -> list[FacePair]:
        out = []
        for i in range(1, self.m + 1):
            for j in range(1, self.m + 1):
                pr = self.ff(i, j)
                if pr is not None:
                    out.append(pr)
        return out


def _valid(*pairs):
    return None if any(x is None for x in pairs) else pairs


def k_pm(m: int) -> SimplicialComplex:
    """K_{P(m)} from the explicit description by generators.

    m = 3: hexagon on v_i x F_(i+1) and F_i x v_(i-1).  m = 4: square on the
    four pairs F_i x F_(i+2).  m >= 5: tetrahedra on 2x2 blocks of facet
    pairs, plus the triangles where one corner of a block is not disjoint.
    """
    if m < 3:
        raise BadParameter(f"m must be >= 3, got {m}")
    pp = _PolygonPairs(m)
    simplices: list[tuple] = []
    if m == 3:
        verts = [pp.vf(i, i + 1) for i in range(1, 4)] + [pp.fv(i, i - 1) for i in range(1, 4)]
        for i in range(1, 4):
            simplices.append((pp.vf(i, i + 1), pp.fv(i, i - 1)))
            simplices.append((pp.vf(i, i + 1), pp.fv(i - 1, i - 2)))
        return SimplicialComplex(simplices, vertices=verts)
    verts = pp.all_ff()
    if m == 4:
        for i in range(1, 5):
            simplices.append((pp.ff(i, i + 2), pp.ff(i + 1, i + 3)))
        return SimplicialComplex(simplices, vertices=verts)
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            block = _valid(pp.ff(i, j), pp.ff(i + 1, j), pp.ff(i, j + 1), pp.ff(i + 1, j + 1))
            if block:
                simplices.append(block)
        for tri in (_valid(pp.ff(i, i + 2), pp.ff(i, i + 3), pp.ff(i + 1, i + 3)),
                    _valid(pp.ff(i + 2, i), pp.ff(i + 3, i), pp.ff(i + 3, i + 1))):
            if tri:
                simplices.append(tri)
    return SimplicialComplex(simplices, vertices=verts)


def l_pm(m: int) -> SimplicialComplex:
    """Annulus-shaped locally nice subcomplex of K_{P(m)} (K_{P(m)} itself for m <= 5)."""
    if m < 3:
        raise BadParameter(f"m must be >= 3, got {m}")
    if m <= 5:
        return k_pm(m)
    pp = _PolygonPairs(m)
    simplices = []
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            for tri in (_valid(pp.ff(i, j), pp.ff(i + 1, j), pp.ff(i + 1, j + 1)),
                        _valid(pp.ff(i, j), pp.ff(i, j + 1), pp.ff(i + 1, j + 1))):
                if tri:
                    simplices.append(tri)
    return SimplicialComplex(simplices, vertices=pp.all_ff())


# ---------------------------------------------------------------------------
# Barycentric subdivision of Bd(simplex) and the subcomplexes K^n_{i,j}
# ---------------------------------------------------------------------------

def _proper_faces(n: int, lo: int = 0, hi: int | None = None) -> list[frozenset]:
    hi = n - 1 if hi is None else hi
    ground = range(1, n + 2)
    return [frozenset(c) for d in range(lo, hi + 1) for c in combinations(ground, d + 1)]


def _chains(faces: list[frozenset]) -> list[tuple[frozenset, ...]]:
    """Maximal strict chains in the inclusion order on ``faces``."""
    faces = sorted(faces, key=label_key)
    up = {f: [g for g in faces if f < g] for f in faces}
    out: list[tuple[frozenset, ...]] = []

    def rec(chain: list[frozenset]):
        nxt = up[chain[-1]]
        if not nxt:
            out.append(tuple(chain))
            return
        for g in nxt:
            chain.append(g)
            rec(chain)
            chain.pop()

    minimal = [f for f in faces if not any(g < f for g in faces)]
    for f in minimal:
        rec([f])
    return out


def sd_boundary_simplex(n: int) -> SimplicialComplex:
    """Order complex of the proper nonempty faces of the simplex on 1..n+1."""
    if n < 2:
        raise BadParameter(f"n must be >= 2, got {n}")
    faces = _proper_faces(n)
    return SimplicialComplex(_chains(faces), vertices=faces)


def k_ij(n: int, i: int, j: int) -> SimplicialComplex:
    """Chains sigma_1 < ... < sigma_l with dim sigma_1 >= i and dim sigma_l <= n-j-1."""
    if i < 0 or j < 0 or i + j + 1 > n:
        raise BadParameter(f"need i, j >= 0 and i + j + 1 <= n (got n={n}, i={i}, j={j})")
    if n < 1:
        raise BadParameter("n must be >= 1")
    faces = _proper_faces(n, i, n - j - 1)
    return SimplicialComplex(_chains(faces), vertices=faces)


def complement_vertex_map(n: int) -> dict[frozenset, frozenset]:
    """sigma -> the face spanned by the vertices not in sigma."""
    if n < 1:
        raise BadParameter("n must be >= 1")
    ground = frozenset(range(1, n + 2))
    return {f: ground - f for f in _proper_faces(n)}


# ---------------------------------------------------------------------------
# Locally nice subcomplexes
# ---------------------------------------------------------------------------

@dataclass
class LocallyNiceReport:
    passed: bool
    n_faces: int
    n_supports: int
    failures: list = field(default_factory=list)  # supports whose full subcomplex is not acyclic


def locally_nice_check(l: SimplicialComplex, p: SimplePolytope, vertex_pairs: dict | None = None) -> LocallyNiceReport:
    """Check that every cell support of the cover restricted to L is acyclic.

    ``vertex_pairs`` translates L's vertices to face pairs of P when they are
    not FacePair objects already.  Containment of a cell of M x M in a piece
    only depends on the face of P x P carrying it, so it is enough to range
    over disjoint face pairs G1 x G2.
    """
    to_pair = vertex_pairs or {}
    pairs = {}
    for v in l.vertices:
        pr = to_pair.get(v, v)
        if not isinstance(pr, FacePair):
            raise VertexMismatch(f"vertex {v!s} is not identified with a face pair of P")
        pairs[v] = pr
    b = maximal_disjoint_pairs(p)
    b_set = {(x.first, x.second) for x in b}
    got = {(x.first, x.second) for x in pairs.values()}
    if got - b_set:
        raise VertexMismatch("L has vertices outside B(P)")
    if b_set - got:
        missing = [str(x) for x in b if (x.first, x.second) not in got]
        raise VertexMismatch(f"L is missing vertices of K_P: {missing}")
    supports: dict[frozenset, None] = {}
    faces = disjoint_pairs(p)
    for g in faces:
        s = frozenset(v for v, pr in pairs.items() if pr.contains(g))
        supports.setdefault(s, None)
    failures = []
    for s in supports:
        if not is_acyclic(l.full_subcomplex(s)):
            failures.append(sorted(map(str, s)))
    return LocallyNiceReport(not failures, len(faces), len(supports), failures)
