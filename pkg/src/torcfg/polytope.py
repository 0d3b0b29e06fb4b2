"""Simple convex polytopes as purely combinatorial objects.

A polytope is given by its facets, each a set of vertex ids.  The face
lattice is recovered by closing the facets under intersection, which is
enough for simple polytopes: a face of dimension l is the intersection of
exactly n - l facets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import (BadParameter, DimensionMismatch, InconsistentLattice,
                     NotSimple)
from .linalg import integer_det


def vertex_key(v):
    """Sort key making ints sort numerically and before strings."""
    if isinstance(v, bool):
        return (2, str(v))
    if isinstance(v, int):
        return (0, v)
    return (1, str(v))


@dataclass(frozen=True)
class Face:
    vertices: frozenset
    dim: int
    facets: frozenset  # indices of the facets containing this face

    def sort_key(self):
        return (self.dim, tuple(sorted(map(vertex_key, self.vertices))))

    def sorted_vertices(self) -> list:
        return sorted(self.vertices, key=vertex_key)


@dataclass(frozen=True)
class SimplePolytope:
    dim: int
    vertices: tuple
    facets: tuple  # tuple of frozensets, in input order
    faces: tuple = field(repr=False)  # Face objects sorted by (dim, vertex set)

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    def face_of(self, vertex_set: Iterable) -> Face:
        vs = frozenset(vertex_set)
        for f in self.faces:
            if f.vertices == vs:
                return f
        raise KeyError(f"{sorted(vs, key=vertex_key)} is not a face")

    def faces_of_dim(self, d: int) -> list[Face]:
        return [f for f in self.faces if f.dim == d]

    def facet_label(self, face: Face) -> str:
        """Human label: F<i> for facets, v<id> for vertices, P for the polytope."""
        if face.dim == self.dim:
            return "P"
        if face.dim == self.dim - 1:
            (i,) = face.facets
            return f"F{i + 1}"
        if face.dim == 0:
            (v,) = face.vertices
            return f"v{v}"
        return "{" + ",".join(f"F{i + 1}" for i in sorted(face.facets)) + "}"

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "vertices": sorted(self.vertices, key=vertex_key),
            "facets": [sorted(f, key=vertex_key) for f in self.facets],
        }


def build_polytope(facets: Sequence[Iterable[Hashable]], n: int) -> SimplePolytope:
    facet_sets = tuple(frozenset(f) for f in facets)
    if n < 1:
        raise BadParameter("polytope dimension must be at least 1")
    if not facet_sets or any(not f for f in facet_sets):
        raise BadParameter("every facet must be a nonempty vertex set")
    vertices = frozenset().union(*facet_sets)
    for v in vertices:
        c = sum(1 for f in facet_sets if v in f)
        if c != n:
            raise NotSimple(f"vertex {v!r} lies in {c} facets, expected {n}")

    def containing(vs: frozenset) -> frozenset:
        return frozenset(i for i, f in enumerate(facet_sets) if vs <= f)

    seen: dict[frozenset, Face] = {vertices: Face(vertices, n, frozenset())}
    frontier = [vertices]
    while frontier:
        nxt = []
        for vs in frontier:
            for f in facet_sets:
                w = vs & f
                if w and w not in seen:
                    fs = containing(w)
                    if len(fs) > n:
                        raise InconsistentLattice(
                            f"face {sorted(w, key=vertex_key)} lies in {len(fs)} > {n} facets")
                    seen[w] = Face(w, n - len(fs), fs)
                    nxt.append(w)
        frontier = nxt
    faces = sorted(seen.values(), key=Face.sort_key)
    for face in faces:
        if face.dim == 0 and len(face.vertices) != 1:
            raise InconsistentLattice(f"0-face with vertices {sorted(face.vertices, key=vertex_key)}")
    # dimension must drop strictly along proper inclusions
    for a in faces:
        for b in faces:
            if a.vertices < b.vertices and a.dim >= b.dim:
                raise InconsistentLattice("face dimensions are not monotone")
    for i, f in enumerate(facet_sets):
        if seen[f].dim != n - 1:
            raise InconsistentLattice(f"facet {i + 1} is contained in another facet")
    return SimplePolytope(n, tuple(sorted(vertices, key=vertex_key)), facet_sets, tuple(faces))


def ngon(m: int) -> SimplePolytope:
    """Polygon with vertices 1..m and facets F_i = {v_i, v_(i+1)}."""
    if m < 3:
        raise BadParameter(f"a polygon needs at least 3 sides, got {m}")
    return build_polytope([{i, i % m + 1} for i in range(1, m + 1)], 2)


def simplex(n: int) -> SimplePolytope:
    """n-simplex on vertices 1..n+1; facets are the n-subsets in lex order."""
    if n < 1:
        raise BadParameter(f"simplex dimension must be >= 1, got {n}")
    return build_polytope([set(c) for c in combinations(range(1, n + 2), n)], n)


def cube(n: int = 3) -> SimplePolytope:
    """n-cube on 0/1 vectors (encoded as ints); facets x_i = 0 and x_i = 1."""
    if n < 1:
        raise BadParameter("cube dimension must be >= 1")
    verts = range(2 ** n)
    facets = []
    for i in range(n):
        facets.append({v for v in verts if not (v >> i) & 1})
        facets.append({v for v in verts if (v >> i) & 1})
    return build_polytope(facets, n)


def builtin(spec: str) -> SimplePolytope:
    """Parse ``ngon:M``, ``simplex:N`` or ``cube:N``."""
    try:
        kind, arg = spec.split(":")
        size = int(arg)
    except ValueError:
        raise BadParameter(f"cannot parse builtin polytope {spec!r}") from None
    makers = {"ngon": ngon, "simplex": simplex, "cube": cube}
    if kind not in makers:
        raise BadParameter(f"unknown builtin polytope kind {kind!r}")
    return makers[kind](size)


def load_polytope(source) -> SimplePolytope:
    if isinstance(source, (str, Path)):
        data = json.loads(Path(source).read_text())
    else:
        data = source
    p = build_polytope(data["facets"], int(data["dim"]))
    if "vertices" in data and set(data["vertices"]) != set(p.vertices):
        raise BadParameter("listed vertices do not match the facet data")
    return p


# ---------------------------------------------------------------------------
# f-vector, h-polynomial
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FVector:
    entries: tuple[int, ...]  # f_i = number of faces of codimension i+1

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class HPolynomial:
    coeffs: tuple[int, ...]  # h_0 .. h_n

    def __call__(self, t: int) -> int:
        return eval_h(self, t)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def f_vector(p: SimplePolytope) -> FVector:
    n = p.dim
    counts = [0] * n
    for face in p.faces:
        if face.dim < n:
            counts[n - face.dim - 1] += 1
    return FVector(tuple(counts))


def h_from_f(f: Sequence[int], n: int) -> HPolynomial:
    """Expand sum_{i=0}^{n} f_(i-1) (t-1)^(n-i), with f_(-1) = 1."""
    h = [0] * (n + 1)
    ext = [1] + list(f)
    for i, fi in enumerate(ext):
        e = n - i
        for k in range(e + 1):
            h[k] += fi * comb(e, k) * (-1) ** (e - k)
    return HPolynomial(tuple(h))


def h_polynomial(p: SimplePolytope) -> HPolynomial:
    return h_from_f(f_vector(p).entries, p.dim)


def eval_h(h: HPolynomial, t: int) -> int:
    acc = 0
    for c in reversed(h.coeffs):
        acc = acc * t + c
    return acc


# ---------------------------------------------------------------------------
# Characteristic functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharacteristicFunction:
    d: int
    assignment: Mapping[int, tuple[int, ...]]  # facet index (0-based) -> vector


@dataclass(frozen=True)
class CharacteristicReport:
    valid: bool
    per_vertex: dict  # vertex id -> bool
    failures: tuple = ()


def validate_characteristic_function(p: SimplePolytope, lam: CharacteristicFunction) -> CharacteristicReport:
    if lam.d not in (1, 2):
        raise BadParameter("d must be 1 or 2")
    n = p.dim
    for i in range(p.n_facets):
        vec = lam.assignment.get(i)
        if vec is None:
            raise DimensionMismatch(f"no vector assigned to facet F{i + 1}")
        if len(vec) != n:
            raise DimensionMismatch(f"facet F{i + 1} has a vector of length {len(vec)}, expected {n}")
    per_vertex = {}
    failures = []
    for v in p.vertices:
        idx = [i for i, f in enumerate(p.facets) if v in f]
        det = integer_det([lam.assignment[i] for i in idx])
        ok = det % 2 == 1 if lam.d == 1 else abs(det) == 1
        per_vertex[v] = ok
        if not ok:
            failures.append((v, tuple(i + 1 for i in idx)))
    return CharacteristicReport(all(per_vertex.values()), per_vertex, tuple(failures))


# ---------------------------------------------------------------------------
# Cell vector of the preimage of the small diagonal
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CellVector:
    counts: tuple[int, ...]
    d: int
    ell: int

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * c for i, c in enumerate(self.counts))


def diagonal_preimage_cell_vector(p: SimplePolytope, d: int, ell: int) -> tuple[CellVector, int]:
    """Cells of the preimage of the small diagonal of P^ell in M^ell.

    Over an open i-face the orbit map is trivial with fibre G^i, so the
    d=1 preimage has 2^(i*ell) copies of each i-cell and the d=2 preimage
    is T^(i*ell) times the cell.
    """
    if d not in (1, 2):
        raise BadParameter("d must be 1 or 2")
    if ell < 1:
        raise BadParameter("ell must be a positive integer")
    n = p.dim
    f = f_vector(p).entries

    def faces_of_dim(i: int) -> int:
        return 1 if i == n else f[n - i - 1]

    if d == 1:
        counts = [2 ** (i * ell) * faces_of_dim(i) for i in range(n + 1)]
    else:
        counts = [0] * (n + n * ell + 1)
        for i in range(n + 1):
            for j in range(i * ell + 1):
                counts[i + j] += comb(i * ell, j) * faces_of_dim(i)
    cv = CellVector(tuple(counts), d, ell)
    return cv, cv.euler_characteristic()
