"""Simplicial complexes, chain complexes and their homology over Z, Q, Z/2."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

from .errors import NotAComplex
from .linalg import (Q, Z, Z2, SparseMatrix, normalize_coeff, rank,
                     smith_normal_form)


def label_key(v):
    """Canonical sort key for vertex labels of any supported kind."""
    if hasattr(v, "sort_key"):
        return (3, v.sort_key())
    if isinstance(v, bool):
        return (5, str(v))
    if isinstance(v, int):
        return (0, v)
    if isinstance(v, str):
        return (1, v)
    if isinstance(v, (frozenset, set)):
        return (2, len(v), tuple(sorted(label_key(x) for x in v)))
    if isinstance(v, tuple):
        return (4, tuple(label_key(x) for x in v))
    return (6, str(v))


def label_str(v) -> str:
    if isinstance(v, (frozenset, set)):
        return "{" + ",".join(label_str(x) for x in sorted(v, key=label_key)) + "}"
    return str(v)


class SimplicialComplex:
    """Abstract simplicial complex, closed under taking faces.

    Vertices are kept in canonical order; simplices are stored internally as
    increasing tuples of vertex positions, which fixes all orientations.
    """

    def __init__(self, simplices: Iterable[Iterable], vertices: Iterable = ()):
        simplices = [frozenset(s) for s in simplices]
        labels = set(vertices)
        for s in simplices:
            labels |= s
        self.vertices: tuple = tuple(sorted(labels, key=label_key))
        self.index: dict = {v: i for i, v in enumerate(self.vertices)}
        top: set[tuple[int, ...]] = set()
        for s in simplices:
            if s:
                top.add(tuple(sorted(self.index[v] for v in s)))
        for i in range(len(self.vertices)):
            top.add((i,))
        self._by_dim: dict[int, list[tuple[int, ...]]] = {}
        all_s: set[tuple[int, ...]] = set()
        frontier = top
        while frontier:
            new: set[tuple[int, ...]] = set()
            for s in frontier:
                if s in all_s:
                    continue
                all_s.add(s)
                if len(s) > 1:
                    for k in range(len(s)):
                        f = s[:k] + s[k + 1:]
                        if f not in all_s:
                            new.add(f)
            frontier = new
        for s in all_s:
            self._by_dim.setdefault(len(s) - 1, []).append(s)
        for d in self._by_dim:
            self._by_dim[d].sort()
        self._set = all_s

    # -- basic queries ------------------------------------------------------

    @property
    def dim(self) -> int:
        return max(self._by_dim) if self._by_dim else -1

    def index_simplices(self, d: int) -> list[tuple[int, ...]]:
        return self._by_dim.get(d, [])

    def simplices(self, d: int) -> list[tuple]:
        return [tuple(self.vertices[i] for i in s) for s in self.index_simplices(d)]

    def all_simplices(self) -> list[tuple]:
        return [s for d in range(self.dim + 1) for s in self.simplices(d)]

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self._by_dim.get(d, [])) for d in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.f_vector()))

    def __len__(self) -> int:
        return len(self._set)

    def __contains__(self, simplex) -> bool:
        try:
            key = tuple(sorted(self.index[v] for v in simplex))
        except KeyError:
            return False
        return key in self._set

    def simplex_set(self) -> frozenset:
        return frozenset(frozenset(self.vertices[i] for i in s) for s in self._set)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and self.simplex_set() == other.simplex_set()

    __hash__ = None  # type: ignore[assignment]

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(s in other for s in self.all_simplices())

    def maximal_simplices(self) -> list[tuple]:
        maximal = []
        for d in sorted(self._by_dim, reverse=True):
            for s in self._by_dim[d]:
                ss = set(s)
                if not any(ss < set(m) for m in maximal if len(m) > len(s)):
                    maximal.append(s)
        maximal.sort(key=lambda s: (len(s), s))
        return [tuple(self.vertices[i] for i in s) for s in maximal]

    def full_subcomplex(self, labels: Iterable) -> "SimplicialComplex":
        keep = {self.index[v] for v in labels if v in self.index}
        simp = [tuple(self.vertices[i] for i in s) for s in self._set if keep.issuperset(s)]
        return SimplicialComplex(simp)

    def subcomplex(self, predicate: Callable[[tuple], bool]) -> "SimplicialComplex":
        """Simplices satisfying a face-closed predicate."""
        return SimplicialComplex(s for s in self.all_simplices() if predicate(s))

    def relabel(self, mapping: Mapping) -> "SimplicialComplex":
        return SimplicialComplex(([mapping[v] for v in s] for s in self.all_simplices()),
                                 vertices=[mapping[v] for v in self.vertices])

    def to_json(self) -> dict:
        return {
            "vertices": [label_str(v) for v in self.vertices],
            "maximal_simplices": [[label_str(v) for v in s] for s in self.maximal_simplices()],
        }

    @classmethod
    def from_json(cls, data) -> "SimplicialComplex":
        if isinstance(data, (str, Path)):
            data = json.loads(Path(data).read_text())
        return cls(data["maximal_simplices"], vertices=data.get("vertices", ()))

    def __repr__(self) -> str:
        return f"SimplicialComplex(f={self.f_vector()})"


# ---------------------------------------------------------------------------
# Chain complexes
# ---------------------------------------------------------------------------

class ChainComplex:
    """Graded free module with boundary matrices ``boundaries[q]: C_q -> C_(q-1)``."""

    def __init__(self, bases: Mapping[int, Sequence], boundaries: Mapping[int, SparseMatrix],
                 coeff: str = Z, check: bool = True):
        self.coeff = normalize_coeff(coeff)
        self.bases = {q: list(b) for q, b in bases.items() if len(b)}
        self._bd: dict[int, SparseMatrix] = {}
        for q, m in boundaries.items():
            src, tgt = len(self.bases.get(q, ())), len(self.bases.get(q - 1, ()))
            if m.shape != (tgt, src):
                raise ValueError(f"boundary in degree {q} has shape {m.shape}, expected {(tgt, src)}")
            if src and tgt:
                self._bd[q] = m.reduce(self.coeff)
        if check:
            self.check()

    @property
    def degrees(self) -> list[int]:
        return sorted(self.bases)

    def rank_in(self, q: int) -> int:
        return len(self.bases.get(q, ()))

    def boundary(self, q: int) -> SparseMatrix:
        m = self._bd.get(q)
        if m is None:
            return SparseMatrix(self.rank_in(q - 1), self.rank_in(q))
        return m

    def check(self) -> None:
        for q in self._bd:
            if q - 1 in self._bd:
                if not (self._bd[q - 1] @ self._bd[q]).is_zero(self.coeff):
                    raise NotAComplex(f"boundary squares to nonzero in degree {q}")

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * len(b) for q, b in self.bases.items())


@dataclass(frozen=True)
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    matrices: dict = field(default_factory=dict)  # degree -> SparseMatrix target <- source

    def matrix(self, q: int) -> SparseMatrix:
        m = self.matrices.get(q)
        if m is None:
            return SparseMatrix(self.target.rank_in(q), self.source.rank_in(q))
        return m

    def is_chain_map(self) -> bool:
        coeff = self.target.coeff
        degrees = set(self.source.degrees) | set(self.target.degrees)
        for q in degrees:
            lhs = self.target.boundary(q) @ self.matrix(q)
            rhs = self.matrix(q - 1) @ self.source.boundary(q)
            if not lhs.equals(rhs, coeff):
                return False
        return True

    def compose(self, first: "ChainMap") -> "ChainMap":
        """self o first."""
        degrees = set(first.source.degrees)
        return ChainMap(first.source, self.target,
                        {q: self.matrix(q) @ first.matrix(q) for q in degrees})

    def equals(self, other: "ChainMap") -> bool:
        coeff = self.target.coeff
        degrees = set(self.source.degrees) | set(other.source.degrees)
        return all(self.matrix(q).equals(other.matrix(q), coeff) for q in degrees)


@dataclass(frozen=True)
class HomologyResult:
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    coeff: str = Z
    min_degree: int = 0

    def betti_in(self, q: int) -> int:
        i = q - self.min_degree
        return self.betti[i] if 0 <= i < len(self.betti) else 0

    def torsion_in(self, q: int) -> tuple[int, ...]:
        i = q - self.min_degree
        return self.torsion[i] if 0 <= i < len(self.torsion) else ()

    @property
    def torsion_free(self) -> bool:
        return not any(self.torsion)

    def euler_characteristic(self) -> int:
        return sum((-1) ** (self.min_degree + i) * b for i, b in enumerate(self.betti))

    def is_zero(self) -> bool:
        return not any(self.betti) and self.torsion_free

    def to_json(self) -> list[dict]:
        return [{"degree": self.min_degree + i, "betti": b, "torsion": list(t)}
                for i, (b, t) in enumerate(zip(self.betti, self.torsion))]


def homology(c: ChainComplex) -> HomologyResult:
    degs = c.degrees
    if not degs:
        return HomologyResult((), (), c.coeff)
    lo, hi = min(degs), max(degs)
    ranks: dict[int, int] = {}
    divisors: dict[int, tuple[int, ...]] = {}
    for q in range(lo, hi + 2):
        m = c.boundary(q)
        if m.nrows == 0 or m.ncols == 0:
            ranks[q] = 0
            divisors[q] = ()
        elif c.coeff == Z:
            snf = smith_normal_form(m)
            ranks[q] = snf.rank
            divisors[q] = tuple(d for d in snf.diagonal if d > 1)
        else:
            ranks[q] = rank(m, c.coeff)
            divisors[q] = ()
    betti = []
    torsion = []
    for q in range(lo, hi + 1):
        betti.append(c.rank_in(q) - ranks[q] - ranks[q + 1])
        torsion.append(divisors[q + 1])
    return HomologyResult(tuple(betti), tuple(torsion), c.coeff, lo)


def oriented_chain_complex(k: SimplicialComplex, coeff: str = Z, augmented: bool = False) -> ChainComplex:
    """Simplicial chains; orientation from the canonical vertex order.

    With ``augmented`` the empty simplex sits in degree -1.
    """
    coeff = normalize_coeff(coeff)
    bases: dict[int, list] = {}
    bds: dict[int, SparseMatrix] = {}
    for d in range(k.dim + 1):
        bases[d] = k.index_simplices(d)
    for d in range(1, k.dim + 1):
        pos = {s: i for i, s in enumerate(bases[d - 1])}
        cols = []
        for s in bases[d]:
            col = {}
            for j in range(len(s)):
                col[pos[s[:j] + s[j + 1:]]] = -1 if j & 1 else 1
            cols.append(col)
        bds[d] = SparseMatrix(len(bases[d - 1]), len(bases[d]), cols)
    if augmented:
        bases[-1] = [()]
        if k.dim >= 0:
            bds[0] = SparseMatrix(1, len(bases[0]), [{0: 1} for _ in bases[0]])
    labelled = {d: [tuple(k.vertices[i] for i in s) for s in b] for d, b in bases.items()}
    return ChainComplex(labelled, bds, coeff)


def betti(k: SimplicialComplex, coeff: str = Z) -> list[int]:
    return list(homology(oriented_chain_complex(k, coeff)).betti)


def reduced_homology(k: SimplicialComplex, coeff: str = Z) -> HomologyResult:
    return homology(oriented_chain_complex(k, coeff, augmented=True))


def reduced_betti(k: SimplicialComplex, coeff: str = Z) -> list[int]:
    """Reduced Betti numbers in degrees 0..dim (degree -1 dropped)."""
    h = reduced_homology(k, coeff)
    return [h.betti_in(q) for q in range(0, k.dim + 1)]


def is_acyclic(k: SimplicialComplex) -> bool:
    """Nonempty with vanishing reduced integral homology."""
    if k.dim < 0:
        return False
    return reduced_homology(k, Z).is_zero()


def verify_simplicial_iso(k1: SimplicialComplex, k2: SimplicialComplex, vertex_map: Mapping) -> bool:
    if any(v not in vertex_map for v in k1.vertices):
        return False
    images = [vertex_map[v] for v in k1.vertices]
    if len(set(images)) != len(images) or set(images) != set(k2.vertices):
        return False
    mapped = {frozenset(vertex_map[v] for v in s) for s in k1.all_simplices()}
    return mapped == k2.simplex_set()


__all__ = [
    "SimplicialComplex", "ChainComplex", "ChainMap", "HomologyResult", "homology",
    "oriented_chain_complex", "betti", "reduced_betti", "reduced_homology",
    "is_acyclic", "verify_simplicial_iso", "label_key", "label_str", "Z", "Q", "Z2",
]
