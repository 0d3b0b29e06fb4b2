"""Chain-level cover models of X_d(M) over polygons and simplices.

Each piece of the cover is homotopy equivalent to a product of standard
spaces (points, circles, 2-spheres, real or complex projective spaces), so
it is modelled by the minimal cell structure of that product.  Inclusions
between pieces become factorwise skeletal inclusions, with a point always
landing on the basepoint 0-cell.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from .complexes import (LocallyNiceReport, face_pair, l_pm,
                        locally_nice_check, sd_boundary_simplex)
from .errors import BadParameter, CoefficientMismatch, NotASubspacePattern
from .homology import ChainComplex, ChainMap, SimplicialComplex, label_str
from .linalg import COEFFS, Z, Z2, SparseMatrix, normalize_coeff
from .polytope import SimplePolytope, ngon, simplex

POINT, CIRCLE, SPHERE2, RP, CP = "point", "circle", "sphere2", "realprojective", "complexprojective"

# (kind, parameter) -> degrees of the cells, in order
_CELL_DEGREES = {
    POINT: lambda s: [0],
    CIRCLE: lambda s: [0, 1],
    SPHERE2: lambda s: [0, 2],
    RP: lambda s: list(range(s + 1)),
    CP: lambda s: list(range(0, 2 * s + 1, 2)),
}


@dataclass(frozen=True)
class Factor:
    kind: str
    param: int = 0

    def __post_init__(self):
        if self.kind not in _CELL_DEGREES:
            raise BadParameter(f"unknown space kind {self.kind!r}")
        if self.param < 0:
            raise BadParameter(f"negative dimension for {self.kind}")

    @property
    def cell_degrees(self) -> list[int]:
        return _CELL_DEGREES[self.kind](self.param)

    def __str__(self) -> str:
        if self.kind == RP:
            return f"RP{self.param}"
        if self.kind == CP:
            return f"CP{self.param}"
        return {POINT: "pt", CIRCLE: "S1", SPHERE2: "S2"}[self.kind]


@dataclass(frozen=True)
class StandardSpace:
    """An ordered product of standard spaces."""

    factors: tuple[Factor, ...]

    @property
    def kind(self) -> str:
        return self.factors[0].kind if len(self.factors) == 1 else "product"

    def __mul__(self, other: "StandardSpace") -> "StandardSpace":
        return StandardSpace(self.factors + other.factors)

    def __str__(self) -> str:
        return " x ".join(map(str, self.factors))

    def cells(self) -> list[tuple[int, ...]]:
        """Cells as tuples of per-factor cell indices, sorted by degree."""
        grids = [range(len(f.cell_degrees)) for f in self.factors]
        cells = list(iproduct(*grids))
        return sorted(cells, key=lambda c: (self.cell_degree(c), c))

    def cell_degree(self, cell: tuple[int, ...]) -> int:
        return sum(f.cell_degrees[i] for f, i in zip(self.factors, cell))

    def cell_label(self, cell: tuple[int, ...]) -> str:
        return "(x)".join(f"e{f.cell_degrees[i]}" for f, i in zip(self.factors, cell))


def point() -> StandardSpace:
    return StandardSpace((Factor(POINT),))


def circle() -> StandardSpace:
    return StandardSpace((Factor(CIRCLE),))


def sphere2() -> StandardSpace:
    return StandardSpace((Factor(SPHERE2),))


def rp(s: int) -> StandardSpace:
    return StandardSpace((Factor(RP, s),))


def cp(s: int) -> StandardSpace:
    return StandardSpace((Factor(CP, s),))


def _factor_complex(f: Factor, coeff: str) -> ChainComplex:
    if f.kind == RP and coeff != Z2:
        # the cellular boundary of RP^s has entries 2, which vanish only mod 2
        raise CoefficientMismatch(f"RP{f.param} is only modelled with z2 coefficients")
    bases: dict[int, list] = {}
    for i, deg in enumerate(f.cell_degrees):
        bases.setdefault(deg, []).append((i,))
    return ChainComplex(bases, {}, coeff, check=False)


def tensor_product(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Tensor product with d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy.

    Basis elements are concatenated label tuples, ordered by total degree,
    then by the degree of the left factor, then by position.
    """
    if a.coeff != b.coeff:
        raise CoefficientMismatch("tensor factors over different coefficients")
    bases: dict[int, list] = {}
    index: dict[tuple, int] = {}
    for p in a.degrees:
        for q in b.degrees:
            for x in a.bases[p]:
                for y in b.bases[q]:
                    bases.setdefault(p + q, []).append((p, x, q, y))
    for n in bases:
        bases[n].sort(key=lambda t: (t[0], a.bases[t[0]].index(t[1]), b.bases[t[2]].index(t[3])))
        for pos, t in enumerate(bases[n]):
            index[t] = pos
    bds: dict[int, SparseMatrix] = {}
    for n, basis in bases.items():
        if n - 1 not in bases:
            continue
        cols = []
        for (p, x, q, y) in basis:
            col: dict[int, int] = {}
            ix, iy = a.bases[p].index(x), b.bases[q].index(y)
            for r, v in a.boundary(p).cols[ix].items() if p - 1 in a.bases else ():
                key = index[(p - 1, a.bases[p - 1][r], q, y)]
                col[key] = col.get(key, 0) + v
            sign = -1 if p % 2 else 1
            for r, v in b.boundary(q).cols[iy].items() if q - 1 in b.bases else ():
                key = index[(p, x, q - 1, b.bases[q - 1][r])]
                col[key] = col.get(key, 0) + sign * v
            cols.append({k: v for k, v in col.items() if v})
        bds[n] = SparseMatrix(len(bases[n - 1]), len(basis), cols)
    flat = {n: [x + y for (_, x, _, y) in basis] for n, basis in bases.items()}
    return ChainComplex(flat, bds, a.coeff)


_complex_cache: dict[tuple[StandardSpace, str], ChainComplex] = {}


def standard_complex(s: StandardSpace, coeff: str = Z) -> ChainComplex:
    """Minimal cellular chain complex of a product of standard spaces.

    Basis labels are tuples of per-factor cell indices.
    """
    coeff = normalize_coeff(coeff)
    key = (s, coeff)
    if key not in _complex_cache:
        c = _factor_complex(s.factors[0], coeff)
        for f in s.factors[1:]:
            c = tensor_product(c, _factor_complex(f, coeff))
        _complex_cache[key] = c
    return _complex_cache[key]


def _factor_image(sub: Factor, sup: Factor) -> list[int]:
    """Cell index of sup hit by each cell of sub."""
    if sub.kind == POINT:
        return [0]
    if sub.kind == sup.kind and sub.param <= sup.param:
        return list(range(len(sub.cell_degrees)))
    raise NotASubspacePattern(f"{sub} does not include into {sup} skeletally")


def inclusion_chain_map(sub: StandardSpace, sup: StandardSpace, coeff: str = Z) -> ChainMap:
    coeff = normalize_coeff(coeff)
    if len(sub.factors) != len(sup.factors):
        raise NotASubspacePattern(f"{sub} and {sup} have different numbers of factors")
    images = [_factor_image(a, b) for a, b in zip(sub.factors, sup.factors)]
    src, tgt = standard_complex(sub, coeff), standard_complex(sup, coeff)
    mats = {}
    for q, basis in src.bases.items():
        tpos = {c: i for i, c in enumerate(tgt.bases.get(q, ()))}
        cols = []
        for cell in basis:
            image = tuple(images[k][i] for k, i in enumerate(cell))
            if image not in tpos:
                raise NotASubspacePattern(f"cell {cell} of {sub} has no image of the same degree")
            cols.append({tpos[image]: 1})
        mats[q] = SparseMatrix(len(tpos), len(basis), cols)
    return ChainMap(src, tgt, mats)


# ---------------------------------------------------------------------------
# Cover models
# ---------------------------------------------------------------------------

@dataclass
class CoverModel:
    nerve: SimplicialComplex
    spaces: dict  # nerve simplex (tuple of vertex indices) -> StandardSpace
    coeff: str
    d: int
    context: str  # "polygon" or "simplex"
    size: int  # m for polygons, n for simplices
    polytope: SimplePolytope | None = None
    vertex_pairs: dict | None = None
    carriers: dict = field(default_factory=dict)  # nerve simplex -> description of the carrier face
    _maps: dict = field(default_factory=dict, repr=False)

    def piece(self, a: tuple[int, ...]) -> ChainComplex:
        return standard_complex(self.spaces[a], self.coeff)

    def face_map(self, a: tuple[int, ...], b: tuple[int, ...]) -> ChainMap:
        """Chain map C(X_a) -> C(X_b) for b a face of a."""
        key = (a, b)
        if key not in self._maps:
            if not set(b) < set(a):
                raise BadParameter(f"{b} is not a proper face of {a}")
            self._maps[key] = inclusion_chain_map(self.spaces[a], self.spaces[b], self.coeff)
        return self._maps[key]

    def simplices(self, p: int) -> list[tuple[int, ...]]:
        return self.nerve.index_simplices(p)

    def to_json(self) -> dict:
        verts = self.nerve.vertices
        pieces = []
        for p in range(self.nerve.dim + 1):
            for a in self.simplices(p):
                c = self.piece(a)
                pieces.append({
                    "simplex": [label_str(verts[i]) for i in a],
                    "space": str(self.spaces[a]),
                    "carrier": self.carriers.get(a, ""),
                    "cells": {str(q): [self.spaces[a].cell_label(x) for x in c.bases[q]] for q in c.degrees},
                })
        maps = []
        for p in range(1, self.nerve.dim + 1):
            for a in self.simplices(p):
                for k in range(len(a)):
                    b = a[:k] + a[k + 1:]
                    f = self.face_map(a, b)
                    maps.append({
                        "source": [label_str(verts[i]) for i in a],
                        "target": [label_str(verts[i]) for i in b],
                        "matrices": {str(q): f.matrix(q).to_dense() for q in sorted(f.matrices)},
                    })
        return {"context": self.context, "size": self.size, "d": self.d, "coeff": self.coeff,
                "nerve": self.nerve.to_json(), "pieces": pieces, "face_maps": maps}


def _check_coeff(coeff: str) -> str:
    coeff = normalize_coeff(coeff)
    if coeff not in COEFFS:
        raise BadParameter(f"unsupported coefficients {coeff}")
    return coeff


def polygon_cover_model(m: int, d: int, coeff: str = Z) -> CoverModel:
    if m < 3:
        raise BadParameter(f"m must be >= 3, got {m}")
    if d not in (1, 2):
        raise BadParameter(f"d must be 1 or 2, got {d}")
    coeff = _check_coeff(coeff)
    nerve = l_pm(m)
    verts = nerve.vertices
    edge_space = circle() if d == 1 else sphere2()
    spaces, carriers = {}, {}
    for p in range(nerve.dim + 1):
        for a in nerve.index_simplices(p):
            first = frozenset.intersection(*(verts[i].first for i in a))
            second = frozenset.intersection(*(verts[i].second for i in a))
            if not first or not second:
                raise BadParameter(f"nerve simplex {a} has empty intersection")
            space = StandardSpace(())
            for face in (first, second):
                space = space * (point() if len(face) == 1 else edge_space)
            spaces[a] = space
            carriers[a] = f"{label_str(first)}x{label_str(second)}"
    return CoverModel(nerve, spaces, coeff, d, "polygon", m, ngon(m), None, carriers)


def simplex_cover_model(n: int, d: int, coeff: str | None = None) -> CoverModel:
    """Cover model over the n-simplex: RP^s x RP^t (d=1) or CP^s x CP^t (d=2) pieces.

    d=1 is only available over z2; d=2 defaults to z.
    """
    if n < 2:
        raise BadParameter(f"n must be >= 2, got {n}")
    if d not in (1, 2):
        raise BadParameter(f"d must be 1 or 2, got {d}")
    if coeff is None:
        coeff = Z2 if d == 1 else Z
    coeff = _check_coeff(coeff)
    if d == 1 and coeff != Z2:
        raise CoefficientMismatch("the d=1 simplex model uses real projective pieces and needs z2")
    nerve = sd_boundary_simplex(n)
    verts = nerve.vertices
    make = rp if d == 1 else cp
    spaces, carriers = {}, {}
    for p in range(nerve.dim + 1):
        for a in nerve.index_simplices(p):
            chain = sorted((verts[i] for i in a), key=len)
            s, t = len(chain[0]) - 1, n - len(chain[-1])
            spaces[a] = make(s) * make(t)
            carriers[a] = f"{label_str(chain[0])}x{label_str(frozenset(range(1, n + 2)) - chain[-1])}"
    poly = simplex(n)
    ground = frozenset(range(1, n + 2))
    pairs = {v: face_pair(poly, poly.face_of(v), poly.face_of(ground - v)) for v in verts}
    return CoverModel(nerve, spaces, coeff, d, "simplex", n, poly, pairs, carriers)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

@dataclass
class CoverReport:
    passed: bool
    n_face_maps: int
    chain_map_failures: list = field(default_factory=list)
    commutation_failures: list = field(default_factory=list)
    locally_nice: LocallyNiceReport | None = None


def validate_cover_model(cm: CoverModel, check_locally_nice: bool = True,
                         maps: dict | None = None) -> CoverReport:
    """Check every face map, codim-2 commutation and local niceness of the nerve.

    ``maps`` may override individual face maps (keyed by (a, b)); the
    validator then checks those instead of the ones the model would build.
    """
    maps = maps or {}

    def fmap(a, b):
        return maps.get((a, b)) or cm.face_map(a, b)

    verts = cm.nerve.vertices
    name = lambda a: "[" + ",".join(label_str(verts[i]) for i in a) + "]"  # noqa: E731
    chain_fail, comm_fail = [], []
    count = 0
    for p in range(1, cm.nerve.dim + 1):
        for a in cm.simplices(p):
            for k in range(len(a)):
                b = a[:k] + a[k + 1:]
                count += 1
                if not fmap(a, b).is_chain_map():
                    chain_fail.append(f"{name(a)} -> {name(b)}")
            if p < 2:
                continue
            for i in range(len(a)):
                for j in range(i + 1, len(a)):
                    c = tuple(x for x in a if x not in (a[i], a[j]))
                    b1 = a[:i] + a[i + 1:]
                    b2 = a[:j] + a[j + 1:]
                    via1 = fmap(b1, c).compose(fmap(a, b1))
                    via2 = fmap(b2, c).compose(fmap(a, b2))
                    if not via1.equals(via2):
                        comm_fail.append(f"{name(a)} -> {name(c)}")
    ln = None
    if check_locally_nice and cm.polytope is not None:
        ln = locally_nice_check(cm.nerve, cm.polytope, cm.vertex_pairs)
    passed = not chain_fail and not comm_fail and (ln is None or ln.passed)
    return CoverReport(passed, count, chain_fail, comm_fail, ln)
