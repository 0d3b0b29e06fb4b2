"""Double complex of a cover model, its total homology and spectral pages.

Pages are computed in two independent ways.  The default reduces the total
differential column by column in filtration order (the persistence
algorithm): every pair (i, j) it produces, with filtration gap g, survives
to exactly the pages E^1..E^g, and unpaired cycles survive forever.  The
reference method evaluates the subquotient formula for E^r with explicit
kernels and spans; it is slow and used to cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cover import CoverModel, polygon_cover_model, simplex_cover_model, validate_cover_model
from .errors import BadParameter, CoefficientMismatch, NonFieldCoefficients, ValidationFailed
from .homology import ChainComplex, HomologyResult, homology
from .linalg import FIELDS, Z, Z2, SparseMatrix, apply, filtered_pairs, kernel_basis, normalize_coeff, span_dim


class DoubleComplex:
    """D_{p,q} = sum over nerve p-simplices a of C_q(X_a).

    ``d1[p, q]`` maps D_{p,q} -> D_{p,q-1} and ``d2[p, q]`` maps
    D_{p,q} -> D_{p-1,q}; they commute.  Basis of D_{p,q}: pairs
    (position of a among the p-simplices, index of the cell in C_q(X_a)).
    """

    def __init__(self, model: CoverModel, validate: bool = True):
        if validate:
            report = validate_cover_model(model, check_locally_nice=False)
            if not report.passed:
                raise ValidationFailed(f"cover model invalid: {report}")
        self.model = model
        self.coeff = model.coeff
        nerve = model.nerve
        self.bases: dict[tuple[int, int], list[tuple[int, int]]] = {}
        offsets: dict[tuple[int, int], dict[int, int]] = {}  # (p,q) -> simplex position -> first index
        simplices = {p: nerve.index_simplices(p) for p in range(nerve.dim + 1)}
        self._position = {p: {a: i for i, a in enumerate(s)} for p, s in simplices.items()}
        for p, ss in simplices.items():
            for pos, a in enumerate(ss):
                c = model.piece(a)
                for q in c.degrees:
                    basis = self.bases.setdefault((p, q), [])
                    offsets.setdefault((p, q), {})[pos] = len(basis)
                    basis.extend((pos, i) for i in range(c.rank_in(q)))
        self.d1: dict[tuple[int, int], SparseMatrix] = {}
        self.d2: dict[tuple[int, int], SparseMatrix] = {}
        for (p, q), basis in self.bases.items():
            ss = simplices[p]
            if (p, q - 1) in self.bases:
                cols = []
                for pos, i in basis:
                    off = offsets[(p, q - 1)].get(pos)
                    col = model.piece(ss[pos]).boundary(q).cols[i] if off is not None else {}
                    cols.append({off + r: v for r, v in col.items()})
                self.d1[(p, q)] = SparseMatrix(len(self.bases[(p, q - 1)]), len(basis), cols).reduce(self.coeff)
            if p > 0 and (p - 1, q) in self.bases:
                cols = []
                lower = self._position[p - 1]
                for pos, i in basis:
                    a = ss[pos]
                    col: dict[int, int] = {}
                    for k in range(len(a)):
                        b = a[:k] + a[k + 1:]
                        sign = -1 if k % 2 else 1
                        off = offsets[(p - 1, q)].get(lower[b])
                        if off is None:
                            continue
                        for r, v in model.face_map(a, b).matrix(q).cols[i].items():
                            col[off + r] = col.get(off + r, 0) + sign * v
                    cols.append({r: v for r, v in col.items() if v})
                self.d2[(p, q)] = SparseMatrix(len(self.bases[(p - 1, q)]), len(basis), cols).reduce(self.coeff)

    def dim(self, p: int, q: int) -> int:
        return len(self.bases.get((p, q), ()))

    def _d1(self, p, q) -> SparseMatrix:
        return self.d1.get((p, q)) or SparseMatrix(self.dim(p, q - 1), self.dim(p, q))

    def _d2(self, p, q) -> SparseMatrix:
        return self.d2.get((p, q)) or SparseMatrix(self.dim(p - 1, q), self.dim(p, q))

    def check(self) -> list[str]:
        """Names of the violated identities among d1^2=0, d2^2=0, d1d2=d2d1."""
        bad = []
        for (p, q) in self.bases:
            if not (self._d1(p, q - 1) @ self._d1(p, q)).is_zero(self.coeff):
                bad.append(f"d1^2 at {(p, q)}")
            if not (self._d2(p - 1, q) @ self._d2(p, q)).is_zero(self.coeff):
                bad.append(f"d2^2 at {(p, q)}")
            lhs = self._d1(p - 1, q) @ self._d2(p, q)
            rhs = self._d2(p, q - 1) @ self._d1(p, q)
            if not lhs.equals(rhs, self.coeff):
                bad.append(f"d1d2 != d2d1 at {(p, q)}")
        return bad

    @property
    def total_degrees(self) -> list[int]:
        return sorted({p + q for p, q in self.bases})

    def total_basis(self, n: int) -> list[tuple[int, int, int]]:
        """Basis of Tot_n as (p, q, index in D_{p,q}), ordered by p."""
        out = []
        for (p, q) in sorted(self.bases):
            if p + q == n:
                out.extend((p, q, i) for i in range(self.dim(p, q)))
        return out

    def total_differential(self, n: int, coeff: str | None = None) -> SparseMatrix:
        """d1 + (-1)^q d2 on Tot_n -> Tot_(n-1)."""
        coeff = self.coeff if coeff is None else coeff
        src, tgt = self.total_basis(n), self.total_basis(n - 1)
        offset: dict[tuple[int, int], int] = {}
        for k, (p, q, i) in enumerate(tgt):
            if i == 0:
                offset[(p, q)] = k
        cols = []
        for p, q, i in src:
            col: dict[int, int] = {}
            if (p, q) in self.d1:
                off = offset[(p, q - 1)]
                for r, v in self.d1[(p, q)].cols[i].items():
                    col[off + r] = v
            if (p, q) in self.d2:
                off = offset[(p - 1, q)]
                s = -1 if q % 2 else 1
                for r, v in self.d2[(p, q)].cols[i].items():
                    col[off + r] = col.get(off + r, 0) + s * v
            cols.append({r: v for r, v in col.items() if v})
        return SparseMatrix(len(tgt), len(src), cols).reduce(coeff)

    def total_complex(self, coeff: str | None = None) -> ChainComplex:
        coeff = self._coeff_for(coeff)
        bases = {n: self.total_basis(n) for n in self.total_degrees}
        bds = {n: self.total_differential(n, coeff) for n in self.total_degrees if n - 1 in bases}
        return ChainComplex(bases, bds, coeff, check=False)

    def _coeff_for(self, coeff: str | None) -> str:
        coeff = self.coeff if coeff is None else normalize_coeff(coeff)
        if coeff != self.coeff and self.coeff != Z:
            raise CoefficientMismatch(f"model over {self.coeff} cannot be read over {coeff}")
        return coeff


def double_complex(model: CoverModel, validate: bool = True) -> DoubleComplex:
    return DoubleComplex(model, validate)


def total_homology(dc: DoubleComplex, coeff: str | None = None) -> HomologyResult:
    return homology(dc.total_complex(coeff))


# ---------------------------------------------------------------------------
# Pages
# ---------------------------------------------------------------------------

@dataclass
class SpectralPages:
    coeff: str
    pages: dict  # r -> {(p, q): dim}, for r = 1 .. stable_page
    infinity: dict  # (p, q) -> dim
    stable_page: int  # first r with E^r = E^infinity
    stabilized: bool = True  # False when r_max cut the computation short
    max_gap: int = 0

    def dim(self, r: int, p: int, q: int) -> int:
        if r > self.stable_page:
            return self.infinity.get((p, q), 0)
        return self.pages[r].get((p, q), 0)

    def page(self, r: int) -> dict:
        return self.pages[r] if r <= self.stable_page else dict(self.infinity)

    def to_json(self) -> dict:
        def enc(page):
            return {f"{p},{q}": str(v) for (p, q), v in sorted(page.items())}
        out = {str(r): enc(pg) for r, pg in sorted(self.pages.items())}
        out["inf"] = enc(self.infinity)
        return out


def _page_keys(dc: DoubleComplex) -> list[tuple[int, int]]:
    return sorted(dc.bases)


def _pages_by_pairs(dc: DoubleComplex, coeff: str) -> tuple[dict, dict, int]:
    """Return (per-gap counts, essential counts, max gap).

    counts[(p, q)][g] = number of pair ends at (p, q) whose pair has gap g.
    """
    degrees = dc.total_degrees
    bases = {n: dc.total_basis(n) for n in degrees}
    lows: dict[int, set[int]] = {}
    counts: dict[tuple[int, int], dict[int, int]] = {}
    positive: dict[int, set[int]] = {}
    max_gap = 0
    for n in degrees:
        src = bases[n]
        if n - 1 not in bases:
            positive[n] = set(range(len(src)))
            continue
        tgt = bases[n - 1]
        pairs, zero_cols = filtered_pairs(dc.total_differential(n, coeff), coeff)
        positive[n] = zero_cols
        lows[n - 1] = set(pairs.values())
        for j, i in pairs.items():
            pj, qj, _ = src[j]
            pi, qi, _ = tgt[i]
            g = pj - pi
            max_gap = max(max_gap, g)
            for key in ((pj, qj), (pi, qi)):
                bucket = counts.setdefault(key, {})
                bucket[g] = bucket.get(g, 0) + 1
    essential: dict[tuple[int, int], int] = {}
    for n in degrees:
        killed = lows.get(n, set())
        for j in positive[n]:
            if j not in killed:
                p, q, _ = bases[n][j]
                essential[(p, q)] = essential.get((p, q), 0) + 1
    return counts, essential, max_gap


def _subquotient_dims(dc: DoubleComplex, coeff: str, r: int) -> dict:
    """E^r by the formula Z^r_p / (Z^(r-1)_(p-1) + D Z^(r-1)_(p+r-1))."""
    degrees = dc.total_degrees
    bases = {n: dc.total_basis(n) for n in degrees}
    diffs = {n: dc.total_differential(n, coeff) for n in degrees if n - 1 in bases}

    def upto(n, p):
        return sum(1 for (pp, _, _) in bases.get(n, ()) if pp <= p)

    def zspace(n, p, s):
        """Basis of {x in F_p Tot_n : Dx in F_(p-s)} in full Tot_n coordinates."""
        width = upto(n, p)
        if width == 0:
            return []
        if n not in diffs or s <= 0:
            if coeff == Z2:
                return [1 << j for j in range(width)]
            return [{j: 1} for j in range(width)]
        d = diffs[n]
        rows = [k for k, (pp, _, _) in enumerate(bases[n - 1]) if pp > p - s]
        return kernel_basis(d.submatrix(rows, list(range(width))), coeff)

    out = {}
    for (p, q) in _page_keys(dc):
        n = p + q
        z = zspace(n, p, r)
        if not z:
            out[(p, q)] = 0
            continue
        boundary = zspace(n, p - 1, r - 1)
        if n + 1 in diffs:
            boundary = boundary + [apply(diffs[n + 1], v, coeff) for v in zspace(n + 1, p + r - 1, r - 1)]
        out[(p, q)] = span_dim(z, coeff) - span_dim(boundary, coeff)
    return out


def pages(dc: DoubleComplex, r_max: int | None = None, coeff: str | None = None,
          method: str = "pairs") -> SpectralPages:
    """Dimensions of E^r_{p,q} for r >= 1 over a field."""
    coeff = dc._coeff_for(coeff) if coeff is not None else dc.coeff
    if coeff not in FIELDS:
        raise NonFieldCoefficients(f"pages need field coefficients, got {coeff!r}")
    keys = _page_keys(dc)
    if method == "pairs":
        counts, essential, max_gap = _pages_by_pairs(dc, coeff)

        def dims(r):
            return {k: essential.get(k, 0) + sum(c for g, c in counts.get(k, {}).items() if g >= r)
                    for k in keys}
        infinity = {k: essential.get(k, 0) for k in keys}
        stable = max(1, max_gap + 1)
        computed = {r: dims(r) for r in range(1, stable + 1)}
    elif method == "subquotient":
        ps = [p for p, _ in keys]
        span = (max(ps) - min(ps) + 1) if ps else 1
        computed = {r: _subquotient_dims(dc, coeff, r) for r in range(1, span + 2)}
        infinity = computed[span + 1]
        stable = span + 1
        while stable > 1 and computed[stable - 1] == infinity:
            stable -= 1
        computed = {r: v for r, v in computed.items() if r <= stable}
        max_gap = stable - 1
    else:
        raise BadParameter(f"unknown page method {method!r}")
    stabilized = True
    if r_max is not None and r_max < stable:
        computed = {r: v for r, v in computed.items() if r <= r_max}
        stabilized = False
    return SpectralPages(coeff, computed, infinity, stable, stabilized, max_gap)


def e1_from_pieces(dc: DoubleComplex, coeff: str | None = None) -> dict:
    """Sum over nerve p-simplices of dim H_q(X_a), computed piece by piece."""
    coeff = dc.coeff if coeff is None else coeff
    out: dict[tuple[int, int], int] = {}
    model = dc.model
    for p in range(model.nerve.dim + 1):
        for a in model.simplices(p):
            c = model.piece(a)
            if coeff != c.coeff:
                c = ChainComplex(c.bases, {q: c.boundary(q) for q in c.degrees}, coeff)
            h = homology(c)
            for q in c.degrees:
                out[(p, q)] = out.get((p, q), 0) + h.betti_in(q)
    return out


@dataclass
class ConvergenceReport:
    degrees: dict  # total degree -> (dim H_i, sum of E^infinity dims)
    collapse_page: int
    passed: bool

    def to_json(self) -> dict:
        return {"degrees": {str(i): {"homology": str(h), "e_infinity": str(e)}
                            for i, (h, e) in sorted(self.degrees.items())},
                "collapse_page": self.collapse_page, "converged": self.passed}


def convergence_report(sp: SpectralPages, total: HomologyResult) -> ConvergenceReport:
    if total.coeff != sp.coeff:
        raise CoefficientMismatch(f"pages over {sp.coeff} but homology over {total.coeff}")
    sums: dict[int, int] = {}
    for (p, q), v in sp.infinity.items():
        sums[p + q] = sums.get(p + q, 0) + v
    degrees = set(sums) | {total.min_degree + i for i in range(len(total.betti))}
    table = {i: (total.betti_in(i), sums.get(i, 0)) for i in sorted(degrees)}
    ok = sp.stabilized and all(h == e for h, e in table.values())
    return ConvergenceReport(table, sp.stable_page, ok)


# ---------------------------------------------------------------------------
# E^2(d=1) versus E^2(d=2) mod 2
# ---------------------------------------------------------------------------

@dataclass
class RowDoublingReport:
    context: str
    size: int
    passed: bool
    compared: int
    mismatches: list = field(default_factory=list)  # ((p, q), dim for d=1, dim at (p, 2q) for d=2)


def row_doubling_check(context: str, size: int) -> RowDoublingReport:
    """Compare dim E^2_{p,q} of the d=1 model with dim E^2_{p,2q} of the d=2 model, mod 2.

    Entries of the d=2 page in odd rows must vanish.
    """
    if context == "polygon":
        models = [polygon_cover_model(size, d, Z2) for d in (1, 2)]
    elif context == "simplex":
        models = [simplex_cover_model(size, d, Z2) for d in (1, 2)]
    else:
        raise BadParameter(f"context must be polygon or simplex, got {context!r}")
    e1, e2 = (pages(double_complex(m), r_max=2) for m in models)
    page1, page2 = e1.dim, e2.dim
    keys1 = set(e1.pages.get(2, e1.infinity)) | set(e1.infinity)
    keys2 = set(e2.pages.get(2, e2.infinity)) | set(e2.infinity)
    mismatches = []
    compared = 0
    for p, q in sorted(keys1 | {(p, q // 2) for p, q in keys2 if q % 2 == 0}):
        compared += 1
        a, b = page1(2, p, q), page2(2, p, 2 * q)
        if a != b:
            mismatches.append(((p, q), a, b))
    for p, q in sorted(keys2):
        if q % 2 and page2(2, p, q):
            mismatches.append(((p, q), None, page2(2, p, q)))
    return RowDoublingReport(context, size, not mismatches, compared, mismatches)
