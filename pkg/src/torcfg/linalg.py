"""Exact sparse linear algebra over Z, Q and GF(2).

Matrices are stored column-sparse: ``cols[j]`` maps row index to a nonzero
integer.  Everything is arbitrary precision; no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import NonFieldCoefficients

Z, Q, Z2 = "z", "q", "z2"
COEFFS = (Z, Q, Z2)
FIELDS = (Q, Z2)


def normalize_coeff(coeff: str) -> str:
    c = str(coeff).lower().replace("ℤ₂", "z2").replace("ℤ", "z").replace("ℚ", "q")
    aliases = {"z": Z, "int": Z, "zz": Z, "q": Q, "qq": Q, "rational": Q,
               "z2": Z2, "gf2": Z2, "f2": Z2, "mod2": Z2}
    if c not in aliases:
        raise ValueError(f"unknown coefficient ring {coeff!r}; use z, q or z2")
    return aliases[c]


class SparseMatrix:
    """Column-sparse integer matrix of shape ``(nrows, ncols)``."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: list[dict[int, int]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols if cols is not None else [{} for _ in range(ncols)]
        if len(self.cols) != ncols:
            raise ValueError("column count mismatch")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, [{j: 1} for j in range(n)])

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "SparseMatrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if nrows else 0
        cols: list[dict[int, int]] = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                if v:
                    cols[j][i] = int(v)
        return cls(nrows, ncols, cols)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def copy(self) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, [dict(c) for c in self.cols])

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def transpose(self) -> "SparseMatrix":
        cols: list[dict[int, int]] = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                cols[i][j] = v
        return SparseMatrix(self.ncols, self.nrows, cols)

    def reduce(self, coeff: str) -> "SparseMatrix":
        """Entries reduced for ``coeff`` (mod 2 for GF(2), unchanged otherwise)."""
        if coeff != Z2:
            return self
        cols = [{i: 1 for i, v in c.items() if v % 2} for c in self.cols]
        return SparseMatrix(self.nrows, self.ncols, cols)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols: list[dict[int, int]] = []
        for ocol in other.cols:
            acc: dict[int, int] = {}
            for k, w in ocol.items():
                for i, v in self.cols[k].items():
                    acc[i] = acc.get(i, 0) + v * w
            cols.append({i: v for i, v in acc.items() if v})
        return SparseMatrix(self.nrows, other.ncols, cols)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for i, v in b.items():
                c[i] = c.get(i, 0) + v
            cols.append({i: v for i, v in c.items() if v})
        return SparseMatrix(self.nrows, self.ncols, cols)

    def __neg__(self) -> "SparseMatrix":
        return self.scaled(-1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def scaled(self, s: int) -> "SparseMatrix":
        if s == 0:
            return SparseMatrix(self.nrows, self.ncols)
        return SparseMatrix(self.nrows, self.ncols, [{i: v * s for i, v in c.items()} for c in self.cols])

    def is_zero(self, coeff: str = Z) -> bool:
        if coeff == Z2:
            return all(v % 2 == 0 for c in self.cols for v in c.values())
        return all(not c for c in self.cols)

    def equals(self, other: "SparseMatrix", coeff: str = Z) -> bool:
        return self.shape == other.shape and (self - other).is_zero(coeff)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SparseMatrix":
        rpos = {r: k for k, r in enumerate(rows)}
        out = []
        for j in cols:
            out.append({rpos[i]: v for i, v in self.cols[j].items() if i in rpos})
        return SparseMatrix(len(rows), len(cols), out)

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def block_matrix(row_sizes: Sequence[int], col_sizes: Sequence[int],
                 blocks: dict[tuple[int, int], SparseMatrix]) -> SparseMatrix:
    """Assemble a matrix from blocks keyed by (block row, block col)."""
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    cols: list[dict[int, int]] = [{} for _ in range(coff[-1])]
    for (bi, bj), blk in blocks.items():
        if blk.shape != (row_sizes[bi], col_sizes[bj]):
            raise ValueError(f"block {(bi, bj)} has shape {blk.shape}")
        for j, col in enumerate(blk.cols):
            target = cols[coff[bj] + j]
            for i, v in col.items():
                r = roff[bi] + i
                nv = target.get(r, 0) + v
                if nv:
                    target[r] = nv
                else:
                    target.pop(r, None)
    return SparseMatrix(roff[-1], coff[-1], cols)


# ---------------------------------------------------------------------------
# Smith normal form over Z
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    diagonal: tuple[int, ...]  # nonzero invariant factors, each dividing the next
    rank: int


def _rows_of(m: SparseMatrix) -> dict[int, dict[int, int]]:
    rows: dict[int, dict[int, int]] = {}
    for j, col in enumerate(m.cols):
        for i, v in col.items():
            if v:
                rows.setdefault(i, {})[j] = v
    return rows


def _eliminate_units(m: SparseMatrix) -> tuple[int, dict[int, dict[int, int]]]:
    """Pivot away +-1 entries.  Returns (#unit pivots, remaining rows).

    A unit pivot clears its row and column by unimodular operations without
    disturbing the divisibility structure of the rest, so each one
    contributes an invariant factor 1.  Columns are visited sparsest first
    and the shortest row holding a unit is used, which keeps fill-in low.
    """
    rows = _rows_of(m)
    colidx: dict[int, set[int]] = {}
    for i, row in rows.items():
        for j in row:
            colidx.setdefault(j, set()).add(i)
    units = 0
    progress = True
    while progress:
        progress = False
        for pj in sorted(colidx, key=lambda j: len(colidx[j])):
            members = colidx.get(pj)
            if not members:
                continue
            pi = None
            for i in members:
                v = rows[i][pj]
                if (v == 1 or v == -1) and (pi is None or len(rows[i]) < len(rows[pi])):
                    pi = i
            if pi is None:
                continue
            prow = rows.pop(pi)
            pv = prow[pj]
            for j in prow:
                colidx[j].discard(pi)
            for i in list(members):
                row = rows[i]
                f = row[pj] * pv  # pv is +-1, so this is row[pj] / pv
                for j, v in prow.items():
                    nv = row.get(j, 0) - f * v
                    if nv:
                        if j not in row:
                            colidx[j].add(i)
                        row[j] = nv
                    elif j in row:
                        del row[j]
                        colidx[j].discard(i)
                if not row:
                    del rows[i]
            for j in prow:
                if not colidx[j]:
                    del colidx[j]
            colidx.pop(pj, None)
            units += 1
            progress = True
    return units, rows


def _dense_snf_diagonal(a: list[list[int]]) -> list[int]:
    """Diagonalize a small dense integer matrix; returns nonzero |pivots|."""
    a = [row[:] for row in a]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    diag: list[int] = []
    t = 0
    while t < min(nr, nc):
        # pivot on smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = a[i][j]
                if v and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, nc):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for i in range(t, nr):
                            a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        dirty = True
            if not dirty:
                break
            # move the smallest remaining entry of row/col t onto the pivot
            best = (t, t)
            for i in range(t + 1, nr):
                if a[i][t] and abs(a[i][t]) < abs(a[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t + 1, nc):
                if a[t][j] and abs(a[t][j]) < abs(a[best[0]][best[1]]):
                    best = (t, j)
            i, j = best
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        # content reduction keeps the trailing block small
        t += 1
        if t < min(nr, nc):
            g = 0
            for i in range(t, nr):
                for j in range(t, nc):
                    g = gcd(g, a[i][j])
            if g > 1:
                # every later invariant is a multiple of g; factor it out and
                # multiply back at the end
                rest = [[a[i][j] // g for j in range(t, nc)] for i in range(t, nr)]
                return diag + [g * d for d in _dense_snf_diagonal(rest)]
    return diag


def _to_divisibility_chain(diag: Iterable[int]) -> tuple[int, ...]:
    d = sorted(abs(x) for x in diag if x)
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return tuple(d)


def smith_normal_form(m: SparseMatrix | Sequence[Sequence[int]]) -> SmithForm:
    """Invariant factors d_1 | d_2 | ... of an integer matrix, and its rank."""
    if not isinstance(m, SparseMatrix):
        m = SparseMatrix.from_dense(m) if len(m) else SparseMatrix(0, 0)
    units, rows = _eliminate_units(m)
    if rows:
        rlist = sorted(rows)
        cset = sorted({j for r in rows.values() for j in r})
        cpos = {j: k for k, j in enumerate(cset)}
        dense = [[0] * len(cset) for _ in rlist]
        for k, i in enumerate(rlist):
            for j, v in rows[i].items():
                dense[k][cpos[j]] = v
        rest = _dense_snf_diagonal(dense)
    else:
        rest = []
    diag = _to_divisibility_chain([1] * units + rest)
    return SmithForm(diag, len(diag))


# ---------------------------------------------------------------------------
# Field linear algebra
# ---------------------------------------------------------------------------

def rank_mod2(m: SparseMatrix) -> int:
    """Rank over GF(2) using int bitsets for the columns."""
    pivots: dict[int, int] = {}
    r = 0
    for col in m.cols:
        x = 0
        for i, v in col.items():
            if v & 1:
                x |= 1 << i
        while x:
            top = x.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = x
                r += 1
                break
            x ^= p
    return r


def rank(m: SparseMatrix, coeff: str) -> int:
    if coeff == Z2:
        return rank_mod2(m)
    # rank over Z and over Q agree
    return smith_normal_form(m).rank


def _check_field(coeff: str) -> None:
    if coeff not in FIELDS:
        raise NonFieldCoefficients(f"coefficients {coeff!r} are not a field")


def _vec_from_col(col: dict[int, int], coeff: str):
    if coeff == Z2:
        x = 0
        for i, v in col.items():
            if v & 1:
                x |= 1 << i
        return x
    return {i: Fraction(v) for i, v in col.items() if v}


class _Echelon:
    """Incrementally maintained echelon basis keyed by leading (largest) index."""

    def __init__(self, coeff: str):
        _check_field(coeff)
        self.coeff = coeff
        self.piv: dict[int, object] = {}

    def reduce(self, x):
        if self.coeff == Z2:
            while x:
                p = self.piv.get(x.bit_length() - 1)
                if p is None:
                    return x
                x ^= p
            return x
        x = dict(x)
        while x:
            top = max(x)
            p = self.piv.get(top)
            if p is None:
                return x
            f = x[top] / p[top]
            for i, v in p.items():
                nv = x.get(i, 0) - f * v
                if nv:
                    x[i] = nv
                else:
                    x.pop(i, None)
        return x

    def add(self, x) -> bool:
        x = self.reduce(x)
        if not x:
            return False
        top = x.bit_length() - 1 if self.coeff == Z2 else max(x)
        self.piv[top] = x
        return True

    def __len__(self) -> int:
        return len(self.piv)


def span_dim(vectors: Iterable, coeff: str) -> int:
    """Dimension of the span of vectors given as bitsets (GF(2)) or dicts (Q)."""
    e = _Echelon(coeff)
    for v in vectors:
        e.add(v)
    return len(e)


def kernel_basis(m: SparseMatrix, coeff: str) -> list:
    """Basis of ker(m) over a field, as vectors in the domain coordinates."""
    _check_field(coeff)
    # reduce columns left to right, tracking the combinations
    piv: dict[int, tuple] = {}
    basis = []
    for j, col in enumerate(m.cols):
        x = _vec_from_col(col, coeff)
        if coeff == Z2:
            comb = 1 << j
            while x:
                top = x.bit_length() - 1
                p = piv.get(top)
                if p is None:
                    break
                x ^= p[0]
                comb ^= p[1]
            if x:
                piv[x.bit_length() - 1] = (x, comb)
            else:
                basis.append(comb)
        else:
            comb = {j: Fraction(1)}
            while x:
                top = max(x)
                p = piv.get(top)
                if p is None:
                    break
                f = x[top] / p[0][top]
                for i, v in p[0].items():
                    nv = x.get(i, 0) - f * v
                    if nv:
                        x[i] = nv
                    else:
                        x.pop(i, None)
                for i, v in p[1].items():
                    nv = comb.get(i, 0) - f * v
                    if nv:
                        comb[i] = nv
                    else:
                        comb.pop(i, None)
            if x:
                piv[max(x)] = (x, comb)
            else:
                basis.append(comb)
    return basis


def apply(m: SparseMatrix, vec, coeff: str):
    """Image of a domain vector (bitset or dict) under m."""
    if coeff == Z2:
        out = 0
        j = 0
        x = vec
        while x:
            if x & 1:
                out ^= _vec_from_col(m.cols[j], Z2)
            x >>= 1
            j += 1
        return out
    out: dict[int, Fraction] = {}
    for j, w in vec.items():
        for i, v in m.cols[j].items():
            nv = out.get(i, 0) + w * v
            if nv:
                out[i] = nv
            else:
                out.pop(i, None)
    return out


def filtered_pairs(m: SparseMatrix, coeff: str) -> tuple[dict[int, int], set[int]]:
    """Column reduction of ``m`` in index order (standard persistence reduction).

    Rows and columns must already be sorted compatibly with the filtration.
    Returns ``(pairs, zero_cols)`` where ``pairs`` maps a column index to the
    row index of its lowest (largest) nonzero entry after reduction, and
    ``zero_cols`` are the columns that reduce to zero.
    """
    _check_field(coeff)
    lows: dict[int, object] = {}
    pairs: dict[int, int] = {}
    zero_cols: set[int] = set()
    for j, col in enumerate(m.cols):
        x = _vec_from_col(col, coeff)
        if coeff == Z2:
            while x:
                top = x.bit_length() - 1
                p = lows.get(top)
                if p is None:
                    break
                x ^= p
            if x:
                top = x.bit_length() - 1
                lows[top] = x
                pairs[j] = top
            else:
                zero_cols.add(j)
        else:
            while x:
                top = max(x)
                p = lows.get(top)
                if p is None:
                    break
                f = x[top] / p[top]
                for i, v in p.items():
                    nv = x.get(i, 0) - f * v
                    if nv:
                        x[i] = nv
                    else:
                        x.pop(i, None)
            if x:
                top = max(x)
                lows[top] = x
                pairs[j] = top
            else:
                zero_cols.add(j)
    return pairs, zero_cols


def integer_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(map(int, r)) for r in rows]
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
