"""Subspaces of one tower level, given by spanning columns.

Rational spans are stored as a single FLINT integer matrix whose columns
span the subspace.  Columns may be rescaled freely since only the span
matters, so no denominators are ever carried.  Spans with irrational
entries fall back to lists of exact coordinate vectors.
"""
from __future__ import annotations

import math
from fractions import Fraction

import flint

from .exactlin.linalg import Matrix, all_rational, rank, rref
from .exactlin.scalars import scalar

# pivot candidates are found modulo this prime, then confirmed exactly
_PRIME = 9223372036854775783


def _int_columns(vectors):
    """fmpz_mat whose j-th column is a positive multiple of vectors[j]."""
    cols = []
    for v in vectors:
        den = 1
        for c in v:
            if c:
                d = c.denominator
                if d != 1:
                    den = den * d // math.gcd(den, d)
        cols.append([int(c * den) if c else 0 for c in v])
    return flint.fmpz_mat(cols).transpose()


def _take_columns(M, idx):
    nr, nc = M.nrows(), M.ncols()
    flat = M.entries()
    rows = [[flat[i * nc + j] for j in idx] for i in range(nr)]
    return flint.fmpz_mat(nr, len(idx), [x for r in rows for x in r])


def _hstack(mats):
    nr = mats[0].nrows()
    rows = [[] for _ in range(nr)]
    for M in mats:
        nc = M.ncols()
        flat = M.entries()
        for i in range(nr):
            rows[i].extend(flat[i * nc:(i + 1) * nc])
    total = sum(M.ncols() for M in mats)
    return flint.fmpz_mat(nr, total, [x for r in rows for x in r])


def _pivot_columns(M):
    """Pivot columns of the rref of M computed modulo a large prime."""
    R, rk = flint.nmod_mat(M, _PRIME).rref()
    nc = M.ncols()
    flat = R.entries()
    piv = []
    for i in range(int(rk)):
        row = flat[i * nc:(i + 1) * nc]
        piv.append(next(j for j, c in enumerate(row) if int(c)))
    return piv


class Span:
    """Column span inside a space of dimension ``dim``."""

    __slots__ = ("dim", "mat", "vecs", "_rank")

    def __init__(self, dim, mat=None, vecs=None):
        self.dim = dim
        self.mat = mat
        self.vecs = vecs
        self._rank = None
        if mat is not None and mat.ncols() == 0:
            self.mat = None
            self.vecs = []

    @classmethod
    def of(cls, dim, vectors):
        # zero columns are kept so that columns stay matched with their sources
        vectors = [list(v) for v in vectors]
        if not vectors:
            return cls(dim, vecs=[])
        if all_rational(vectors):
            return cls(dim, mat=_int_columns(vectors))
        return cls(dim, vecs=[[scalar(c) for c in v] for v in vectors])

    @classmethod
    def empty(cls, dim):
        return cls(dim, vecs=[])

    @property
    def integral(self):
        return self.mat is not None

    @property
    def ncols(self):
        return self.mat.ncols() if self.mat is not None else len(self.vecs)

    def __len__(self):
        return self.ncols

    def __bool__(self):
        return self.ncols > 0 and self.rank() > 0

    def rank(self):
        if self._rank is None:
            if self.mat is not None:
                self._rank = int(self.mat.rank())
            else:
                self._rank = rank(self.vecs) if self.vecs else 0
        return self._rank

    def basis(self):
        """A Span whose columns are independent."""
        if self.mat is None:
            if not self.vecs:
                return self
            out = Span(self.dim, vecs=rref(self.vecs)[0])
            out._rank = len(out.vecs)
            return out
        piv = _pivot_columns(self.mat)
        sub = _take_columns(self.mat, piv)
        r = self.rank()
        if int(sub.rank()) != len(piv) or len(piv) != r:
            # the prime was unlucky; use exact elimination
            R, den, rk = self.mat.rref()
            nc = self.mat.ncols()
            flat = R.entries()
            piv = [next(j for j in range(nc) if int(flat[i * nc + j])) for i in range(int(rk))]
            sub = _take_columns(self.mat, piv)
        out = Span(self.dim, mat=sub)
        out._rank = r
        return out

    def vectors(self):
        """Columns as lists of exact scalars."""
        if self.mat is None:
            return [list(v) for v in self.vecs]
        nr, nc = self.mat.nrows(), self.mat.ncols()
        flat = [int(x) for x in self.mat.entries()]
        return [[Fraction(flat[i * nc + j]) for i in range(nr)] for j in range(nc)]

    def combine(self, coords):
        """Span of the columns sum_k c[k] * column_k for each coordinate vector c."""
        coords = [list(c) for c in coords]
        if not coords:
            return Span.empty(self.dim)
        if self.mat is not None and all_rational(coords):
            C = _int_columns(coords)
            return Span(self.dim, mat=self.mat * C)
        vecs = self.vectors()
        out = [[scalar(sum((c * v[i] for c, v in zip(cs, vecs) if c != 0), Fraction(0)))
                for i in range(self.dim)] for cs in coords]
        return Span.of(self.dim, out)

    def coordinates(self, other):
        """Matrix C with other = self * C, for a basis span ``self``; None if impossible."""
        if self.mat is not None and other.mat is not None:
            B = flint.fmpq_mat(self.mat)
            X = flint.fmpq_mat(other.mat)
            Bt = B.transpose()
            try:
                C = (Bt * B).solve(Bt * X)
            except ZeroDivisionError:
                return None
            if B * C != X:
                return None
            return Matrix([[Fraction(int(C[i, j].p), int(C[i, j].q)) for j in range(C.ncols())]
                           for i in range(C.nrows())], C.ncols())
        from .exactlin.linalg import Echelon
        ech = Echelon(self.dim)
        for v in self.vectors():
            ech.add(v)
        cols = []
        for v in other.vectors():
            c = ech.coordinates(v)
            if c is None:
                return None
            cols.append(c)
        return Matrix.from_columns(cols, self.ncols)


def concat(spans, dim):
    spans = [s for s in spans if s]
    if not spans:
        return Span.empty(dim)
    if all(s.mat is not None for s in spans):
        return Span(dim, mat=_hstack([s.mat for s in spans]))
    vecs = []
    for s in spans:
        vecs.extend(s.vectors())
    return Span.of(dim, vecs)


def act(A, x, span, side="left"):
    """Span of {x v} (or {v x}) over the columns v of ``span``."""
    if span.ncols == 0:
        return Span.empty(A.dim)
    if span.mat is not None:
        op = A.cached_operator(x, side)
        if op is not None:
            return Span(A.dim, mat=op[0] * span.mat)
    return Span.of(A.dim, A.products(x, span.vectors(), side))


def include_span(tower, span, lo, hi):
    """Image of a span at level ``lo`` under the inclusion into level ``hi``."""
    idx = tower.include_index(lo, hi)
    D = tower.level(hi).dim
    if span.mat is not None:
        nr, nc = span.mat.nrows(), span.mat.ncols()
        flat = span.mat.entries()
        rows = [[0] * nc for _ in range(D)]
        for i in range(nr):
            rows[idx[i]] = flat[i * nc:(i + 1) * nc]
        return Span(D, mat=flint.fmpz_mat(D, nc, [x for r in rows for x in r]))
    out = []
    for v in span.vectors():
        w = [Fraction(0)] * D
        for i, c in enumerate(v):
            w[idx[i]] = c
        out.append(w)
    return Span.of(D, out)
