"""Exact dense linear algebra.

Rational matrices go through FLINT's fraction-free integer routines;
matrices with irrational entries use plain Gaussian elimination.  Both
paths return Python ``Fraction``/``Surd`` values.
"""
from __future__ import annotations

import math
from fractions import Fraction

import flint

from ..errors import NoSolution
from .scalars import QQ, Surd, scalar


class Matrix:
    """Dense matrix of exact scalars, immutable by convention."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        self.rows = [[scalar(c) for c in r] for r in rows]
        self.nrows = len(self.rows)
        self.ncols = ncols if ncols is not None else (len(self.rows[0]) if self.rows else 0)
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n):
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, m, n):
        return cls([[Fraction(0)] * n for _ in range(m)], n)

    @classmethod
    def from_columns(cls, cols, nrows):
        return cls([[c[i] for c in cols] for i in range(nrows)], len(cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return [r[j] for r in self.rows]

    def transpose(self):
        return Matrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)], self.nrows)

    def apply(self, v):
        return [scalar(sum((a * b for a, b in zip(r, v) if a and b), Fraction(0))) for r in self.rows]

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            cols = [other.column(j) for j in range(other.ncols)]
            return Matrix([[scalar(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0))) for c in cols]
                           for r in self.rows], other.ncols)
        return self.apply(other)

    def __add__(self, other):
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other):
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def scale(self, c):
        return Matrix([[c * a for a in r] for r in self.rows], self.ncols)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def is_zero(self):
        return all(c == 0 for r in self.rows for c in r)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"


def _rows_of(m):
    if isinstance(m, Matrix):
        return m.rows, m.ncols
    rows = [list(r) for r in m]
    return rows, (len(rows[0]) if rows else 0)


def _all_rational(rows):
    for r in rows:
        for c in r:
            if isinstance(c, Surd):
                return False
    return True


def _int_rows(rows):
    """Each row scaled by the lcm of its denominators."""
    out = []
    for r in rows:
        den = 1
        for c in r:
            if c:
                d = c.denominator if isinstance(c, Fraction) else 1
                den = den * d // math.gcd(den, d)
        out.append([int(c * den) for c in r])
    return out


def _flint_rref(rows, ncols):
    if not rows:
        return [], []
    M = flint.fmpz_mat(_int_rows(rows))
    R, den, rk = M.rref()
    den = int(den)
    out, pivots = [], []
    for i in range(rk):
        row = [Fraction(int(R[i, j]), den) for j in range(ncols)]
        out.append(row)
        pivots.append(next(j for j, c in enumerate(row) if c))
    return out, pivots


def _generic_rref(rows, ncols):
    work = [[scalar(c) for c in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = 1 / work[r][c]
        work[r] = [scalar(x * inv) for x in work[r]]
        prow = work[r]
        for i in range(len(work)):
            if i != r:
                f = work[i][c]
                if f != 0:
                    work[i] = [scalar(a - f * b) if b else a for a, b in zip(work[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rref(m):
    """Reduced row echelon form: (nonzero rows, pivot columns)."""
    rows, ncols = _rows_of(m)
    rows = [r for r in rows if any(c != 0 for c in r)]
    if not rows:
        return [], []
    if _all_rational(rows):
        return _flint_rref(rows, ncols)
    return _generic_rref(rows, ncols)


def rank(m):
    rows, ncols = _rows_of(m)
    rows = [r for r in rows if any(c != 0 for c in r)]
    if not rows:
        return 0
    if _all_rational(rows):
        return int(flint.fmpz_mat(_int_rows(rows)).rank())
    return len(_generic_rref(rows, ncols)[1])


def kernel_basis(m):
    """Basis of the right null space, each vector checked against ``m``.

    Vectors come from the reduced row echelon form: vector ``j`` has a 1 in
    the ``j``-th free column and 0 in the other free columns.
    """
    rows, ncols = _rows_of(m)
    R, pivots = rref(rows)
    pset = set(pivots)
    free = [j for j in range(ncols) if j not in pset]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = scalar(-row[f])
        basis.append(v)
    _check_kernel(rows, ncols, basis)
    return basis


def _check_kernel(rows, ncols, basis):
    rows = [r for r in rows if any(c != 0 for c in r)]
    if not basis or not rows:
        return
    if _all_rational(rows) and _all_rational(basis):
        M = flint.fmpz_mat(_int_rows(rows))
        V = flint.fmpz_mat(_int_rows(basis)).transpose()
        ok = (M * V).is_zero()
    else:
        ok = all(scalar(sum((a * b for a, b in zip(r, v) if a and b), Fraction(0))) == 0
                 for v in basis for r in rows)
    if not ok:
        raise ArithmeticError("kernel vector failed verification")


def solve(m, b):
    """Some exact solution x of m x = b; raises NoSolution when b is outside the column space."""
    rows, ncols = _rows_of(m)
    aug = [list(r) + [scalar(bi)] for r, bi in zip(rows, b)]
    R, pivots = rref(aug)
    if ncols in pivots:
        raise NoSolution("right-hand side not in column space")
    x = [Fraction(0)] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return x


def row_space(vectors, dim):
    """RREF basis (rows, pivots) of the span of ``vectors``."""
    vectors = [v for v in vectors if any(c != 0 for c in v)]
    if not vectors:
        return [], []
    return rref(vectors)


def to_fmpz_columns(vectors):
    """Integer matrix whose j-th column is a positive multiple of vectors[j]."""
    return flint.fmpz_mat(_int_rows(vectors)).transpose()


def column_scales(vectors):
    """The multipliers used by :func:`to_fmpz_columns`."""
    out = []
    for r in vectors:
        den = 1
        for c in r:
            if c:
                den = den * c.denominator // math.gcd(den, c.denominator)
        out.append(den)
    return out


def all_rational(vectors):
    return _all_rational(vectors)


def span_dim(vectors):
    vectors = [v for v in vectors if any(c != 0 for c in v)]
    return rank(vectors) if vectors else 0


def reduce_against(rows, pivots, v):
    """Residue of v modulo the span of RREF rows."""
    v = list(v)
    for row, p in zip(rows, pivots):
        c = v[p]
        if c != 0:
            v = [scalar(a - c * b) if b else a for a, b in zip(v, row)]
    return v


class Echelon:
    """Incrementally maintained echelon basis that remembers how rows were built.

    ``coordinates(w)`` expresses ``w`` in terms of the vectors passed to
    :meth:`add`, in insertion order, or returns ``None`` if ``w`` is not in
    their span.
    """

    def __init__(self, dim):
        self.dim = dim
        self.rows = []       # (pivot, normalized row, combination over inserted vectors)
        self.count = 0

    @property
    def rank(self):
        return len(self.rows)

    def _reduce(self, w):
        w = [scalar(c) for c in w]
        combo = {}
        for p, row, comb in self.rows:
            c = w[p]
            if c != 0:
                w = [scalar(a - c * b) if b else a for a, b in zip(w, row)]
                for k, v in comb.items():
                    combo[k] = scalar(combo.get(k, 0) + c * v)
        return w, combo

    def contains(self, w):
        residue, _ = self._reduce(w)
        return all(c == 0 for c in residue)

    def coordinates(self, w):
        residue, combo = self._reduce(w)
        if any(c != 0 for c in residue):
            return None
        return [combo.get(k, Fraction(0)) for k in range(self.count)]

    def add(self, w):
        residue, combo = self._reduce(w)
        idx = self.count
        self.count += 1
        p = next((j for j, c in enumerate(residue) if c != 0), None)
        if p is None:
            return False
        inv = 1 / residue[p]
        row = [scalar(c * inv) for c in residue]
        # row = inv * (w - sum combo_k v_k)
        comb = {k: scalar(-v * inv) for k, v in combo.items() if v != 0}
        comb[idx] = scalar(inv)
        for i, (q, other, ocomb) in enumerate(self.rows):
            c = other[p]
            if c != 0:
                other = [scalar(a - c * b) if b else a for a, b in zip(other, row)]
                ocomb = dict(ocomb)
                for k, v in comb.items():
                    ocomb[k] = scalar(ocomb.get(k, 0) - c * v)
                self.rows[i] = (q, other, ocomb)
        self.rows.append((p, row, comb))
        return True


def matrix_poly(p, m):
    """Evaluate polynomial ``p`` (low degree first) at a square Matrix."""
    n = m.nrows
    acc = Matrix.zeros(n, n)
    ident = Matrix.identity(n)
    for c in reversed(p):
        acc = (acc @ m) + ident.scale(c)
    return acc


def split_commutative(generators, field=QQ):
    """Primitive idempotents of the commutative algebra generated by ``generators``.

    The generators are pairwise commuting square matrices.  Each one is
    split into generalized eigenspaces in turn, refining the idempotents
    found so far.  Raises SplittingFieldFailure if a minimal polynomial has
    a nonlinear irreducible factor over ``field``.
    """
    from .poly import krylov_minpoly, pextgcd, pdivmod, pmul, ppow, roots_or_fail

    generators = list(generators)
    if not generators:
        raise ValueError("need at least one generator")
    n = generators[0].nrows
    idems = [Matrix.identity(n)]
    for g in generators:
        refined = []
        for e in idems:
            cols = [e.column(j) for j in range(n)]
            cols = [c for c in cols if any(x != 0 for x in c)]
            mp = krylov_minpoly(g.apply, n, cols)
            roots = roots_or_fail(mp, field)
            if len(roots) == 1:
                refined.append(e)
                continue
            factors = [ppow([-r, Fraction(1)], k) for r, k in roots]
            for j, q in enumerate(factors):
                other = [Fraction(1)]
                for i, f in enumerate(factors):
                    if i != j:
                        other = pmul(other, f)
                _, s, _ = pextgcd(other, q)
                poly = pdivmod(pmul(s, other), mp)[1]
                piece = e @ matrix_poly(poly, g)
                if not piece.is_zero():
                    refined.append(piece)
        idems = refined
    return idems
