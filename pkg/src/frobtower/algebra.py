"""Sparse elements of finite-dimensional algebras given by a normal-form basis.

A :class:`Level` owns the basis words of one tower level together with a
word-product rule.  Products of words are memoized; the full table of
structure constants is built lazily as numpy COO arrays when dense
operators (left/right multiplication, trace forms) are needed.
"""
from __future__ import annotations

import math
from fractions import Fraction

import flint
import numpy as np

from .errors import LevelMismatch
from .exactlin.linalg import Matrix
from .exactlin.scalars import QQ, Surd, format_scalar, scalar

_INT64_SAFE = 2 ** 62
FAST_DIM = 24
_OP_CACHE = 32


class Level:
    """One algebra A_n of a tower.

    ``word_product(u, v)`` must return a dict ``{word: coefficient}`` in
    normal form.  ``generators`` are words (or elements) generating A_n as
    an algebra; they are used for centrality and commutation checks.
    """

    def __init__(self, n, words, unit, word_product, generators=(), field=QQ, name="",
                 memoize=True, single_product=None, perm_basis=False):
        self.n = n
        self.words = list(words)
        self.index = {w: i for i, w in enumerate(self.words)}
        if len(self.index) != len(self.words):
            raise ValueError("duplicate basis words")
        self.unit = unit
        self._word_product = word_product
        self._memo = {} if memoize else None
        # optional fast rule for bases closed under multiplication (group algebras)
        self.single_product = single_product
        # words are permutation tuples multiplied by composition
        self.perm_basis = perm_basis
        self._gens = list(generators)
        self.field = field
        self.name = name
        self._coo = None
        self._ltrace = None
        self._rtrace = None

    @property
    def dim(self):
        return len(self.words)

    def __repr__(self):
        return f"Level({self.name or 'A'}_{self.n}, dim={self.dim})"

    # products ------------------------------------------------------------
    def mul_words(self, u, v):
        if self._memo is None:
            return {w: scalar(c) for w, c in self._word_product(u, v).items() if c != 0}
        key = (u, v)
        out = self._memo.get(key)
        if out is None:
            out = {w: scalar(c) for w, c in self._word_product(u, v).items() if c != 0}
            self._memo[key] = out
        return out

    def element(self, terms):
        return AlgebraElement(self, terms)

    def basis_element(self, word):
        return AlgebraElement(self, {word: Fraction(1)})

    def one(self):
        return self.basis_element(self.unit)

    def zero(self):
        return AlgebraElement(self, {})

    def from_vector(self, vec):
        return AlgebraElement(self, {w: c for w, c in zip(self.words, vec) if c != 0})

    def generators(self):
        return [g if isinstance(g, AlgebraElement) else self.basis_element(g) for g in self._gens]

    def basis(self):
        return [self.basis_element(w) for w in self.words]

    # structure constants -------------------------------------------------
    def structure(self):
        """COO arrays (I, J, K, C) with w_I * w_J = sum C w_K.

        C is an object array of exact scalars.
        """
        if self._coo is None:
            if self.perm_basis:
                self._coo = self._perm_structure()
                return self._coo
            I, J, K, C = [], [], [], []
            idx = self.index
            for i, u in enumerate(self.words):
                for j, v in enumerate(self.words):
                    for w, c in self.mul_words(u, v).items():
                        I.append(i)
                        J.append(j)
                        K.append(idx[w])
                        C.append(c)
            C_arr = np.empty(len(C), dtype=object)
            C_arr[:] = C
            self._coo = (np.array(I, dtype=np.int64), np.array(J, dtype=np.int64),
                         np.array(K, dtype=np.int64), C_arr)
        return self._coo

    def _perm_structure(self):
        # (s*t)(j) = s(t(j)): row i of the table is P[i][P]
        D = self.dim
        P = np.array(self.words, dtype=np.int64).reshape(D, -1) - 1
        m = P.shape[1]
        weights = (m ** np.arange(m, dtype=np.int64)) if m else np.zeros(0, dtype=np.int64)
        codes = P @ weights
        order = np.argsort(codes)
        K = np.empty((D, D), dtype=np.int64)
        for i in range(D):
            comp = P[i][P] @ weights
            K[i] = order[np.searchsorted(codes[order], comp)]
        I = np.repeat(np.arange(D, dtype=np.int64), D)
        J = np.tile(np.arange(D, dtype=np.int64), D)
        C = np.empty(D * D, dtype=object)
        C[:] = [Fraction(1)] * (D * D)
        self._int_coo = (np.ones(D * D, dtype=np.int64), 1)
        return I, J, K.reshape(-1), C

    def _rational_structure(self):
        """Integer-scaled structure constants, or None if some constant is irrational."""
        I, J, K, C = self.structure()
        if not hasattr(self, "_int_coo"):
            if any(isinstance(c, Surd) for c in C):
                self._int_coo = None
            else:
                den = 1
                for c in C:
                    d = c.denominator
                    if d != 1:
                        den = den * d // math.gcd(den, d)
                ints = [int(c * den) for c in C]
                arr = np.array(ints, dtype=object)
                if ints and max(abs(x) for x in ints) < 2 ** 31:
                    arr = np.array(ints, dtype=np.int64)
                self._int_coo = (arr, den)
        return self._int_coo

    def trace_vectors(self):
        """Regular left and right traces of every basis word."""
        if self._ltrace is None:
            I, J, K, C = self.structure()
            rs = self._rational_structure()
            if rs is not None and rs[0].dtype == np.int64:
                cint, den = rs
                D = self.dim
                ml, mr = K == J, K == I
                lt = _int_bincount(I[ml], cint[ml], D)
                rt = _int_bincount(J[mr], cint[mr], D)
                self._ltrace = [Fraction(int(x), den) for x in lt]
                self._rtrace = [Fraction(int(x), den) for x in rt]
                return self._ltrace, self._rtrace
            lt = [Fraction(0)] * self.dim
            rt = [Fraction(0)] * self.dim
            for i, j, k, c in zip(I.tolist(), J.tolist(), K.tolist(), C):
                if k == j:
                    lt[i] = lt[i] + c
                if k == i:
                    rt[j] = rt[j] + c
            self._ltrace = [scalar(x) for x in lt]
            self._rtrace = [scalar(x) for x in rt]
        return self._ltrace, self._rtrace

    def trace_pairing(self):
        """Sparse rows of (i, j) -> TrR(w_i w_j)."""
        if getattr(self, "_pairing", None) is None:
            I, J, K, C = self.structure()
            _, rt = self.trace_vectors()
            rows = [dict() for _ in range(self.dim)]
            nz = [k for k, t in enumerate(rt) if t != 0]
            mask = np.isin(K, np.array(nz, dtype=np.int64))
            for i, j, k, c in zip(I[mask].tolist(), J[mask].tolist(), K[mask].tolist(), C[mask]):
                v = rows[i].get(j, 0) + c * rt[k]
                if v:
                    rows[i][j] = v
                else:
                    rows[i].pop(j, None)
            self._pairing = rows
        return self._pairing

    def regular_trace(self, x):
        """Trace of left multiplication by x on A_n."""
        lt, _ = self.trace_vectors()
        return scalar(sum((c * lt[self.index[w]] for w, c in x.terms.items()), Fraction(0)))

    def right_trace(self, x):
        _, rt = self.trace_vectors()
        return scalar(sum((c * rt[self.index[w]] for w, c in x.terms.items()), Fraction(0)))

    # dense operators -----------------------------------------------------
    def _dense(self, x, side):
        D = self.dim
        I, J, K, C = self.structure()
        xv = x.vector()
        src = I if side == "left" else J
        dst = J if side == "left" else I
        rows = [[Fraction(0)] * D for _ in range(D)]
        for s, d, k, c in zip(src.tolist(), dst.tolist(), K.tolist(), C):
            a = xv[s]
            if a != 0:
                rows[k][d] = rows[k][d] + a * c
        return Matrix(rows, D)

    def left_matrix(self, x):
        """Matrix of v -> x v in the word basis (columns are images of words)."""
        return self._dense(self._coerce(x), "left")

    def right_matrix(self, x):
        """Matrix of v -> v x in the word basis."""
        return self._dense(self._coerce(x), "right")

    def integer_operator(self, x, side="left"):
        """``(M, scale)`` with M = scale * (left or right multiplication by x) as an fmpz_mat.

        Returns None when x or the structure constants are irrational.
        """
        x = self._coerce(x)
        rs = self._rational_structure()
        if rs is None or any(isinstance(c, Surd) for c in x.terms.values()):
            return None
        cint, cden = rs
        D = self.dim
        I, J, K, _ = self.structure()
        den = 1
        for c in x.terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        xs = [0] * D
        for w, c in x.terms.items():
            xs[self.index[w]] = int(c * den)
        big = max((abs(v) for v in xs), default=0)
        src = I if side == "left" else J
        dst = J if side == "left" else I
        if cint.dtype == np.int64 and big * D * 2 ** 31 < _INT64_SAFE:
            xa = np.array(xs, dtype=np.int64)
            vals = xa[src] * cint
            out = np.zeros(D * D, dtype=np.int64)
            np.add.at(out, K * D + dst, vals)
        else:
            xa = np.array(xs, dtype=object)
            vals = xa[src] * cint.astype(object)
            out = np.zeros(D * D, dtype=object)
            np.add.at(out, K * D + dst, vals)
        return flint.fmpz_mat(D, D, [int(v) for v in out.tolist()]), den * cden

    def cached_operator(self, x, side="left"):
        """integer_operator with a small cache keyed by the element."""
        cache = self.__dict__.setdefault("_op_cache", {})
        key = (side, frozenset(x.terms.items()))
        if key in cache:
            return cache[key]
        op = self.integer_operator(x, side)
        if len(cache) >= _OP_CACHE:
            cache.pop(next(iter(cache)))
        cache[key] = op
        return op

    def products(self, x, vectors, side="left"):
        """Exact coordinate vectors of x*v (or v*x) for each coordinate vector v."""
        from .exactlin.linalg import all_rational, column_scales, to_fmpz_columns
        x = self._coerce(x)
        vectors = list(vectors)
        if not vectors:
            return []
        op = None
        if self.dim >= FAST_DIM and len(x.terms) * len(vectors) >= self.dim and all_rational(vectors):
            op = self.cached_operator(x, side)
        if op is None:
            out = []
            for v in vectors:
                y = self.from_vector(v)
                out.append((x * y if side == "left" else y * x).vector())
            return out
        M, scale = op
        V = to_fmpz_columns(vectors)
        scales = column_scales(vectors)
        P = M * V
        out = []
        for j in range(len(vectors)):
            den = scale * scales[j]
            out.append([Fraction(int(P[i, j]), den) for i in range(self.dim)])
        return out

    def regular_representation(self):
        """Callable x -> left multiplication Matrix."""
        return self.left_matrix

    def _coerce(self, x):
        if isinstance(x, AlgebraElement):
            if x.level is not self:
                raise LevelMismatch(f"element of {x.level} used at {self}")
            return x
        return scalar(x) * self.one()


class AlgebraElement:
    """Immutable sparse linear combination of basis words of one level."""

    __slots__ = ("level", "terms")

    def __init__(self, level, terms):
        self.level = level
        clean = {}
        for w, c in terms.items():
            c = scalar(c)
            if c != 0:
                if w not in level.index:
                    raise KeyError(f"{w!r} is not a basis word of {level}")
                clean[w] = c
        self.terms = clean

    # helpers
    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            return self.level.one().scale(scalar(other))
        if other.level is not self.level:
            raise LevelMismatch(f"{self.level} vs {other.level}")
        return other

    def vector(self):
        v = [Fraction(0)] * self.level.dim
        idx = self.level.index
        for w, c in self.terms.items():
            v[idx[w]] = c
        return v

    def coefficient(self, word):
        return self.terms.get(word, Fraction(0))

    def is_zero(self):
        return not self.terms

    def support(self):
        idx = self.level.index
        return sorted(self.terms, key=idx.__getitem__)

    # arithmetic
    def __add__(self, other):
        other = self._check(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return AlgebraElement(self.level, t)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.level, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = scalar(c)
        return AlgebraElement(self.level, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        other = self._check(other)
        level = self.level
        if not self.terms or not other.terms:
            return level.zero()
        sa, da = _integer_terms(self.terms)
        sb, db = _integer_terms(other.terms)
        if sa is None or sb is None:
            return self._generic_mul(other)
        acc = {}
        single = level.single_product
        if single is not None:
            for u, a in sa.items():
                for v, b in sb.items():
                    w = single(u, v)
                    acc[w] = acc.get(w, 0) + a * b
        else:
            mul = level.mul_words
            for u, a in sa.items():
                for v, b in sb.items():
                    ab = a * b
                    for w, c in mul(u, v).items():
                        if c.denominator == 1:
                            acc[w] = acc.get(w, 0) + ab * c.numerator
                        else:
                            acc[w] = acc.get(w, 0) + ab * c
        den = da * db
        return AlgebraElement._raw(level, {w: Fraction(v, den) if isinstance(v, int) else v / den
                                           for w, v in acc.items() if v != 0})

    def _generic_mul(self, other):
        mul = self.level.mul_words
        acc = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                ab = a * b
                for w, c in mul(u, v).items():
                    acc[w] = acc.get(w, 0) + ab * c
        return AlgebraElement(self.level, acc)

    @classmethod
    def _raw(cls, level, terms):
        """Trusted constructor: nonzero canonical scalars, valid words."""
        obj = cls.__new__(cls)
        obj.level = level
        obj.terms = terms
        return obj

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(1 / scalar(c))

    def __pow__(self, e):
        out = self.level.one()
        for _ in range(e):
            out = out * self
        return out

    def commutator(self, other):
        return self * other - other * self

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.level is other.level and self.terms == other.terms
        if isinstance(other, (int, Fraction, Surd)):
            return self == self.level.one().scale(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.level.n, frozenset(self.terms.items())))

    def __repr__(self):
        return f"AlgebraElement({self.to_text()})"

    def to_text(self, word_text=str):
        if not self.terms:
            return "0"
        parts = []
        for w in self.support():
            parts.append(f"{format_scalar(self.terms[w])}*{word_text(w)}")
        return " + ".join(parts)


def _integer_terms(terms):
    """({word: int}, common denominator) for rational terms, (None, None) otherwise."""
    den = 1
    for c in terms.values():
        if isinstance(c, Surd):
            return None, None
        d = c.denominator
        if d != 1 and den % d:
            den = den * d // math.gcd(den, d)
    if den == 1:
        return {w: c.numerator for w, c in terms.items()}, 1
    return {w: c.numerator * (den // c.denominator) for w, c in terms.items()}, den


def _int_bincount(idx, vals, size):
    out = np.zeros(size, dtype=np.int64)
    np.add.at(out, idx, vals)
    return out


def element_rank(elements):
    """Dimension of the span of a list of elements of one level."""
    from .exactlin.linalg import span_dim
    return span_dim([e.vector() for e in elements])
