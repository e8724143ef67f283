"""Degenerate cyclotomic Hecke algebras H_n^lambda.

A normal word ``(t, sigma)`` stands for x_1^{t_1} ... x_n^{t_n} sigma with
every t_i < d.  Products are computed in the degenerate affine Hecke
algebra, where s_i p = (s_i p) s_i + (p - s_i p)/(x_{i+1} - x_i), and the
resulting monomials are reduced with the conjugates

    g_k = s_{k-1} ... s_1 f(x_1) s_1 ... s_{k-1},   f(x) = prod (x - i)^{lambda_i},

whose leading term is f(x_k).  Each rewrite x_k^d -> x_k^d - g_k lowers the
total x-degree, so the recursion terminates.
"""
from __future__ import annotations

from fractions import Fraction

from ..algebra import Level
from ..errors import ConfigError, InvariantFailure
from ..exactlin.linalg import solve
from ..exactlin.poly import pmul
from ..exactlin.scalars import QQ, scalar
from .base import (Tower, all_perms, ascending_word, descending_word, extend_perm,
                   identity_perm, perm_mul, perm_text, simple_reflection)


def reduced_word(p):
    """Indices i_1..i_r with p = s_{i_1} ... s_{i_r}, r = number of inversions."""
    p = list(p)
    word = []
    # right-multiplying by s_i swaps entries i and i+1; sort p down to the identity
    changed = True
    while changed:
        changed = False
        for i in range(len(p) - 1):
            if p[i] > p[i + 1]:
                p[i], p[i + 1] = p[i + 1], p[i]
                word.append(i + 1)
                changed = True
    return word[::-1]


def _swap(c, i):
    c = list(c)
    c[i - 1], c[i] = c[i], c[i - 1]
    return tuple(c)


def _divided_difference(c, i):
    """(x^c - s_i x^c)/(x_{i+1} - x_i) as {exponents: coefficient}."""
    p, q = c[i - 1], c[i]
    if p == q:
        return {}
    lo = min(p, q)
    sign = -1 if p > q else 1
    out = {}
    for a in range(abs(p - q)):
        e = list(c)
        e[i - 1] = lo + a
        e[i] = lo + abs(p - q) - 1 - a
        out[tuple(e)] = sign
    return out


def _add(acc, key, c):
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def affine_left_s(elem, i):
    """s_i * elem in the affine algebra; elem maps (exponents, perm) -> coefficient."""
    out = {}
    n = None
    for (c, pi), coef in elem.items():
        n = len(pi)
        _add(out, (_swap(c, i), perm_mul(simple_reflection(i, n), pi)), coef)
        for e, d in _divided_difference(c, i).items():
            _add(out, (e, pi), coef * d)
    return out


def affine_right_perm(elem, sigma):
    out = {}
    for (c, pi), coef in elem.items():
        _add(out, (c, perm_mul(pi, sigma)), coef)
    return out


class HeckeTower(Tower):
    kind = "hecke"

    def __init__(self, weights, max_level=3, field=QQ):
        """``weights`` lists the residues i with multiplicity, so d = len(weights)."""
        super().__init__(max_level, field)
        if not weights:
            raise ConfigError("cyclotomic Hecke tower needs at least one weight")
        if len(weights) > 3:
            raise ConfigError("level d <= 3 is supported")
        self.weights = tuple(int(w) for w in weights)
        self.d = len(self.weights)
        f = [Fraction(1)]
        for w in self.weights:
            f = pmul(f, [Fraction(-w), Fraction(1)])
        self.f = f
        self._push = {}
        self._nf = {}
        self._g = {}
        self._E = {}
        self._y = {}

    @property
    def label(self):
        return "hecke:" + ",".join(str(w) for w in (self.d,) + self.weights)

    # affine computations ---------------------------------------------------
    def _push_perm(self, sigma, b):
        """sigma * x^b in the affine algebra."""
        key = (sigma, b)
        if key not in self._push:
            elem = {(b, identity_perm(len(sigma))): Fraction(1)}
            for i in reversed(reduced_word(sigma)):
                elem = affine_left_s(elem, i)
            self._push[key] = elem
        return self._push[key]

    def _relation(self, n, k):
        """x_k^d - g_k at rank n, an affine element of degree < d."""
        key = (n, k)
        if key not in self._g:
            ident = identity_perm(n)
            elem = {}
            for p, c in enumerate(self.f):
                if c:
                    e = [0] * n
                    e[0] = p
                    _add(elem, (tuple(e), ident), c)
            for i in range(1, k):
                elem = affine_left_s(elem, i)
            elem = affine_right_perm(elem, ascending_word(1, k - 1, n))
            top = [0] * n
            top[k - 1] = self.d
            top = (tuple(top), ident)
            if elem.get(top) != 1:
                raise InvariantFailure("cyclotomic relation lost its leading term")
            out = {key2: -c for key2, c in elem.items()}
            _add(out, top, 1)
            self._g[key] = out
        return self._g[key]

    def normal_form(self, t):
        """x^t in H_n^lambda as {(t', sigma'): coefficient}."""
        t = tuple(t)
        if t in self._nf:
            return self._nf[t]
        n = len(t)
        big = [k for k in range(n) if t[k] >= self.d]
        if not big:
            out = {(t, identity_perm(n)): Fraction(1)}
        else:
            k = big[-1]
            rest = list(t)
            rest[k] -= self.d
            out = {}
            for (c, pi), coef in self._relation(n, k + 1).items():
                m = tuple(a + b for a, b in zip(rest, c))
                for (t2, s2), c2 in self.normal_form(m).items():
                    _add(out, (t2, perm_mul(s2, pi)), coef * c2)
        self._nf[t] = out
        return out

    def _word_product(self, u, v):
        a, sigma = u
        b, tau = v
        out = {}
        for (c, pi), coef in self._push_perm(sigma, b).items():
            m = tuple(x + y for x, y in zip(a, c))
            tail = perm_mul(pi, tau)
            for (t2, s2), c2 in self.normal_form(m).items():
                _add(out, (t2, perm_mul(s2, tail)), coef * c2)
        return out

    def _build_level(self, n):
        from itertools import product as iproduct
        words = [(t, s) for s in all_perms(n) for t in iproduct(range(self.d), repeat=n)]
        unit = ((0,) * n, identity_perm(n))
        level = Level(n, words, unit, self._word_product, (), self.field, name="H")
        gens = [((0,) * n, simple_reflection(i, n)) for i in range(1, n)]
        if n:
            gens.append(level.element(self.normal_form((1,) + (0,) * (n - 1))))
        level._gens = gens
        return level

    def monomial(self, n, t):
        return self.level(n).element(self.normal_form(t))

    def x(self, n, k):
        """The generator x_k of H_n^lambda."""
        t = [0] * n
        t[k - 1] = 1
        return self.monomial(n, t)

    def s(self, n, i):
        return self.level(n).basis_element(((0,) * n, simple_reflection(i, n)))

    def perm_element(self, n, p):
        return self.level(n).basis_element(((0,) * n, p))

    # Frobenius structure -----------------------------------------------------
    def include_word(self, n, w):
        t, s = w
        return (t + (0,), extend_perm(s))

    def _projection_table(self, n):
        """Coordinates of every word of H_{n+1} in the decomposition
        (+)_{j<d} H_n x_{n+1}^j  (+)  H_n s_n H_n; keep the j = d-1 block."""
        if n in self._E:
            return self._E[n]
        A = self.level(n + 1)
        An = self.level(n)
        d, m = self.d, n + 1
        cols = []
        for j in range(d):
            for (t, s) in An.words:
                cols.append({(t + (j,), extend_perm(s)): Fraction(1)})
        sn = self.s(m, n) if n >= 1 else None
        if n >= 1:
            for v in An.words:
                left = A.basis_element(self.include_word(n, v)) * sn
                for a in range(d):
                    xa = self.monomial(m, (0,) * (n - 1) + (a, 0))
                    for i in range(1, n + 1):
                        tail = self.perm_element(m, descending_word(n - 1, i, m))
                        cols.append((left * xa * tail).terms)
        if len(cols) != A.dim:
            raise InvariantFailure("bimodule decomposition has the wrong size")
        # solve for all words at once: columns of the inverse
        import flint
        D = A.dim
        M = flint.fmpq_mat(D, D)
        for j, col in enumerate(cols):
            for w, c in col.items():
                M[A.index[w], j] = flint.fmpq(c.numerator, c.denominator)
        Minv = M.inv()
        start = (d - 1) * An.dim
        table = {}
        for wi, w in enumerate(A.words):
            out = {}
            for r in range(An.dim):
                c = Minv[start + r, wi]
                if c != 0:
                    out[An.words[r]] = Fraction(int(c.p), int(c.q))
            table[w] = out
        self._E[n] = table
        return table

    def frobenius_word(self, n, w):
        return self._projection_table(n)[w]

    def y(self, n, k):
        """y_{n,k} in H_n from the determinant formula."""
        key = (n, k)
        if key in self._y:
            return self._y[key]
        A = self.level(n)
        d = self.d
        xn = self.x(n, n)
        ent = {}

        def entry(p):
            # E_{n,n-1}(x_n^p), an element of H_{n-1}, included back into H_n
            if p not in ent:
                ent[p] = self.include(self.frobenius_map(xn ** p), n)
            return ent[p]

        acc = A.zero()
        for t in range(k, d):
            size = d - 1 - t
            mat = [[entry(d + j - i) for j in range(1, size + 1)] for i in range(1, size + 1)]
            term = _det(mat, A.one()) * (xn ** (t - k))
            acc = acc + term.scale(-1 if (d - 1 - t) % 2 else 1)
        self._y[key] = acc
        return acc

    def step_bases(self, n):
        A = self.level(n + 1)
        m = n + 1
        B, Bv = [], []
        for i in range(1, n + 2):
            down = self.perm_element(m, descending_word(n, i, m))
            up = self.perm_element(m, ascending_word(i, n, m))
            xi = self.x(m, i)
            for a in range(self.d):
                B.append(down * self.include(self.y(i, a), m))
                Bv.append((xi ** a) * up)
        return B, Bv

    def jucys_murphy(self, n):
        if n == 0:
            raise ConfigError("no Jucys-Murphy element at level 0")
        return self.x(n, n)

    def word_text(self, w):
        t, s = w
        parts = []
        for k, e in enumerate(t, 1):
            if e == 1:
                parts.append(f"x{k}")
            elif e > 1:
                parts.append(f"x{k}^{e}")
        if s != identity_perm(len(s)) or not parts:
            parts.append(perm_text(s))
        return "*".join(parts)


def _det(mat, one):
    """Determinant by cofactor expansion (entries commute)."""
    if not mat:
        return one
    if len(mat) == 1:
        return mat[0][0]
    acc = one.level.zero()
    for j in range(len(mat)):
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * _det(minor, one)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc
