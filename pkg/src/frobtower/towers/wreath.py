"""Wreath product towers F^{⊗n} ⋊ S_n over a Frobenius superalgebra F.

Words are pairs (f, sigma): f is a tuple of F-basis indices, one per tensor
position, and sigma a permutation in one-line notation.  The word stands
for (f_1 ⊗ ... ⊗ f_n) sigma, where sigma moves the tensor factor in
position j to position sigma(j) with the Koszul sign of the odd factors.
"""
from __future__ import annotations

import json
from fractions import Fraction
from itertools import product as iproduct
from pathlib import Path

from ..algebra import Level
from ..errors import ConfigError
from ..exactlin.scalars import format_scalar, scalar
from .base import (Tower, all_perms, ascending_word, descending_word, extend_perm,
                   identity_perm, perm_mul, perm_text, simple_reflection, transposition)

DATA_DIR = Path(__file__).with_name("data")


class FrobeniusAlgebraData:
    """A finite-dimensional Frobenius superalgebra with homogeneous dual bases."""

    def __init__(self, basis, parity, mult, trace, dual_basis, dual_basis_hat):
        self.basis = list(basis)
        self.dim = len(self.basis)
        self.parity = [int(p) % 2 for p in parity]
        self.mult = {}
        for k, i, j, c in mult:
            c = scalar(c)
            if c != 0:
                self.mult.setdefault((int(i), int(j)), {})
                self.mult[(int(i), int(j))][int(k)] = self.mult[(int(i), int(j))].get(int(k), 0) + c
        self.trace = [scalar(t) for t in trace]
        self.B = [int(i) for i in dual_basis]
        self.Bhat = [int(i) for i in dual_basis_hat]
        if len(self.parity) != self.dim or len(self.trace) != self.dim:
            raise ConfigError("parity and trace must have one entry per basis element")
        self.unit = self._find_unit()
        self.tau = self._trace_parity()
        self.validate()

    def product(self, i, j):
        return self.mult.get((i, j), {})

    def _find_unit(self):
        for u in range(self.dim):
            if all(self.product(u, j) == {j: 1} and self.product(j, u) == {j: 1} for j in range(self.dim)):
                return u
        raise ConfigError("the unit of F must be one of the basis elements")

    def _trace_parity(self):
        pars = {self.parity[i] for i, t in enumerate(self.trace) if t != 0}
        if len(pars) != 1:
            raise ConfigError("trace must be nonzero and homogeneous")
        return pars.pop()

    def _mul_vec(self, x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.product(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: v for k, v in out.items() if v != 0}

    def validate(self):
        for (i, j), res in self.mult.items():
            for k in res:
                if self.parity[k] != (self.parity[i] + self.parity[j]) % 2:
                    raise ConfigError(f"product b{i} b{j} is not homogeneous")
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    if self._mul_vec(self._mul_vec({i: 1}, {j: 1}), {k: 1}) != \
                            self._mul_vec({i: 1}, self._mul_vec({j: 1}, {k: 1})):
                        raise ConfigError(f"structure constants not associative at ({i},{j},{k})")
        if len(self.B) != self.dim or len(self.Bhat) != self.dim:
            raise ConfigError("dual bases must have dim(F) entries")
        for a, b in enumerate(self.B):
            for c, d in enumerate(self.Bhat):
                val = sum((v * self.trace[k] for k, v in self.product(b, d).items()), Fraction(0))
                if val != (1 if a == c else 0):
                    raise ConfigError(f"dual bases fail tr(b b^) = delta at ({a},{c})")

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, (str, Path)):
            doc = json.loads(Path(doc).read_text())
        try:
            return cls(doc["basis"], doc["parity"], doc["mult"], doc["trace"],
                       doc["dual_basis"], doc["dual_basis_hat"])
        except KeyError as e:
            raise ConfigError(f"Frobenius algebra file missing field {e}") from None

    def to_json(self):
        mult = [[k, i, j, format_scalar(c)] for (i, j), res in sorted(self.mult.items())
                for k, c in sorted(res.items())]
        return {"basis": self.basis, "parity": self.parity, "mult": mult,
                "trace": [format_scalar(t) for t in self.trace],
                "dual_basis": self.B, "dual_basis_hat": self.Bhat}


def load_preset(name):
    return FrobeniusAlgebraData.from_json(DATA_DIR / f"{name}.json")


class WreathTower(Tower):
    kind = "wreath"

    def __init__(self, F, max_level=4, field=None, label="wreath"):
        from ..exactlin.scalars import QQ
        super().__init__(max_level, field or QQ)
        self.F = F
        self.label = label
        self._order = [F.unit] + [i for i in range(F.dim) if i != F.unit]

    def _build_level(self, n):
        F = self.F
        words = [(f, s) for s in all_perms(n) for f in iproduct(self._order, repeat=n)]
        unit = ((F.unit,) * n, identity_perm(n))
        gens = [((F.unit,) * n, simple_reflection(i, n)) for i in range(1, n)]
        if n:
            gens += [((b,) + (F.unit,) * (n - 1), identity_perm(n)) for b in range(F.dim) if b != F.unit]
        return Level(n, words, unit, self._word_product, gens, self.field, name=self.label)

    def _word_product(self, u, v):
        F = self.F
        par = F.parity
        f, s = u
        g, t = v
        n = len(s)
        moved = [None] * n
        for j in range(n):
            moved[s[j] - 1] = g[j]
        sign = 0
        odd = [j for j in range(n) if par[g[j]]]
        for a in range(len(odd)):
            for b in range(a + 1, len(odd)):
                if s[odd[a]] > s[odd[b]]:
                    sign += 1
        # (f_1..f_n)(m_1..m_n) = (-1)^{sum_{i>j} |f_i||m_j|} (f_1 m_1 .. f_n m_n)
        sign += _pair_sign(f, moved, par)
        terms = {(): Fraction(-1) if sign % 2 else Fraction(1)}
        for i in range(n):
            res = F.product(f[i], moved[i])
            if not res:
                return {}
            new = {}
            for key, c in terms.items():
                for k, d in res.items():
                    new[key + (k,)] = c * d
            terms = new
        st = perm_mul(s, t)
        return {(key, st): c for key, c in terms.items() if c != 0}

    def include_word(self, n, w):
        f, s = w
        return (f + (self.F.unit,), extend_perm(s))

    def frobenius_word(self, n, w):
        f, s = w
        if s[-1] != n + 1:
            return {}
        tr = self.F.trace[f[-1]]
        if tr == 0:
            return {}
        odd = sum(self.F.parity[x] for x in f[:-1])
        sign = -1 if (self.F.tau * odd) % 2 else 1
        return {(f[:-1], s[:-1]): sign * tr}

    def step_bases(self, n):
        F = self.F
        A = self.level(n + 1)
        m = n + 1
        B, Bv = [], []
        for i in range(1, n + 2):
            down = descending_word(n, i, m)
            up = ascending_word(i, n, m)
            for b, bh in zip(F.B, F.Bhat):
                tb = A.basis_element(((F.unit,) * n + (b,), identity_perm(m)))
                th = A.basis_element(((F.unit,) * n + (bh,), identity_perm(m)))
                B.append(tb * A.basis_element(((F.unit,) * m, down)))
                Bv.append(A.basis_element(((F.unit,) * m, up)) * th)
        return B, Bv

    def jucys_murphy(self, n):
        F = self.F
        A = self.level(n)
        acc = {}
        for i in range(1, n):
            tr = transposition(i, n, n)
            for b, bh in zip(F.B, F.Bhat):
                f = [F.unit] * n
                f[i - 1] = b
                f[n - 1] = bh
                key = (tuple(f), tr)
                acc[key] = acc.get(key, 0) + 1
        return A.element(acc)

    def word_text(self, w):
        f, s = w
        names = self.F.basis
        parts = [f"{names[x]}{i}" for i, x in enumerate(f, 1) if x != self.F.unit]
        if s != identity_perm(len(s)) or not parts:
            parts.append(perm_text(s))
        return "*".join(parts)


def _pair_sign(f, m, par):
    """Number of pairs i > j with f_i and m_j both odd."""
    count = 0
    odd_m = 0
    for i in range(len(f)):
        if par[f[i]]:
            count += odd_m
        if par[m[i]]:
            odd_m += 1
    return count
