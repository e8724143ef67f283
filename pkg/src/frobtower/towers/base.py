"""Shared tower plumbing: permutations in one-line notation and the Tower base class."""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from ..errors import ConfigError, LevelMismatch
from ..exactlin.scalars import QQ


def identity_perm(n):
    return tuple(range(1, n + 1))


def perm_mul(s, t):
    """(s*t)(j) = s(t(j))."""
    return tuple(s[j - 1] for j in t)


def perm_inv(s):
    out = [0] * len(s)
    for j, v in enumerate(s, 1):
        out[v - 1] = j
    return tuple(out)


def transposition(i, j, n):
    p = list(range(1, n + 1))
    p[i - 1], p[j - 1] = j, i
    return tuple(p)


def simple_reflection(i, n):
    return transposition(i, i + 1, n)


def all_perms(n):
    return [tuple(p) for p in permutations(range(1, n + 1))]


def extend_perm(s):
    return s + (len(s) + 1,)


def descending_word(n, i, m):
    """s_n s_{n-1} ... s_i as a permutation of size m (identity when i = n+1)."""
    p = identity_perm(m)
    for k in range(n, i - 1, -1):
        p = perm_mul(p, simple_reflection(k, m))
    return p


def ascending_word(i, n, m):
    """s_i s_{i+1} ... s_n as a permutation of size m."""
    p = identity_perm(m)
    for k in range(i, n + 1):
        p = perm_mul(p, simple_reflection(k, m))
    return p


def perm_text(p):
    if p == identity_perm(len(p)):
        return "1"
    return "[" + " ".join(map(str, p)) + "]"


class Tower:
    """Base class for a free Frobenius tower A_0 ⊂ A_1 ⊂ ...

    Subclasses implement ``_build_level``, ``include_word``, ``frobenius_word``,
    ``step_bases`` and ``jucys_murphy``.
    """

    kind = "abstract"
    label = "abstract"

    def __init__(self, max_level=6, field=QQ):
        self.max_level = max_level
        self.field = field
        self._levels = {}
        self._bases = {}
        self._incl = {}

    def level(self, n):
        if n < 0 or n > self.max_level:
            raise ConfigError(f"level {n} outside 0..{self.max_level}")
        if n not in self._levels:
            self._levels[n] = self._build_level(n)
        return self._levels[n]

    def dim(self, n):
        return self.level(n).dim

    # inclusions ---------------------------------------------------------
    def include(self, x, m):
        """Image of x (at level k <= m) in A_m."""
        k = x.level.n
        if x.level is not self._levels.get(k):
            raise LevelMismatch("element does not belong to this tower")
        if k > m:
            raise LevelMismatch(f"cannot include level {k} into level {m}")
        terms = x.terms
        for j in range(k, m):
            terms = {self.include_word(j, w): c for w, c in terms.items()}
        return self.level(m).element(terms)

    def include_index(self, k, m):
        """Position in A_m of each basis word of A_k (inclusions map words to words)."""
        key = (k, m)
        if key not in self._incl:
            hi = self.level(m)
            out = []
            for w in self.level(k).words:
                for j in range(k, m):
                    w = self.include_word(j, w)
                out.append(hi.index[w])
            self._incl[key] = out
        return self._incl[key]

    # Frobenius homomorphism ----------------------------------------------
    def frobenius_map(self, x):
        """E_{n+1,n}(x) for x at level n+1."""
        n = x.level.n - 1
        if n < 0:
            raise LevelMismatch("no Frobenius map below level 0")
        acc = {}
        for w, c in x.terms.items():
            for v, d in self.frobenius_word(n, w).items():
                acc[v] = acc.get(v, 0) + c * d
        return self.level(n).element(acc)

    def bases(self, n):
        """Paired dual bases (B, B^vee) of A_{n+1} over A_n."""
        if n not in self._bases:
            self._bases[n] = self.step_bases(n)
        return self._bases[n]

    def word_text(self, w):
        return str(w)

    def describe(self, x):
        return x.to_text(self.word_text)

    def generator_elements(self, n):
        return self.level(n).generators()

    @staticmethod
    def _one(level):
        return {level.unit: Fraction(1)}
