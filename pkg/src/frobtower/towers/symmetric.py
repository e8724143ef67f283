"""Group algebras of the symmetric groups."""
from __future__ import annotations

from fractions import Fraction

from ..algebra import Level
from .base import (Tower, all_perms, ascending_word, descending_word, extend_perm,
                   identity_perm, perm_mul, perm_text, simple_reflection, transposition)


class SymmetricTower(Tower):
    kind = "sym"
    label = "sym"

    def _build_level(self, n):
        gens = [simple_reflection(i, n) for i in range(1, n)]
        return Level(n, all_perms(n), identity_perm(n),
                     lambda u, v: {perm_mul(u, v): 1}, gens, self.field, name="S",
                     memoize=False, single_product=perm_mul, perm_basis=True)

    def include_word(self, n, w):
        return extend_perm(w)

    def frobenius_word(self, n, w):
        # E keeps the subgroup fixing n+1
        if w[-1] == n + 1:
            return {w[:-1]: Fraction(1)}
        return {}

    def step_bases(self, n):
        A = self.level(n + 1)
        m = n + 1
        B = [A.basis_element(descending_word(n, i, m)) for i in range(1, n + 2)]
        Bv = [A.basis_element(ascending_word(i, n, m)) for i in range(1, n + 2)]
        return B, Bv

    def jucys_murphy(self, n):
        A = self.level(n)
        return A.element({transposition(i, n, n): Fraction(1) for i in range(1, n)})

    def word_text(self, w):
        return perm_text(w)
