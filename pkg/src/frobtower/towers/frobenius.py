"""Frobenius systems (E, B, B^vee) for extensions A_k ⊂ A_n of a tower."""
from __future__ import annotations

import random

from ..errors import LevelMismatch


class FrobeniusSystem:
    """E_{n,k} with paired dual bases ``B`` and ``Bv`` (lists of elements of A_n)."""

    def __init__(self, tower, n, k, B, Bv):
        if k > n:
            raise LevelMismatch(f"need k <= n, got ({n}, {k})")
        if len(B) != len(Bv):
            raise ValueError("dual bases must have equal length")
        self.tower = tower
        self.n = n
        self.k = k
        self.B = list(B)
        self.Bv = list(Bv)

    def __repr__(self):
        return f"FrobeniusSystem({self.n},{self.k}, |B|={len(self.B)})"

    def E(self, x):
        if x.level.n != self.n:
            raise LevelMismatch(f"E_{{{self.n},{self.k}}} applied at level {x.level.n}")
        for _ in range(self.n - self.k):
            x = self.tower.frobenius_map(x)
        return x

    def up(self, x):
        """Include an element of A_k into A_n."""
        return self.tower.include(x, self.n)

    def with_dual(self, Bv):
        return FrobeniusSystem(self.tower, self.n, self.k, self.B, Bv)


def identity_system(tower, n):
    A = tower.level(n)
    return FrobeniusSystem(tower, n, n, [A.one()], [A.one()])


def frobenius_step(tower, n):
    """The explicit system for A_n ⊂ A_{n+1}."""
    B, Bv = tower.bases(n)
    return FrobeniusSystem(tower, n + 1, n, B, Bv)


def frobenius_compose(hi, lo):
    """Combine systems for A_m ⊂ A_n and A_k ⊂ A_m into one for A_k ⊂ A_n."""
    if hi.k != lo.n or hi.tower is not lo.tower:
        raise LevelMismatch(f"cannot compose ({hi.n},{hi.k}) with ({lo.n},{lo.k})")
    T = hi.tower
    B, Bv = [], []
    for bl, bvl in zip(lo.B, lo.Bv):
        up_b, up_bv = T.include(bl, hi.n), T.include(bvl, hi.n)
        for bh, bvh in zip(hi.B, hi.Bv):
            B.append(up_b * bh)
            Bv.append(bvh * up_bv)
    return FrobeniusSystem(T, hi.n, lo.k, B, Bv)


def frobenius_system(tower, n, k):
    """Composite of the step systems from level k up to level n."""
    sys = identity_system(tower, k)
    for j in range(k, n):
        sys = frobenius_compose(frobenius_step(tower, j), sys)
    return sys


def casimir(sys):
    """C_{n,k} = sum of b^vee b."""
    acc = sys.tower.level(sys.n).zero()
    for b, bv in zip(sys.B, sys.Bv):
        acc = acc + bv * b
    return acc


def casimir_iota(sys):
    """C^iota_{n,k} = sum of b b^vee."""
    acc = sys.tower.level(sys.n).zero()
    for b, bv in zip(sys.B, sys.Bv):
        acc = acc + b * bv
    return acc


def relative_norm(sys, c):
    """N_{n,k}(c) = sum of b^vee c b."""
    if c.level.n != sys.n:
        raise LevelMismatch(f"relative norm of a level-{c.level.n} element at level {sys.n}")
    acc = sys.tower.level(sys.n).zero()
    for b, bv in zip(sys.B, sys.Bv):
        acc = acc + bv * c * b
    return acc


# axiom checks -------------------------------------------------------------

def duality_failures(sys, limit=None):
    """Pairs (i, j) with E(b_i b_j^vee) != delta_ij, with the offending value."""
    Ak = sys.tower.level(sys.k)
    bad = []
    for i, b in enumerate(sys.B):
        for j, bv in enumerate(sys.Bv):
            val = sys.E(b * bv)
            want = Ak.one() if i == j else Ak.zero()
            if val != want:
                bad.append((i, j, val))
                if limit and len(bad) >= limit:
                    return bad
    return bad


def reproduction_failures(sys, elements):
    """Elements a violating a = sum E(a b^vee) b or a = sum b^vee E(b a)."""
    bad = []
    for a in elements:
        left = a.level.zero()
        right = a.level.zero()
        for b, bv in zip(sys.B, sys.Bv):
            left = left + sys.up(sys.E(a * bv)) * b
            right = right + bv * sys.up(sys.E(b * a))
        if left != a or right != a:
            bad.append((a, left, right))
    return bad


def bimodule_failures(sys, elements):
    """Check E(a' a a'') = a' E(a) a'' for generators a', a'' of A_k."""
    gens = sys.tower.level(sys.k).generators()
    bad = []
    for a in elements:
        Ea = sys.E(a)
        for g in gens:
            G = sys.up(g)
            if sys.E(G * a) != g * Ea or sys.E(a * G) != Ea * g:
                bad.append((a, g))
    return bad


def sample_elements(level, count, seed, exhaustive_below=48):
    """Every basis word when the level is small, otherwise seeded random combinations."""
    if level.dim <= exhaustive_below:
        return level.basis()
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        terms = {}
        for w in rng.sample(level.words, min(4, level.dim)):
            terms[w] = rng.randint(-3, 3) or 1
        out.append(level.element(terms))
    return out
