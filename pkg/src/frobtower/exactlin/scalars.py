"""Exact scalars: rationals and sums of rational multiples of square roots.

Rationals are plain :class:`fractions.Fraction`.  Anything irrational is a
:class:`Surd`, a finite sum ``sum_k c_k * sqrt(k)`` over squarefree radicands
encoded as sorted prime tuples (``-1`` stands for ``i``).  Every such sum
lives in a multi-quadratic extension of Q, which is a field, so division
is always available.  Arithmetic that produces a rational value collapses
back to ``Fraction``.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from itertools import combinations

import sympy


def _key_mul(k1, k2):
    """Multiply sqrt(k1) * sqrt(k2); return (coefficient, key)."""
    s1, s2 = set(k1), set(k2)
    coeff = 1
    for p in s1 & s2:
        coeff *= p
    return coeff, tuple(sorted(s1 ^ s2))


def squarefree_key(n):
    """Prime tuple of the squarefree part of a nonzero integer, and the square factor.

    Returns ``(key, root)`` with ``n == sign * root**2 * prod(key primes)``
    where the sign is carried by ``-1`` in the key.
    """
    if n == 0:
        raise ValueError("zero has no squarefree key")
    primes = []
    root = 1
    if n < 0:
        primes.append(-1)
        n = -n
    for p, e in sympy.factorint(n).items():
        if e % 2:
            primes.append(p)
        root *= p ** (e // 2)
    return tuple(sorted(primes)), root


class Surd:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms):
        clean = {}
        for k, c in terms.items():
            c = Fraction(c)
            if c:
                clean[tuple(k)] = c
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    # construction helpers -------------------------------------------------
    @staticmethod
    def sqrt(q):
        """Exact square root of a rational, with i for negatives."""
        q = Fraction(q)
        if q == 0:
            return Fraction(0)
        num = q.numerator * q.denominator
        key, root = squarefree_key(num)
        coeff = Fraction(root, q.denominator)
        return scalar(Surd({key: coeff}))

    @property
    def terms(self):
        return self._terms

    def primes(self):
        out = set()
        for k in self._terms:
            out.update(k)
        return out

    def rational_part(self):
        return self._terms.get((), Fraction(0))

    def conjugate_at(self, p):
        """Apply the automorphism sqrt(p) -> -sqrt(p)."""
        return scalar(Surd({k: (-c if p in k else c) for k, c in self._terms.items()}))

    def is_real(self):
        return all(-1 not in k for k in self._terms)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _as_terms(other)
        if other is NotImplemented:
            return NotImplemented
        t = dict(self._terms)
        for k, c in other.items():
            t[k] = t.get(k, 0) + c
        return scalar(Surd(t))

    __radd__ = __add__

    def __neg__(self):
        return Surd({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = _as_terms(other)
        if other is NotImplemented:
            return NotImplemented
        t = dict(self._terms)
        for k, c in other.items():
            t[k] = t.get(k, 0) - c
        return scalar(Surd(t))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_terms(other)
        if other is NotImplemented:
            return NotImplemented
        t = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other.items():
                m, k = _key_mul(k1, k2)
                t[k] = t.get(k, 0) + m * c1 * c2
        return scalar(Surd(t))

    __rmul__ = __mul__

    def inverse(self):
        if not self._terms:
            raise ZeroDivisionError("Surd division by zero")
        num = Fraction(1)
        y = self
        for p in sorted(self.primes()):
            if isinstance(y, Fraction):
                break
            c = y.conjugate_at(p)
            num = num * c
            y = y * c
        if not isinstance(y, Fraction):
            raise ArithmeticError("norm computation did not reach Q")
        return num * (1 / y)

    def __truediv__(self, other):
        if isinstance(other, Surd):
            return self * other.inverse()
        other = Fraction(other)
        return scalar(Surd({k: c / other for k, c in self._terms.items()}))

    def __rtruediv__(self, other):
        return Fraction(other) * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        out = Fraction(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        other = _as_terms(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __float__(self):
        if not self.is_real():
            raise TypeError("non-real Surd has no float value")
        return float(sum(float(c) * math.prod(math.sqrt(p) for p in k) for k, c in self._terms.items()))

    def __complex__(self):
        total = 0j
        for k, c in self._terms.items():
            v = complex(float(c))
            for p in k:
                v *= 1j if p == -1 else math.sqrt(p)
            total += v
        return total

    def __repr__(self):
        return f"Surd({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _as_terms(x):
    if isinstance(x, Surd):
        return x.terms
    if isinstance(x, (int, Fraction)):
        return {(): Fraction(x)} if x else {}
    return NotImplemented


def scalar(x):
    """Canonical form: Fraction when rational, Surd otherwise."""
    if isinstance(x, Surd):
        t = x.terms
        if not t:
            return Fraction(0)
        if len(t) == 1 and () in t:
            return t[()]
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, float):
        raise TypeError("floats are not exact scalars")
    return Fraction(x)


def is_rational(x):
    return isinstance(x, (int, Fraction))


def is_real(x):
    return is_rational(x) or x.is_real()


def to_float(x):
    return float(x)


def scalar_primes(x):
    return x.primes() if isinstance(x, Surd) else set()


def real_sort_key(x):
    """Deterministic ordering key: numeric value first, then canonical text."""
    if is_real(x):
        return (0, float(x), 0.0, format_scalar(x))
    z = complex(x)
    return (1, z.real, z.imag, format_scalar(x))


# text form ----------------------------------------------------------------

def _format_fraction(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_key(k):
    parts = []
    if -1 in k:
        parts.append("i")
    rest = math.prod(p for p in k if p != -1)
    if rest != 1:
        parts.append(f"sqrt({rest})")
    return "*".join(parts)


def format_scalar(x):
    """Canonical text: ``p/q``, ``p/q+r/s*i``, ``a+b*sqrt(2)+c*i*sqrt(3)``."""
    x = scalar(x)
    if isinstance(x, Fraction):
        return _format_fraction(x)
    out = []
    for k, c in x.terms.items():
        if k == ():
            piece = _format_fraction(c)
        else:
            piece = f"{_format_fraction(c)}*{_format_key(k)}"
        if out and not piece.startswith("-"):
            piece = "+" + piece
        out.append(piece)
    return "".join(out)


_TERM = re.compile(r"([+-]?)([^+-]+)")


def parse_scalar(text):
    """Inverse of :func:`format_scalar`; also accepts plain ints and ``p/q``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    total = Fraction(0)
    for sign, body in _TERM.findall(s):
        factors = body.split("*")
        coeff = Fraction(1)
        unit = Fraction(1)
        for f in factors:
            if f == "i":
                unit = unit * Surd({(-1,): 1})
            elif f.startswith("sqrt(") and f.endswith(")"):
                unit = unit * Surd.sqrt(Fraction(f[5:-1]))
            else:
                coeff *= Fraction(f)
        term = coeff * unit
        total = total - term if sign == "-" else total + term
    return scalar(total)


class Field:
    """Ground field Q(sqrt(p) : p in primes); ``-1`` adjoins i."""

    def __init__(self, primes=()):
        self.primes = frozenset(primes)

    def __eq__(self, other):
        return isinstance(other, Field) and self.primes == other.primes

    def __hash__(self):
        return hash(self.primes)

    def contains(self, x):
        return scalar_primes(scalar(x)) <= self.primes

    def extend(self, radicand_key):
        return Field(self.primes | set(radicand_key))

    @property
    def name(self):
        if not self.primes:
            return "Q"
        gens = []
        for p in sorted(self.primes):
            gens.append("i" if p == -1 else f"sqrt({p})")
        return "Q(" + ",".join(gens) + ")"

    def basis_keys(self):
        ps = sorted(self.primes)
        keys = []
        for r in range(len(ps) + 1):
            keys.extend(combinations(ps, r))
        return keys

    def __repr__(self):
        return f"Field({self.name})"


QQ = Field()
QQI = Field((-1,))


def lcm_denominator(values):
    """Least common multiple of all rational coefficient denominators."""
    dens = []
    for v in values:
        if isinstance(v, Surd):
            dens.extend(c.denominator for c in v.terms.values())
        else:
            dens.append(Fraction(v).denominator)
    return reduce(lambda a, b: a * b // math.gcd(a, b), dens, 1)
