"""Univariate polynomials over exact scalars, stored low degree first."""
from __future__ import annotations

from fractions import Fraction

import flint
import sympy

from ..errors import SplittingFieldFailure
from .scalars import Field, QQ, Surd, is_rational, scalar, squarefree_key

_X = sympy.Symbol("t")


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    return len(trim(p)) - 1


def monic(p):
    p = trim(p)
    lead = p[-1]
    return [scalar(c / lead) for c in p]


def padd(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def psub(p, q):
    return padd(p, [-c for c in q])


def pmul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim([scalar(c) for c in out])


def pdivmod(p, q):
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    rem = list(p)
    lead = q[-1]
    while len(rem) >= len(q) and rem:
        shift = len(rem) - len(q)
        c = scalar(rem[-1] / lead)
        quot[shift] = c
        for i, b in enumerate(q):
            rem[shift + i] = scalar(rem[shift + i] - c * b)
        rem = trim(rem)
    return trim(quot), rem


def pgcd(p, q):
    p, q = trim(p), trim(q)
    while q:
        p, q = q, pdivmod(p, q)[1]
    return monic(p) if p else []


def pextgcd(p, q):
    """Return (g, s, t) with s*p + t*q = g monic."""
    r0, r1 = trim(p), trim(q)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        quo, rem = pdivmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, psub(s0, pmul(quo, s1))
        t0, t1 = t1, psub(t0, pmul(quo, t1))
    lead = r0[-1]
    inv = [scalar(1 / lead)]
    return pmul(r0, inv), pmul(s0, inv), pmul(t0, inv)


def ppow(p, e):
    out = [Fraction(1)]
    for _ in range(e):
        out = pmul(out, p)
    return out


def peval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = scalar(acc * x + c)
    return acc


def derivative(p):
    return trim([scalar(i * c) for i, c in enumerate(p)][1:])


def squarefree_part(p):
    """p / gcd(p, p'), made monic."""
    p = monic(p)
    g = pgcd(p, derivative(p))
    if degree(g) <= 0:
        return p
    return monic(pdivmod(p, g)[0])


# conversion to sympy / flint -------------------------------------------------

def scalar_to_sympy(x):
    x = scalar(x)
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    total = sympy.Integer(0)
    for k, c in x.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for p in k:
            term *= sympy.I if p == -1 else sympy.sqrt(p)
        total += term
    return total


def sympy_to_scalar(e):
    e = sympy.expand(e)
    total = Fraction(0)
    for term in sympy.Add.make_args(e):
        coeff, rest = term.as_coeff_Mul()
        if not coeff.is_Rational:
            raise ValueError(f"cannot convert {e} to an exact scalar")
        value = Fraction(int(coeff.p), int(coeff.q))
        unit = Fraction(1)
        for f in sympy.Mul.make_args(rest):
            if f == 1:
                continue
            if f == sympy.I:
                unit = unit * Surd({(-1,): 1})
            elif f.is_Pow and f.exp == sympy.Rational(1, 2) and f.base.is_Integer:
                unit = unit * Surd.sqrt(int(f.base))
            else:
                raise ValueError(f"cannot convert {e} to an exact scalar")
        total = total + value * unit
    return scalar(total)


def _field_extension(field):
    return [sympy.I if p == -1 else sympy.sqrt(p) for p in sorted(field.primes)]


def factor_poly(p, field=QQ):
    """Factor a polynomial over ``field`` into monic irreducibles with multiplicities."""
    p = monic(p)
    if degree(p) < 1:
        return []
    if not field.primes and all(is_rational(c) for c in p):
        fp = flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in p])
        _, facs = fp.factor()
        out = []
        for f, e in facs:
            coeffs = [Fraction(int(c.p), int(c.q)) for c in f.coeffs()]
            out.append((monic(coeffs), int(e)))
        return sorted(out, key=lambda fe: (degree(fe[0]), [str(c) for c in fe[0]]))
    expr = sum(scalar_to_sympy(c) * _X**i for i, c in enumerate(p))
    ext = _field_extension(field)
    _, facs = sympy.factor_list(expr, _X, extension=ext) if ext else sympy.factor_list(expr, _X)
    out = []
    for f, e in facs:
        coeffs = [sympy_to_scalar(c) for c in reversed(sympy.Poly(f, _X).all_coeffs())]
        out.append((monic(coeffs), int(e)))
    return sorted(out, key=lambda fe: (degree(fe[0]), [str(c) for c in fe[0]]))


def quadratic_radicand(f):
    """Squarefree radicand splitting a monic quadratic, if the discriminant is rational."""
    c0, c1 = f[0], f[1]
    disc = scalar(c1 * c1 - 4 * c0)
    if not is_rational(disc) or disc == 0:
        return None
    disc = Fraction(disc)
    key, _ = squarefree_key(disc.numerator * disc.denominator)
    return key


def roots_or_fail(p, field=QQ):
    """Distinct roots with multiplicities; raise if some factor is not linear over ``field``."""
    roots = []
    for f, e in factor_poly(p, field):
        if degree(f) == 1:
            roots.append((scalar(-f[0]), e))
            continue
        radicand = quadratic_radicand(f) if degree(f) == 2 else None
        raise SplittingFieldFailure(
            f"irreducible factor of degree {degree(f)} over {field.name}", radicand=radicand)
    return roots


def krylov_minpoly(apply, dim, start_vectors=None, independent=None):
    """Minimal polynomial of a linear operator by exact Krylov iteration.

    ``apply(v)`` returns the image of a coordinate vector.  The result is the
    lcm over ``start_vectors`` (default: standard basis) of the local minimal
    polynomials; vectors already inside the accumulated Krylov span are
    skipped since their local minimal polynomial divides the running lcm.
    """
    from .linalg import Echelon

    span = Echelon(dim)
    result = [Fraction(1)]
    if start_vectors is None:
        start_vectors = ([Fraction(int(i == j)) for j in range(dim)] for i in range(dim))
    for v in start_vectors:
        if span.contains(v):
            continue
        local = Echelon(dim)
        chain = []
        w = list(v)
        while True:
            coords = local.coordinates(w)
            if coords is not None:
                # w = sum coords[k] * chain[k]  => t^len - sum coords t^k
                poly = [scalar(-c) for c in coords] + [Fraction(1)]
                break
            local.add(w)
            chain.append(w)
            w = apply(w)
        for u in chain:
            span.add(u)
        g = pgcd(result, poly)
        result = monic(pdivmod(pmul(result, poly), g)[0])
        if span.rank == dim:
            break
    return result
