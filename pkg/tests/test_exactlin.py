"""Exact scalars, polynomials and linear algebra against sympy as an oracle."""
import random
from fractions import Fraction

import pytest
import sympy

from frobtower.errors import NoSolution, SplittingFieldFailure
from frobtower.exactlin.linalg import Echelon, kernel_basis, rank, rref, solve
from frobtower.exactlin.poly import factor_poly, pdivmod, pextgcd, pmul, roots_or_fail
from frobtower.exactlin.scalars import (QQ, QQI, Field, Surd, format_scalar, is_real,
                                        parse_scalar, real_sort_key, scalar)


def random_matrix(rng, m, n, rank_cap=None):
    if rank_cap is None:
        return [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(m)]
    # product of m x r and r x n has rank <= r
    L = random_matrix(rng, m, rank_cap)
    R = random_matrix(rng, rank_cap, n)
    return [[sum(L[i][k] * R[k][j] for k in range(rank_cap)) for j in range(n)] for i in range(m)]


@pytest.mark.parametrize("seed", range(8))
def test_rank_and_rref_match_sympy(seed):
    rng = random.Random(seed)
    M = random_matrix(rng, 6, 7, rank_cap=rng.randint(1, 5))
    S = sympy.Matrix(M)
    assert rank(M) == S.rank()
    rows, piv = rref(M)
    Sr, Spiv = S.rref()
    assert list(piv) == list(Spiv)
    for i, row in enumerate(rows):
        assert [sympy.Rational(c.numerator, c.denominator) for c in row] == list(Sr.row(i))


@pytest.mark.parametrize("seed", range(5))
def test_kernel_is_a_basis_of_the_nullspace(seed):
    rng = random.Random(seed)
    M = random_matrix(rng, 5, 8, rank_cap=3)
    K = kernel_basis(M)
    assert len(K) == 8 - rank(M)
    for v in K:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in M)
    assert rank(K) == len(K)


def test_solve_and_no_solution():
    M = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    x = solve(M, [Fraction(3), Fraction(6)])
    assert x[0] + 2 * x[1] == 3
    with pytest.raises(NoSolution):
        solve(M, [Fraction(1), Fraction(1)])


def test_echelon_coordinates():
    ech = Echelon(3)
    ech.add([Fraction(1), Fraction(1), Fraction(0)])
    ech.add([Fraction(0), Fraction(1), Fraction(1)])
    assert ech.rank == 2
    c = ech.coordinates([Fraction(2), Fraction(5), Fraction(3)])
    assert c == [2, 3]
    assert ech.coordinates([Fraction(0), Fraction(0), Fraction(1)]) is None


def test_surd_arithmetic():
    r2 = Surd.sqrt(2)
    r3 = Surd.sqrt(3)
    assert r2 * r2 == 2
    assert (r2 * r3) * (r2 * r3) == 6
    x = 1 + r2
    assert x * x.inverse() == 1
    i = Surd.sqrt(-1)
    assert i * i == -1
    assert not is_real(i) and is_real(r2)
    assert scalar(Fraction(3, 1)) == 3


def test_sort_key_orders_reals():
    vals = [Surd.sqrt(2), Fraction(1), Fraction(3, 2), -Surd.sqrt(3)]
    assert sorted(vals, key=real_sort_key) == [-Surd.sqrt(3), Fraction(1), Surd.sqrt(2), Fraction(3, 2)]


@pytest.mark.parametrize("x", [Fraction(-7, 3), Fraction(0), 1 + Surd.sqrt(2),
                               Fraction(1, 2) - 3 * Surd.sqrt(6), Fraction(2) + Surd.sqrt(-1)])
def test_format_parse_roundtrip(x):
    assert parse_scalar(format_scalar(x)) == x


def test_fraction_text_is_canonical():
    assert format_scalar(Fraction(4, 6)) == "2/3"
    assert format_scalar(Fraction(5)) == "5"


def test_polynomial_helpers():
    p = [Fraction(-1), Fraction(0), Fraction(1)]           # x^2 - 1
    q = [Fraction(1), Fraction(1)]                         # x + 1
    quo, rem = pdivmod(p, q)
    assert rem == [] or all(c == 0 for c in rem)
    assert pmul(quo, q) == p
    g, s, t = pextgcd([Fraction(-1), Fraction(1)], [Fraction(1), Fraction(1)])
    assert pmul(s, [Fraction(-1), Fraction(1)])[0] + pmul(t, [Fraction(1), Fraction(1)])[0] == g[0]


def test_roots_and_splitting_failure():
    roots = roots_or_fail([Fraction(2), Fraction(-3), Fraction(1)])   # (x-1)(x-2)
    assert sorted(r for r, _ in roots) == [1, 2]
    with pytest.raises(SplittingFieldFailure) as err:
        roots_or_fail([Fraction(-2), Fraction(0), Fraction(1)])     # x^2 - 2
    assert err.value.radicand == (2,)
    rr = roots_or_fail([Fraction(-2), Fraction(0), Fraction(1)], Field((2,)))
    assert sorted((r for r, _ in rr), key=real_sort_key) == [-Surd.sqrt(2), Surd.sqrt(2)]
    ri = roots_or_fail([Fraction(1), Fraction(0), Fraction(1)], QQI)   # x^2 + 1
    assert {format_scalar(r) for r, _ in ri} == {format_scalar(Surd.sqrt(-1)), format_scalar(-Surd.sqrt(-1))}


def test_factor_multiplicities():
    # (x - 1)^2 (x + 2)
    facs = factor_poly(pmul(pmul([Fraction(-1), Fraction(1)], [Fraction(-1), Fraction(1)]),
                            [Fraction(2), Fraction(1)]))
    assert sorted((tuple(f), e) for f, e in facs) == [((-1, 1), 2), ((2, 1), 1)]


def test_field_names():
    assert QQ.name == "Q"
    assert QQI.name == "Q(i)"
    assert QQ.extend((2,)).name == "Q(sqrt(2))"
