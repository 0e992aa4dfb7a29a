from fractions import Fraction
from math import prod

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import non_integers, rationals
from weightlab.exact_arith import (
    DivisionByZero, NotSquare, Q, RationalMatrix, Singular, UniPoly, binom_general, charpoly,
    determinant, fmt, gamma_ratio, kernel_basis, rank, rational_power, solve,
)


def matrices(n=None, m=None, lo=-5, hi=5):
    dims = st.tuples(st.integers(1, 5), st.integers(1, 5)) if n is None else st.just((n, m or n))
    return dims.flatmap(
        lambda d: st.lists(st.lists(rationals(lo, hi, 4), min_size=d[1], max_size=d[1]), min_size=d[0], max_size=d[0])
    )


def square(max_n=5):
    return st.integers(1, max_n).flatmap(lambda n: matrices(n))


def to_sympy(rows):
    return sympy.Matrix([[sympy.Rational(a.numerator, a.denominator) for a in r] for r in rows])


# scalars


def test_serialization():
    assert fmt(Fraction(3, 1)) == "3"
    assert fmt(Fraction(-1, 2)) == "-1/2"
    assert Q("−2/6") == Fraction(-1, 3)
    with pytest.raises(TypeError):
        Q(True)


def test_binom_examples():
    assert binom_general(5, 2) == 10
    assert binom_general(Fraction(7, 3), 0) == 1
    assert binom_general(Fraction(1, 2), 2) == Fraction(-1, 8)


@given(rationals(), st.integers(0, 9))
def test_binom_matches_falling_factorial(x, i):
    # independent oracle: sympy's falling factorial over i!
    want = sympy.ff(sympy.Rational(x.numerator, x.denominator), i) / sympy.factorial(i)
    assert binom_general(x, i) == Fraction(int(want.p), int(want.q))


@given(rationals(), st.integers(1, 12))
def test_pascal(x, i):
    assert binom_general(x, i) == binom_general(x - 1, i) + binom_general(x - 1, i - 1)


def test_gamma_ratio_examples():
    nu = Fraction(5, 7)
    assert gamma_ratio(nu, 0) == 1
    assert gamma_ratio(Fraction(1, 2), 1) == Fraction(2, 3)
    assert gamma_ratio(Fraction(1, 2), -2) == Fraction(-1, 4)
    with pytest.raises(DivisionByZero):
        gamma_ratio(-2, 3)


@given(non_integers(), st.integers(-6, 6))
def test_gamma_recurrence(nu, ell):
    assert gamma_ratio(nu, ell + 1) == gamma_ratio(nu, ell) / (nu + ell + 1)


@given(non_integers(), st.integers(-5, 5), st.integers(-5, 5))
def test_gamma_additivity(nu, a, b):
    assert gamma_ratio(nu, a + b) == gamma_ratio(nu, a) * gamma_ratio(nu + a, b)


@given(non_integers(0, 4), st.integers(1, 6))
def test_gamma_ratio_against_gamma_function(nu, ell):
    g = sympy.gamma
    r = sympy.Rational(nu.numerator, nu.denominator)
    want = sympy.gammasimp(g(r + 1) / g(r + ell + 1))
    assert gamma_ratio(nu, ell) == Fraction(int(want.p), int(want.q))


def test_rational_power():
    assert rational_power(4, Fraction(1, 2)) == 2
    assert rational_power(Fraction(8, 27), Fraction(2, 3)) == Fraction(4, 9)
    assert rational_power(2, Fraction(1, 2)) is None
    assert rational_power(-8, Fraction(1, 3)) is None
    assert rational_power(3, -2) == Fraction(1, 9)


# polynomials


@given(st.lists(rationals(-4, 4, 3), max_size=5))
def test_from_roots_and_rational_roots(roots):
    p = UniPoly.from_roots(roots)
    assert p.degree == len(roots)
    assert all(p(r) == 0 for r in roots)
    if roots:
        assert p.rational_roots() == sorted(roots)


def test_polynomial_text():
    assert str(UniPoly.from_roots([1, -1])) == "mu^2 - 1"


# matrices


def test_kernel_examples():
    assert kernel_basis([[1, 0], [0, 1]]) == []
    assert len(kernel_basis([[0, 0], [0, 0]])) == 2
    (v,) = kernel_basis([[1, 1], [2, 2]])
    assert v[0] == -v[1] != 0


@given(matrices())
def test_kernel_contract(rows):
    m = RationalMatrix(rows)
    ker = kernel_basis(m)
    assert all(not any(m.apply(v)) for v in ker)
    assert len(ker) == m.ncols - rank(m)
    assert rank(m) == to_sympy(rows).rank()


def test_charpoly_examples():
    assert charpoly(RationalMatrix.identity(2)) == UniPoly.from_roots([1, 1])
    a, b = Fraction(2, 3), Fraction(-5)
    assert charpoly([[a, 0], [0, b]]) == UniPoly.from_roots([a, b])
    assert charpoly([[0, 1], [1, 0]]) == UniPoly((-1, 0, 1))
    with pytest.raises(NotSquare):
        charpoly([[1, 2]])


@given(square())
def test_charpoly_against_sympy(rows):
    mu = sympy.Symbol("mu")
    want = sympy.Poly(to_sympy(rows).charpoly(mu).as_expr(), mu).all_coeffs()[::-1]
    got = charpoly(rows).coeffs
    assert [Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for c in want] == list(got)


@given(square())
def test_determinant_against_sympy(rows):
    want = sympy.Rational(to_sympy(rows).det())
    assert determinant(rows) == Fraction(int(want.p), int(want.q))


@given(st.integers(1, 5).flatmap(lambda n: st.lists(rationals(-4, 4, 3), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2).map(lambda xs: (n, xs))))
def test_charpoly_vanishes_on_triangular_eigenvalues(data):
    n, xs = data
    it = iter(xs)
    rows = [[next(it) if j >= i else Fraction(0) for j in range(n)] for i in range(n)]
    p = charpoly(rows)
    assert all(p(rows[i][i]) == 0 for i in range(n))
    assert p.coeffs[0] == (-1) ** n * prod(rows[i][i] for i in range(n))


@given(square(4), st.lists(rationals(), min_size=4, max_size=4))
def test_solve(rows, b):
    n = len(rows)
    b = b[:n]
    if determinant(rows) == 0:
        with pytest.raises(Singular):
            solve(rows, b)
    else:
        x = solve(rows, b)
        assert RationalMatrix(rows).apply(x) == b


def test_matrix_shape_helpers():
    A = RationalMatrix([[1, 2], [3, 4]])
    assert A.transpose().rows == ((1, 3), (2, 4))
    assert A.antidiagonal_transpose().rows == ((4, 2), (3, 1))
    assert (A @ RationalMatrix.identity(2)) == A
    assert A.trace() == 5
