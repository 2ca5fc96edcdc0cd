# Copyright (c) Microsoft Corporation. All rights reserved.
# Licensed under the MIT License.
"""
Tests for explicit symmetric polynomials.
"""
import itertools

import groth_core as core
import groth_symfunc as symfunc
import pytest
from groth_errors import DimensionError, NotSymmetric, ZeroPolynomial
from hamcrest import assert_that, is_

from .groth_test_client import defaults

X = symfunc.XPolynomial


def _small_cases(max_weight=5, max_vars=4):
    for weight in range(max_weight + 1):
        for lam in core.partitions_of(weight, max_length=max_vars):
            for nvars in range(max(len(lam), 1), max_vars + 1):
                yield lam, nvars


SMALL_CASES = list(_small_cases())


def test_polynomial_arithmetic():
    """Ring operations on sparse polynomials."""
    x1, x2 = X.variable(1, 2), X.variable(2, 2)
    square = (x1 + x2) ** 2
    assert_that(square.terms, is_({(2, 0): 1, (1, 1): 2, (0, 2): 1}))
    assert_that((square - square).is_zero(), is_(True))
    assert_that(square.degree(), is_(2))
    assert_that((x1 * x2).render(), is_("x1*x2"))
    assert_that((x1 - X.constant(3, 2)).render(), is_("x1 - 3"))
    with pytest.raises(ZeroPolynomial):
        X.zero(2).degree()


def test_polynomial_serialization():
    """Graded-lex order, highest first."""
    poly = X.variable(1, 2) ** 2 + X.variable(2, 2) - X.constant(1, 2)
    assert_that(
        poly.to_dict(),
        is_(
            {
                "vars": 2,
                "terms": [
                    {"exps": [2, 0], "coeff": 1},
                    {"exps": [0, 1], "coeff": 1},
                    {"exps": [0, 0], "coeff": -1},
                ],
            }
        ),
    )


def test_h_poly():
    """Complete homogeneous polynomials."""
    assert_that(symfunc.h_poly(0, 3), is_(X.constant(1, 3)))
    assert_that(symfunc.h_poly(2, 2).terms, is_({(2, 0): 1, (1, 1): 1, (0, 2): 1}))
    assert_that(symfunc.h_poly(-1, 2).is_zero(), is_(True))
    with pytest.raises(DimensionError):
        symfunc.h_poly(1, 0)


def test_h_i_poly():
    """``h^(i)_r`` from the generating function ``(1-u)^i / prod (1 - x_j u)``."""
    assert_that(symfunc.h_i_poly(0, 2, 2), is_(symfunc.h_poly(2, 2)))
    expected = X.variable(1, 2) + X.variable(2, 2) - X.constant(1, 2)
    assert_that(symfunc.h_i_poly(1, 1, 2), is_(expected))
    assert_that(symfunc.h_i_poly(2, 0, 3), is_(X.constant(1, 3)))


@pytest.mark.parametrize("i", range(4))
@pytest.mark.parametrize("nvars", [1, 2, 3])
def test_h_i_poly_matches_series(i, nvars):
    """Closed form agrees with series division up to order 6."""
    series = symfunc.h_i_series(i, 6, nvars)
    for r, coeff in enumerate(series):
        assert_that(symfunc.h_i_poly(i, r, nvars), is_(coeff))


def _leibniz(matrix, nvars):
    total = X.zero(nvars)
    for perm in itertools.permutations(range(len(matrix))):
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        term = X.constant(-1 if inversions % 2 else 1, nvars)
        for row, col in enumerate(perm):
            term = term * matrix[row][col]
        total = total + term
    return total


def test_determinant():
    """Fraction-free elimination over polynomial entries."""
    x1, x2 = X.variable(1, 2), X.variable(2, 2)
    one = X.constant(1, 2)
    det = symfunc.determinant([[x1, one], [one, x2]], 2)
    assert_that(det, is_(x1 * x2 - one))
    assert_that(symfunc.determinant([], 2), is_(one))
    assert_that(symfunc.determinant([[x1, x2], [x1 * x1, x1 * x2]], 2).is_zero(), is_(True))


def test_determinant_with_zero_pivots():
    """Zero pivots are swapped away with the matching sign."""
    x1, x2, x3 = (X.variable(i, 3) for i in (1, 2, 3))
    zero, one = X.zero(3), X.constant(1, 3)
    cycle = [[zero, x1, zero], [zero, zero, x2], [one, zero, zero]]
    assert_that(symfunc.determinant(cycle, 3), is_(x1 * x2))
    swap = [[zero, x3], [x1, x2]]
    assert_that(symfunc.determinant(swap, 3), is_(-(x1 * x3)))
    vandermonde = [[one, one, one], [x1, x2, x3], [x1 * x1, x2 * x2, x3 * x3]]
    assert_that(symfunc.determinant(vandermonde, 3), is_((x2 - x1) * (x3 - x1) * (x3 - x2)))


@pytest.mark.parametrize("nvars", [2, 3])
def test_determinant_matches_leibniz(nvars):
    """Jacobi-Trudi style matrices agree with the permutation sum."""
    matrix = [[symfunc.h_i_poly(i, 2 - i + j, nvars) for j in range(4)] for i in range(4)]
    assert_that(symfunc.determinant(matrix, nvars), is_(_leibniz(matrix, nvars)))


def test_exact_quotient():
    x1, x2 = X.variable(1, 2), X.variable(2, 2)
    one = X.constant(1, 2)
    product = (x1 - x2) * (x1 * x2 + one.scale(3)) * (x2 - one)
    assert_that(product.exact_quotient(x1 - x2), is_((x1 * x2 + one.scale(3)) * (x2 - one)))
    assert_that(product.exact_quotient(one), is_(product))
    assert_that(X.zero(2).exact_quotient(x1), is_(X.zero(2)))
    with pytest.raises(ValueError):
        (x1 + one).exact_quotient(x2)
    with pytest.raises(ValueError):
        x1.exact_quotient(x1.scale(2))
    with pytest.raises(ZeroDivisionError):
        x1.exact_quotient(X.zero(2))


def test_schur_poly():
    """Jacobi-Trudi Schur polynomials."""
    assert_that(symfunc.schur_poly((1,), 2), is_(X.variable(1, 2) + X.variable(2, 2)))
    assert_that(symfunc.schur_poly((1, 1), 1).is_zero(), is_(True))
    assert_that(symfunc.schur_poly((2, 1), 2).terms, is_({(2, 1): 1, (1, 2): 1}))


def test_g_poly():
    """Grothendieck determinants."""
    assert_that(symfunc.g_poly((), 2), is_(X.constant(1, 2)))
    assert_that(symfunc.g_poly((1,), 1), is_(X.variable(1, 1)))
    expected = symfunc.combine_schur(core.SExpansion(defaults.SCHUR_2_3).items(), 3)
    assert_that(symfunc.g_poly((2,), 3), is_(expected))
    with pytest.raises(DimensionError):
        symfunc.g_poly((1, 1), 1)


@pytest.mark.parametrize("lam, nvars", SMALL_CASES)
def test_symmetry_under_adjacent_swaps(lam, nvars):
    """g_poly and schur_poly are symmetric in the x variables."""
    g = symfunc.g_poly(lam, nvars)
    s = symfunc.schur_poly(lam, nvars)
    for i in range(nvars - 1):
        perm = list(range(nvars))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        assert_that(g.permute(perm), is_(g))
        assert_that(s.permute(perm), is_(s))


@pytest.mark.parametrize("lam, nvars", SMALL_CASES)
def test_lowest_degree_component_is_schur(lam, nvars):
    """The lowest-degree part of G_lambda is s_lambda."""
    assert_that(
        symfunc.lowest_degree_component(symfunc.g_poly(lam, nvars)),
        is_(symfunc.schur_poly(lam, nvars)),
    )


@pytest.mark.parametrize("lam, nvars", SMALL_CASES)
def test_basis_round_trips(lam, nvars):
    """Basis elements expand to themselves."""
    assert_that(
        symfunc.expand_in_schur_basis(symfunc.schur_poly(lam, nvars)),
        is_(core.SExpansion({lam: 1})),
    )
    assert_that(
        symfunc.expand_in_g_basis(symfunc.g_poly(lam, nvars)),
        is_(core.GExpansion({lam: 1})),
    )


def test_lowest_degree_component():
    """Degree filter."""
    x1, x2 = X.variable(1, 2), X.variable(2, 2)
    assert_that(symfunc.lowest_degree_component(x1 + x1 * x2), is_(x1))
    assert_that(symfunc.lowest_degree_component(X.constant(1, 2)), is_(X.constant(1, 2)))
    with pytest.raises(ZeroPolynomial):
        symfunc.lowest_degree_component(X.zero(2))


def test_expand_in_schur_basis():
    """Leading-monomial elimination."""
    h1 = symfunc.h_poly(1, 2)
    assert_that(
        symfunc.expand_in_schur_basis(h1 * h1), is_(core.SExpansion({(2,): 1, (1, 1): 1}))
    )
    assert_that(symfunc.expand_in_schur_basis(X.zero(2)), is_(core.SExpansion()))
    with pytest.raises(NotSymmetric):
        symfunc.expand_in_schur_basis(X.variable(2, 2))


def test_expand_in_g_basis():
    """Lowest-degree elimination."""
    g1 = symfunc.g_poly((1,), 2)
    assert_that(
        symfunc.expand_in_g_basis(g1 * g1), is_(core.GExpansion(defaults.MULT_1_1))
    )
    assert_that(symfunc.expand_in_g_basis(X.constant(1, 3)), is_(core.GExpansion({(): 1})))
    assert_that(
        symfunc.expand_in_g_basis(symfunc.g_poly((3, 1), 4)),
        is_(core.GExpansion({(3, 1): 1})),
    )
