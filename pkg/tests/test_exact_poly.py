"""
Unit tests for exact_poly module
"""

import pickle
import sys
import os
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

# Add src to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

from errors import UsageError
from exact_poly import (BiDegree, Monomial, Polynomial, compositions, format_polynomial,
                        monomials_of_bidegree, parse_polynomial)


def x(i, n):
    return Polynomial.variable('x', i, n)


def y(i, n):
    return Polynomial.variable('y', i, n)


coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polynomials(draw, n=2):
    terms = draw(st.dictionaries(
        st.builds(Monomial, st.tuples(*[st.integers(0, 2)] * n), st.tuples(*[st.integers(0, 2)] * n)),
        coefficients, max_size=4))
    return Polynomial(terms, n)


class TestBiDegree:
    """Test cases for bidegrees"""

    def test_negative_bidegree_rejected(self):
        with pytest.raises(UsageError):
            BiDegree(-1, 0)

    def test_minus_returns_none_below_zero(self):
        assert BiDegree(2, 1).minus(0, 2) is None
        assert BiDegree(2, 1).minus(1, 1) == BiDegree(1, 0)

    def test_window_is_row_major(self):
        window = BiDegree.window(BiDegree(1, 2))
        assert window[:3] == [BiDegree(0, 0), BiDegree(0, 1), BiDegree(0, 2)]
        assert len(window) == 6

    def test_key_and_str(self):
        assert BiDegree(3, 4).key() == "3,4"
        assert str(BiDegree(3, 4)) == "(3,4)"


class TestPolynomialArithmetic:
    """Test cases for polynomial arithmetic"""

    def test_zero_coefficients_are_dropped(self):
        p = x(1, 2) - x(1, 2)
        assert not p
        assert len(p) == 0

    def test_square_of_binomial(self):
        p = (x(1, 2) + y(2, 2)) ** 2
        expected = x(1, 2) * x(1, 2) + 2 * x(1, 2) * y(2, 2) + y(2, 2) * y(2, 2)
        assert p == expected

    def test_mismatched_variable_counts_raise(self):
        with pytest.raises(UsageError):
            x(1, 2) + x(1, 3)

    def test_scalar_equality(self):
        assert Polynomial.constant(3, 2) == 3
        assert Polynomial.zero(2) == 0

    def test_evaluate_exactly(self):
        p = parse_polynomial("3/2*x1^2*y2 - y1", 2)
        assert p.evaluate([2, 0], [Fraction(1, 3), 5]) == Fraction(3, 2) * 4 * 5 - Fraction(1, 3)

    @given(polynomials(), polynomials(), st.lists(coefficients, min_size=4, max_size=4))
    @settings(max_examples=40, deadline=None)
    def test_evaluate_is_multiplicative(self, p, q, point):
        xs, ys = point[:2], point[2:]
        assert (p * q).evaluate(xs, ys) == p.evaluate(xs, ys) * q.evaluate(xs, ys)
        assert (p + q).evaluate(xs, ys) == p.evaluate(xs, ys) + q.evaluate(xs, ys)

    @given(polynomials(), polynomials(), polynomials())
    @settings(max_examples=25, deadline=None)
    def test_multiplication_is_associative(self, p, q, r):
        assert (p * q) * r == p * (q * r)

    def test_mixed_determinant_vanishes_at_equal_ys(self):
        p = parse_polynomial("x1*y2 - x2*y1", 2)
        assert p.evaluate([3, Fraction(-1, 2)], [7, 7]) == 0
        assert p.evaluate([3, 1], [7, 5]) != 0

    def test_evaluate_checks_length(self):
        with pytest.raises(UsageError):
            x(1, 2).evaluate([1], [1])

    def test_pickle_preserves_value(self):
        p = parse_polynomial("x1*y2 - 1/3*y1", 2)
        assert pickle.loads(pickle.dumps(p)) == p

    @given(polynomials(), polynomials(), polynomials())
    @settings(max_examples=40, deadline=None)
    def test_ring_axioms(self, p, q, r):
        """Multiplication commutes and distributes over addition"""
        assert p * q == q * p
        assert p * (q + r) == p * q + p * r


class TestGrading:
    """Test cases for the bigrading"""

    def test_bidegree_of_homogeneous(self):
        assert (x(1, 2) * y(2, 2)).bidegree() == BiDegree(1, 1)
        assert Polynomial.zero(2).bidegree() is None

    def test_inhomogeneous_bidegree_raises(self):
        with pytest.raises(UsageError):
            (x(1, 2) + y(1, 2) * y(2, 2)).bidegree()

    def test_is_bihomogeneous(self):
        assert (x(1, 2) * y(2, 2) - x(2, 2) * y(1, 2)).is_bihomogeneous()
        assert Polynomial.zero(2).is_bihomogeneous()
        assert not (x(1, 2) + y(1, 2)).is_bihomogeneous()

    def test_bigrade_split(self):
        p = x(1, 2) + y(1, 2) + x(2, 2) * y(1, 2)
        parts = p.bigrade_split()
        assert set(parts) == {BiDegree(1, 0), BiDegree(0, 1), BiDegree(1, 1)}
        assert sum(parts.values(), Polynomial.zero(2)) == p

    def test_monomials_of_bidegree_count(self):
        assert len(monomials_of_bidegree(2, BiDegree(1, 1))) == 4
        assert len(monomials_of_bidegree(3, BiDegree(2, 0))) == 6

    def test_compositions(self):
        assert sorted(compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
        assert list(compositions(0, 0)) == [()]


class TestSymmetricAction:
    """Test cases for the diagonal S_n action"""

    def test_transposition_swaps_variables(self):
        p = x(1, 2) * y(1, 2) ** 2
        assert p.act((1, 0)) == x(2, 2) * y(2, 2) ** 2

    def test_action_is_a_homomorphism(self):
        p = x(1, 3) + y(2, 3)
        q = x(3, 3) * y(1, 3)
        perm = (2, 0, 1)
        assert (p * q).act(perm) == p.act(perm) * q.act(perm)

    def test_embed_single_pair(self):
        p = parse_polynomial("x1^2*y1", 1)
        assert p.embed(1, 3) == x(2, 3) ** 2 * y(2, 3)


class TestTextForm:
    """Test cases for parse_polynomial and format_polynomial"""

    def test_canonical_form(self):
        p = parse_polynomial("-y1 + 3/2*x1^2*y3", 3)
        assert format_polynomial(p) == "3/2*x1^2*y3 - y1"

    def test_zero_formats_as_zero(self):
        assert format_polynomial(Polynomial.zero(2)) == "0"

    def test_leading_term_first(self):
        assert str(x(2, 2) - x(1, 2)) == "-x1 + x2"

    def test_constant_term(self):
        assert str(Polynomial.constant(Fraction(-1, 2), 1)) == "-1/2"

    def test_bad_text_raises(self):
        with pytest.raises(UsageError):
            parse_polynomial("x1 + z2", 2)
        with pytest.raises(UsageError):
            parse_polynomial("x3", 2)

    @given(polynomials())
    @settings(max_examples=40, deadline=None)
    def test_parse_inverts_format(self, p):
        assert parse_polynomial(format_polynomial(p), 2) == p


# Run tests
if __name__ == '__main__':
    pytest.main([__file__, '-v'])
