"""
Unit tests for acv_geometry module
"""

import sys
import os
from fractions import Fraction

import numpy as np
import pytest

# Add src to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

from acv_geometry import (MPoint, NCTuple, NCWord, char_poly_coeffs, diagonal, equivariance_holds, eval_word,
                          g_translate, has_distinct_eigenvalues, jacobian_rank, jmath_point, krylov_col_dim,
                          krylov_row_dim, krylov_saturation,
                          on_variety, phi_eval, psi_eval, random_invertible, random_nctuple, sample_stratum,
                          scale_point, scaling_weight_holds, stratum_of, vanishing_pattern_holds, verify_stratum)
from errors import SamplerFailure, UsageError


@pytest.fixture(scope='module')
def strata_n2():
    """One verified sample per stratum for n = 2"""
    return {r: sample_stratum(2, r, seed=7) for r in range(3)}


class TestPointsAndWords:
    """Test cases for points of M and noncommutative words"""

    def test_shape_validation(self):
        with pytest.raises(UsageError):
            MPoint([[0, 0], [0, 0]], [[0, 0], [0, 0]], [1], [0, 0])

    def test_words_use_two_letters(self):
        with pytest.raises(UsageError):
            NCWord('xz')

    def test_tuple_converts_strings(self):
        f = NCTuple(('', 'xy'))
        assert f.n == 2
        assert f.total_length() == 2
        assert f.to_json() == ['', 'xy']

    def test_json_round_trip(self, strata_n2):
        p = strata_n2[1]
        assert MPoint.from_json(p.to_json()) == p

    def test_jmath_point_is_on_variety(self):
        assert on_variety(jmath_point([1, 2], [3, 4]))

    def test_eval_word(self):
        X = np.array([[0, 1], [0, 0]], dtype=object)
        Y = diagonal([3, 5])
        assert (eval_word(X, Y, NCWord('')) == diagonal([1, 1])).all()
        assert (eval_word(diagonal([1, 2]), Y, NCWord('x')) == diagonal([1, 2])).all()
        assert (eval_word(X, Y, NCWord('xy')) == np.array([[0, 5], [0, 0]], dtype=object)).all()

    def test_char_poly_coeffs(self):
        zero = [0, 0]
        assert char_poly_coeffs(MPoint(diagonal(zero), diagonal([0, 1]), zero, zero)) == [-1, 0]
        assert char_poly_coeffs(MPoint(diagonal(zero), diagonal([2, 3]), zero, zero)) == [-5, 6]
        assert char_poly_coeffs(MPoint(diagonal(zero), diagonal(zero), zero, zero)) == [0, 0]

    def test_krylov_dims_at_jmath(self):
        p = jmath_point([1, 2], [3, 4])
        assert krylov_col_dim(p) == 2
        assert krylov_row_dim(p) == 0


class TestStratumSampler:
    """Test cases for sample_stratum"""

    def test_samples_lie_in_their_stratum(self, strata_n2):
        for r, p in strata_n2.items():
            assert on_variety(p)
            assert verify_stratum(p, r)
            assert krylov_col_dim(p) == 2 - r
            assert krylov_row_dim(p) == r
            assert stratum_of(p) == r

    def test_sampler_is_deterministic(self):
        assert sample_stratum(3, 1, seed=11) == sample_stratum(3, 1, seed=11)

    def test_stratum_out_of_range(self):
        with pytest.raises(UsageError):
            sample_stratum(2, 3, seed=0)

    def test_budget_exhaustion(self):
        with pytest.raises(SamplerFailure):
            sample_stratum(2, 1, seed=0, budget=0)

    def test_n3_every_stratum(self):
        for r in range(4):
            assert verify_stratum(sample_stratum(3, r, seed=r), r)

    @pytest.mark.parametrize('n', [2, 3])
    def test_krylov_rounds_bounded_by_n(self, n):
        for r in range(n + 1):
            p = sample_stratum(n, r, seed=r + 10)
            for start, ops in ((p.i, [lambda v: p.X @ v, lambda v: p.Y @ v]),
                               (p.j, [lambda v: v @ p.X, lambda v: v @ p.Y])):
                dim, rounds = krylov_saturation(start, ops, n)
                assert rounds <= n
                assert rounds <= max(dim - 1, 0)

    def test_krylov_shift_needs_n_minus_one_rounds(self):
        shift = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0]], dtype=object)
        start = np.array([Fraction(1), Fraction(0), Fraction(0)], dtype=object)
        assert krylov_saturation(start, [lambda v: shift @ v], 3) == (3, 2)


class TestJacobian:
    """Test cases for jacobian_rank"""

    def test_full_rank_n2(self, strata_n2):
        for p in strata_n2.values():
            assert jacobian_rank(p) == 4

    def test_full_rank_n3(self):
        for r in range(4):
            assert jacobian_rank(sample_stratum(3, r, seed=3)) == 9

    def test_n1_rank_one(self):
        assert jacobian_rank(sample_stratum(1, 0, seed=0)) == 1

    def test_off_variety_raises(self):
        p = MPoint([[0, 1], [0, 0]], [[1, 0], [0, 2]], [0, 0], [0, 0])
        assert not on_variety(p)
        with pytest.raises(UsageError):
            jacobian_rank(p)


class TestTwistedFunctions:
    """Test cases for psi and phi"""

    def test_psi_at_jmath_is_vandermonde(self):
        p = jmath_point([1, 2], [3, 4])
        assert psi_eval(p, NCTuple(('', 'x'))) == 1
        assert psi_eval(p, NCTuple(('', 'y'))) == 1
        assert phi_eval(p, NCTuple(('', 'x'))) == 0

    def test_tuple_length_must_match(self):
        with pytest.raises(UsageError):
            psi_eval(jmath_point([1, 2], [3, 4]), NCTuple(('x',)))

    def test_vanishing_pattern(self, strata_n2):
        rng = np.random.default_rng(5)
        tuples = [random_nctuple(2, 3, rng) for _ in range(30)]
        for r, p in strata_n2.items():
            assert all(vanishing_pattern_holds(p, r, f) for f in tuples)

    def test_equivariance_under_random_g(self, strata_n2):
        rng = np.random.default_rng(6)
        f = NCTuple(('', 'xy'))
        for p in strata_n2.values():
            for _ in range(5):
                assert equivariance_holds(p, random_invertible(2, rng), f)

    def test_scaling_weight(self, strata_n2):
        f = NCTuple(('y', 'xx'))
        for p in strata_n2.values():
            assert scaling_weight_holds(p, f, Fraction(-2, 3))
        assert on_variety(scale_point(strata_n2[0], 5))

    def test_singular_g_raises(self, strata_n2):
        with pytest.raises(UsageError):
            g_translate(strata_n2[0], [[1, 2], [2, 4]])


class TestStrata:
    """Test cases for stratum_of and the eigenvalue test"""

    def test_translated_diagonal_points_are_in_open_stratum(self):
        rng = np.random.default_rng(8)
        for _ in range(5):
            p = g_translate(jmath_point([1, -2, 3], [0, 1, 5]), random_invertible(3, rng))
            assert stratum_of(p) == 0

    def test_repeated_eigenvalue_detected(self):
        p = MPoint(diagonal([0, 0]), diagonal([1, 1]), [1, 1], [0, 0])
        assert not has_distinct_eigenvalues(p)
        assert stratum_of(p) is None


# Run tests
if __name__ == '__main__':
    pytest.main([__file__, '-v'])
