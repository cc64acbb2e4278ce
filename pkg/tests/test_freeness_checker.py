"""
Unit tests for freeness_checker module
"""

import sys
import os

import pytest

# Add src to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

from alternants import hilbert_table
from errors import UsageError
from exact_poly import BiDegree, parse_polynomial
from freeness_checker import (PlantedTorsionModule, alternant_module, check_freeness, euler_factor,
                              euler_identity_check, fiber_series, free_basis_certificate, lowest_alternant,
                              quotient_stages, regular_sequence_check, stage_consistency_check, stage_kernels)
from linalg import Field
from reports import Verdict


class TestRegularSequence:
    """Test cases for regular_sequence_check"""

    @pytest.mark.parametrize('k', [1, 2, 3])
    def test_n1_kernels_vanish(self, k):
        report = regular_sequence_check(1, k, BiDegree(3, 3))
        assert report.kernel_dims
        assert not report.nonzero_kernels
        assert report.verdict == Verdict.PASS

    def test_n2_k1_kernels_vanish(self):
        report = regular_sequence_check(2, 1, BiDegree(4, 4))
        assert set(report.kernel_dims.values()) == {0}
        assert report.verdict == Verdict.PASS

    def test_targets_outside_window_are_indeterminate(self):
        report = regular_sequence_check(2, 1, BiDegree(2, 2))
        assert (2, BiDegree(0, 1)) in report.indeterminate
        assert (2, BiDegree(0, 1)) not in report.kernel_dims
        assert (1, BiDegree(0, 1)) in report.kernel_dims

    def test_cutoff_below_n_is_usage_error(self):
        with pytest.raises(UsageError):
            regular_sequence_check(3, 1, BiDegree(3, 2))

    def test_prime_mode_is_inconclusive(self):
        report = regular_sequence_check(2, 1, BiDegree(2, 2), field=Field(101))
        assert report.verdict == Verdict.INCONCLUSIVE


class TestFiberSeries:
    """Test cases for fiber_series and the Euler identity"""

    def test_n2_k1_values(self):
        fiber = fiber_series(2, 1, BiDegree(3, 3))
        assert fiber[BiDegree(1, 0)] == 1
        assert fiber[BiDegree(0, 1)] == 1
        assert fiber[BiDegree(0, 2)] == 0

    def test_n1_fiber_is_x_line(self):
        fiber = fiber_series(1, 1, BiDegree(3, 3))
        for bd, dim in fiber.items():
            assert dim == (1 if bd.dy == 0 else 0)

    def test_euler_factor(self):
        assert euler_factor(1) == [1, -1]
        assert euler_factor(2) == [1, -1, -1, 1]

    @pytest.mark.parametrize('n,k,cutoff', [(1, 1, (3, 3)), (2, 1, (4, 4)), (2, 2, (3, 3))])
    def test_identity_holds(self, n, k, cutoff):
        assert euler_identity_check(n, k, BiDegree(*cutoff))

    def test_stage_zero_is_a_k(self):
        cutoff = BiDegree(3, 3)
        stages = quotient_stages(alternant_module(2, 1, cutoff))
        assert stages[0].dims == hilbert_table(1, 2, cutoff)


class TestCertificate:
    """Test cases for free_basis_certificate"""

    def test_n1_generators_are_x_powers(self):
        report = free_basis_certificate(1, 1, BiDegree(3, 3))
        assert [bd for bd, _ in report.generators] == [BiDegree(a, 0) for a in range(4)]
        assert report.verdict == Verdict.PASS

    def test_n2_k1_low_generators(self):
        report = free_basis_certificate(2, 1, BiDegree(3, 3))
        by_degree = {}
        for bd, g in report.generators:
            by_degree.setdefault(bd, []).append(g[0])
        assert len(by_degree[BiDegree(1, 0)]) == 1
        assert len(by_degree[BiDegree(0, 1)]) == 1
        assert BiDegree(0, 2) not in by_degree
        assert by_degree[BiDegree(1, 0)][0] in (parse_polynomial("x1 - x2", 2), parse_polynomial("x2 - x1", 2))
        assert report.verdict == Verdict.PASS

    def test_n2_k2_certificate(self):
        assert free_basis_certificate(2, 2, BiDegree(4, 4)).verdict == Verdict.PASS

    def test_generator_count_equals_fiber(self):
        report = free_basis_certificate(2, 1, BiDegree(3, 3))
        counts = {}
        for bd, _ in report.generators:
            counts[bd] = counts.get(bd, 0) + 1
        assert all(counts.get(bd, 0) == dim for bd, dim in report.fiber_series.items())

    def test_lift_rules_agree_on_counts(self):
        cutoff = BiDegree(3, 3)
        canonical = free_basis_certificate(2, 1, cutoff, lift_rule='canonical')
        reverse = free_basis_certificate(2, 1, cutoff, lift_rule='reverse')
        assert canonical.fiber_series == reverse.fiber_series
        assert len(canonical.generators) == len(reverse.generators)
        assert reverse.verdict == Verdict.PASS

    def test_unknown_lift_rule(self):
        with pytest.raises(UsageError):
            free_basis_certificate(1, 1, BiDegree(1, 1), lift_rule='random')


class TestStageConsistency:
    """Test cases for stage_consistency_check"""

    def test_consistent_for_a1(self):
        module = alternant_module(2, 1, BiDegree(3, 3))
        stages = quotient_stages(module)
        kernels, _ = stage_kernels(module, stages)
        assert stage_consistency_check(stages, kernels)

    def test_consistent_for_planted_module(self):
        module = PlantedTorsionModule(n=2, cutoff=BiDegree(3, 3))
        stages = quotient_stages(module)
        kernels, _ = stage_kernels(module, stages)
        assert stage_consistency_check(stages, kernels)


class TestPlantedTorsion:
    """Test cases for the non-free negative control"""

    def test_planted_bidegree(self):
        assert PlantedTorsionModule(n=2, cutoff=BiDegree(3, 3)).planted_bidegree == BiDegree(1, 1)
        assert PlantedTorsionModule(n=1, cutoff=BiDegree(3, 3)).planted_bidegree == BiDegree(0, 1)

    def test_lowest_alternant(self):
        assert lowest_alternant(2) == parse_polynomial("x2 - x1", 2)

    def test_kernel_detected_at_planted_bidegree(self):
        module = PlantedTorsionModule(n=2, cutoff=BiDegree(3, 3))
        report = regular_sequence_check(2, 1, module.cutoff, module=module)
        assert report.kernel_dims[(1, BiDegree(1, 1))] == 1
        assert report.verdict == Verdict.FAIL

    def test_kernel_witness_is_planted_element(self):
        module = PlantedTorsionModule(n=2, cutoff=BiDegree(3, 3))
        report = regular_sequence_check(2, 1, module.cutoff, module=module)
        (witness,) = report.kernel_witnesses[(1, module.planted_bidegree)]
        assert not witness[0]
        assert witness[1]
        assert module.rank([witness, module.planted_element()], module.planted_bidegree) == 1
        assert set(report.kernel_witnesses) == set(report.nonzero_kernels)
        assert report.to_json()['kernel_witnesses']['1@1,1']

    def test_free_module_has_no_witnesses(self):
        assert not regular_sequence_check(2, 1, BiDegree(3, 3)).kernel_witnesses

    def test_euler_identity_fails(self):
        module = PlantedTorsionModule(n=2, cutoff=BiDegree(3, 3))
        assert not euler_identity_check(2, 1, module.cutoff, module=module)

    def test_full_check_fails(self):
        module = PlantedTorsionModule(n=1, cutoff=BiDegree(2, 2))
        report = check_freeness(1, 1, module.cutoff, module=module)
        assert report.nonzero_kernels
        assert report.verdict == Verdict.FAIL


class TestCheckFreeness:
    """Test cases for the combined report"""

    @pytest.mark.parametrize('n,k,cutoff', [(1, 2, (3, 3)), (2, 1, (4, 4)), (3, 1, (3, 3)),
                                         (1, 3, (5, 5)), (2, 1, (5, 5)), (2, 2, (5, 5)), (2, 3, (5, 5)),
                                         (3, 1, (4, 4))])
    def test_free_modules_pass(self, n, k, cutoff):
        report = check_freeness(n, k, BiDegree(*cutoff))
        assert report.euler_identity_ok
        assert report.stage_consistency_ok
        assert report.lift_counts_agree
        assert report.verdict == Verdict.PASS

    def test_report_serializes(self):
        payload = check_freeness(1, 1, BiDegree(2, 2)).to_json()
        assert payload['verdict'] == 'pass'
        assert payload['fiber_series']['2,0'] == 1
        assert 'provenance' in payload

    def test_parallel_matches_sequential(self):
        cutoff = BiDegree(3, 3)
        assert check_freeness(2, 1, cutoff, n_jobs=2).to_json() == check_freeness(2, 1, cutoff).to_json()


# Run tests
if __name__ == '__main__':
    pytest.main([__file__, '-v'])
