"""
Unit tests for the commands module and the command-line front end
"""

import sys
import os
import io
import json

import pytest

# Add project root and src to path
ROOT = os.path.join(os.path.dirname(__file__), '..')
sys.path.append(ROOT)
sys.path.append(os.path.join(ROOT, 'src'))

from commands import cmd_freeness, cmd_hilbert, cmd_variety, run_command
from errors import UsageError
from exact_poly import BiDegree
from reports import RunConfig, Verdict
import config
import run_analysis


def run_cli(*argv):
    """Run the CLI in-process; returns (exit code, parsed stdout or raw text)"""
    out = io.StringIO()
    code = run_analysis.run(list(argv), stdout=out)
    text = out.getvalue()
    try:
        return code, json.loads(text)
    except json.JSONDecodeError:
        return code, text


class TestCommands:
    """Test cases for command functions"""

    def test_hilbert_n2(self):
        envelope = cmd_hilbert(RunConfig(command='hilbert', n=2, k=1, cutoff=BiDegree(2, 2)))
        assert envelope.verdict == Verdict.PASS
        assert envelope.body['table']['1,1'] == 2
        assert envelope.body['oracle_mismatches'] == []
        assert 'hilbert' in envelope.tables

    def test_hilbert_k0(self):
        envelope = cmd_hilbert(RunConfig(command='hilbert', n=2, k=0, cutoff=BiDegree(1, 1)))
        assert envelope.body['table']['0,0'] == 1
        assert 'oracle_mismatches' not in envelope.body

    def test_hilbert_prime_mode_inconclusive(self):
        cfg = RunConfig(command='hilbert', n=2, cutoff=BiDegree(2, 2), mode='prime', prime=101)
        assert cmd_hilbert(cfg).verdict == Verdict.INCONCLUSIVE

    def test_planted_torsion_fails(self):
        cfg = RunConfig(command='freeness', n=2, cutoff=BiDegree(3, 3), planted_torsion=True)
        envelope = cmd_freeness(cfg)
        assert envelope.verdict == Verdict.FAIL
        assert envelope.body['planted_bidegree'] == '1,1'
        assert envelope.body['kernel_dims']['1@1,1'] == 1

    def test_freeness_passes_for_a1(self):
        envelope = cmd_freeness(RunConfig(command='freeness', n=2, k=1, cutoff=BiDegree(3, 3)))
        assert envelope.verdict == Verdict.PASS
        assert set(envelope.tables) == {'fiber_series', 'hilbert_series'}

    def test_variety_single_stratum(self):
        cfg = RunConfig(command='variety', n=2, samples=2, tuples=3, translates=2, stratum=1)
        envelope = cmd_variety(cfg)
        assert list(envelope.body['strata']) == ['1']
        assert envelope.body['strata']['1']['verified'] == 2
        assert envelope.verdict == Verdict.PASS

    def test_sampler_failure_is_a_violation(self):
        cfg = RunConfig(command='variety', n=2, samples=1, tuples=1, translates=1, stratum=1)
        envelope = cmd_variety(cfg, sampler={'budget': 0})
        assert envelope.body['strata']['1']['sampler_failures']
        assert envelope.verdict == Verdict.FAIL

    def test_prop_ak_needs_positive_k(self):
        with pytest.raises(UsageError):
            run_command(RunConfig(command='prop-ak', k=0))

    def test_unknown_command(self):
        with pytest.raises(UsageError):
            run_command(RunConfig(command='nothing'))


class TestCommandLine:
    """Test cases for exit codes and report output"""

    def test_hilbert_pass(self):
        code, report = run_cli('hilbert', '--n', '2', '--k', '1', '--cutoff-x', '2', '--cutoff-y', '2')
        assert code == 0
        assert report['schema'] == 'alternant-lab/1'
        assert report['body']['table']['1,1'] == 2
        assert report['command_line'][0] == 'run_analysis.py'

    def test_planted_torsion_exit_code(self):
        code, report = run_cli('freeness', '--n', '2', '--planted-torsion')
        assert code == 1
        assert report['verdict'] == 'fail'

    def test_stratum_above_n_is_usage_error(self):
        code, _ = run_cli('variety', '--n', '2', '--stratum', '3')
        assert code == 2

    def test_cost_guard(self):
        assert run_cli('hilbert', '--n', '5')[0] == 2

    def test_bad_argument_exits_with_usage_code(self):
        with pytest.raises(SystemExit) as exc:
            run_cli('hilbert', '--n', 'two')
        assert exc.value.code == 2

    @pytest.mark.parametrize('argv', [
        ('variety', '--n', '2', '--seed', '-1'),
        ('hilbert', '--n', '2', '--mode', 'prime', '--prime', '4'),
    ])
    def test_invalid_value_exits_with_usage_code(self, argv):
        code, _ = run_cli(*argv)
        assert code == 2

    def test_too_few_points_is_inconclusive(self):
        code, report = run_cli('prop-ak', '--n', '2', '--cutoff-x', '2', '--cutoff-y', '2',
                               '--tuples', '3', '--points', '1')
        assert code == 3
        assert report['verdict'] == 'inconclusive'

    def test_csv_output(self):
        code, text = run_cli('hilbert', '--n', '2', '--cutoff-x', '1', '--cutoff-y', '1', '--output', 'csv')
        assert code == 0
        assert text.splitlines()[:3] == ['# hilbert', 'a,0,1', '0,0,1']

    def test_report_dir(self, tmp_path):
        code, _ = run_cli('hilbert', '--n', '1', '--cutoff-x', '1', '--cutoff-y', '1',
                          '--report-dir', str(tmp_path))
        assert code == 0
        assert sorted(os.listdir(tmp_path)) == ['hilbert.csv', 'hilbert.json']


class TestDeterminism:
    """Reports depend only on the arguments, not on the worker count"""

    @pytest.mark.parametrize('argv', [
        ('hilbert', '--n', '3', '--cutoff-x', '2', '--cutoff-y', '2'),
        ('variety', '--n', '2', '--samples', '3', '--tuples', '3', '--translates', '2', '--seed', '5'),
        ('freeness', '--n', '2', '--cutoff-x', '3', '--cutoff-y', '3'),
        ('prop-ak', '--n', '2', '--cutoff-x', '2', '--cutoff-y', '2', '--tuples', '3', '--points', '5'),
    ])
    def test_body_independent_of_workers(self, monkeypatch, argv):
        monkeypatch.setenv('ALTLAB_WORKERS', '1')
        _, single = run_cli(*argv)
        monkeypatch.setenv('ALTLAB_WORKERS', '8')
        _, pooled = run_cli(*argv)
        assert single['body'] == pooled['body']
        assert single['body_sha256'] == pooled['body_sha256']


class TestWorkerSetting:
    """ALTLAB_WORKERS parsing"""

    @pytest.mark.parametrize('raw,expected', [('4', 4), ('many', 1), ('', 1), ('0', 1), ('-3', 1)])
    def test_get_workers(self, monkeypatch, raw, expected):
        monkeypatch.setenv('ALTLAB_WORKERS', raw)
        assert config.get_workers() == expected

    def test_unset_means_one(self, monkeypatch):
        monkeypatch.delenv('ALTLAB_WORKERS', raising=False)
        assert config.get_workers() == 1

    def test_malformed_value_does_not_break_a_run(self, monkeypatch):
        monkeypatch.setenv('ALTLAB_WORKERS', 'many')
        code, _ = run_cli('hilbert', '--n', '1', '--cutoff-x', '1', '--cutoff-y', '1')
        assert code == 0


# Run tests
if __name__ == '__main__':
    pytest.main([__file__, '-v'])
