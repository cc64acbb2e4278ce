"""
Main script: command-line front end for the alternant lab checks
stdout carries the report, stderr carries progress
"""

import argparse
import logging
import os
import sys
import time

# Add src to path
sys.path.append(os.path.join(os.path.dirname(os.path.abspath(__file__)), 'src'))

import config
from src import __version__

from commands import run_command
from errors import UsageError
from exact_poly import BiDegree
from reports import USAGE_EXIT_CODE, RunConfig, frame_csv, write_report

logger = logging.getLogger('alternant_lab')


def setup_logging(level=None):
    """Configure logging onto stderr once"""
    logging.basicConfig(
        level=getattr(logging, (level or config.LOGGING_CONFIG['level']).upper(), logging.INFO),
        format=config.LOGGING_CONFIG['format'],
        stream=sys.stderr,
        force=True
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog='run_analysis.py',
        description='Exact checks on alternating polynomials and the almost-commuting variety'
    )
    parser.add_argument('--version', action='version', version=f'alternant-lab {__version__}')
    subparsers = parser.add_subparsers(dest='command', required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--n', type=int, default=config.DEFAULT_N, help='number of variable pairs / matrix size')
    common.add_argument('--k', type=int, default=config.DEFAULT_K, help='power of A')
    common.add_argument('--cutoff-x', type=int, default=config.DEFAULT_CUTOFF[0], help='x-degree cutoff')
    common.add_argument('--cutoff-y', type=int, default=config.DEFAULT_CUTOFF[1], help='y-degree cutoff')
    common.add_argument('--seed', type=int, default=config.DEFAULT_SEED)
    common.add_argument('--samples', type=int, default=config.DEFAULT_SAMPLES, help='samples per stratum')
    common.add_argument('--mode', default='exact', help="'exact' or 'prime' (verdicts become inconclusive)")
    common.add_argument('--prime', type=int, default=config.DEFAULT_PRIME)
    common.add_argument('--output', choices=['json', 'csv'], default='json')
    common.add_argument('--force', action='store_true', help='override the cost guard')
    common.add_argument('--report-dir', nargs='?', const=config.REPORT_DIR, default=None,
                        help='also write <command>.json and CSV tables here (default: reports/)')
    common.add_argument('--log-level', default=None)

    subparsers.add_parser('hilbert', parents=[common], help='bigraded dimensions of A^k (k=0: invariants)')

    freeness = subparsers.add_parser('freeness', parents=[common], help='freeness of A^k over C[y]^{S_n}')
    freeness.add_argument('--planted-torsion', action='store_true', help='run the non-free negative control')
    freeness.add_argument('--lift-rule', choices=['canonical', 'reverse'], default='canonical')

    prop_ak = subparsers.add_parser('prop-ak', parents=[common], help='restriction of det-twisted functions')
    prop_ak.add_argument('--tuples', type=int, default=config.DEFAULT_TUPLES)
    prop_ak.add_argument('--points', type=int, default=config.DEFAULT_POINTS)
    prop_ak.add_argument('--max-word-len', type=int, default=config.DEFAULT_MAX_WORD_LEN)

    variety = subparsers.add_parser('variety', parents=[common], help='sampled checks on the strata of M')
    variety.add_argument('--stratum', type=int, default=None)
    variety.add_argument('--tuples', type=int, default=config.DEFAULT_TUPLES)
    variety.add_argument('--translates', type=int, default=config.DEFAULT_TRANSLATES)
    variety.add_argument('--max-word-len', type=int, default=config.DEFAULT_MAX_WORD_LEN)
    return parser


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        n=args.n,
        k=args.k,
        cutoff=BiDegree(args.cutoff_x, args.cutoff_y),
        seed=args.seed,
        samples=args.samples,
        tuples=getattr(args, 'tuples', config.DEFAULT_TUPLES),
        points=getattr(args, 'points', config.DEFAULT_POINTS),
        translates=getattr(args, 'translates', config.DEFAULT_TRANSLATES),
        max_word_len=getattr(args, 'max_word_len', config.DEFAULT_MAX_WORD_LEN),
        mode=args.mode,
        prime=args.prime,
        output=args.output,
        force=args.force,
        stratum=getattr(args, 'stratum', None),
        planted_torsion=getattr(args, 'planted_torsion', False),
        lift_rule=getattr(args, 'lift_rule', 'canonical')
    )
    return cfg.validate(config.COST_GUARD)


def run(argv=None, stdout=None):
    """
    Parse arguments, run one command, print its report

    Args:
        argv (list): arguments without the program name (sys.argv[1:] by default)
        stdout (file): report destination (sys.stdout by default)

    Returns:
        int: exit code (0 pass, 1 violation, 2 usage error, 3 inconclusive)
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)

    try:
        cfg = config_from_args(args)
        n_jobs = config.get_workers()
        logger.info("Running %s with %d worker(s)", cfg.command, n_jobs)
        start = time.perf_counter()
        envelope = run_command(cfg, n_jobs, sampler=config.SAMPLER_CONFIG,
                               planted_shift=config.PLANTED_TORSION_CONFIG['shift'])
    except UsageError as e:
        logger.error("Usage error: %s", e)
        return USAGE_EXIT_CODE

    envelope.command_line = ['run_analysis.py'] + argv
    envelope.tool_version = __version__
    envelope.wall_clock_seconds = time.perf_counter() - start

    if cfg.output == 'csv' and envelope.tables:
        for name, frame in envelope.tables.items():
            stdout.write(f'# {name}\n')
            stdout.write(frame_csv(frame))
    else:
        if cfg.output == 'csv':
            logger.warning("%s emits no tables; writing JSON instead", cfg.command)
        stdout.write(envelope.to_json(config.REPORT_CONFIG['indent']) + '\n')

    if args.report_dir:
        for path in write_report(envelope, args.report_dir):
            logger.info("Wrote %s", path)

    logger.info("%s finished: %s (exit %d)", cfg.command, envelope.verdict.value, envelope.exit_code)
    return envelope.exit_code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
