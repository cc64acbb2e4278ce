"""
Commands Module
The four checks exposed by the CLI and the API, each turning a RunConfig into a ReportEnvelope
"""

from __future__ import annotations

import logging

from acv_geometry import (equivariance_holds, g_translate, jacobian_rank, jmath_point, krylov_col_dim,
                          krylov_row_dim, random_distinct_rationals, random_invertible, random_nctuple,
                          random_rational, sample_stratum, scaling_weight_holds, stratum_of,
                          vanishing_pattern_holds)
from alternants import count_biexponent_sets, hilbert_table, stability_under_symmetric_y
from det_isotypic import (injectivity_evidence, k0_remark_check, permutation_equivariance_holds,
                          surjectivity_check, twist_check, wedge_identity_check)
from errors import SamplerFailure, UsageError
from exact_poly import BiDegree
from freeness_checker import PlantedTorsionModule, alternant_module, check_freeness
from parallel import parallel_map, task_rng
from reports import ReportEnvelope, RunConfig, Verdict, attach_table, certify, combine, from_bool

logger = logging.getLogger(__name__)

WEDGE_TRIALS = 3
PERMUTATION_TRIALS = 10


def _envelope(cfg: RunConfig, body: dict, verdict: Verdict, tables=None) -> ReportEnvelope:
    body['verdict'] = Verdict(verdict).value
    return ReportEnvelope(command=cfg.command, config=cfg.echo(), body=body, verdict=verdict,
                          tables=tables or {})


def cmd_hilbert(cfg: RunConfig, n_jobs: int = 1) -> ReportEnvelope:
    """
    Tabulate dim (A^k)_(a,b) over the window (k = 0 tabulates the invariant ring).
    For k = 1 the table is compared with the biexponent-set count; for k >= 1
    stability under e_d(y) is checked.
    """
    field = cfg.ground_field
    logger.info("[STEP 1/2] Hilbert table of A^%d for n=%d on window %s...", cfg.k, cfg.n, cfg.cutoff)
    table = hilbert_table(cfg.k, cfg.n, cfg.cutoff, field, n_jobs)

    body = {'n': cfg.n, 'k': cfg.k, 'cutoff': [cfg.cutoff.dx, cfg.cutoff.dy], 'field': field.describe()}
    tables = {}
    attach_table(body, tables, 'hilbert', table, cfg.cutoff)
    body['table'] = {bd.key(): dim for bd, dim in sorted(table.items())}

    verdicts = [Verdict.PASS]
    logger.info("[STEP 2/2] Cross-checks...")
    if cfg.k == 1:
        mismatches = [bd.key() for bd, dim in sorted(table.items()) if dim != count_biexponent_sets(cfg.n, bd)]
        body['oracle_mismatches'] = mismatches
        verdicts.append(from_bool(not mismatches))
    if cfg.k >= 1:
        body['stable_under_symmetric_y'] = stability_under_symmetric_y(cfg.k, cfg.n, cfg.cutoff, field)
        verdicts.append(from_bool(body['stable_under_symmetric_y']))
    return _envelope(cfg, body, certify(combine(verdicts), field), tables)


def cmd_freeness(cfg: RunConfig, n_jobs: int = 1, planted_shift: tuple[int, int] = (0, 1)) -> ReportEnvelope:
    """Regular sequence, Euler identity and free-basis certificate for A^k, or for the planted-torsion module"""
    field = cfg.ground_field
    if cfg.planted_torsion:
        module = PlantedTorsionModule(n=cfg.n, cutoff=cfg.cutoff, field=field, shift=BiDegree(*planted_shift))
        k = 1
    else:
        module = alternant_module(cfg.n, cfg.k, cfg.cutoff, field)
        k = cfg.k
    logger.info("[STEP 1/1] Freeness of %s over the symmetric y-polynomials...", module.label)
    report = check_freeness(cfg.n, k, cfg.cutoff, field, n_jobs, cfg.lift_rule, module)

    body = report.to_json()
    if cfg.planted_torsion:
        body['planted_bidegree'] = module.planted_bidegree.key()
    tables = {}
    attach_table(body, tables, 'fiber_series', report.fiber_series, cfg.cutoff)
    attach_table(body, tables, 'hilbert_series', report.hilbert_series, cfg.cutoff)
    return _envelope(cfg, body, report.verdict, tables)


def _wedge_task(seed: int, index: int, n: int, max_word_len: int) -> dict:
    f = random_nctuple(n, max_word_len, task_rng(seed, n, index))
    return {'tuple': f.to_json(), 'pass': wedge_identity_check(f, WEDGE_TRIALS, seed + index)}


def _permutation_task(seed: int, index: int, n: int) -> bool:
    rng = task_rng(seed, n, index, 1)
    xs = [random_rational(rng, (-9, 9), 3) for _ in range(n)]
    ys = [random_rational(rng, (-9, 9), 3) for _ in range(n)]
    perm = [int(a) for a in rng.permutation(n)]
    return permutation_equivariance_holds(xs, ys, perm)


def cmd_prop_ak(cfg: RunConfig, n_jobs: int = 1) -> ReportEnvelope:
    """
    Restriction along jmath: wedge identity on random word tuples, surjectivity
    and injectivity evidence for k-fold psi-products, and the k = 0 trace statement
    """
    if cfg.k < 1:
        raise UsageError(f"prop-ak needs k >= 1, got {cfg.k}")
    field = cfg.ground_field
    window = BiDegree.window(cfg.cutoff)

    logger.info("[STEP 1/4] Wedge identity on %d random tuples...", cfg.tuples)
    wedge = parallel_map(_wedge_task, [(cfg.seed, t, cfg.n, cfg.max_word_len) for t in range(cfg.tuples)], n_jobs)
    permutations = parallel_map(_permutation_task, [(cfg.seed, t, cfg.n) for t in range(PERMUTATION_TRIALS)],
                                n_jobs)
    wedge_failures = [w['tuple'] for w in wedge if not w['pass']]

    logger.info("[STEP 2/4] Surjectivity at %d bidegrees...", len(window))
    surjectivity = parallel_map(surjectivity_check, [(cfg.k, bd, cfg.n, field) for bd in window], n_jobs)

    logger.info("[STEP 3/4] Injectivity evidence with %d translates per bidegree...", cfg.points)
    injectivity = parallel_map(injectivity_evidence,
                               [(cfg.k, bd, cfg.n, cfg.points, cfg.seed, field) for bd in window], n_jobs)

    logger.info("[STEP 4/4] Trace functions against the invariant ring...")
    k0 = parallel_map(k0_remark_check, [(bd, cfg.n, None, field) for bd in window], n_jobs)

    body = {
        'n': cfg.n,
        'k': cfg.k,
        'cutoff': [cfg.cutoff.dx, cfg.cutoff.dy],
        'field': field.describe(),
        'wedge_identity': {'tuples': len(wedge), 'failures': wedge_failures},
        'permutation_equivariance': all(permutations),
        'surjectivity': surjectivity,
        'injectivity': injectivity,
        'k0_remark': k0
    }
    verdicts = [
        from_bool(not wedge_failures and all(permutations)),
        certify(from_bool(all(s['pass'] for s in surjectivity)), field),
        certify(combine(Verdict(i['verdict']) for i in injectivity), field),
        certify(from_bool(all(c['pass'] for c in k0)), field)
    ]
    return _envelope(cfg, body, combine(verdicts))


def _variety_task(n: int, r: int, seed: int, index: int, tuples: int, translates: int, max_word_len: int,
                  sampler: dict) -> dict:
    """Every pointwise check on one sampled point of M'_r"""
    try:
        point = sample_stratum(n, r, [seed, index], **sampler)
    except SamplerFailure as exc:
        return {'sampler_failure': str(exc)}
    rng = task_rng(seed, n, r, index)
    words = [random_nctuple(n, max_word_len, rng) for _ in range(tuples)]
    gs = [random_invertible(n, rng) for _ in range(translates)]
    z = random_rational(rng, (-5, 5), 3, nonzero=True)
    twists = True
    if words and gs:
        pair = words[:2]
        twists = all(twist_check(point, pair, g, phi_count) for g in gs for phi_count in range(len(pair) + 1))
    return {
        'krylov': [krylov_col_dim(point), krylov_row_dim(point)],
        'jacobian_rank': jacobian_rank(point),
        'vanishing': all(vanishing_pattern_holds(point, r, f) for f in words),
        'equivariance': all(equivariance_holds(point, g, words[t % len(words)]) for t, g in enumerate(gs))
        if words else True,
        'scaling': all(scaling_weight_holds(point, f, z) for f in words),
        'twist': twists
    }


def _density_task(n: int, seed: int, index: int) -> bool:
    """g . jmath(x, y) with distinct y lands in M'_0"""
    rng = task_rng(seed, n, index, 2)
    xs = [random_rational(rng, (-9, 9), 3) for _ in range(n)]
    ys = random_distinct_rationals(n, rng, (-9, 9), 3)
    return stratum_of(g_translate(jmath_point(xs, ys), random_invertible(n, rng))) == 0


def cmd_variety(cfg: RunConfig, n_jobs: int = 1, sampler: dict | None = None) -> ReportEnvelope:
    """Sample every stratum M'_r (or only --stratum) and check the pointwise properties exactly"""
    sampler = dict(sampler or {})
    strata = [cfg.stratum] if cfg.stratum is not None else list(range(cfg.n + 1))
    body = {'n': cfg.n, 'samples': cfg.samples, 'strata': {}}
    verdicts = []
    for step, r in enumerate(strata, 1):
        logger.info("[STEP %d/%d] Stratum r=%d: %d samples...", step, len(strata) + 1, r, cfg.samples)
        results = parallel_map(_variety_task,
                               [(cfg.n, r, cfg.seed, s, cfg.tuples, cfg.translates, cfg.max_word_len, sampler)
                                for s in range(cfg.samples)], n_jobs)
        sampled = [res for res in results if 'sampler_failure' not in res]
        summary = {
            'verified': len(sampled),
            'sampler_failures': [res['sampler_failure'] for res in results if 'sampler_failure' in res],
            'full_jacobian_rank': sum(res['jacobian_rank'] == cfg.n * cfg.n for res in sampled),
            'krylov_ok': all(res['krylov'] == [cfg.n - r, r] for res in sampled),
            'vanishing_ok': all(res['vanishing'] for res in sampled),
            'equivariance_ok': all(res['equivariance'] for res in sampled),
            'scaling_ok': all(res['scaling'] for res in sampled),
            'twist_ok': all(res['twist'] for res in sampled)
        }
        ok = (not summary['sampler_failures'] and summary['full_jacobian_rank'] == len(sampled)
              and all(summary[key] for key in ('krylov_ok', 'vanishing_ok', 'equivariance_ok',
                                               'scaling_ok', 'twist_ok')))
        summary['verdict'] = from_bool(ok).value
        body['strata'][str(r)] = summary
        verdicts.append(from_bool(ok))

    logger.info("[STEP %d/%d] Translates of diagonal points...", len(strata) + 1, len(strata) + 1)
    density = parallel_map(_density_task, [(cfg.n, cfg.seed, s) for s in range(cfg.samples)], n_jobs)
    body['translates_in_open_stratum'] = all(density)
    verdicts.append(from_bool(all(density)))
    return _envelope(cfg, body, combine(verdicts))


COMMANDS = {
    'hilbert': cmd_hilbert,
    'freeness': cmd_freeness,
    'prop-ak': cmd_prop_ak,
    'variety': cmd_variety
}


def run_command(cfg: RunConfig, n_jobs: int = 1, sampler: dict | None = None,
                planted_shift: tuple[int, int] = (0, 1)) -> ReportEnvelope:
    """Dispatch a validated RunConfig to its command"""
    if cfg.command not in COMMANDS:
        raise UsageError(f"unknown command '{cfg.command}', expected one of {sorted(COMMANDS)}")
    if cfg.command == 'variety':
        return cmd_variety(cfg, n_jobs, sampler)
    if cfg.command == 'freeness':
        return cmd_freeness(cfg, n_jobs, planted_shift)
    return COMMANDS[cfg.command](cfg, n_jobs)
