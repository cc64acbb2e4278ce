"""
Flask REST API for Alternant Lab
Runs the same checks as the CLI from a JSON configuration body
"""

from flask import Flask, request, jsonify
from flask_cors import CORS
import logging
import sys
import os
import time

# Add parent directory and src to path
ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), '..')
sys.path.append(ROOT)
sys.path.append(os.path.join(ROOT, 'src'))

import config
from src import __version__

from commands import COMMANDS, run_command
from errors import AltLabError, UsageError
from exact_poly import BiDegree
from reports import RunConfig

logger = logging.getLogger(__name__)

# Initialize Flask app
app = Flask(__name__)
CORS(app)

# Fields accepted in a request body, with their defaults
RUN_FIELDS = {
    'n': config.DEFAULT_N,
    'k': config.DEFAULT_K,
    'seed': config.DEFAULT_SEED,
    'samples': config.DEFAULT_SAMPLES,
    'tuples': config.DEFAULT_TUPLES,
    'points': config.DEFAULT_POINTS,
    'translates': config.DEFAULT_TRANSLATES,
    'max_word_len': config.DEFAULT_MAX_WORD_LEN,
    'mode': 'exact',
    'prime': config.DEFAULT_PRIME,
    'force': False,
    'stratum': None,
    'planted_torsion': False,
    'lift_rule': 'canonical'
}


def config_from_json(command, data):
    """
    Build a validated RunConfig from a request body

    Expected JSON format (every field optional):
    {
        "n": 2,
        "k": 1,
        "cutoff": [3, 3],
        "seed": 0,
        "mode": "exact"
    }
    """
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise UsageError('request body must be a JSON object')
    unknown = set(data) - set(RUN_FIELDS) - {'cutoff'}
    if unknown:
        raise UsageError(f'unknown fields: {sorted(unknown)}')
    cutoff = data.get('cutoff', config.DEFAULT_CUTOFF)
    if not isinstance(cutoff, (list, tuple)) or len(cutoff) != 2 or not all(_is_int(c) for c in cutoff):
        raise UsageError('cutoff must be a pair of integers [a, b]')
    values = {name: data.get(name, default) for name, default in RUN_FIELDS.items()}
    for name, default in RUN_FIELDS.items():
        value = values[name]
        if isinstance(default, bool):
            if not isinstance(value, bool):
                raise UsageError(f'{name} must be true or false')
        elif isinstance(default, int) or name == 'stratum':
            if not _is_int(value) and not (name == 'stratum' and value is None):
                raise UsageError(f'{name} must be an integer')
        elif not isinstance(value, str):
            raise UsageError(f'{name} must be a string')
    cfg = RunConfig(command=command, cutoff=BiDegree(cutoff[0], cutoff[1]), **values)
    return cfg.validate(config.COST_GUARD)


def _is_int(value):
    """JSON integers only; true/false are not integers here"""
    return isinstance(value, int) and not isinstance(value, bool)


@app.route('/')
def home():
    """Home endpoint"""
    return jsonify({
        'message': 'Alternant Lab API',
        'version': __version__,
        'endpoints': {
            '/run/<command>': f'POST - Run one of {sorted(COMMANDS)} with a JSON config body',
            '/config': 'GET - Defaults and cost guard',
            '/health': 'GET - Health check'
        }
    })


@app.route('/run/<command>', methods=['POST'])
def run(command):
    """Run a command; the response is the report envelope, HTTP 200 whatever the verdict"""
    try:
        if command not in COMMANDS:
            return jsonify({'error': f'Unknown command: {command}'}), 404
        cfg = config_from_json(command, request.get_json(silent=True))
        start = time.perf_counter()
        envelope = run_command(cfg, config.get_workers(), sampler=config.SAMPLER_CONFIG,
                               planted_shift=config.PLANTED_TORSION_CONFIG['shift'])
        envelope.command_line = ['POST', f'/run/{command}']
        envelope.tool_version = __version__
        envelope.wall_clock_seconds = time.perf_counter() - start
        payload = envelope.to_dict()
        payload['exit_code'] = envelope.exit_code
        return jsonify(payload)

    except UsageError as e:
        return jsonify({'error': str(e)}), 400
    except AltLabError as e:
        logger.exception("run %s failed", command)
        return jsonify({'error': str(e)}), 500


@app.route('/config', methods=['GET'])
def get_config():
    """Defaults, cost guard, sampler and report settings"""
    settings = config.get_config()
    return jsonify({
        'fields': RUN_FIELDS,
        'defaults': settings['defaults'],
        'cost_guard': settings['cost_guard'],
        'sampler': settings['sampler'],
        'report': settings['report']
    })


@app.route('/health', methods=['GET'])
def health_check():
    """Health check endpoint"""
    return jsonify({
        'status': 'healthy',
        'version': __version__,
        'workers': config.get_workers()
    })


if __name__ == '__main__':
    logging.basicConfig(level=config.LOGGING_CONFIG['level'], format=config.LOGGING_CONFIG['format'])
    logger.info("Starting Flask API server on %s:%d", config.API_CONFIG['host'], config.API_CONFIG['port'])
    app.run(host=config.API_CONFIG['host'], port=config.API_CONFIG['port'], debug=config.API_CONFIG['debug'])
