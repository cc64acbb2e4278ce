"""
Configuration file for Alternant Lab
Centralized configuration management
"""

import logging
import os

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

# Base directory
BASE_DIR = os.path.dirname(os.path.abspath(__file__))

# Environment overrides (.env in the project root, then the process environment)
load_dotenv(os.path.join(BASE_DIR, '.env'))

# Report paths
REPORT_DIR = os.path.join(BASE_DIR, 'reports')

# Run defaults
DEFAULT_N = 2
DEFAULT_K = 1
DEFAULT_CUTOFF = (3, 3)
DEFAULT_SEED = 0
DEFAULT_SAMPLES = 20
DEFAULT_TUPLES = 100
DEFAULT_POINTS = 50
DEFAULT_TRANSLATES = 20
DEFAULT_MAX_WORD_LEN = 3
DEFAULT_PRIME = 2147483647

# Cost guards (overridable with --force)
COST_GUARD = {
    'max_n': 4,
    'max_n_for_k_ge_2': 3,
    'max_window_cells': 49
}

# Stratum sampler configuration
SAMPLER_CONFIG = {
    'budget': 100,
    'eigenvalue_window': (-9, 9),
    'entry_window': (-5, 5),
    'max_denominator': 3
}

# Negative-control fixture for the freeness checker
PLANTED_TORSION_CONFIG = {
    'shift': (0, 1)
}

# Report configuration
REPORT_CONFIG = {
    'indent': 2
}


def _env_int(name, default, minimum=None):
    """Integer environment override; malformed values fall back to the default"""
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning("Ignoring %s=%r: not an integer, using %d", name, raw, default)
        return default
    return value if minimum is None else max(minimum, value)


# Worker pool
def get_workers():
    """Pool size from ALTLAB_WORKERS, read at call time"""
    return _env_int('ALTLAB_WORKERS', 1, minimum=1)


WORKERS = get_workers()

# API configuration
API_CONFIG = {
    'host': os.environ.get('ALTLAB_API_HOST', '127.0.0.1'),
    'port': _env_int('ALTLAB_API_PORT', 5000),
    'debug': False
}

# Logging configuration
LOGGING_CONFIG = {
    'level': os.environ.get('ALTLAB_LOG_LEVEL', 'INFO'),
    'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
}


def get_config():
    """
    Get complete configuration dictionary

    Returns:
        dict: Complete configuration
    """
    return {
        'base_dir': BASE_DIR,
        'reports': REPORT_DIR,
        'defaults': {
            'n': DEFAULT_N,
            'k': DEFAULT_K,
            'cutoff': DEFAULT_CUTOFF,
            'seed': DEFAULT_SEED,
            'samples': DEFAULT_SAMPLES,
            'tuples': DEFAULT_TUPLES,
            'points': DEFAULT_POINTS,
            'translates': DEFAULT_TRANSLATES,
            'max_word_len': DEFAULT_MAX_WORD_LEN,
            'prime': DEFAULT_PRIME
        },
        'cost_guard': COST_GUARD,
        'sampler': SAMPLER_CONFIG,
        'planted_torsion': PLANTED_TORSION_CONFIG,
        'report': REPORT_CONFIG,
        'workers': WORKERS,
        'api': API_CONFIG,
        'logging': LOGGING_CONFIG
    }


if __name__ == '__main__':
    import pprint
    config = get_config()
    print("Current Configuration:")
    pprint.pprint(config)
