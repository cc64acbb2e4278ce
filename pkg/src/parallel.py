"""
Worker Pool Module
joblib-backed ordered map and per-task seeded generators
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

import numpy as np
from joblib import Parallel, delayed


def parallel_map(func: Callable, arg_tuples: Iterable[Sequence], n_jobs: int = 1) -> list:
    """
    Apply func to each argument tuple, results in input order

    Args:
        func (callable): module-level function (picklable by reference)
        arg_tuples (iterable): positional arguments per call
        n_jobs (int): worker count; 1 runs in-process

    Returns:
        list: results, same order as arg_tuples
    """
    arg_tuples = list(arg_tuples)
    if n_jobs <= 1 or len(arg_tuples) <= 1:
        return [func(*args) for args in arg_tuples]
    return Parallel(n_jobs=n_jobs)(delayed(func)(*args) for args in arg_tuples)


def task_rng(seed: int, *indices: int) -> np.random.Generator:
    """Independent generator for the task at `indices` of a run seeded with `seed`"""
    return np.random.default_rng(np.random.SeedSequence([int(seed), *(int(i) for i in indices)]))
