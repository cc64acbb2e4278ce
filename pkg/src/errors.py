"""
Error types shared by the analysis modules
"""


class AltLabError(Exception):
    """Base class for every error raised by the package"""


class UsageError(AltLabError, ValueError):
    """Bad arguments: mismatched sizes, cost guard, off-variety input, singular matrices"""


class SamplerFailure(AltLabError):
    """A stratum sampler exhausted its resampling budget"""
