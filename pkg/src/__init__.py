"""
Alternant Lab Package
Exact computations with diagonal alternants and the almost commuting variety
"""

__version__ = "1.0.0"
__author__ = "Alternant Lab Team"
