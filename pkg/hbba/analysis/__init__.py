"""Exact probabilities and the hardware model.

The error model lives in :mod:`hbba.analysis.error_model`, which depends on the
simulator and is therefore not imported here.
"""
from .dyadic import DyadicPMF, DyadicProb, ErrorPMF
from .hardware import (DEFAULT_TECH, HardwareEstimate, TechConstants, adder_estimate,
                       block_area_gates, block_delay, block_depth)

__all__ = [
    'DEFAULT_TECH', 'DyadicPMF', 'DyadicProb', 'ErrorPMF', 'HardwareEstimate',
    'TechConstants', 'adder_estimate', 'block_area_gates', 'block_delay', 'block_depth']
