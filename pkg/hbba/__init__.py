from .__version__ import __version__

from .adder import (
    AdderConfig, BlockSpec, adder_eval, block_eval, block_exhaustive_pmf,
    canonical_string, exhaustive_metrics, montecarlo_metrics, parse_config,
    standard_config)

from .analysis import (
    DyadicPMF, DyadicProb, TechConstants, adder_estimate, block_area_gates,
    block_delay)

from .analysis.error_model import (
    adder_error_pmf, adder_error_rate, adder_metrics, block_error_pmf,
    block_error_rate, carry_aware_error_pmf, metrics_from_pmf, zero_carry_condition)

from .workflows import (
    enumerate_configs, evaluate_point, pareto_front, select_optimal)

__all__ = [
    '__version__', 'AdderConfig', 'BlockSpec', 'DyadicPMF', 'DyadicProb',
    'TechConstants', 'adder_error_pmf', 'adder_error_rate', 'adder_estimate',
    'adder_eval', 'adder_metrics', 'block_area_gates', 'block_delay', 'block_error_pmf',
    'block_error_rate', 'block_eval', 'block_exhaustive_pmf', 'canonical_string',
    'carry_aware_error_pmf', 'enumerate_configs', 'evaluate_point', 'exhaustive_metrics',
    'metrics_from_pmf',
    'montecarlo_metrics', 'pareto_front', 'parse_config', 'select_optimal',
    'standard_config', 'zero_carry_condition']
