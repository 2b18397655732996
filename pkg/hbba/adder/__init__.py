"""Configurations and bit-exact simulation of HBBA adders."""
from .configuration import (AdderConfig, BlockKind, BlockSpec, canonical_string,
                            config_to_document, parse_config, standard_config)
from .simulator import (BlockOutcome, EmpiricalMetrics, adder_eval, block_eval,
                        block_exhaustive_pmf, empirical_pmf, exhaustive_metrics,
                        montecarlo_metrics)

__all__ = [
    'AdderConfig', 'BlockKind', 'BlockOutcome', 'BlockSpec', 'EmpiricalMetrics',
    'adder_eval', 'block_eval', 'block_exhaustive_pmf', 'canonical_string',
    'config_to_document', 'empirical_pmf', 'exhaustive_metrics', 'montecarlo_metrics',
    'parse_config', 'standard_config']
