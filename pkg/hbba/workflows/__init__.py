"""Design space exploration, input validation, reports and the command line."""
from .explorer import (DesignPoint, ExplorationSpec, enumerate_configs, evaluate_point,
                       explore, pareto_front, select_optimal)

__all__ = ['DesignPoint', 'ExplorationSpec', 'enumerate_configs', 'evaluate_point',
           'explore', 'pareto_front', 'select_optimal']
