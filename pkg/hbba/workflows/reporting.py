"""CSV and JSON writers of the command line reports.

Exact probabilities and rationals are written as ``numerator/2^exponent`` next
to their float value, floats use ``repr`` so that they round-trip.

Index
-----
.. currentmodule:: hbba.workflows.reporting
.. autosummary::
    ReportRow
    format_dyadic
    write_pmf_csv
    write_design_points_csv
    read_design_points_csv
    write_report_csv
    dump_json

API
---
.. autoclass:: ReportRow
.. autofunction:: format_dyadic
.. autofunction:: write_pmf_csv
.. autofunction:: write_design_points_csv
.. autofunction:: read_design_points_csv
.. autofunction:: write_report_csv
.. autofunction:: dump_json

"""

__all__ = ['ReportRow', 'PMF_COLUMNS', 'DESIGN_POINT_COLUMNS', 'REPORT_COLUMNS',
           'format_dyadic', 'pmf_rows', 'write_pmf_csv', 'analytic_metrics_dict',
           'empirical_metrics_dict', 'hardware_dict', 'design_point_row',
           'write_design_points_csv', 'read_design_points_csv', 'write_report_csv',
           'deviation_percent', 'dump_json', 'write_json']

import csv
import json
import logging
from fractions import Fraction
from typing import (Any, Collection, Dict, Iterable, List, NamedTuple, Optional, Sequence,
                    Tuple, Union)

from ..adder.simulator import EmpiricalMetrics
from ..analysis.dyadic import DyadicPMF, DyadicProb, dyadic_parts
from ..analysis.error_model import AnalyticMetrics, zero_carry_condition
from ..analysis.hardware import HardwareEstimate
from ..common import PathLike
from .explorer import Constraint, DesignPoint, feasible, is_loa_equivalent

# Starting logger
logger = logging.getLogger(__name__)

PMF_COLUMNS = ('error_value', 'prob_num', 'prob_exp2', 'prob_float')

DESIGN_POINT_COLUMNS = ('config', 'med', 'er', 'nmed', 'max_ed', 'delay_ps', 'area_um2',
                        'power_uw', 'energy_aj', 'pareto', 'loa', 'feasible', 'exact_condition')

REPORT_COLUMNS = ('config', 'metric', 'analytic', 'analytic_exact', 'carry_aware', 'empirical',
                  'standard_error', 'deviation_percent', 'exhaustive', 'reference',
                  'exact_condition', 'marker')

#: Smallest denominator of a relative deviation
EPSILON = 1e-12


class ReportRow(NamedTuple):
    """One metric of one configuration compared against simulation and references."""

    config: str
    metric: str
    analytic: float
    analytic_exact: str
    carry_aware: Optional[float] = None
    empirical: Optional[float] = None
    standard_error: Optional[float] = None
    deviation_percent: Optional[float] = None
    exhaustive: Optional[float] = None
    reference: Optional[float] = None
    exact_condition: bool = False
    marker: str = ''


def format_dyadic(value: Union[Fraction, DyadicProb, int]) -> str:
    """Render a rational with power-of-two denominator as ``num/2^exp``."""
    if isinstance(value, DyadicProb):
        num, exp = value.num, value.exp
    else:
        num, exp = dyadic_parts(value)
    return f"{num}/2^{exp}"


def deviation_percent(analytic: float, empirical: float) -> float:
    """Relative deviation ``|analytic - empirical| / max(empirical, eps)`` in percent."""
    return 100 * abs(analytic - empirical) / max(empirical, EPSILON)


def _cell(value: Any) -> str:
    """Render a CSV cell."""
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path: PathLike, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """Write a comma separated file with LF line endings."""
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(x) for x in row])
    logger.info(f"report written to {path}")


# ================> PMF and metrics <================
def pmf_rows(pmf: DyadicPMF) -> List[Tuple[int, int, int, float]]:
    """Rows ``(error_value, prob_num, prob_exp2, prob_float)`` sorted by value."""
    return [(v, p.num, p.exp, float(p)) for v, p in pmf.items()]


def write_pmf_csv(pmf: DyadicPMF, path: PathLike) -> None:
    """Write the PMF of an error value."""
    _write_csv(path, PMF_COLUMNS, pmf_rows(pmf))


def analytic_metrics_dict(metrics: AnalyticMetrics) -> Dict[str, Any]:
    """JSON form of exact metrics."""
    return {
        'er': float(metrics.error_rate),
        'er_exact': format_dyadic(metrics.error_rate),
        'med': float(metrics.med),
        'med_exact': format_dyadic(metrics.med),
        'mse': float(metrics.mse),
        'mse_exact': format_dyadic(metrics.mse),
        'nmed': float(metrics.nmed),
        'ned': float(metrics.ned),
        'max_ed': metrics.max_ed,
        'p_zero_exact': format_dyadic(metrics.p_zero)
    }


def empirical_metrics_dict(metrics: EmpiricalMetrics) -> Dict[str, Any]:
    """JSON form of simulated metrics."""
    d = {
        'samples': metrics.sample_count,
        'error_count': metrics.error_count,
        'er': metrics.error_rate,
        'med': metrics.med,
        'mse': metrics.mse,
        'nmed': metrics.nmed,
        'mred': metrics.mred,
        'max_ed': metrics.max_ed,
        'se_er': metrics.se_er,
        'se_med': metrics.se_med
    }  # type: Dict[str, Any]
    if metrics.histogram is not None:
        d['histogram'] = [[v, c] for v, c in metrics.histogram.items()]
    return d


def hardware_dict(estimate: HardwareEstimate) -> Dict[str, Any]:
    """JSON form of a hardware estimate."""
    return {
        'delay_ps': estimate.delay,
        'area_um2': estimate.area,
        'power_uw': estimate.power,
        'energy_aj': estimate.energy,
        'gate_count': estimate.gate_count,
        'gate_depth': estimate.gate_depth
    }


# ================> Design space <================
def design_point_row(point: DesignPoint, pareto: bool,
                     constraints: Sequence[Constraint] = ()) -> Tuple:
    """Row of the exploration CSV, ``exact_condition`` flags the closed-form regime."""
    return (point.name, point.med, point.er, point.nmed, point.max_ed, point.delay, point.area,
            point.power, point.energy, pareto, is_loa_equivalent(point.cfg),
            feasible(point, constraints), zero_carry_condition(point.cfg))


def write_design_points_csv(points: Sequence[DesignPoint], path: PathLike,
                            pareto: Collection[str] = (),
                            constraints: Sequence[Constraint] = ()) -> None:
    """Write one row per design point; ``pareto`` holds the names on the front."""
    rows = (design_point_row(p, p.name in pareto, constraints) for p in points)
    _write_csv(path, DESIGN_POINT_COLUMNS, rows)


def read_design_points_csv(path: PathLike) -> List[Dict[str, str]]:
    """Read back an exploration CSV as a list of rows."""
    with open(path, 'r', newline='') as f:
        return list(csv.DictReader(f))


# ================> Validation <================
def write_report_csv(rows: Sequence[ReportRow], path: PathLike) -> None:
    """Write the comparison of analytic and simulated metrics."""
    _write_csv(path, REPORT_COLUMNS, rows)


def dump_json(obj: Any) -> str:
    """Serialize a report deterministically."""
    return json.dumps(obj, indent=2, sort_keys=True) + '\n'


def write_json(obj: Any, path: PathLike) -> None:
    """Write a report as a single JSON object."""
    with open(path, 'w', newline='') as f:
        f.write(dump_json(obj))
    logger.info(f"report written to {path}")
