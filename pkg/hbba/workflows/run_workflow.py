#!/usr/bin/env python
"""Command line interface of the HBBA toolkit.

Usage:
    hbba analyze --bits 16 --block 4 --config "HBBA{[2,2],[0,2]}" [--out DIR]
    hbba simulate --bits 8 --block 4 --config "HBBA{[2],[0]}" --mode exhaustive
    hbba estimate --bits 16 --block 4 --config "HBBA{[2,2],[0,0]}" [--tech tech.yml]
    hbba explore --bits 8 --block 4 [-i input.yml] [--constraint "med<=10"] [--pareto]
    hbba validate [-i configs.yml] [--samples 10000000] [--seed 0]

Available commands:
    * analyze: exact error PMF and metrics
    * simulate: exhaustive or Monte Carlo error metrics
    * estimate: delay, area, power and energy
    * explore: design space, Pareto front and optimal configuration
    * validate: analytic model against simulation

Every command prints a JSON object on stdout and exits with a nonzero code
on failure (2 invalid input, 3 budget exceeded, 4 infeasible constraints,
5 validation failure, 6 empty design space).

"""

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

from ..adder.configuration import (AdderConfig, canonical_string, config_to_document,
                                   parse_config)
from ..adder.simulator import DEFAULT_MAX_BITS, exhaustive_metrics, montecarlo_metrics
from ..analysis.dyadic import DyadicPMF
from ..analysis.error_model import (adder_error_pmf, adder_error_rate, adder_metrics,
                                    block_summary, carry_aware_error_pmf, metrics_from_pmf,
                                    zero_carry_condition)
from ..analysis.hardware import adder_estimate, block_area_gates, block_depth
from ..common import (EXIT_OK, BudgetError, ConfigError, DictConfig, HBBAError, InfeasibleError,
                      ValidationFailure)
from .explorer import ExplorationSpec, explore, pareto_front, select_optimal
from .initialization import log_config, report_header
from .input_validation import (packaged_file, parse_constraint, process_input,
                               read_adder_config, read_tech_constants)
from .reporting import (ReportRow, analytic_metrics_dict, deviation_percent, dump_json,
                        empirical_metrics_dict, format_dyadic, hardware_dict, pmf_rows,
                        write_design_points_csv, write_json, write_pmf_csv,
                        write_report_csv)

logger = logging.getLogger(__name__)

#: JSON report and exit code of a command
CommandResult = Tuple[Dict[str, Any], int]

#: Monte Carlo samples when none are requested
DEFAULT_SAMPLES = 1_000_000

#: Relative tolerance when comparing against the reference values of a validation list
REFERENCE_TOLERANCE = 1e-6

msg = "hbba <command> [options]"


def create_parser() -> argparse.ArgumentParser:
    """Build the parser with one subcommand per workflow."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--bits', type=int, default=None, help="Width N of the adder")
    common.add_argument('--block', type=int, default=None, help="Block size H")
    common.add_argument('--config', default=None,
                        help="Configuration HBBA{[L...],[S...]}, standard, inline JSON or @file")
    common.add_argument('--out', default=None, help="Directory of the output files")
    common.add_argument('--workers', type=int, default=None, help="Number of worker threads")
    common.add_argument('--tech', default=None, help="Technology constants in YAML format")
    common.add_argument('--log-file', dest='log_file', default=None, help="Write the log to a file")
    common.add_argument('--verbose', action='store_true', help="Log debug messages")

    parser = argparse.ArgumentParser(description=msg)
    subparsers = parser.add_subparsers(dest='command', required=True)

    subparsers.add_parser('analyze', parents=[common], help="Exact error PMF and metrics")

    simulate = subparsers.add_parser('simulate', parents=[common], help="Simulated error metrics")
    simulate.add_argument('--mode', choices=('exhaustive', 'montecarlo'), default='montecarlo')
    simulate.add_argument('--samples', type=int, default=DEFAULT_SAMPLES)
    simulate.add_argument('--seed', type=int, default=0)
    simulate.add_argument('--max-bits', dest='max_bits', type=int, default=DEFAULT_MAX_BITS,
                          help="Largest N simulated exhaustively")

    subparsers.add_parser('estimate', parents=[common], help="Hardware estimation")

    explore_ = subparsers.add_parser('explore', parents=[common], help="Design space exploration")
    explore_.add_argument('-i', default=None, help="Exploration input in YAML format")
    explore_.add_argument('--max-blocks', dest='max_blocks', type=int, default=None,
                          help="Largest number of approximate blocks")
    explore_.add_argument('--constraint', action='append', default=None,
                          help="Accuracy constraint metric<=bound, may be repeated")
    explore_.add_argument('--objective', choices=('delay', 'area', 'power', 'energy'),
                          default=None)
    explore_.add_argument('--axes', default=None, help="Pareto axes, e.g. med,delay")
    explore_.add_argument('--pareto', action='store_true', default=None,
                          help="Write the Pareto front")
    explore_.add_argument('--loa-only', dest='loa_only', action='store_true', default=None,
                          help="Restrict the space to lower-part-OR adders")

    validate = subparsers.add_parser('validate', parents=[common],
                                     help="Compare the analytic model against simulation")
    validate.add_argument('-i', default=None, help="List of configurations in YAML format")
    validate.add_argument('--samples', type=int, default=None)
    validate.add_argument('--seed', type=int, default=None)
    validate.add_argument('--sigmas', type=float, default=4.0,
                          help="Tolerance in Monte Carlo standard errors")
    validate.add_argument('--max-bits', dest='max_bits', type=int, default=DEFAULT_MAX_BITS,
                          help="Largest N also simulated exhaustively")
    return parser


parser = create_parser()


def _out_dir(config: DictConfig) -> Optional[Path]:
    """Create the output directory when one is requested."""
    if config.out is None:
        return None
    path = Path(config.out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _workers(workers: Optional[int]) -> int:
    """Number of workers, one by default."""
    workers = 1 if workers is None else workers
    if workers < 1:
        raise ConfigError(f"--workers must be positive, got {workers}")
    return workers


def _adder(config: DictConfig):
    """Configuration requested on the command line."""
    if config.config is None:
        raise ConfigError("--config is required")
    return read_adder_config(config.config, config.bits, config.block)


def _analytic_pmf(cfg: AdderConfig) -> Tuple[DyadicPMF, bool]:
    """Exact error PMF of ``cfg`` and whether it accounts for the predicted carries.

    Outside the zero-carry condition the blocks are chained through their
    carries; if that enumeration is over budget the closed-form PMF is kept.
    """
    if zero_carry_condition(cfg):
        return adder_error_pmf(cfg), True
    try:
        return carry_aware_error_pmf(cfg), True
    except BudgetError as ex:
        logger.warning(f"{ex}; reporting the closed-form block model of {canonical_string(cfg)}")
        return adder_error_pmf(cfg), False


def cmd_analyze(config: DictConfig) -> CommandResult:
    """Compute the exact error PMF and metrics of a configuration."""
    tc, source = read_tech_constants(config.tech)
    cfg = _adder(config)
    pmf, exact = _analytic_pmf(cfg)
    metrics = metrics_from_pmf(pmf, cfg.N)
    block_model = metrics_from_pmf(adder_error_pmf(cfg), cfg.N)
    union = adder_error_rate(cfg)
    blocks = [{'index': i, 'L': spec.L, 'S': spec.S, 'case': spec.case,
               'er': float(er), 'er_exact': format_dyadic(er),
               'med': float(med), 'med_exact': format_dyadic(med)}
              for i, (spec, er, med) in enumerate(block_summary(cfg.approximate_blocks))]
    report = {
        'header': report_header('analyze', tc, source),
        'config': canonical_string(cfg),
        'document': config_to_document(cfg),
        'metrics': analytic_metrics_dict(metrics),
        'carry_aware': exact,
        'exact_condition': zero_carry_condition(cfg),
        'block_model': analytic_metrics_dict(block_model),
        'error_rate_union': float(union),
        'error_rate_union_exact': format_dyadic(union),
        'blocks': blocks,
        'pmf_size': len(pmf)
    }
    out = _out_dir(config)
    if out is None:
        report['pmf'] = [list(row) for row in pmf_rows(pmf)]
    else:
        write_pmf_csv(pmf, out / 'pmf.csv')
        write_json(report, out / 'metrics.json')
    return report, EXIT_OK


def cmd_simulate(config: DictConfig) -> CommandResult:
    """Measure the error metrics by exhaustive or Monte Carlo simulation."""
    tc, source = read_tech_constants(config.tech)
    cfg = _adder(config)
    workers = _workers(config.workers)
    report = {
        'header': report_header('simulate', tc, source),
        'config': canonical_string(cfg),
        'mode': config.mode
    }  # type: Dict[str, Any]
    if config.mode == 'exhaustive':
        metrics = exhaustive_metrics(cfg, workers, config.max_bits)
    else:
        metrics = montecarlo_metrics(cfg, config.samples, config.seed, workers)
        report['seed'] = config.seed
    report['metrics'] = empirical_metrics_dict(metrics)
    out = _out_dir(config)
    if out is not None:
        write_json(report, out / 'metrics.json')
    return report, EXIT_OK


def cmd_estimate(config: DictConfig) -> CommandResult:
    """Estimate the hardware cost of a configuration."""
    tc, source = read_tech_constants(config.tech)
    cfg = _adder(config)
    blocks = [{'index': i, 'kind': spec.kind.value, 'L': spec.L, 'S': spec.S,
               'gates': block_area_gates(spec), 'depth': block_depth(spec),
               'delay_ps': tc.c_d * block_depth(spec)}
              for i, spec in enumerate(cfg.blocks)]
    report = {
        'header': report_header('estimate', tc, source),
        'config': canonical_string(cfg),
        'hardware': hardware_dict(adder_estimate(cfg, tc)),
        'blocks': blocks
    }
    out = _out_dir(config)
    if out is not None:
        write_json(report, out / 'estimate.json')
    return report, EXIT_OK


def _pick(flag: Any, document: DictConfig, key: str, default: Any = None) -> Any:
    """Command line value, else the input document value, else ``default``."""
    if flag is not None:
        return flag
    value = document.get(key)
    return default if value is None else value


def exploration_input(config: DictConfig) -> Tuple[ExplorationSpec, DictConfig]:
    """Merge the exploration document and the command line flags."""
    document = DictConfig() if config.i is None else process_input(config.i, 'exploration')
    bits = _pick(config.bits, document, 'bits')
    block = _pick(config.block, document, 'block')
    if bits is None or block is None:
        raise ConfigError("--bits and --block are required")
    constraints = config.constraint if config.constraint is not None else document.get(
        'constraints', [])
    axes = config.axes.split(',') if config.axes is not None else document.get('pareto_axes')
    spec = ExplorationSpec(
        N=bits, H=block,
        max_approx_blocks=_pick(config.max_blocks, document, 'max_approx_blocks'),
        constraints=tuple(parse_constraint(c) for c in constraints),
        objective=_pick(config.objective, document, 'objective', 'delay'),
        pareto_axes=None if axes is None else tuple(a.strip() for a in axes),
        loa_only=bool(_pick(config.loa_only, document, 'loa_only', False)))
    options = DictConfig(
        workers=_pick(config.workers, document, 'workers', 1),
        pareto=bool(_pick(config.pareto, document, 'pareto', False)),
        tech=_pick(config.tech, document, 'tech'))
    return spec, options


def _point_dict(point) -> Dict[str, Any]:
    """JSON form of a design point."""
    return {
        'config': point.name,
        'metrics': analytic_metrics_dict(point.metrics),
        'hardware': hardware_dict(point.hardware)
    }


def cmd_explore(config: DictConfig) -> CommandResult:
    """Evaluate the design space, its Pareto front and the optimal configuration."""
    spec, options = exploration_input(config)
    tc, source = read_tech_constants(options.tech)
    workers = _workers(options.workers)
    points = explore(spec, tc, workers)
    front = pareto_front(points, spec.pareto_axes)
    names = {p.name for p in front}
    report = {
        'header': report_header('explore', tc, source),
        'exploration': {
            'bits': spec.N, 'block': spec.H, 'max_approx_blocks': spec.max_approx_blocks,
            'constraints': [str(c) for c in spec.constraints], 'objective': spec.objective,
            'pareto_axes': list(spec.pareto_axes), 'loa_only': spec.loa_only},
        'space_size': len(points),
        'pareto_size': len(front)
    }  # type: Dict[str, Any]
    if options.pareto:
        report['pareto'] = [p.name for p in front]
    code = EXIT_OK
    try:
        optimum = select_optimal(spec, tc, points=points)
        report['optimal'] = _point_dict(optimum)
    except InfeasibleError as ex:
        logger.error(str(ex))
        report['optimal'] = None
        report['infeasible'] = {'message': str(ex), 'constraint': str(ex.constraint)}
        code = ex.exit_code
    out = _out_dir(config)
    if out is not None:
        write_design_points_csv(points, out / 'space.csv', names, spec.constraints)
        if options.pareto:
            write_design_points_csv(front, out / 'pareto.csv', names, spec.constraints)
        if report['optimal'] is not None:
            write_json(report['optimal'], out / 'optimal.json')
    return report, code


def _reference_marker(analytic: float, reference: Optional[float]) -> str:
    """Flag a reference value the analytic model does not reproduce."""
    if reference is None:
        return ''
    if abs(analytic - reference) <= REFERENCE_TOLERANCE * max(1.0, abs(reference)):
        return ''
    return 'deviates-from-reference'


def validation_rows(name: str, analytic: Dict[str, Fraction],
                    carry_aware: Optional[Dict[str, Fraction]], empirical: Dict[str, float],
                    errors: Dict[str, float], exhaustive: Optional[Dict[str, Fraction]],
                    reference: Dict[str, float], exact_condition: bool,
                    sigmas: float) -> Tuple[List[ReportRow], int]:
    """Compare the metrics of one configuration and count the failures.

    ``analytic`` holds the closed-form block model, ``carry_aware`` the exact
    values of any configuration (``None`` when over budget). Simulation is
    checked against the exact values; outside the zero-carry condition the
    closed-form values are only reported.
    """
    rows = []
    failures = 0
    for metric in ('med', 'er'):
        value = analytic[metric]
        exact = carry_aware[metric] if carry_aware is not None else (
            value if exact_condition else None)
        markers = []
        tolerance = sigmas * errors[metric]
        if exact is not None and abs(float(exact) - empirical[metric]) > tolerance:
            markers.append('out-of-tolerance')
        if exact is not None and exhaustive is not None and exhaustive[metric] != exact:
            markers.append('exhaustive-mismatch')
        failures += len(markers)
        if not exact_condition:
            markers.append('outside-exactness-condition')
        ref = reference.get(metric)
        ref_marker = _reference_marker(float(value), ref)
        if ref_marker:
            markers.append(ref_marker)
        rows.append(ReportRow(
            config=name, metric=metric, analytic=float(value),
            analytic_exact=format_dyadic(value),
            carry_aware=None if exact is None else float(exact),
            empirical=empirical[metric], standard_error=errors[metric],
            deviation_percent=deviation_percent(float(value), empirical[metric]),
            exhaustive=None if exhaustive is None else float(exhaustive[metric]),
            reference=None if ref is None else float(ref),
            exact_condition=exact_condition, marker=';'.join(markers)))
    return rows, failures


def _carry_aware_metrics(cfg: AdderConfig) -> Optional[Dict[str, Fraction]]:
    """Exact MED and ER of ``cfg``, ``None`` when the carry enumeration is over budget."""
    try:
        metrics = adder_metrics(cfg)
    except BudgetError as ex:
        logger.warning(f"{ex}; no exact reference for {canonical_string(cfg)}")
        return None
    return {'med': metrics.med, 'er': metrics.error_rate.as_fraction()}


def cmd_validate(config: DictConfig) -> CommandResult:
    """Compare analytic metrics against Monte Carlo and exhaustive simulation."""
    tc, source = read_tech_constants(config.tech)
    path = packaged_file('med_comparison.yml') if config.i is None else config.i
    document = process_input(path, 'validation_list')
    samples = _pick(config.samples, document, 'samples', DEFAULT_SAMPLES)
    seed = _pick(config.seed, document, 'seed', 0)
    workers = _workers(config.workers)
    rows: List[ReportRow] = []
    failures = 0
    for entry in document.configs:
        text, reference = (entry, {}) if isinstance(entry, str) else (
            entry['config'], entry['reference'])
        cfg = parse_config(text, document.bits, document.block)
        metrics = metrics_from_pmf(adder_error_pmf(cfg), cfg.N)
        analytic = {'med': metrics.med, 'er': metrics.error_rate.as_fraction()}
        mc = montecarlo_metrics(cfg, samples, seed, workers)
        exhaustive = None
        if cfg.N <= config.max_bits:
            ex = exhaustive_metrics(cfg, workers, config.max_bits)
            exhaustive = {'med': Fraction(ex.abs_error_sum, ex.sample_count),
                          'er': Fraction(ex.error_count, ex.sample_count)}
        new_rows, n_fail = validation_rows(
            canonical_string(cfg), analytic, _carry_aware_metrics(cfg),
            {'med': mc.med, 'er': mc.error_rate},
            {'med': mc.se_med, 'er': mc.se_er}, exhaustive, reference,
            zero_carry_condition(cfg), config.sigmas)
        rows.extend(new_rows)
        failures += n_fail
    report = {
        'header': report_header('validate', tc, source),
        'bits': document.bits,
        'block': document.block,
        'samples': samples,
        'seed': seed,
        'sigmas': config.sigmas,
        'rows': [row._asdict() for row in rows],
        'failures': failures
    }
    out = _out_dir(config)
    if out is not None:
        write_report_csv(rows, out / 'validation.csv')
    code = EXIT_OK
    if failures:
        logger.error(f"{failures} comparisons deviate beyond {config.sigmas} standard errors")
        code = ValidationFailure.exit_code
    return report, code


dict_commands = {
    'analyze': cmd_analyze,
    'simulate': cmd_simulate,
    'estimate': cmd_estimate,
    'explore': cmd_explore,
    'validate': cmd_validate
}  # type: Dict[str, Callable[[DictConfig], CommandResult]]


def main(argv: Optional[List[str]] = None) -> int:
    """Parse the command line arguments and run the command."""
    args = parser.parse_args(argv)
    config = DictConfig(vars(args))
    log_config(config)

    function = dict_commands[config.command]
    logger.info(f"Running command: {config.command}")
    try:
        report, code = function(config)
    except HBBAError as ex:
        logger.error(f"{type(ex).__name__}: {ex}")
        return ex.exit_code

    sys.stdout.write(dump_json(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
