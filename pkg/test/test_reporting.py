"""Test the CSV and JSON writers."""
import csv
from fractions import Fraction
from pathlib import Path

from assertionlib import assertion

from hbba.adder.configuration import parse_config
from hbba.adder.simulator import exhaustive_metrics
from hbba.analysis.dyadic import DyadicPMF, DyadicProb
from hbba.analysis.error_model import adder_metrics
from hbba.workflows.explorer import Constraint, evaluate_point
from hbba.workflows.reporting import (ReportRow, analytic_metrics_dict, design_point_row,
                                      deviation_percent, dump_json, empirical_metrics_dict,
                                      format_dyadic, read_design_points_csv,
                                      write_design_points_csv, write_pmf_csv, write_report_csv)


def test_format_dyadic():
    """Check the rendering of exact values."""
    assertion.eq(format_dyadic(DyadicProb(83, 7)), "83/2^7")
    assertion.eq(format_dyadic(Fraction(459, 4)), "459/2^2")
    assertion.eq(format_dyadic(0), "0/2^0")
    assertion.eq(format_dyadic(3), "3/2^0")


def test_deviation_percent():
    """Check the relative deviation."""
    assertion.isclose(deviation_percent(11.0, 10.0), 10.0)
    assertion.eq(deviation_percent(0.0, 0.0), 0.0)


def test_metrics_dicts():
    """Check the JSON form of the metrics."""
    cfg = parse_config("HBBA{[2],[0]}", 8, 4)
    d = analytic_metrics_dict(adder_metrics(cfg))
    assertion.eq(d['med'], 6.75)
    assertion.eq(d['er_exact'], "83/2^7")
    assertion.eq(d['p_zero_exact'], "45/2^7")

    d = empirical_metrics_dict(exhaustive_metrics(cfg))
    assertion.eq(d['med'], 6.75)
    assertion.eq(d['histogram'][0], [0, 45 * 512])


def test_pmf_csv(tmp_path: Path):
    """Check the PMF file."""
    path = tmp_path / "pmf.csv"
    write_pmf_csv(DyadicPMF({-1: 1, 0: 2, 3: 1}, 2), path)
    with open(path, 'rb') as f:
        content = f.read()
    assertion.eq(content, b"error_value,prob_num,prob_exp2,prob_float\n"
                          b"-1,1,2,0.25\n0,1,1,0.5\n3,1,2,0.25\n")


def test_design_points_csv(tmp_path: Path):
    """Check the exploration file."""
    points = [evaluate_point(parse_config(text, 8, 4))
              for text in ("HBBA{[],[]}", "HBBA{[4],[0]}", "HBBA{[2],[1]}")]
    path = tmp_path / "space.csv"
    constraints = [Constraint('med', Fraction(2))]
    write_design_points_csv(points, path, {"HBBA{[],[]}"}, constraints)
    rows = read_design_points_csv(path)
    assertion.len_eq(rows, 3)
    assertion.eq(rows[0]['config'], "HBBA{[],[]}")
    assertion.eq(rows[0]['pareto'], 'true')
    assertion.eq(rows[1]['pareto'], 'false')
    assertion.eq([r['loa'] for r in rows], ['true', 'true', 'false'])
    assertion.eq([r['feasible'] for r in rows], ['true', 'false', 'false'])
    assertion.eq([r['exact_condition'] for r in rows], ['true'] * 3)
    assertion.eq(float(rows[2]['med']), points[2].med)

    carried = evaluate_point(parse_config("HBBA{[0,0],[4,4]}", 8, 4))
    assertion.is_(design_point_row(carried, False)[-1], False)


def test_report_csv(tmp_path: Path):
    """Check the validation file."""
    row = ReportRow("HBBA{[2],[0]}", 'med', 6.75, "27/2^2", 6.75, 6.8, 0.01,
                    deviation_percent(6.75, 6.8), None, 6.75, True, '')
    path = tmp_path / "validation.csv"
    write_report_csv([row], path)
    with open(path, 'r', newline='') as f:
        header, values = list(csv.reader(f))
    assertion.eq(values[0], "HBBA{[2],[0]}")
    assertion.eq(values[-2:], ['true', ''])
    assertion.eq(values[header.index('exhaustive')], '')
    assertion.eq(values[header.index('carry_aware')], '6.75')


def test_dump_json():
    """Check that the JSON output is stable."""
    assertion.eq(dump_json({'b': 1, 'a': [1.5]}), '{\n  "a": [\n    1.5\n  ],\n  "b": 1\n}\n')
