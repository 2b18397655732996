"""Test input validation functionality."""
from fractions import Fraction

import pytest
from assertionlib import assertion

from hbba.adder.configuration import parse_config
from hbba.analysis.hardware import DEFAULT_TECH, TechConstants
from hbba.common import ConfigError
from hbba.workflows.explorer import Constraint
from hbba.workflows.input_validation import (packaged_file, parse_constraint, process_input,
                                             read_adder_config, read_tech_constants)

from .utilsTest import PATH_TEST


def test_exploration_defaults() -> None:
    """Test the keywords completion of an exploration input."""
    d = process_input(PATH_TEST / "input_explore.yml", "exploration")
    assertion.eq(d.bits, 8)
    assertion.eq(d.objective, "area")
    assertion.eq(d.workers, 1)
    assertion.is_(d.loa_only, False)
    assertion.is_(d.pareto_axes, None)
    assertion.len_eq(d.constraints, 2)


def test_validation_list() -> None:
    """Test the reading of a list of configurations."""
    d = process_input(PATH_TEST / "input_validate.yml", "validation_list")
    assertion.eq(d.samples, 20000)
    assertion.eq(d.configs[0], "HBBA{[2],[0]}")
    assertion.eq(d.configs[1]['reference'], {'med': 50.75})

    packaged = process_input(packaged_file('med_comparison.yml'), "validation_list")
    assertion.len_eq(packaged.configs, 7)
    assertion.is_(packaged.samples, None)

    with pytest.raises(ConfigError):
        process_input(PATH_TEST / "input_validate_bad.yml", "validation_list")


def test_tech_constants() -> None:
    """Test the default and user technology constants."""
    tc, source = read_tech_constants()
    assertion.eq(tc, DEFAULT_TECH)
    assertion.eq(source, 'default')

    path = PATH_TEST / "tech_15nm.yml"
    tc, source = read_tech_constants(path)
    assertion.eq(tc, TechConstants(5.0, 0.25, 4.0))
    assertion.eq(source, str(path))

    for name in ("tech_negative.yml", "tech_duplicate.yml", "nonexistent.yml"):
        with pytest.raises(ConfigError):
            read_tech_constants(PATH_TEST / name)


def test_read_adder_config() -> None:
    """Test the accepted forms of a configuration."""
    expected = parse_config("HBBA{[2,2],[0,2]}", 16, 4)
    assertion.eq(read_adder_config("HBBA{[2,2],[0,2]}", 16, 4), expected)
    assertion.eq(read_adder_config(f"@{PATH_TEST / 'adder_16_4.json'}"), expected)
    assertion.eq(read_adder_config(f"@{PATH_TEST / 'adder_16_4.json'}", 16, 4), expected)
    text = '{"n": 16, "h": 4, "l_vec": [2, 2], "s_vec": [0, 2]}'
    assertion.eq(read_adder_config(text), expected)
    assertion.eq(read_adder_config("standard", 16, 4), expected)
    assertion.eq(read_adder_config(" standard ", 8, 4), parse_config("HBBA{[2],[0]}", 8, 4))

    for args in [("HBBA{[2,2],[0,2]}", None, 4), ("standard", 16, None), (text, 8, 4),
                 ('{"n": 16, "h": 4,', None, None),
                 ('{"n": 16, "h": 4, "l_vec": [5], "s_vec": [0]}', None, None),
                 ('{"h": 4}', None, None)]:
        with pytest.raises(ConfigError):
            read_adder_config(*args)


@pytest.mark.parametrize("text, expected", [
    ("med<=10", Constraint('med', Fraction(10))),
    (" er <= 0.8 ", Constraint('er', Fraction(4, 5))),
    ("nmed<=1e-3", Constraint('nmed', Fraction(1, 1000))),
    ("max_ed<=-1", Constraint('max_ed', Fraction(-1))),
    ({'metric': 'MED', 'bound': 6.75}, Constraint('med', Fraction(27, 4))),
])
def test_parse_constraint(text, expected: Constraint) -> None:
    """Test the parsing of accuracy constraints."""
    assertion.eq(parse_constraint(text), expected)


@pytest.mark.parametrize("text", ["delay<=10", "med>=1", "med<=fast",
                                  {'metric': 'area', 'bound': 1}])
def test_invalid_constraint(text) -> None:
    """Test that invalid constraints are rejected."""
    with pytest.raises(ConfigError):
        parse_constraint(text)
