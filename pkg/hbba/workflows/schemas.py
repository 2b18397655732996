"""Schemas to validate user input.

Index
-----
.. currentmodule:: hbba.workflows.schemas
.. autosummary::
    schema_tech_constants
    schema_adder_config
    schema_exploration
    schema_validation_list

API
---
.. autodata:: schema_tech_constants
.. autodata:: schema_adder_config
.. autodata:: schema_exploration
.. autodata:: schema_validation_list

"""
__all__ = [
    'schema_tech_constants',
    'schema_adder_config',
    'schema_exploration',
    'schema_validation_list']

from numbers import Real
from typing import Iterable

from schema import And, Optional, Or, Regex, Schema, Use

#: Pattern of a constraint written as ``metric<=bound``
CONSTRAINT_PATTERN = r'^\s*(med|er|max_ed|nmed)\s*<=\s*-?[0-9.eE+-]+\s*$'


def any_lambda(array: Iterable[str]) -> And:
    """Create an schema checking that the keyword matches one of the expected values."""
    return And(
        str, Use(str.lower), lambda s: s in array)


def positive(x: Real) -> bool:
    """Check that a number is strictly positive."""
    return x > 0


def is_number(x) -> bool:
    """Check for an int or float excluding booleans."""
    return isinstance(x, Real) and not isinstance(x, bool)


#: Schema to validate the technology constants
schema_tech_constants = Schema({
    # Delay per two gate levels in ps
    Optional("c_d_ps", default=12.14): And(is_number, positive),

    # Area per gate in um^2
    Optional("c_a_um2", default=0.70): And(is_number, positive),

    # Power factor in uW
    Optional("c_p_uw", default=9.24): And(is_number, positive),
})

#: Schema to validate the structured form of an adder configuration
schema_adder_config = Schema({
    # Width of the adder
    "n": And(int, positive),

    # Size of every block
    "h": And(int, positive),

    # OR widths, least-significant approximate block first
    Optional("l_vec", default=[]): [int],

    # Carry-chain lengths, least-significant approximate block first
    Optional("s_vec", default=[]): [int]
})

#: Schema for a constraint given as a mapping
schema_constraint = Schema({
    "metric": any_lambda(("med", "er", "max_ed", "nmed")),
    "bound": Or(is_number, str)
})

#: Schema to validate the input of the design space exploration
schema_exploration = Schema({
    # Width of the adder
    "bits": And(int, positive),

    # Size of every block
    "block": And(int, positive),

    # Largest number of approximate blocks, all of them by default
    Optional("max_approx_blocks", default=None): Or(None, And(int, lambda n: n >= 0)),

    # Accuracy constraints
    Optional("constraints", default=[]): [Or(Regex(CONSTRAINT_PATTERN), schema_constraint)],

    # Hardware metric to minimize
    Optional("objective", default="delay"): any_lambda(("delay", "area", "power", "energy")),

    # Axes of the Pareto front
    Optional("pareto_axes", default=None): Or(None, And(list, lambda xs: len(xs) == 2)),

    # Restrict the space to lower-part-OR adders
    Optional("loa_only", default=False): bool,

    # Compute the Pareto front
    Optional("pareto", default=False): bool,

    # Number of worker threads
    Optional("workers", default=1): And(int, positive),

    # Technology constants file
    Optional("tech", default=None): Or(None, str)
})

#: Schema of a configuration in the validation list
schema_validation_entry = Schema(Or(
    str,
    {
        "config": str,
        Optional("reference", default={}): {Optional(str): is_number}
    }))

#: Schema to validate the list of configurations compared by ``validate``
schema_validation_list = Schema({
    # Width of the adders
    "bits": And(int, positive),

    # Size of the blocks
    "block": And(int, positive),

    # Configurations and their optional reference values
    "configs": [schema_validation_entry],

    # Monte Carlo samples
    Optional("samples", default=None): Or(None, And(int, positive)),

    # Seed of the random stream
    Optional("seed", default=None): Or(None, And(int, lambda n: n >= 0))
})
