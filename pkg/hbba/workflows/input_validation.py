"""Functionality to check that the input provided by the user is valid.

Index
-----
.. currentmodule:: hbba.workflows.input_validation
.. autosummary::
    process_input
    read_tech_constants
    read_adder_config
    config_from_document
    parse_constraint

API
---
.. autofunction:: process_input
.. autofunction:: read_tech_constants
.. autofunction:: read_adder_config
.. autofunction:: config_from_document
.. autofunction:: parse_constraint

"""

__all__ = ['process_input', 'read_tech_constants', 'read_adder_config',
           'config_from_document', 'parse_constraint', 'packaged_file']

import logging
import re
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import yaml
from schema import Schema, SchemaError

from ..adder.configuration import AdderConfig, parse_config, standard_config
from ..analysis.hardware import TechConstants
from ..common import ConfigError, DictConfig, PathLike, UniqueSafeLoader
from .explorer import Constraint
from .schemas import (schema_adder_config, schema_constraint, schema_exploration,
                      schema_tech_constants, schema_validation_list)

# Starting logger
logger = logging.getLogger(__name__)


schema_documents = {
    'tech_constants': schema_tech_constants,
    'adder_config': schema_adder_config,
    'exploration': schema_exploration,
    'validation_list': schema_validation_list
}

_CONSTRAINT = re.compile(r'^\s*([a-z_]+)\s*<=\s*(\S+)\s*$')

#: Keyword naming the benchmark configuration
STANDARD_CONFIG = "standard"


def packaged_file(name: str) -> Path:
    """Path to a data file shipped with the package."""
    return Path(str(resources.files('hbba') / 'data' / name))


def _load_yaml(input_file: PathLike) -> Any:
    """Read a YAML (or JSON) document rejecting duplicate keys."""
    try:
        with open(input_file, 'r') as f:
            return yaml.load(f.read(), Loader=UniqueSafeLoader)
    except OSError as ex:
        raise ConfigError(f"cannot read {input_file}: {ex}") from ex
    except yaml.YAMLError as ex:
        raise ConfigError(f"{input_file} is not a valid YAML document:\n{ex}") from ex


def _validate(schema: Schema, document: Any, origin: str) -> Dict[str, Any]:
    """Validate ``document`` wrapping schema errors into :exc:`ConfigError`."""
    try:
        return schema.validate(document)
    except SchemaError as ex:
        msg = f"There was an error in the input provided by {origin}:\n{ex}"
        logger.error(msg)
        raise ConfigError(msg) from ex


def process_input(input_file: PathLike, document_name: str) -> DictConfig:
    """Read the `input_file` in YAML format and validate it.

    Parameters
    ----------
    input_file
        path to the input
    document_name
        kind of document, one of ``tech_constants``, ``adder_config``,
        ``exploration`` or ``validation_list``

    Returns
    -------
    DictConfig
        The validated input with the defaults filled in

    Raises
    ------
    ConfigError
        If the input is not valid

    """
    schema = schema_documents[document_name]
    document = _load_yaml(input_file)
    return DictConfig(_validate(schema, document, str(input_file)))


def read_tech_constants(path: Optional[PathLike] = None) -> Tuple[TechConstants, str]:
    """Read the technology constants, the packaged 32 nm values by default.

    Returns
    -------
    tuple
        The constants and the source they come from (``default`` or the path)

    """
    if path is None:
        source = 'default'
        d = process_input(packaged_file('tech_32nm.yml'), 'tech_constants')
    else:
        source = str(path)
        d = process_input(path, 'tech_constants')
    tc = TechConstants(float(d.c_d_ps), float(d.c_a_um2), float(d.c_p_uw)).check()
    logger.info(f"technology constants from {source}: {tc}")
    return tc, source


def config_from_document(document: Dict[str, Any]) -> AdderConfig:
    """Build a configuration from its structured form ``{n, h, l_vec, s_vec}``."""
    d = _validate(schema_adder_config, document, "the configuration document")
    return AdderConfig.from_vectors(d['n'], d['h'], d['l_vec'], d['s_vec'])


def read_adder_config(text: str, bits: Optional[int] = None,
                      block: Optional[int] = None) -> AdderConfig:
    """Read a configuration given in any of its accepted forms.

    * ``HBBA{[...],[...]}`` with ``bits`` and ``block``,
    * inline JSON ``{"n": 16, "h": 4, "l_vec": [...], "s_vec": [...]}``,
    * ``@path`` to a JSON/YAML file holding the structured form,
    * ``standard`` for the benchmark configuration of ``bits``/``block``.

    Raises
    ------
    ConfigError
        If the configuration is invalid or disagrees with ``bits``/``block``.

    """
    text = text.strip()
    if text.startswith('@'):
        cfg = config_from_document(_load_yaml(text[1:]))
    elif text.startswith('{'):
        try:
            document = yaml.load(text, Loader=UniqueSafeLoader)
        except yaml.YAMLError as ex:
            raise ConfigError(f"invalid configuration document {text!r}:\n{ex}") from ex
        cfg = config_from_document(document)
    else:
        if bits is None or block is None:
            raise ConfigError("--bits and --block are required with the HBBA{...} notation")
        if text == STANDARD_CONFIG:
            return standard_config(bits, block)
        return parse_config(text, bits, block)
    if (bits is not None and bits != cfg.N) or (block is not None and block != cfg.H):
        raise ConfigError(
            f"the configuration document has n={cfg.N}, h={cfg.H} but "
            f"--bits {bits} --block {block} were requested")
    return cfg


def _exact_bound(bound: Union[int, float, str]) -> Fraction:
    """Convert a bound to an exact rational, decimal text is taken literally."""
    try:
        return Fraction(str(bound))
    except (ValueError, ZeroDivisionError) as ex:
        raise ConfigError(f"invalid constraint bound {bound!r}") from ex


def parse_constraint(constraint: Union[str, Dict[str, Any]]) -> Constraint:
    """Parse ``metric<=bound`` (or ``{metric, bound}``) into a :class:`Constraint`."""
    if isinstance(constraint, dict):
        d = _validate(schema_constraint, constraint, "the constraint")
        return Constraint(d['metric'], _exact_bound(d['bound']))
    match = _CONSTRAINT.match(constraint)
    if match is None:
        raise ConfigError(f"invalid constraint {constraint!r}, expected metric<=bound")
    metric, bound = match.groups()
    if metric not in ('med', 'er', 'max_ed', 'nmed'):
        raise ConfigError(f"unknown constraint metric {metric!r}")
    return Constraint(metric, _exact_bound(bound))
