"""Module containing shared types, exceptions and the YAML loader used across hbba.

Index
-----
.. currentmodule:: hbba.common
.. autosummary::
    DictConfig
    HBBAError
    ConfigError
    BudgetError
    InfeasibleError
    ValidationFailure
    EmptySpaceError
    UniqueSafeLoader

API
---
.. autoclass:: DictConfig
.. autoclass:: HBBAError
.. autoclass:: UniqueSafeLoader

"""

__all__ = ['DictConfig', 'HBBAError', 'ConfigError', 'BudgetError', 'InfeasibleError',
           'ValidationFailure', 'EmptySpaceError', 'UniqueSafeLoader', 'PathLike',
           'EXIT_OK']

import os
from typing import Any, Hashable, Optional, Union

import yaml

#: Anything accepted as a file path
PathLike = Union[str, 'os.PathLike[str]']

#: Exit code of a successful command
EXIT_OK = 0


class DictConfig(dict):
    """Class to extend the Dict class with `.` dot notation."""

    def __getattr__(self, attr):
        """Extract key using dot notation."""
        return self.get(attr)

    def __setattr__(self, key, value):
        """Set value using dot notation."""
        self.__setitem__(key, value)

    def __deepcopy__(self, _):
        """Deepcopy of the configuration."""
        return DictConfig(self.copy())


class HBBAError(Exception):
    """Base class of the errors reported to the command line user."""

    #: Process exit code associated with the error
    exit_code = 1


class ConfigError(HBBAError, ValueError):
    """Invalid adder configuration, grammar violation or invalid input document."""

    exit_code = 2


class BudgetError(HBBAError):
    """An exhaustive enumeration exceeds the configured budget."""

    exit_code = 3


class InfeasibleError(HBBAError):
    """No design point satisfies the accuracy constraints."""

    exit_code = 4

    def __init__(self, msg: str, constraint: Optional[Any] = None):
        """Store the tightest violated constraint next to the message."""
        super().__init__(msg)
        self.constraint = constraint


class ValidationFailure(HBBAError):
    """Analytic and simulated metrics disagree beyond the tolerance."""

    exit_code = 5


class EmptySpaceError(HBBAError):
    """The enumeration of the design space produced no configuration."""

    exit_code = 6


class UniqueSafeLoader(yaml.SafeLoader):
    """A yaml SafeLoader that refuses documents with duplicate keys."""

    def construct_mapping(self, node, deep=False):
        """Construct a mapping checking that every key is unique."""
        keys = set()  # type: set
        for key_node, _ in node.value:
            key: Hashable = self.construct_object(key_node, deep=deep)
            if key in keys:
                raise yaml.constructor.ConstructorError(
                    "while constructing a mapping", node.start_mark,
                    f"found duplicate key {key!r}", key_node.start_mark)
            keys.add(key)
        return super().construct_mapping(node, deep=deep)
