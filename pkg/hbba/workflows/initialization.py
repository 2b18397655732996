"""Initial configuration setup.

Index
-----
.. currentmodule:: hbba.workflows.initialization
.. autosummary::
    log_config
    report_header

API
---
.. autofunction:: log_config
.. autofunction:: report_header

"""
__all__ = ['log_config', 'report_header']

import logging
import os
from typing import Any, Dict

from ..__version__ import __version__
from ..analysis.hardware import TechConstants
from ..common import DictConfig

# Starting logger
logger = logging.getLogger(__name__)


def log_config(config: DictConfig) -> None:
    """Configure the logging of a command and print the initial configuration.

    ``config.log_file`` sends the messages to a file instead of stderr and
    ``config.verbose`` lowers the level to DEBUG.
    """
    workdir = os.path.abspath('.')
    level = logging.DEBUG if config.verbose else logging.INFO
    logging.basicConfig(filename=config.log_file, level=level,
                        format='%(asctime)s---%(levelname)s\n%(message)s\n',
                        datefmt='[%I:%M:%S]')
    logging.getLogger("noodles").setLevel(logging.WARNING)

    path = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

    logger.info(f"Using hbba version: {__version__} ")
    logger.info(f"hbba path is: {path}")
    logger.info(f"Working directory is: {workdir}")


def report_header(command: str, tc: TechConstants, tech_source: str) -> Dict[str, Any]:
    """Provenance written at the top of every JSON report."""
    return {
        'program': 'hbba',
        'version': __version__,
        'command': command,
        'tech': {
            'source': tech_source,
            'c_d_ps': tc.c_d,
            'c_a_um2': tc.c_a,
            'c_p_uw': tc.c_p
        }
    }
