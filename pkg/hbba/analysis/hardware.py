"""Gate-count model of the delay, area, power and energy of HBBA adders.

Index
-----
.. currentmodule:: hbba.analysis.hardware
.. autosummary::
    TechConstants
    HardwareEstimate
    block_depth
    block_delay
    block_area_gates
    adder_estimate

API
---
.. autoclass:: TechConstants
.. autoclass:: HardwareEstimate
.. autofunction:: block_depth
.. autofunction:: block_delay
.. autofunction:: block_area_gates
.. autofunction:: adder_estimate

"""

__all__ = ['TechConstants', 'HardwareEstimate', 'DEFAULT_TECH', 'block_depth', 'block_delay',
           'block_area_gates', 'adder_estimate']

import logging
from typing import NamedTuple

from ..adder.configuration import AdderConfig, BlockSpec
from ..common import ConfigError

# Starting logger
logger = logging.getLogger(__name__)


class TechConstants(NamedTuple):
    """Technology factors: delay per gate level (ps), area per gate (um^2), power (uW)."""

    c_d: float
    c_a: float
    c_p: float

    def check(self) -> 'TechConstants':
        """Raise :exc:`ConfigError` unless every constant is positive."""
        for name, value in self._asdict().items():
            if not value > 0:
                raise ConfigError(f"the technology constant {name} must be positive, got {value}")
        return self


#: 32 nm constants
DEFAULT_TECH = TechConstants(c_d=12.14, c_a=0.70, c_p=9.24)


class HardwareEstimate(NamedTuple):
    """Hardware figures of an adder."""

    delay: float
    area: float
    power: float
    energy: float
    gate_count: int
    gate_depth: int

    @property
    def power_index(self) -> int:
        """Gate count times gate depth, the exact quantity power is proportional to."""
        return self.gate_count * self.gate_depth

    @property
    def energy_index(self) -> int:
        """Exact quantity energy is proportional to."""
        return self.gate_count * self.gate_depth ** 2


def block_depth(spec: BlockSpec) -> int:
    """Gate-level depth of the carry logic of a block (units of gate levels)."""
    H, L, S = spec.H, spec.L, spec.S
    if spec.is_accurate:
        return 2 * (H + 1)
    if S == 0:
        return 0
    if H - S <= L:
        return 2 * (S + 1)
    return 2 * (H - S - L)


def block_delay(spec: BlockSpec, tc: TechConstants = DEFAULT_TECH) -> float:
    """Delay of a block in ps, ``c_d`` times its gate levels."""
    return tc.c_d * block_depth(spec)


def block_area_gates(spec: BlockSpec) -> int:
    """Number of gates of a block.

    Accurate blocks use ``9H`` gates. Approximate blocks add the
    propagate/generate, sum and carry parts of their gate count.
    """
    H, L, S = spec.H, spec.L, spec.S
    if spec.is_accurate:
        return 9 * H
    pg = 4 * H - 3 * L if H - S > L else 4 * S + L
    if S == 0:
        return pg + 3 * (H - L)
    carry = 2 * (S - 1) if H - S <= L else 2 * (H - L - 1)
    return pg + 3 * (H - L) + 2 + carry


def adder_estimate(cfg: AdderConfig, tc: TechConstants = DEFAULT_TECH) -> HardwareEstimate:
    """Estimate delay, area, power and energy of an adder.

    The delay is the sum of the block delays and the area ``c_a`` times the gate
    count. Power is ``c_p`` scaled by gate count times depth relative to the
    exact carry look-ahead adder of the same width, and energy is power times
    delay (uW x ps = aJ).

    """
    gates = sum(block_area_gates(spec) for spec in cfg.blocks)
    depth = sum(block_depth(spec) for spec in cfg.blocks)
    reference = (9 * cfg.N) * (2 * (cfg.H + 1) * cfg.k)
    delay = tc.c_d * depth
    power = tc.c_p * (gates * depth) / reference
    return HardwareEstimate(
        delay=delay, area=tc.c_a * gates, power=power, energy=power * delay,
        gate_count=gates, gate_depth=depth)
