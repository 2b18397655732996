"""Test the gate-count hardware model."""
import pytest
from assertionlib import assertion

from hbba.adder.configuration import AdderConfig, BlockSpec, parse_config
from hbba.analysis.hardware import (DEFAULT_TECH, TechConstants, adder_estimate, block_area_gates,
                                    block_delay, block_depth)
from hbba.common import ConfigError

from .utilsTest import all_block_specs


def test_accurate_block():
    """Check the carry look-ahead block."""
    spec = BlockSpec.accurate(4)
    assertion.eq(block_depth(spec), 10)
    assertion.isclose(block_delay(spec), 121.4)
    assertion.eq(block_area_gates(spec), 36)


@pytest.mark.parametrize("L, S, depth, gates", [
    (2, 0, 0, 16),
    (2, 1, 2, 20),
    (2, 2, 6, 20),
    (4, 0, 0, 4),
    (1, 3, 8, 28),
])
def test_approximate_blocks(L: int, S: int, depth: int, gates: int):
    """Check the depth and gate count of 4-bit approximate blocks."""
    spec = BlockSpec.approximate(4, L, S)
    assertion.eq(block_depth(spec), depth)
    assertion.eq(block_area_gates(spec), gates)
    assertion.isclose(block_delay(spec), 12.14 * depth)


def test_approximate_cheaper_than_accurate():
    """Check that no approximate block is slower or larger than the accurate one."""
    for H in (2, 4, 8):
        accurate = BlockSpec.accurate(H)
        for spec in all_block_specs(H):
            assertion.le(block_depth(spec), block_depth(accurate))
            assertion.le(block_area_gates(spec), block_area_gates(accurate))
            assertion.ge(block_area_gates(spec), 0)


@pytest.mark.parametrize("H", [2, 4, 8])
def test_full_chain_block_is_accurate(H: int):
    """Check that an approximate block without OR bits and a full chain costs the accurate one."""
    spec = BlockSpec.approximate(H, 0, H)
    accurate = BlockSpec.accurate(H)
    assertion.eq(block_area_gates(spec), 9 * H)
    assertion.eq(block_depth(spec), 2 * (H + 1))
    assertion.eq(block_delay(spec), block_delay(accurate))


@pytest.mark.parametrize("H", [2, 4, 8])
def test_or_block_is_cheapest(H: int):
    """Check that the all-OR block has no carry delay and the smallest area."""
    or_block = BlockSpec.approximate(H, H, 0)
    assertion.eq(block_delay(or_block), 0)
    assertion.eq(block_area_gates(or_block), H)
    for spec in all_block_specs(H):
        if spec != or_block:
            assertion.gt(block_area_gates(spec), block_area_gates(or_block))


@pytest.mark.parametrize("H", [2, 4, 8])
def test_delay_monotone_in_chain_length(H: int):
    """Check the delay trend in S on both sides of ``H - S = L``."""
    for L in range(H + 1):
        # H - S <= L: depth 2(S + 1)
        long_chains = [block_delay(BlockSpec.approximate(H, L, S))
                       for S in range(max(1, H - L), H + 1)]
        assertion.eq(long_chains, sorted(set(long_chains)))
        # H - S > L: depth 2(H - S - L)
        short_chains = [block_delay(BlockSpec.approximate(H, L, S)) for S in range(1, H - L)]
        assertion.eq(short_chains, sorted(short_chains, reverse=True))


def test_exact_adder():
    """Check the estimate of an all-accurate adder."""
    est = adder_estimate(AdderConfig.exact(8, 4))
    assertion.isclose(est.delay, 242.8)
    assertion.eq(est.gate_count, 72)
    assertion.isclose(est.area, 50.4)
    assertion.isclose(est.power, DEFAULT_TECH.c_p)
    assertion.isclose(est.energy, est.power * est.delay)
    assertion.isclose(adder_estimate(AdderConfig.exact(16, 4)).delay, 485.6)


def test_approximate_adder():
    """Check the estimate of an adder with one approximate block."""
    est = adder_estimate(parse_config("HBBA{[2],[0]}", 8, 4))
    assertion.eq(est.gate_count, 52)
    assertion.eq(est.gate_depth, 10)
    assertion.isclose(est.area, 36.4)
    assertion.isclose(est.delay, 121.4)
    assertion.isclose(est.power, DEFAULT_TECH.c_p * 520 / 1440)
    assertion.eq(est.power_index, 520)
    assertion.eq(est.energy_index, 5200)


def test_custom_technology():
    """Check that the estimate scales with the technology constants."""
    cfg = parse_config("HBBA{[2,2],[0,2]}", 16, 4)
    ref = adder_estimate(cfg)
    tc = TechConstants(c_d=2 * DEFAULT_TECH.c_d, c_a=DEFAULT_TECH.c_a, c_p=DEFAULT_TECH.c_p)
    est = adder_estimate(cfg, tc)
    assertion.isclose(est.delay, 2 * ref.delay)
    assertion.isclose(est.area, ref.area)
    assertion.isclose(est.energy, 2 * ref.energy)


@pytest.mark.parametrize("values", [(0, 0.7, 9.24), (12.14, -1, 9.24), (12.14, 0.7, 0)])
def test_tech_check(values):
    """Check that nonpositive constants are rejected."""
    with pytest.raises(ConfigError):
        TechConstants(*values).check()
    assertion.eq(DEFAULT_TECH.check(), DEFAULT_TECH)
