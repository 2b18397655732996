"""Test the bit-exact simulator and its empirical drivers."""
from fractions import Fraction

import numpy as np
import pytest
from assertionlib import assertion

from hbba.adder.configuration import AdderConfig, BlockSpec, parse_config
from hbba.adder.simulator import (adder_eval, block_eval, block_exhaustive_pmf,
                                  empirical_pmf, exhaustive_metrics, montecarlo_metrics)
from hbba.analysis.dyadic import DyadicPMF
from hbba.common import BudgetError, ConfigError

from .utilsTest import all_block_specs


def test_block_eval_examples():
    """Check hand traced blocks."""
    out = block_eval(BlockSpec.approximate(4, 2, 3), 6, 10, 0)
    assertion.eq(out.sum_bits, 14)
    assertion.eq(out.carry_out, 1)

    out = block_eval(BlockSpec.approximate(4, 2, 0), 2, 2, 0)
    assertion.eq(out.sum_bits, 2)
    assertion.eq(out.carry_out, 0)

    for spec in all_block_specs(4):
        assertion.eq(tuple(block_eval(spec, 0, 0, 0)), (0, 0))


def test_block_eval_carry_in():
    """Check that the incoming carry enters at bit L and the overflow is dropped."""
    spec = BlockSpec.approximate(4, 2, 0)
    # FA section 0b11 + 0b00 + 1 overflows and is discarded
    assertion.eq(block_eval(spec, 0b1100, 0b0000, 1).sum_bits, 0b0000)
    assertion.eq(block_eval(spec, 0b0100, 0b0001, 1).sum_bits, 0b1001)
    # no FA section: the carry is lost
    assertion.eq(block_eval(BlockSpec.approximate(4, 4, 0), 1, 2, 1).sum_bits, 3)


def test_adder_eval_examples():
    """Check hand traced adders."""
    cfg = parse_config("HBBA{[2],[0]}", 8, 4)
    assertion.eq(adder_eval(cfg, 0x0F, 0x01), 0x0F)
    exact = AdderConfig.exact(8, 4)
    assertion.eq(adder_eval(exact, 0xFF, 0xFF), 0x1FE)


def test_exact_adder_identity():
    """Check that an all-accurate adder adds exactly."""
    for N, H in ((8, 4), (8, 2), (10, 5), (9, 3)):
        cfg = AdderConfig.exact(N, H)
        A = np.arange(1 << N, dtype=np.int64)[None, :]
        B = np.arange(1 << N, dtype=np.int64)[:, None]
        assertion.truth(np.array_equal(adder_eval(cfg, A, B), A + B))


def test_output_width():
    """Check that every output fits in N + 1 bits."""
    cfg = parse_config("HBBA{[2,2],[3,4]}", 8, 4)
    A = np.arange(256, dtype=np.int64)[None, :]
    B = np.arange(256, dtype=np.int64)[:, None]
    result = adder_eval(cfg, A, B)
    assertion.lt(int(result.max()), 1 << 9)
    assertion.ge(int(result.min()), 0)


@pytest.mark.parametrize("H", [2, 4, 6, 8])
def test_or_section_identity(H: int):
    """Check that an S = 0 block errs by the AND of the low bits plus the FA overflow."""
    xs = np.arange(1 << H, dtype=np.int64)[None, :]
    ys = np.arange(1 << H, dtype=np.int64)[:, None]
    for L in range(H + 1):
        out = block_eval(BlockSpec.approximate(H, L, 0), xs, ys, 0)
        error = xs + ys - out.sum_bits - (out.carry_out << H)
        low = (1 << L) - 1
        overflow = ((xs >> L) + (ys >> L)) >> (H - L)
        assertion.truth(np.array_equal(error, (xs & ys & low) + (overflow << H)))


@pytest.mark.parametrize("H", [2, 3, 4, 5, 6])
def test_one_sided_error(H: int):
    """Check that blocks with H - S >= L never overestimate the sum."""
    for spec in all_block_specs(H):
        pmf = block_exhaustive_pmf(spec)
        if spec.is_one_signed:
            assertion.truth(pmf.is_nonnegative())
        assertion.truth(pmf.is_normalized())


def test_block_exhaustive_pmf():
    """Check the enumerated PMF of a few blocks."""
    pmf = block_exhaustive_pmf(BlockSpec.approximate(4, 2, 1))
    expected = {0: 252, 1: 84, 2: 84, 3: 28, 16: 36, 17: 12, 18: 12, 19: 4}
    assertion.eq(pmf, DyadicPMF(expected, 9))

    pmf = block_exhaustive_pmf(BlockSpec.approximate(4, 2, 0))
    expected = {0: 45, 1: 15, 2: 15, 3: 5, 16: 27, 17: 9, 18: 9, 19: 3}
    assertion.eq(pmf, DyadicPMF(expected, 7))

    pmf = block_exhaustive_pmf(BlockSpec.approximate(4, 2, 3))
    expected = {-14: 3, -13: 1, 0: 36, 1: 12, 2: 9, 3: 3}
    assertion.eq(pmf, DyadicPMF(expected, 6))

    with pytest.raises(BudgetError):
        block_exhaustive_pmf(BlockSpec.approximate(13, 7, 1))


def test_block_exhaustive_pmf_weighted():
    """Check the enumeration weighted by operand distributions."""
    spec = BlockSpec.approximate(4, 2, 0)
    assertion.eq(block_exhaustive_pmf(spec, DyadicPMF.uniform(4), DyadicPMF.uniform(4)),
                 block_exhaustive_pmf(spec))
    # x = y = 3 gives the AND of the OR bits
    pmf = block_exhaustive_pmf(spec, DyadicPMF.point(3), DyadicPMF.point(3))
    assertion.eq(pmf, DyadicPMF.point(3))
    with pytest.raises(ValueError):
        block_exhaustive_pmf(spec, DyadicPMF.point(16))


def test_exhaustive_metrics():
    """Check exhaustive statistics of small adders."""
    metrics = exhaustive_metrics(AdderConfig.exact(8, 4))
    assertion.eq(metrics.error_count, 0)
    assertion.eq(metrics.med, 0)

    metrics = exhaustive_metrics(parse_config("HBBA{[2],[0]}", 8, 4))
    assertion.eq(metrics.sample_count, 1 << 16)
    assertion.eq(Fraction(metrics.error_count, metrics.sample_count), Fraction(83, 128))
    assertion.eq(Fraction(metrics.abs_error_sum, metrics.sample_count), Fraction(27, 4))
    assertion.eq(metrics.max_ed, 19)
    assertion.le(metrics.med, metrics.max_ed)

    metrics = exhaustive_metrics(parse_config("HBBA{[2,2],[0,0]}", 8, 4))
    assertion.eq(metrics.med, 114.75)
    assertion.isclose(metrics.nmed, 114.75 / 510)


def test_exhaustive_budget():
    """Check that wide adders are refused."""
    with pytest.raises(BudgetError):
        exhaustive_metrics(AdderConfig.exact(16, 4))
    metrics = exhaustive_metrics(AdderConfig.exact(4, 4), max_bits=4)
    assertion.eq(metrics.sample_count, 256)


def test_empirical_pmf():
    """Check the PMF built from an exhaustive histogram."""
    cfg = parse_config("HBBA{[2],[0]}", 4, 4)
    pmf = empirical_pmf(exhaustive_metrics(cfg))
    assertion.eq(pmf, block_exhaustive_pmf(cfg.blocks[0]))


def test_montecarlo_exact_adder():
    """Check that an exact adder never errs."""
    metrics = montecarlo_metrics(AdderConfig.exact(32, 8), 5000, seed=3)
    assertion.eq(metrics.error_count, 0)
    assertion.eq(metrics.sample_count, 5000)
    assertion.eq(metrics.mred, 0.0)


def test_montecarlo_determinism():
    """Check that the result does not depend on the number of workers."""
    cfg = parse_config("HBBA{[2,2],[0,0]}", 16, 4)
    samples = 150_000
    serial = montecarlo_metrics(cfg, samples, seed=11, workers=1)
    parallel = montecarlo_metrics(cfg, samples, seed=11, workers=4)
    assertion.eq(serial, parallel)
    assertion.eq(serial, montecarlo_metrics(cfg, samples, seed=11, workers=1))
    assertion.ne(serial, montecarlo_metrics(cfg, samples, seed=12, workers=1))


def test_montecarlo_agrees_with_analysis():
    """Check a short Monte Carlo run against the exact MED."""
    cfg = parse_config("HBBA{[2,2],[0,0]}", 16, 4)
    metrics = montecarlo_metrics(cfg, 200_000, seed=0)
    assertion.le(abs(metrics.med - 114.75), 5 * metrics.se_med)
    assertion.le(abs(metrics.error_rate - 14359 / 16384), 5 * metrics.se_er)


def test_montecarlo_errors():
    """Check the rejected arguments."""
    with pytest.raises(ConfigError):
        montecarlo_metrics(AdderConfig.exact(8, 4), 0)
    with pytest.raises(ConfigError):
        montecarlo_metrics(AdderConfig.exact(64, 8), 10)


@pytest.mark.slow
def test_montecarlo_ten_million_samples():
    """Check the MED of a 10^7 sample run."""
    cfg = parse_config("HBBA{[2,2],[0,0]}", 16, 4)
    metrics = montecarlo_metrics(cfg, 10_000_000, seed=0, workers=4)
    assertion.le(abs(metrics.med - 114.75), 3 * metrics.se_med)
    cfg = parse_config("HBBA{[2,1],[0,2]}", 16, 4)
    metrics = montecarlo_metrics(cfg, 10_000_000, seed=0, workers=4)
    assertion.le(abs(metrics.error_rate - 6167 / 8192), 3 * metrics.se_er)
