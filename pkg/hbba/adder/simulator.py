"""Bit-exact evaluation of HBBA adders and empirical error statistics.

The evaluation functions accept python integers as well as numpy arrays of
``int64`` so that the exhaustive and Monte Carlo drivers can work on whole
chunks of operands at once.

Index
-----
.. currentmodule:: hbba.adder.simulator
.. autosummary::
    block_eval
    adder_eval
    exhaustive_metrics
    montecarlo_metrics
    block_exhaustive_pmf
    block_transition_counts
    empirical_pmf

API
---
.. autofunction:: block_eval
.. autofunction:: adder_eval
.. autofunction:: exhaustive_metrics
.. autofunction:: montecarlo_metrics
.. autofunction:: block_exhaustive_pmf
.. autofunction:: block_transition_counts
.. autofunction:: empirical_pmf

"""

__all__ = ['BlockOutcome', 'EmpiricalMetrics', 'block_eval', 'adder_eval',
           'exhaustive_metrics', 'montecarlo_metrics', 'block_exhaustive_pmf',
           'block_transition_counts', 'empirical_pmf', 'DEFAULT_MAX_BITS', 'MC_CHUNK_SIZE']

import logging
import math
from typing import Dict, List, NamedTuple, Optional, Tuple, TypeVar, Union

import numpy as np

from ..analysis.dyadic import DyadicPMF
from ..common import BudgetError, ConfigError
from ..schedule.components import run_chunks
from .configuration import AdderConfig, BlockSpec

# Starting logger
logger = logging.getLogger(__name__)

#: Operands: python integers or int64 arrays
Bits = TypeVar('Bits', int, np.ndarray)

#: Largest N for which the exhaustive driver runs by default
DEFAULT_MAX_BITS = 12

#: Largest block size enumerated by the brute-force PMF oracle
MAX_ORACLE_BITS = 12

#: Largest adder simulated with int64 operands
MAX_SIMULATION_BITS = 62

#: Samples per Monte Carlo chunk, independent of the number of workers
MC_CHUNK_SIZE = 1 << 16

#: Operand pairs per exhaustive chunk
EXHAUSTIVE_CHUNK_SIZE = 1 << 20

#: Distinct error values kept in the histogram
HISTOGRAM_LIMIT = 4096


class BlockOutcome(NamedTuple):
    """Sum bits and carry-out produced by one block."""

    sum_bits: Union[int, np.ndarray]
    carry_out: Union[int, np.ndarray]


class _Tally(NamedTuple):
    """Exact partial statistics of a chunk of samples."""

    count: int
    errors: Dict[int, int]
    rel_sum: float
    rel_count: int


class EmpiricalMetrics(NamedTuple):
    """Error statistics measured over a set of operand pairs.

    Counters and sums are kept as exact integers; the float metrics are derived
    from them.
    """

    bits: int
    sample_count: int
    error_count: int
    abs_error_sum: int
    sq_error_sum: int
    max_ed: int
    mred: float
    histogram: Optional[Dict[int, int]]

    @property
    def error_rate(self) -> float:
        """Fraction of samples with a nonzero error."""
        return self.error_count / self.sample_count

    @property
    def med(self) -> float:
        """Mean error distance."""
        return self.abs_error_sum / self.sample_count

    @property
    def mse(self) -> float:
        """Mean squared error."""
        return self.sq_error_sum / self.sample_count

    @property
    def nmed(self) -> float:
        """MED normalized by the largest output ``2**(N+1) - 2``."""
        return self.med / ((1 << (self.bits + 1)) - 2)

    @property
    def se_er(self) -> float:
        """Standard error of the error rate estimate."""
        p = self.error_rate
        return math.sqrt(p * (1 - p) / self.sample_count)

    @property
    def se_med(self) -> float:
        """Standard error of the MED estimate."""
        n = self.sample_count
        if n < 2:
            return 0.0
        var = (self.sq_error_sum - self.abs_error_sum ** 2 / n) / (n - 1)
        return math.sqrt(max(var, 0.0) / n)


def _carry_chain(x: Bits, y: Bits, low: int, high: int) -> Bits:
    """Fold ``c = g | (p & c)`` over bit positions ``low .. high - 1`` starting from 0."""
    c: Bits = 0
    for j in range(low, high):
        xj = (x >> j) & 1
        yj = (y >> j) & 1
        c = (xj & yj) | ((xj ^ yj) & c)
    return c


def block_eval(spec: BlockSpec, x: Bits, y: Bits, c_in: Bits = 0) -> BlockOutcome:
    """Evaluate one H-bit block.

    Accurate blocks add exactly. Approximate blocks OR the ``L`` low bits, add
    the remaining bits with the incoming carry injected at bit ``L`` while
    dropping the overflow, and compute the carry-out from the top ``S`` bits
    only.

    Parameters
    ----------
    spec
        The block.
    x, y
        Operand slices in ``[0, 2**H)``.
    c_in
        Incoming carry bit.

    Returns
    -------
    BlockOutcome
        Sum bits in ``[0, 2**H)`` and the carry-out bit.

    """
    H = spec.H
    if spec.is_accurate:
        t = x + y + c_in
        return BlockOutcome(t & ((1 << H) - 1), t >> H)
    L, S = spec.L, spec.S
    or_part = (x | y) & ((1 << L) - 1)
    fa_mask = (1 << (H - L)) - 1
    fa_part = (((x >> L) + (y >> L) + c_in) & fa_mask) << L
    return BlockOutcome(or_part | fa_part, _carry_chain(x, y, H - S, H))


def adder_eval(cfg: AdderConfig, A: Bits, B: Bits) -> Bits:
    """Compute the (N+1)-bit approximate sum of ``A`` and ``B``."""
    H = cfg.H
    mask = (1 << H) - 1
    carry: Bits = 0
    result: Bits = 0
    for i, spec in enumerate(cfg.blocks):
        shift = i * H
        out = block_eval(spec, (A >> shift) & mask, (B >> shift) & mask, carry)
        result = result + (out.sum_bits << shift)
        carry = out.carry_out
    return result + (carry << cfg.N)


def _tally(exact: np.ndarray, approx: np.ndarray) -> _Tally:
    """Reduce a chunk of exact and approximate sums to exact partial statistics."""
    err = exact - approx
    values, counts = np.unique(err, return_counts=True)
    errors = {int(v): int(c) for v, c in zip(values, counts)}
    nonzero = exact > 0
    rel = np.abs(err[nonzero]) / exact[nonzero]
    return _Tally(int(err.size), errors, float(np.sum(rel)), int(np.count_nonzero(nonzero)))


def _merge(bits: int, tallies: List[_Tally],
           histogram_limit: int = HISTOGRAM_LIMIT) -> EmpiricalMetrics:
    """Merge chunk statistics in chunk order."""
    count = n_err = abs_sum = sq_sum = max_ed = rel_count = 0
    rel_parts = []
    histogram: Optional[Dict[int, int]] = {}
    for t in tallies:
        count += t.count
        rel_count += t.rel_count
        rel_parts.append(t.rel_sum)
        for v, c in t.errors.items():
            if v:
                n_err += c
                abs_sum += abs(v) * c
                sq_sum += v * v * c
                max_ed = max(max_ed, abs(v))
            if histogram is not None:
                histogram[v] = histogram.get(v, 0) + c
        if histogram is not None and len(histogram) > histogram_limit:
            logger.debug(f"more than {histogram_limit} distinct errors, dropping the histogram")
            histogram = None
    mred = math.fsum(rel_parts) / rel_count if rel_count else 0.0
    if histogram is not None:
        histogram = dict(sorted(histogram.items()))
    return EmpiricalMetrics(bits, count, n_err, abs_sum, sq_sum, max_ed, mred, histogram)


def _exhaustive_chunk(cfg: AdderConfig, b_start: int, b_stop: int) -> _Tally:
    """Evaluate every A against the operands ``B`` in ``[b_start, b_stop)``."""
    A = np.arange(1 << cfg.N, dtype=np.int64)[None, :]
    B = np.arange(b_start, b_stop, dtype=np.int64)[:, None]
    approx = adder_eval(cfg, A, B)
    return _tally(np.ravel(A + B), np.ravel(approx))


def exhaustive_metrics(
        cfg: AdderConfig, workers: int = 1, max_bits: int = DEFAULT_MAX_BITS) -> EmpiricalMetrics:
    """Measure the error statistics over all ``2**(2N)`` operand pairs.

    Raises
    ------
    BudgetError
        If ``N`` exceeds ``max_bits``.

    """
    if cfg.N > max_bits:
        raise BudgetError(
            f"exhaustive simulation of {cfg.N} bits exceeds the budget of {max_bits} bits")
    rows = max(1, EXHAUSTIVE_CHUNK_SIZE >> cfg.N)
    total = 1 << cfg.N
    args = [(cfg, start, min(start + rows, total)) for start in range(0, total, rows)]
    logger.info(f"exhaustive simulation of {cfg} in {len(args)} chunks")
    return _merge(cfg.N, run_chunks(_exhaustive_chunk, args, workers))


def _montecarlo_chunk(cfg: AdderConfig, seed: int, index: int, size: int) -> _Tally:
    """Draw and evaluate chunk ``index`` of the counter-based random stream."""
    counter = np.array([0, 0, 0, index], dtype=np.uint64)
    rng = np.random.Generator(np.random.Philox(key=seed, counter=counter))
    high = 1 << cfg.N
    A = rng.integers(0, high, size=size, dtype=np.int64)
    B = rng.integers(0, high, size=size, dtype=np.int64)
    return _tally(A + B, adder_eval(cfg, A, B))


def montecarlo_metrics(
        cfg: AdderConfig, samples: int, seed: int = 0, workers: int = 1) -> EmpiricalMetrics:
    """Estimate the error statistics from uniform random operand pairs.

    Chunk ``i`` of :data:`MC_CHUNK_SIZE` samples is drawn from a Philox stream
    keyed by ``seed`` whose counter starts at ``i``, so the result does not
    depend on the number of workers.

    Raises
    ------
    ConfigError
        If ``samples`` is smaller than one or N is too wide for int64 operands.

    """
    if samples < 1:
        raise ConfigError(f"the number of samples must be positive, got {samples}")
    if cfg.N > MAX_SIMULATION_BITS:
        raise ConfigError(f"Monte Carlo simulation supports up to {MAX_SIMULATION_BITS} bits")
    seed &= (1 << 64) - 1
    args = []
    for index, start in enumerate(range(0, samples, MC_CHUNK_SIZE)):
        args.append((cfg, seed, index, min(MC_CHUNK_SIZE, samples - start)))
    logger.info(f"Monte Carlo simulation of {cfg}: {samples} samples in {len(args)} chunks")
    return _merge(cfg.N, run_chunks(_montecarlo_chunk, args, workers))


def _block_errors(spec: BlockSpec, c_in: int) -> Tuple[np.ndarray, np.ndarray]:
    """Errors and carry-outs of every input pair of a block, indexed ``[y, x]``.

    Raises
    ------
    BudgetError
        If ``H`` exceeds 12 bits.

    """
    H = spec.H
    if H > MAX_ORACLE_BITS:
        raise BudgetError(
            f"enumeration of a {H}-bit block exceeds the budget of {MAX_ORACLE_BITS} bits")
    xs = np.arange(1 << H, dtype=np.int64)[None, :]
    ys = np.arange(1 << H, dtype=np.int64)[:, None]
    out = block_eval(spec, xs, ys, c_in)
    shape = (1 << H, 1 << H)
    err = np.broadcast_to(xs + ys + c_in - out.sum_bits - (out.carry_out << H), shape)
    return err, np.broadcast_to(out.carry_out, shape)


def block_exhaustive_pmf(
        spec: BlockSpec, p_x: Optional[DyadicPMF] = None,
        p_y: Optional[DyadicPMF] = None) -> DyadicPMF:
    """Enumerate all input pairs of a block with ``c_in = 0`` and tabulate the error.

    The error is ``(x + y) - (sum_bits + 2**H * carry_out)``. Without operand
    distributions every pair is equally likely, otherwise each pair is weighted
    by ``p_x(x) * p_y(y)``.

    Raises
    ------
    BudgetError
        If ``H`` exceeds 12 bits.

    """
    H = spec.H
    err, _ = _block_errors(spec, 0)
    if p_x is None and p_y is None:
        values, counts = np.unique(err, return_counts=True)
        return DyadicPMF({int(v): int(c) for v, c in zip(values, counts)}, 2 * H)
    p_x = DyadicPMF.uniform(H) if p_x is None else p_x
    p_y = DyadicPMF.uniform(H) if p_y is None else p_y
    for pmf in (p_x, p_y):
        if pmf.lowest() < 0 or pmf.highest() >= (1 << H):
            raise ValueError(f"operand distribution outside [0, 2^{H})")
    acc: Dict[int, int] = {}
    for y, wy in p_y.weights.items():
        for x, wx in p_x.weights.items():
            e = int(err[y, x])
            acc[e] = acc.get(e, 0) + wx * wy
    return DyadicPMF(acc, p_x.exp + p_y.exp)


def block_transition_counts(spec: BlockSpec, c_in: int) -> Dict[Tuple[int, int], int]:
    """Count the ``(error, carry_out)`` outcomes of the ``4**H`` input pairs of a block.

    The error ``(x + y + c_in) - (sum_bits + 2**H * carry_out)`` is the block's
    share of the adder error once the incoming carry is accounted to the block
    receiving it.

    Raises
    ------
    BudgetError
        If ``H`` exceeds 12 bits.

    """
    err, carry = _block_errors(spec, c_in)
    keys = np.stack([np.ravel(err), np.ravel(carry)], axis=1)
    pairs, counts = np.unique(keys, axis=0, return_counts=True)
    return {(int(e), int(c)): int(n) for (e, c), n in zip(pairs, counts)}


def empirical_pmf(metrics: EmpiricalMetrics) -> DyadicPMF:
    """Exact PMF of the errors observed by an exhaustive run."""
    if metrics.histogram is None:
        raise ValueError("the metrics do not carry a histogram")
    return DyadicPMF.from_counts(metrics.histogram, metrics.sample_count)

