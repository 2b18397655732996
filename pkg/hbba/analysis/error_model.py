"""Exact analytical error model of HBBA adders under uniform operands.

Block error PMFs are built from the OR-replacement law and the probability
that the truncated carry chain misses a carry. The closed-form adder PMF is the
convolution of the block PMFs weighted by their position; it is exact when no
predicted carry enters an approximate block. The carry-aware PMF and metrics
chain the blocks through their predicted carry and are exact for every
configuration. Every probability is an exact
:class:`~hbba.analysis.dyadic.DyadicProb`.

Index
-----
.. currentmodule:: hbba.analysis.error_model
.. autosummary::
    slice_pmf
    sum_pmf
    or_error_pmf
    generate_prob
    propagate_prob
    trunc_miss_prob
    block_error_pmf
    block_error_rate
    block_transition
    adder_error_pmf
    carry_aware_error_pmf
    adder_error_rate
    inclusion_exclusion_error_rate
    metrics_from_pmf
    adder_metrics

API
---
.. autofunction:: slice_pmf
.. autofunction:: sum_pmf
.. autofunction:: or_error_pmf
.. autofunction:: generate_prob
.. autofunction:: propagate_prob
.. autofunction:: trunc_miss_prob
.. autofunction:: block_error_pmf
.. autofunction:: block_error_rate
.. autofunction:: block_transition
.. autofunction:: adder_error_pmf
.. autofunction:: carry_aware_error_pmf
.. autofunction:: adder_error_rate
.. autofunction:: inclusion_exclusion_error_rate
.. autofunction:: metrics_from_pmf
.. autofunction:: adder_metrics

"""

__all__ = ['AnalyticMetrics', 'slice_pmf', 'sum_pmf', 'or_error_pmf', 'generate_prob',
           'propagate_prob', 'trunc_miss_prob', 'block_error_pmf', 'block_error_rate',
           'block_transition', 'adder_error_pmf', 'carry_aware_error_pmf', 'adder_error_rate',
           'inclusion_exclusion_error_rate', 'metrics_from_pmf', 'adder_metrics',
           'zero_carry_condition']

import logging
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from ..adder.configuration import AdderConfig, BlockSpec
from ..adder.simulator import block_exhaustive_pmf, block_transition_counts
from .dyadic import DyadicPMF, DyadicProb, convolve_all

# Starting logger
logger = logging.getLogger(__name__)


class AnalyticMetrics(NamedTuple):
    """Exact error statistics of an error PMF."""

    error_rate: DyadicProb
    med: Fraction
    mse: Fraction
    max_ed: int
    nmed: Fraction
    ned: Fraction
    p_zero: DyadicProb


# ================> Operand distributions <================
def slice_pmf(p_in: DyadicPMF, k1: int, k2: int, n_bits: Optional[int] = None) -> DyadicPMF:
    """Marginal distribution of bits ``k1 .. k2`` (inclusive) of an operand.

    Raises
    ------
    ValueError
        If the bit range is invalid or the operand has negative values.

    """
    if not 0 <= k1 <= k2 or (n_bits is not None and k2 >= n_bits):
        raise ValueError(f"invalid bit range [{k1}, {k2}]")
    if not p_in.is_nonnegative():
        raise ValueError("operand distributions are defined over nonnegative integers")
    mask = (1 << (k2 - k1 + 1)) - 1
    return p_in.map_values(lambda v: (v >> k1) & mask)


def sum_pmf(n: int, p_x: Optional[DyadicPMF] = None, p_y: Optional[DyadicPMF] = None) -> DyadicPMF:
    """Distribution of ``X + Y`` for independent ``n``-bit operands.

    Uniform operands use the triangular closed form, general ones the discrete
    convolution of the two distributions.
    """
    if p_x is None and p_y is None:
        top = 1 << n
        weights = {k: (k + 1 if k < top else 2 * top - k - 1) for k in range(2 * top - 1)}
        return DyadicPMF(weights, 2 * n)
    p_x = DyadicPMF.uniform(n) if p_x is None else p_x
    p_y = DyadicPMF.uniform(n) if p_y is None else p_y
    return p_x.convolve(p_y)


def or_error_pmf(L: int) -> DyadicPMF:
    """Error of ``L`` OR-replaced bits: the bitwise AND of the operand slices."""
    return DyadicPMF({v: 3 ** (L - bin(v).count('1')) for v in range(1 << L)}, 2 * L)


# ================> Carry probabilities <================
def generate_prob(m: int, p_z: Optional[DyadicPMF] = None) -> DyadicProb:
    """Probability that an ``m``-bit segment generates a carry, ``Pr(X + Y >= 2**m)``.

    ``p_z`` is the distribution of the segment sum when the operands are not uniform.
    """
    if m == 0:
        return DyadicProb.zero()
    if p_z is None:
        return DyadicProb((1 << m) - 1, m + 1)
    return sum((p for v, p in p_z.items() if v >= (1 << m)), DyadicProb.zero())


def propagate_prob(s: int) -> DyadicProb:
    """Probability that ``s`` uniform bit pairs all propagate."""
    return DyadicProb(1, s)


def trunc_miss_prob(fa_width: int, s: int) -> DyadicProb:
    """Probability that an ``s``-bit chain misses a carry generated in a ``fa_width``-bit section.

    Raises
    ------
    ValueError
        If ``s > fa_width``.

    """
    if not 0 <= s <= fa_width:
        raise ValueError(f"the chain length {s} exceeds the full-adder width {fa_width}")
    return generate_prob(fa_width - s) * propagate_prob(s)


# ================> Blocks <================
@lru_cache(maxsize=None)
def block_error_pmf(spec: BlockSpec) -> DyadicPMF:
    """PMF of the error of one block with ``c_in = 0``.

    * ``H - S > L``: the OR error shifted by ``2**H`` when the chain misses a carry.
    * ``H - S = L``: the OR error alone.
    * ``H - S < L``: exact enumeration of the block.

    Raises
    ------
    BudgetError
        For a ``H - S < L`` block wider than 12 bits.

    """
    if spec.is_accurate:
        return DyadicPMF.point(0)
    if spec.case == 3:
        return block_exhaustive_pmf(spec)
    q = or_error_pmf(spec.L)
    if spec.case == 2:
        return q
    miss = trunc_miss_prob(spec.fa_width, spec.S)
    return q.convolve(DyadicPMF.bernoulli(miss, 1 << spec.H))


@lru_cache(maxsize=None)
def block_error_rate(spec: BlockSpec) -> DyadicProb:
    """Probability that the block output is wrong.

    For ``H - S >= L`` the OR and truncation events involve disjoint bits and
    ``ER = P1 + P2 - P1 P2``; otherwise ``ER = 1 - p(0)`` of the enumerated PMF.
    """
    if spec.is_accurate:
        return DyadicProb.zero()
    if spec.case == 3:
        return block_error_pmf(spec).prob(0).complement()
    L = spec.L
    p_or = DyadicProb((1 << (2 * L)) - 3 ** L, 2 * L)
    p_trunc = trunc_miss_prob(spec.fa_width, spec.S)
    return DyadicProb.from_fraction(
        p_or.as_fraction() + p_trunc.as_fraction() - (p_or * p_trunc).as_fraction())


@lru_cache(maxsize=None)
def block_transition(spec: BlockSpec) -> Dict[Tuple[int, int], DyadicPMF]:
    """Joint law of the block error and carry-out for each incoming carry.

    Maps ``(c_in, c_out)`` to the sub-probability mass function of the error
    ``(x + y + c_in) - (sum_bits + 2**H * carry_out)`` over the input pairs
    producing ``c_out``; for a fixed ``c_in`` the masses add up to one.

    Raises
    ------
    BudgetError
        If ``H`` exceeds 12 bits.

    """
    table: Dict[Tuple[int, int], Dict[int, int]] = {}
    for c_in in (0, 1):
        for (e, c_out), n in block_transition_counts(spec, c_in).items():
            table.setdefault((c_in, c_out), {})[e] = n
    return {key: DyadicPMF(weights, 2 * spec.H) for key, weights in sorted(table.items())}


# ================> Adders <================
def _weighted_block_pmf(cfg: AdderConfig, index: int, p_a: Optional[DyadicPMF],
                        p_b: Optional[DyadicPMF]) -> DyadicPMF:
    """Error PMF of block ``index`` from the operand distributions."""
    spec = cfg.blocks[index]
    if p_a is None and p_b is None:
        return block_error_pmf(spec)
    low, high = index * cfg.H, (index + 1) * cfg.H - 1
    p_x = None if p_a is None else slice_pmf(p_a, low, high, cfg.N)
    p_y = None if p_b is None else slice_pmf(p_b, low, high, cfg.N)
    return block_exhaustive_pmf(spec, p_x, p_y)


def adder_error_pmf(cfg: AdderConfig, p_a: Optional[DyadicPMF] = None,
                    p_b: Optional[DyadicPMF] = None) -> DyadicPMF:
    """Convolve the block PMFs scaled by their positional weight ``2**(iH)``.

    Every block is taken with ``c_in = 0``, so the result is exact only under
    :func:`zero_carry_condition`; see :func:`carry_aware_error_pmf`.

    With operand distributions ``p_a``/``p_b`` every block PMF comes from the
    weighted enumeration of its operand slices; the blocks are still combined
    as independent, which is exact when the operands factor by block.
    """
    pmfs = [_weighted_block_pmf(cfg, i, p_a, p_b).scaled(i * cfg.H)
            for i, spec in enumerate(cfg.blocks) if not spec.is_accurate]
    return convolve_all(pmfs)


def adder_error_rate(cfg: AdderConfig) -> DyadicProb:
    """Union of the block error events, ``1 - prod(1 - ER_i)``."""
    acc = DyadicProb.one()
    for spec in cfg.approximate_blocks:
        acc = acc * block_error_rate(spec).complement()
    return acc.complement()


def inclusion_exclusion_error_rate(rates: Sequence[DyadicProb]) -> DyadicProb:
    """Probability of the union of independent events by inclusion-exclusion."""
    total = Fraction(0)
    for r in range(1, len(rates) + 1):
        sign = 1 if r % 2 else -1
        for group in combinations(rates, r):
            term = Fraction(1)
            for p in group:
                term *= p.as_fraction()
            total += sign * term
    return DyadicProb.from_fraction(total)


def zero_carry_condition(cfg: AdderConfig) -> bool:
    """Whether every approximate block receives a constant-zero predicted carry.

    That holds when all the approximate blocks below the topmost one have ``S = 0``;
    the closed-form PMF is then exact.
    """
    return all(spec.S == 0 for spec in cfg.approximate_blocks[:-1])


# ================> Metrics <================
def _max_output(N: int) -> int:
    """Largest sum of two N-bit operands."""
    return (1 << (N + 1)) - 2


def metrics_from_pmf(pmf: DyadicPMF, N: int) -> AnalyticMetrics:
    """Compute ER, MED, MSE, max ED, NMED and NED of an error PMF.

    Raises
    ------
    ValueError
        If the PMF does not sum to one.

    """
    if not pmf.is_normalized():
        raise ValueError(f"the PMF sums to {pmf.total()} instead of 1")
    p_zero = pmf.prob(0)
    med = pmf.mean_abs()
    max_ed = pmf.max_abs()
    return AnalyticMetrics(
        error_rate=p_zero.complement(), med=med, mse=pmf.second_moment(), max_ed=max_ed,
        nmed=med / _max_output(N), ned=med / max_ed if max_ed else Fraction(0), p_zero=p_zero)


class _Step(NamedTuple):
    """Outcomes of one block for a pair of incoming and outgoing carries."""

    c_in: int
    c_out: int
    probs: Tuple[Tuple[int, Fraction], ...]


class _Prefix(NamedTuple):
    """Partial moments of the error of the lowest blocks ending in one carry state."""

    mass: Fraction
    m1: Fraction
    m2: Fraction
    lowest: int
    highest: int


@lru_cache(maxsize=None)
def _block_table(spec: BlockSpec, closed_form: bool) -> Dict[Tuple[int, int], DyadicPMF]:
    """Closed-form PMF under a constant-zero carry, else the enumerated transitions."""
    if closed_form:
        return {(0, 0): block_error_pmf(spec)}
    return block_transition(spec)


@lru_cache(maxsize=None)
def _block_steps(spec: BlockSpec, shift: int, closed_form: bool) -> Tuple[_Step, ...]:
    """Outcome table of a block scaled by its positional weight."""
    return tuple(
        _Step(c_in, c_out, tuple((v, p.as_fraction()) for v, p in pmf.scaled(shift).items()))
        for (c_in, c_out), pmf in sorted(_block_table(spec, closed_form).items()))


def _carry_plan(cfg: AdderConfig) -> List[Tuple[BlockSpec, int, bool]]:
    """``(spec, shift, closed_form)`` of the approximate blocks, least significant first.

    A block that only ever receives ``c_in = 0`` and whose carry-out is either
    constant zero (``S = 0``) or unused (topmost block) is described by its
    closed-form PMF; every other block by its enumerated carry transitions.
    """
    blocks = cfg.approximate_blocks
    plan = []
    reachable = {0}
    for i, spec in enumerate(blocks):
        closed_form = reachable == {0} and (spec.S == 0 or i == len(blocks) - 1)
        table = _block_table(spec, closed_form)
        reachable = {c_out for c_in, c_out in table if c_in in reachable}
        plan.append((spec, i * cfg.H, closed_form))
    return plan


def carry_aware_error_pmf(cfg: AdderConfig) -> DyadicPMF:
    """Exact error PMF of any configuration.

    The error of the adder is the sum of the block errors
    ``(x + y + c_in) - (sum_bits + 2**H * carry_out)`` at their positional
    weight. The blocks are chained through the predicted carry, a two-state
    process, and the masses reaching each carry state are kept apart until the
    last block. Under :func:`zero_carry_condition` the result equals
    :func:`adder_error_pmf`.

    Raises
    ------
    BudgetError
        If a block receiving a predicted carry is wider than 12 bits.

    """
    states: Dict[int, DyadicPMF] = {0: DyadicPMF.point(0)}
    for spec, shift, closed_form in _carry_plan(cfg):
        new: Dict[int, DyadicPMF] = {}
        for (c_in, c_out), pmf in sorted(_block_table(spec, closed_form).items()):
            if c_in not in states:
                continue
            term = states[c_in].convolve(pmf.scaled(shift))
            new[c_out] = new[c_out].merge(term) if c_out in new else term
        states = new
    pmfs = [states[c] for c in sorted(states)]
    acc = pmfs[0]
    for pmf in pmfs[1:]:
        acc = acc.merge(pmf)
    return acc


def _extend(prefix: Dict[int, _Prefix], steps: Tuple[_Step, ...]) -> Dict[int, _Prefix]:
    """Partial moments after one more block."""
    acc: Dict[int, _Prefix] = {}
    for step in steps:
        src = prefix.get(step.c_in)
        if src is None:
            continue
        mass = sum((p * src.mass for _, p in step.probs), Fraction(0))
        m1 = sum((p * (src.m1 + src.mass * v) for v, p in step.probs), Fraction(0))
        m2 = sum((p * (src.m2 + 2 * v * src.m1 + src.mass * v * v) for v, p in step.probs),
                 Fraction(0))
        low = src.lowest + min(v for v, _ in step.probs)
        high = src.highest + max(v for v, _ in step.probs)
        old = acc.get(step.c_out)
        if old is not None:
            mass, m1, m2 = mass + old.mass, m1 + old.m1, m2 + old.m2
            low, high = min(low, old.lowest), max(high, old.highest)
        acc[step.c_out] = _Prefix(mass, m1, m2, low, high)
    return acc


def adder_metrics(cfg: AdderConfig) -> AnalyticMetrics:
    """Exact metrics of ``carry_aware_error_pmf(cfg)`` without building the PMF.

    The error is ``X = sum_i 2**(iH) e_i`` where ``(e_i, c_i+1)`` only depends
    on the carry ``c_i`` entering block ``i``. MSE and the extreme values follow
    from the partial moments of the lowest blocks per carry state. ``E|X|`` and
    ``Pr(X = 0)`` are computed by conditioning on the blocks from the top down,
    branching only while the sign of the remaining sum is undecided.
    """
    plan = [_block_steps(*entry) for entry in _carry_plan(cfg)]
    prefixes = [{0: _Prefix(Fraction(1), Fraction(0), Fraction(0), 0, 0)}]
    for steps in plan:
        prefixes.append(_extend(prefixes[-1], steps))

    memo_abs: Dict[Tuple[int, int, int], Fraction] = {}
    memo_zero: Dict[Tuple[int, int, int], Fraction] = {}

    def mean_abs(j: int, c: int, state: int) -> Fraction:
        """Return ``E[|c + X_j|; C_j = state]`` for the error ``X_j`` of the lowest j blocks."""
        pre = prefixes[j].get(state)
        if pre is None:
            return Fraction(0)
        if c + pre.lowest >= 0:
            return c * pre.mass + pre.m1
        if c + pre.highest <= 0:
            return -(c * pre.mass + pre.m1)
        key = (j, c, state)
        if key not in memo_abs:
            memo_abs[key] = sum((p * mean_abs(j - 1, c + v, step.c_in)
                                 for step in plan[j - 1] if step.c_out == state
                                 for v, p in step.probs), Fraction(0))
        return memo_abs[key]

    def zero_prob(j: int, c: int, state: int) -> Fraction:
        """Return ``Pr(c + X_j = 0, C_j = state)``."""
        pre = prefixes[j].get(state)
        if pre is None or c + pre.lowest > 0 or c + pre.highest < 0:
            return Fraction(0)
        if j == 0:
            return pre.mass
        key = (j, c, state)
        if key not in memo_zero:
            memo_zero[key] = sum((p * zero_prob(j - 1, c + v, step.c_in)
                                  for step in plan[j - 1] if step.c_out == state
                                  for v, p in step.probs), Fraction(0))
        return memo_zero[key]

    k = len(plan)
    final = prefixes[k]
    med = sum((mean_abs(k, 0, s) for s in final), Fraction(0))
    p_zero = DyadicProb.from_fraction(sum((zero_prob(k, 0, s) for s in final), Fraction(0)))
    mse = sum((pre.m2 for pre in final.values()), Fraction(0))
    max_ed = max(max(pre.highest, -pre.lowest) for pre in final.values())
    return AnalyticMetrics(
        error_rate=p_zero.complement(), med=med, mse=mse, max_ed=max_ed,
        nmed=med / _max_output(cfg.N), ned=med / max_ed if max_ed else Fraction(0),
        p_zero=p_zero)


def block_summary(specs: Sequence[BlockSpec]) -> List[Tuple[BlockSpec, DyadicProb, Fraction]]:
    """Error rate and MED of each block, used in the analysis report."""
    return [(spec, block_error_rate(spec), block_error_pmf(spec).mean_abs()) for spec in specs]
