"""Exhaustive exploration of the HBBA design space.

Index
-----
.. currentmodule:: hbba.workflows.explorer
.. autosummary::
    Constraint
    ExplorationSpec
    DesignPoint
    enumerate_configs
    evaluate_point
    explore
    pareto_front
    select_optimal

API
---
.. autofunction:: enumerate_configs
.. autofunction:: evaluate_point
.. autofunction:: explore
.. autofunction:: pareto_front
.. autofunction:: select_optimal

"""

__all__ = ['Constraint', 'ExplorationSpec', 'DesignPoint', 'ERROR_METRICS', 'HARDWARE_METRICS',
           'enumerate_configs', 'evaluate_point', 'explore', 'pareto_front', 'select_optimal',
           'is_loa_equivalent', 'feasible']

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from ..adder.configuration import AdderConfig, canonical_string
from ..analysis.error_model import AnalyticMetrics, adder_metrics
from ..analysis.hardware import DEFAULT_TECH, HardwareEstimate, TechConstants, adder_estimate
from ..common import ConfigError, EmptySpaceError, InfeasibleError
from ..schedule.components import chunk_items, run_chunks

# Starting logger
logger = logging.getLogger(__name__)

#: Accuracy metrics accepted by constraints
ERROR_METRICS = ('med', 'er', 'max_ed', 'nmed')

#: Hardware metrics accepted as objective
HARDWARE_METRICS = ('delay', 'area', 'power', 'energy')

#: Configurations evaluated per scheduled chunk
CHUNK_SIZE = 512

Exact = Union[int, Fraction]


class Constraint(NamedTuple):
    """Upper bound on an accuracy metric, ``metric <= bound``."""

    metric: str
    bound: Fraction

    def __str__(self) -> str:
        """Render as ``metric<=bound``."""
        return f"{self.metric}<={float(self.bound)!r}"


@dataclass(frozen=True)
class ExplorationSpec:
    """What to explore and how to rank it."""

    N: int
    H: int
    max_approx_blocks: Optional[int] = None
    constraints: Tuple[Constraint, ...] = ()
    objective: str = 'delay'
    pareto_axes: Optional[Tuple[str, str]] = None
    loa_only: bool = False

    def __post_init__(self) -> None:
        """Check metric names and the number of approximate blocks."""
        if self.H < 1 or self.N % self.H:
            raise ConfigError(f"N={self.N} is not divisible by the block size H={self.H}")
        if self.max_approx_blocks is None:
            object.__setattr__(self, 'max_approx_blocks', self.N // self.H)
        if not 0 <= self.max_approx_blocks <= self.N // self.H:
            raise ConfigError(
                f"max_approx_blocks={self.max_approx_blocks} is outside 0..{self.N // self.H}")
        if self.objective not in HARDWARE_METRICS:
            raise ConfigError(
                f"unknown objective {self.objective!r}, use one of {HARDWARE_METRICS}")
        for c in self.constraints:
            if c.metric not in ERROR_METRICS:
                raise ConfigError(
                    f"unknown constraint metric {c.metric!r}, use one of {ERROR_METRICS}")
        if self.pareto_axes is None:
            object.__setattr__(self, 'pareto_axes', ('med', self.objective))
        if len(self.pareto_axes) != 2 or any(
                a not in ERROR_METRICS + HARDWARE_METRICS for a in self.pareto_axes):
            raise ConfigError(f"invalid Pareto axes {self.pareto_axes!r}")


class DesignPoint(NamedTuple):
    """A configuration with its analytic error metrics and hardware estimate."""

    cfg: AdderConfig
    metrics: AnalyticMetrics
    hardware: HardwareEstimate

    @property
    def med(self) -> float:
        """Mean error distance."""
        return float(self.metrics.med)

    @property
    def er(self) -> float:
        """Error rate."""
        return float(self.metrics.error_rate)

    @property
    def nmed(self) -> float:
        """Normalized mean error distance."""
        return float(self.metrics.nmed)

    @property
    def max_ed(self) -> int:
        """Largest error distance."""
        return self.metrics.max_ed

    @property
    def delay(self) -> float:
        """Delay in ps."""
        return self.hardware.delay

    @property
    def area(self) -> float:
        """Area in um^2."""
        return self.hardware.area

    @property
    def power(self) -> float:
        """Power in uW."""
        return self.hardware.power

    @property
    def energy(self) -> float:
        """Energy in aJ."""
        return self.hardware.energy

    @property
    def name(self) -> str:
        """Canonical configuration string."""
        return canonical_string(self.cfg)

    def exact(self, metric: str) -> Exact:
        """Exact value ordering the points on ``metric``.

        Error metrics are exact rationals; hardware metrics are replaced by the
        integer gate quantities they are proportional to.
        """
        if metric == 'med':
            return self.metrics.med
        if metric == 'er':
            return self.metrics.error_rate.as_fraction()
        if metric == 'nmed':
            return self.metrics.nmed
        if metric == 'max_ed':
            return self.metrics.max_ed
        if metric == 'delay':
            return self.hardware.gate_depth
        if metric == 'area':
            return self.hardware.gate_count
        if metric == 'power':
            return self.hardware.power_index
        if metric == 'energy':
            return self.hardware.energy_index
        raise ConfigError(f"unknown metric {metric!r}")


def is_loa_equivalent(cfg: AdderConfig) -> bool:
    """Whether ``cfg`` is a lower-part-OR adder: no carry chains and a contiguous OR region."""
    blocks = cfg.approximate_blocks
    if not blocks:
        return True
    return (all(b.S == 0 for b in blocks) and all(b.L == cfg.H for b in blocks[:-1]) and
            sum(b.L for b in blocks) >= 1)


def _enumerate_loa(spec: ExplorationSpec) -> Iterator[AdderConfig]:
    """LOA-equivalent configurations in lexicographic order."""
    H = spec.H
    yield AdderConfig.exact(spec.N, H)
    for a in range(1, spec.max_approx_blocks + 1):
        for top in range(0 if a > 1 else 1, H + 1):
            yield AdderConfig.from_vectors(spec.N, H, [H] * (a - 1) + [top], [0] * a)


def enumerate_configs(spec: ExplorationSpec) -> Iterator[AdderConfig]:
    """Yield every configuration of the design space.

    Order: number of approximate blocks ascending, then the L vector, then the
    S vector, each lexicographically.
    """
    if spec.loa_only:
        yield from _enumerate_loa(spec)
        return
    values = range(spec.H + 1)
    for a in range(spec.max_approx_blocks + 1):
        for l_vec in product(values, repeat=a):
            for s_vec in product(values, repeat=a):
                yield AdderConfig.from_vectors(spec.N, spec.H, l_vec, s_vec)


def evaluate_point(cfg: AdderConfig, tc: TechConstants = DEFAULT_TECH) -> DesignPoint:
    """Compute the analytic metrics and the hardware estimate of ``cfg``."""
    return DesignPoint(cfg, adder_metrics(cfg), adder_estimate(cfg, tc))


def _evaluate_chunk(configs: List[AdderConfig], tc: TechConstants) -> List[DesignPoint]:
    """Evaluate a chunk of configurations."""
    return [evaluate_point(cfg, tc) for cfg in configs]


def explore(spec: ExplorationSpec, tc: TechConstants = DEFAULT_TECH,
            workers: int = 1) -> List[DesignPoint]:
    """Evaluate the whole design space, in enumeration order.

    Raises
    ------
    EmptySpaceError
        If the enumeration yields no configuration.

    """
    chunks = chunk_items(enumerate_configs(spec), CHUNK_SIZE)
    if not chunks:
        raise EmptySpaceError(f"the design space of {spec} is empty")
    logger.info(f"evaluating {sum(len(c) for c in chunks)} configurations "
                f"in {len(chunks)} chunks")
    results = run_chunks(_evaluate_chunk, [(c, tc) for c in chunks], workers)
    return [point for chunk in results for point in chunk]


def pareto_front(points: Sequence[DesignPoint],
                 axes: Tuple[str, str] = ('med', 'delay')) -> List[DesignPoint]:
    """Points that no other point dominates on the two minimized ``axes``.

    Among points with identical coordinates only the one with the smallest
    canonical string is kept. The result is sorted by the first axis.

    Raises
    ------
    EmptySpaceError
        If ``points`` is empty.

    """
    if not points:
        raise EmptySpaceError("cannot compute the Pareto front of an empty set")
    first, second = axes
    ordered = sorted(points, key=lambda p: (p.exact(first), p.exact(second), p.name))
    front: List[DesignPoint] = []
    for p in ordered:
        if not front or p.exact(second) < front[-1].exact(second):
            front.append(p)
    logger.info(f"Pareto front on {axes}: {len(front)} of {len(points)} points")
    return front


def feasible(point: DesignPoint, constraints: Sequence[Constraint]) -> bool:
    """Whether ``point`` satisfies every constraint."""
    return all(point.exact(c.metric) <= c.bound for c in constraints)


def select_optimal(spec: ExplorationSpec, tc: TechConstants = DEFAULT_TECH, workers: int = 1,
                   points: Optional[Sequence[DesignPoint]] = None) -> DesignPoint:
    """Return the feasible point with the smallest objective.

    Ties are broken by MED and then by canonical string.

    Raises
    ------
    InfeasibleError
        If no point satisfies the constraints; the error names the constraint
        violated by the most points.

    """
    if points is None:
        points = explore(spec, tc, workers)
    if not points:
        raise EmptySpaceError("no design point to select from")
    candidates = [p for p in points if feasible(p, spec.constraints)]
    if not candidates:
        violations = [sum(1 for p in points if p.exact(c.metric) > c.bound)
                      for c in spec.constraints]
        tightest = spec.constraints[violations.index(max(violations))]
        raise InfeasibleError(f"no configuration satisfies {tightest}", constraint=tightest)
    return min(candidates, key=lambda p: (p.exact(spec.objective), p.metrics.med, p.name))

