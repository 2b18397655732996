"""Exact probabilities with power-of-two denominators and sparse PMFs built on them.

Uniformly distributed operand bits only ever produce probabilities of the form
``num / 2**exp``, so every distribution handled by the error model is stored as
integer weights over a common power of two. No floating point is involved until
the values are reported.

Index
-----
.. currentmodule:: hbba.analysis.dyadic
.. autosummary::
    DyadicProb
    DyadicPMF

API
---
.. autoclass:: DyadicProb
    :members:
.. autoclass:: DyadicPMF
    :members:

"""

__all__ = ['DyadicProb', 'DyadicPMF', 'ErrorPMF', 'dyadic_parts']

from fractions import Fraction
from functools import total_ordering
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple, Union

Number = Union[int, Fraction]


def _trailing_zeros(n: int) -> int:
    """Count the trailing zero bits of a positive integer."""
    return (n & -n).bit_length() - 1


def dyadic_parts(value: Number) -> Tuple[int, int]:
    """Split a rational with power-of-two denominator into ``(numerator, exponent)``.

    Raises
    ------
    ValueError
        If the denominator is not a power of two.

    """
    value = Fraction(value)
    den = value.denominator
    if den & (den - 1):
        raise ValueError(f"{value} does not have a power-of-two denominator")
    return value.numerator, den.bit_length() - 1


@total_ordering
class DyadicProb:
    """Exact probability ``num / 2**exp`` kept in reduced form (``num`` odd or zero)."""

    __slots__ = ('num', 'exp')

    def __init__(self, num: int, exp: int = 0):
        """Reduce and check that the value lies in [0, 1]."""
        if exp < 0:
            raise ValueError(f"negative exponent: {exp}")
        if num < 0 or num > (1 << exp):
            raise ValueError(f"{num}/2^{exp} is not a probability")
        if num == 0:
            exp = 0
        else:
            shift = min(_trailing_zeros(num), exp)
            num >>= shift
            exp -= shift
        object.__setattr__(self, 'num', num)
        object.__setattr__(self, 'exp', exp)

    def __setattr__(self, key, value):
        """Forbid mutation."""
        raise AttributeError("DyadicProb is immutable")

    @classmethod
    def from_fraction(cls, value: Number) -> 'DyadicProb':
        """Build a probability from a rational with power-of-two denominator."""
        return cls(*dyadic_parts(value))

    @classmethod
    def zero(cls) -> 'DyadicProb':
        """Probability of the impossible event."""
        return cls(0, 0)

    @classmethod
    def one(cls) -> 'DyadicProb':
        """Probability of the certain event."""
        return cls(1, 0)

    def as_fraction(self) -> Fraction:
        """Return the value as a :class:`fractions.Fraction`."""
        return Fraction(self.num, 1 << self.exp)

    def complement(self) -> 'DyadicProb':
        """Return ``1 - p``."""
        return DyadicProb((1 << self.exp) - self.num, self.exp)

    def __mul__(self, other: 'DyadicProb') -> 'DyadicProb':
        """Multiply two probabilities."""
        if not isinstance(other, DyadicProb):
            return NotImplemented
        return DyadicProb(self.num * other.num, self.exp + other.exp)

    def __add__(self, other: 'DyadicProb') -> 'DyadicProb':
        """Add two probabilities whose sum is still a probability."""
        if not isinstance(other, DyadicProb):
            return NotImplemented
        exp = max(self.exp, other.exp)
        num = (self.num << (exp - self.exp)) + (other.num << (exp - other.exp))
        return DyadicProb(num, exp)

    def __sub__(self, other: 'DyadicProb') -> 'DyadicProb':
        """Subtract two probabilities, the result must stay nonnegative."""
        if not isinstance(other, DyadicProb):
            return NotImplemented
        exp = max(self.exp, other.exp)
        num = (self.num << (exp - self.exp)) - (other.num << (exp - other.exp))
        return DyadicProb(num, exp)

    def __eq__(self, other) -> bool:
        """Compare exactly against another probability or a rational."""
        if isinstance(other, DyadicProb):
            return (self.num, self.exp) == (other.num, other.exp)
        if isinstance(other, (int, Fraction)):
            return self.as_fraction() == other
        return NotImplemented

    def __lt__(self, other) -> bool:
        """Order exactly."""
        if isinstance(other, DyadicProb):
            return self.as_fraction() < other.as_fraction()
        if isinstance(other, (int, Fraction)):
            return self.as_fraction() < other
        return NotImplemented

    def __hash__(self) -> int:
        """Hash like the equivalent fraction."""
        return hash(self.as_fraction())

    def __float__(self) -> float:
        """Convert to float for reporting."""
        return float(self.as_fraction())

    def __repr__(self) -> str:
        """Show as ``num/2^exp``."""
        return f"DyadicProb({self.num}/2^{self.exp})"


class DyadicPMF:
    """Sparse probability mass function over integers with dyadic probabilities.

    The PMF is stored as integer ``weights`` over the common denominator
    ``2**exp``; zero weights are dropped and the representation is reduced.
    Error PMFs use signed keys, operand and slice PMFs nonnegative ones.
    """

    __slots__ = ('_weights', '_exp')

    def __init__(self, weights: Mapping[int, int], exp: int):
        """Drop zero weights and reduce the common exponent."""
        ws = {int(k): int(w) for k, w in weights.items() if w}
        if any(w < 0 for w in ws.values()):
            raise ValueError("negative probability weight")
        acc = 0
        for w in ws.values():
            acc |= w
        if acc:
            shift = min(_trailing_zeros(acc), exp)
            if shift:
                ws = {k: w >> shift for k, w in ws.items()}
                exp -= shift
        self._weights: Dict[int, int] = ws
        self._exp = exp

    # ================> Constructors <================
    @classmethod
    def point(cls, value: int = 0) -> 'DyadicPMF':
        """Point mass at ``value``."""
        return cls({value: 1}, 0)

    @classmethod
    def uniform(cls, n_bits: int) -> 'DyadicPMF':
        """Uniform distribution of an ``n_bits`` wide unsigned operand."""
        return cls({v: 1 for v in range(1 << n_bits)}, n_bits)

    @classmethod
    def bernoulli(cls, p: DyadicProb, value: int) -> 'DyadicPMF':
        """Distribution taking ``value`` with probability ``p`` and 0 otherwise."""
        return cls({0: (1 << p.exp) - p.num, value: p.num}, p.exp)

    @classmethod
    def from_probs(cls, probs: Mapping[int, DyadicProb]) -> 'DyadicPMF':
        """Build a PMF from a mapping of values to probabilities."""
        exp = max((p.exp for p in probs.values()), default=0)
        return cls({k: p.num << (exp - p.exp) for k, p in probs.items()}, exp)

    @classmethod
    def from_counts(cls, counts: Mapping[int, int], total: int) -> 'DyadicPMF':
        """Build a PMF from occurrence counts over ``total`` equally likely samples."""
        if total <= 0 or total & (total - 1):
            raise ValueError(f"the sample count {total} is not a power of two")
        if sum(counts.values()) != total:
            raise ValueError("the counts do not add up to the sample count")
        return cls(counts, total.bit_length() - 1)

    # ================> Access <================
    @property
    def exp(self) -> int:
        """Exponent of the common denominator."""
        return self._exp

    @property
    def weights(self) -> Mapping[int, int]:
        """Integer weights over ``2**exp``."""
        return dict(self._weights)

    def __len__(self) -> int:
        """Number of values with nonzero probability."""
        return len(self._weights)

    def __iter__(self) -> Iterator[int]:
        """Iterate over the support in ascending order."""
        return iter(sorted(self._weights))

    def __contains__(self, value) -> bool:
        """Check whether ``value`` has nonzero probability."""
        return value in self._weights

    def support(self) -> List[int]:
        """Values with nonzero probability, ascending."""
        return sorted(self._weights)

    def weight(self, value: int) -> int:
        """Integer weight of ``value`` (0 outside the support)."""
        return self._weights.get(value, 0)

    def prob(self, value: int) -> DyadicProb:
        """Probability of ``value``."""
        return DyadicProb(self._weights.get(value, 0), self._exp)

    def items(self) -> List[Tuple[int, DyadicProb]]:
        """``(value, probability)`` pairs sorted by value."""
        return [(k, DyadicProb(self._weights[k], self._exp)) for k in sorted(self._weights)]

    def fractions(self) -> Dict[int, Fraction]:
        """Probabilities as fractions."""
        den = 1 << self._exp
        return {k: Fraction(w, den) for k, w in self._weights.items()}

    def total(self) -> Fraction:
        """Sum of all probabilities."""
        return Fraction(sum(self._weights.values()), 1 << self._exp)

    def is_normalized(self) -> bool:
        """Check that the probabilities sum exactly to one."""
        return sum(self._weights.values()) == (1 << self._exp)

    # ================> Transformations <================
    def convolve(self, other: 'DyadicPMF') -> 'DyadicPMF':
        """Distribution of the sum of two independent variables."""
        acc: Dict[int, int] = {}
        for k1, w1 in self._weights.items():
            for k2, w2 in other._weights.items():
                key = k1 + k2
                acc[key] = acc.get(key, 0) + w1 * w2
        return DyadicPMF(acc, self._exp + other._exp)

    def merge(self, other: 'DyadicPMF') -> 'DyadicPMF':
        """Add the masses of two disjoint events, e.g. the paths reaching one carry state."""
        exp = max(self._exp, other._exp)
        acc = {k: w << (exp - self._exp) for k, w in self._weights.items()}
        for k, w in other._weights.items():
            acc[k] = acc.get(k, 0) + (w << (exp - other._exp))
        return DyadicPMF(acc, exp)

    def scaled(self, shift: int) -> 'DyadicPMF':
        """Multiply every value by the positional weight ``2**shift``."""
        factor = 1 << shift
        return DyadicPMF({k * factor: w for k, w in self._weights.items()}, self._exp)

    def map_values(self, function) -> 'DyadicPMF':
        """Push the distribution through ``function``, merging colliding values."""
        acc: Dict[int, int] = {}
        for k, w in self._weights.items():
            key = function(k)
            acc[key] = acc.get(key, 0) + w
        return DyadicPMF(acc, self._exp)

    # ================> Moments <================
    def mean(self) -> Fraction:
        """Expected value."""
        return Fraction(sum(k * w for k, w in self._weights.items()), 1 << self._exp)

    def mean_abs(self) -> Fraction:
        """Expected absolute value."""
        return Fraction(sum(abs(k) * w for k, w in self._weights.items()), 1 << self._exp)

    def second_moment(self) -> Fraction:
        """Expected square."""
        return Fraction(sum(k * k * w for k, w in self._weights.items()), 1 << self._exp)

    def max_abs(self) -> int:
        """Largest absolute value in the support."""
        return max((abs(k) for k in self._weights), default=0)

    def lowest(self) -> int:
        """Smallest value in the support."""
        return min(self._weights)

    def highest(self) -> int:
        """Largest value in the support."""
        return max(self._weights)

    def is_nonnegative(self) -> bool:
        """Check that every value in the support is nonnegative."""
        return all(k >= 0 for k in self._weights)

    def __eq__(self, other) -> bool:
        """Compare exactly."""
        if not isinstance(other, DyadicPMF):
            return NotImplemented
        return self._exp == other._exp and self._weights == other._weights

    def __hash__(self) -> int:
        """Hash the reduced representation."""
        return hash((self._exp, frozenset(self._weights.items())))

    def __repr__(self) -> str:
        """Show the weights over the common denominator."""
        body = ', '.join(f"{k}: {self._weights[k]}" for k in sorted(self._weights))
        return f"DyadicPMF({{{body}}} / 2^{self._exp})"


#: PMF of an error value
ErrorPMF = DyadicPMF


def convolve_all(pmfs: Iterable[DyadicPMF]) -> DyadicPMF:
    """Convolve a sequence of independent PMFs."""
    acc = DyadicPMF.point(0)
    for pmf in pmfs:
        acc = acc.convolve(pmf)
    return acc
