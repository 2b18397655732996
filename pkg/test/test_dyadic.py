"""Test the exact dyadic probabilities and PMFs."""
from fractions import Fraction

import pytest
from assertionlib import assertion

from hbba.analysis.dyadic import DyadicPMF, DyadicProb, convolve_all, dyadic_parts


def test_dyadic_parts():
    """Check the splitting of rationals."""
    assertion.eq(dyadic_parts(Fraction(3, 8)), (3, 3))
    assertion.eq(dyadic_parts(5), (5, 0))
    assertion.eq(dyadic_parts(Fraction(-459, 4)), (-459, 2))
    with pytest.raises(ValueError):
        dyadic_parts(Fraction(1, 3))


def test_prob_reduction():
    """Check that probabilities are stored reduced."""
    p = DyadicProb(4, 4)
    assertion.eq((p.num, p.exp), (1, 2))
    assertion.eq(DyadicProb(0, 7), DyadicProb.zero())
    assertion.eq(DyadicProb(8, 3), DyadicProb.one())
    assertion.eq(DyadicProb.from_fraction(Fraction(6, 16)), DyadicProb(3, 3))
    assertion.eq(hash(DyadicProb(2, 2)), hash(Fraction(1, 2)))


@pytest.mark.parametrize("num, exp", [(-1, 2), (5, 2), (1, -1)])
def test_prob_range(num: int, exp: int):
    """Check that values outside [0, 1] are rejected."""
    with pytest.raises(ValueError):
        DyadicProb(num, exp)


def test_prob_arithmetic():
    """Check the exact operations."""
    p = DyadicProb(3, 3)
    q = DyadicProb(1, 1)
    assertion.eq(p * q, DyadicProb(3, 4))
    assertion.eq(p + q, DyadicProb(7, 3))
    assertion.eq(q - p, DyadicProb(1, 3))
    assertion.eq(p.complement(), DyadicProb(5, 3))
    assertion.lt(p, q)
    assertion.eq(p, Fraction(3, 8))
    assertion.eq(float(p), 0.375)
    with pytest.raises(ValueError):
        p - q
    with pytest.raises(AttributeError):
        p.num = 1


def test_pmf_constructors():
    """Check the basic distributions."""
    u = DyadicPMF.uniform(2)
    assertion.eq(u.support(), [0, 1, 2, 3])
    assertion.eq(u.prob(2), DyadicProb(1, 2))
    assertion.truth(u.is_normalized())

    b = DyadicPMF.bernoulli(DyadicProb(1, 2), 16)
    assertion.eq(b.fractions(), {0: Fraction(1, 2), 16: Fraction(1, 2)})

    pmf = DyadicPMF.from_probs({0: DyadicProb(1, 1), 3: DyadicProb(1, 2), 5: DyadicProb(1, 2)})
    assertion.eq(pmf, DyadicPMF({0: 2, 3: 1, 5: 1}, 2))

    assertion.eq(DyadicPMF.from_counts({0: 6, 1: 2}, 8), DyadicPMF({0: 3, 1: 1}, 2))
    with pytest.raises(ValueError):
        DyadicPMF.from_counts({0: 5}, 6)
    with pytest.raises(ValueError):
        DyadicPMF.from_counts({0: 3}, 4)
    with pytest.raises(ValueError):
        DyadicPMF({0: -1}, 0)


def test_pmf_reduction():
    """Check that zero weights are dropped and the exponent is reduced."""
    pmf = DyadicPMF({0: 4, 1: 0, 2: 12}, 4)
    assertion.eq(pmf.exp, 2)
    assertion.eq(pmf.weights, {0: 1, 2: 3})
    assertion.eq(len(pmf), 2)
    assertion.contains(pmf, 2)
    assertion.contains(pmf, 1, invert=True)
    assertion.eq(pmf.weight(1), 0)


def test_pmf_convolution():
    """Check the distribution of a sum of independent variables."""
    u = DyadicPMF.uniform(1)
    two = u.convolve(u)
    assertion.eq(two, DyadicPMF({0: 1, 1: 2, 2: 1}, 2))
    assertion.eq(convolve_all([u, u]), two)
    assertion.eq(convolve_all([]), DyadicPMF.point(0))
    assertion.eq(two.mean(), 1)
    assertion.eq(two.second_moment(), Fraction(3, 2))


def test_pmf_transformations():
    """Check scaling and value maps."""
    pmf = DyadicPMF({-1: 1, 0: 2, 3: 1}, 2)
    assertion.eq(pmf.scaled(4), DyadicPMF({-16: 1, 0: 2, 48: 1}, 2))
    assertion.eq(pmf.map_values(abs), DyadicPMF({0: 2, 1: 1, 3: 1}, 2))
    assertion.eq(pmf.map_values(lambda v: 0), DyadicPMF.point(0))


def test_pmf_moments():
    """Check exact moments and bounds."""
    pmf = DyadicPMF({-14: 3, -13: 1, 0: 36, 1: 12, 2: 9, 3: 3}, 6)
    assertion.eq(pmf.mean_abs(), Fraction(94, 64))
    assertion.eq(pmf.mean(), Fraction(-42 - 13 + 12 + 18 + 9, 64))
    assertion.eq(pmf.max_abs(), 14)
    assertion.eq((pmf.lowest(), pmf.highest()), (-14, 3))
    assertion.is_(pmf.is_nonnegative(), False)
    assertion.eq(pmf.total(), 1)
    assertion.eq(pmf.support(), list(pmf))
    assertion.eq([v for v, _ in pmf.items()], pmf.support())


def test_pmf_hash():
    """Check that equal PMFs hash alike."""
    assertion.eq(hash(DyadicPMF({1: 2}, 1)), hash(DyadicPMF.point(1)))
    assertion.eq(len({DyadicPMF({1: 2}, 1), DyadicPMF.point(1)}), 1)


def test_pmf_merge():
    """Check the sum of the masses of disjoint events."""
    a = DyadicPMF({0: 1, 4: 1}, 2)
    b = DyadicPMF({4: 1}, 1)
    merged = a.merge(b)
    assertion.eq(merged, DyadicPMF({0: 1, 4: 3}, 2))
    assertion.truth(merged.is_normalized())
    assertion.truth(not a.is_normalized())
    assertion.eq(b.merge(a), merged)
