"""Deterministic samplers for fundamental-domain points used across tests.

All samples carry exact rational data so domain membership is decided
exactly at construction; approximation only enters through the ball
rendering inside the library.
"""

from __future__ import annotations

import math
from fractions import Fraction

from singprod.errors import DomainError
from singprod.jeval import FundamentalPoint


def sample_domain_point(rng, im_max: float = 3.0) -> FundamentalPoint:
    """Random point of the closed fundamental domain with rational data."""
    while True:
        re = Fraction(rng.randint(-500, 500), 1000)
        im_floor = math.sqrt(max(0.0, 1.0 - float(re) ** 2))
        if rng.random() < 0.7:
            target = im_floor * (1.0 + 0.5 * rng.random())
        else:
            target = im_floor + (im_max - im_floor) * rng.random()
        im = Fraction(target).limit_denominator(10**9)
        if re * re + im * im >= 1 and im > 0:
            return FundamentalPoint.from_rationals(re, im)


def sample_tall_point(rng, im_min: float, im_max: float) -> FundamentalPoint:
    """Domain point with large imaginary part (tiny |q|)."""
    re = Fraction(rng.randint(-500, 500), 1000)
    im = Fraction(im_min + (im_max - im_min) * rng.random()).limit_denominator(10**9)
    return FundamentalPoint.from_rationals(re, im)


def sample_near_zeta6(rng, d_min: float, d_max: float) -> FundamentalPoint:
    """Point at distance ~[d_min, d_max] from the corner (1 + sqrt(-3))/2.

    Directions are drawn inward (angle between 90 and 120 degrees from
    the positive real axis), which keeps the point inside the domain.
    """
    while True:
        log_t = math.log10(d_min * 1.2) + rng.random() * (
            math.log10(d_max / 1.2) - math.log10(d_min * 1.2)
        )
        t = 10.0**log_t
        theta = math.radians(90 + 30 * rng.random())
        dre = Fraction(t * math.cos(theta)).limit_denominator(10**15)
        dim = Fraction(t * math.sin(theta)).limit_denominator(10**15)
        if dre > 0 or dim <= 0:
            continue
        dist_sq = dre * dre + dim * dim
        if not Fraction(d_min) ** 2 <= dist_sq <= Fraction(d_max) ** 2:
            continue
        try:
            return FundamentalPoint.from_zeta6_offset(dre, dim)
        except DomainError:
            continue


def sample_unit_circle(rng) -> tuple[FundamentalPoint, FundamentalPoint]:
    """(z, -1/z) pair on the unit-circle boundary arc, both in the domain.

    Rational circle points: re = (1-t^2)/(1+t^2), im = 2t/(1+t^2); for
    t in (0.578, 1] the angle stays in (60, 90] degrees, so both the
    point and its reflection (-re, im) = -1/z lie in the closed domain.
    """
    while True:
        t = Fraction(rng.randint(580, 1000), 1000)
        den = 1 + t * t
        re = (1 - t * t) / den
        im = 2 * t / den
        if 0 <= re <= Fraction(1, 2):
            return (
                FundamentalPoint.from_rationals(re, im),
                FundamentalPoint.from_rationals(-re, im),
            )


def sample_left_edge(rng) -> tuple[FundamentalPoint, FundamentalPoint]:
    """(z, z+1) with Re z = -1/2; both on the domain boundary."""
    im = Fraction(rng.randint(8700, 30000), 10000)
    return (
        FundamentalPoint.from_rationals(Fraction(-1, 2), im),
        FundamentalPoint.from_rationals(Fraction(1, 2), im),
    )
