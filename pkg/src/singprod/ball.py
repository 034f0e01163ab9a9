"""Arbitrary-precision complex ball arithmetic on top of MPFR/MPC (gmpy2).

A ball is a pair ``(mid, rad)``: the value it represents is guaranteed to
lie within absolute distance ``rad`` of the complex center ``mid``.
Centers are computed round-to-nearest at the working precision of a
:class:`BallContext`; radii are accumulated in a dedicated 64-bit RoundUp
context, so every propagation step is a true upper bound.  Precision is
always a per-context parameter -- nothing here touches gmpy2's ambient
thread context.

Containment predicates (``contains_rational``, ``imag_contains_zero``)
are evaluated in exact rational arithmetic: an MPFR float is an exact
dyadic rational, so these checks involve no rounding at all.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2
from gmpy2 import mpc, mpfr, mpq

from .errors import PrecisionError

RADIUS_PREC = 64

_UP = gmpy2.context(precision=RADIUS_PREC, round=gmpy2.RoundUp)
_DOWN = gmpy2.context(precision=RADIUS_PREC, round=gmpy2.RoundDown)
_RZERO = mpfr(0)


def _as_mpq(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def to_fraction(x: mpfr) -> Fraction:
    """Exact Fraction equal to the (dyadic rational) mpfr value."""
    q = mpq(x)
    return Fraction(int(q.numerator), int(q.denominator))


def _neg_exact(z):
    """Exact negation of mpfr/mpc at the operand's own precision.

    Python operators on gmpy2 values round through the ambient thread
    context (53 bits by default), so `-z` silently destroys precision;
    negating inside a context of matching precision is exact.
    """
    if isinstance(z, mpc):
        pr, pi = z.precision
        return gmpy2.context(precision=max(pr, pi)).minus(z)
    return gmpy2.context(precision=z.precision).minus(z)


def _mul_i_exact(z: mpc) -> mpc:
    """Exact multiplication of an mpc by the imaginary unit."""
    pr, pi = z.precision
    return mpc(
        gmpy2.context(precision=pi).minus(z.imag), z.real, precision=(pi, pr)
    )


def _mag_up(z) -> mpfr:
    """Upper bound for |z|; z is mpfr or mpc."""
    if isinstance(z, mpc):
        return _UP.hypot(z.real, z.imag)
    return _UP.abs(z)


def _mag_down(z) -> mpfr:
    """Lower bound for |z|; z is mpfr or mpc."""
    if isinstance(z, mpc):
        return _DOWN.hypot(z.real, z.imag)
    return _DOWN.abs(z)


class Ball:
    """Complex ball; the true value lies within `rad` of `mid`."""

    __slots__ = ("mid", "rad")

    def __init__(self, mid: mpc, rad: mpfr = _RZERO):
        self.mid = mid
        self.rad = rad

    def __repr__(self):
        return f"Ball({self.mid} ± {self.rad})"

    def mag_upper(self) -> mpfr:
        """Rigorous upper bound for |value|."""
        return _UP.add(_mag_up(self.mid), self.rad)

    def mag_lower(self) -> mpfr:
        """Rigorous lower bound for |value| (floored at 0)."""
        lo = _DOWN.sub(_mag_down(self.mid), self.rad)
        return lo if lo > 0 else mpfr(0)

    def definitely_nonzero(self) -> bool:
        return self.mag_lower() > 0

    def real_lower(self) -> mpfr:
        return _DOWN.sub(self.mid.real, self.rad)

    def real_upper(self) -> mpfr:
        return _UP.add(self.mid.real, self.rad)

    def contains_rational(self, re, im=0) -> bool:
        """Exact test: is the point re + im*i inside the closed ball?"""
        dx = mpq(self.mid.real) - _as_mpq(re)
        dy = mpq(self.mid.imag) - _as_mpq(im)
        return dx * dx + dy * dy <= mpq(self.rad) ** 2

    def imag_contains_zero(self) -> bool:
        """Exact test: does the imaginary-part interval contain 0?"""
        return abs(mpq(self.mid.imag)) <= mpq(self.rad)

    def overlaps(self, other: "Ball") -> bool:
        d = _DOWN.hypot(
            _DOWN.sub(self.mid.real, other.mid.real),
            _DOWN.sub(self.mid.imag, other.mid.imag),
        )
        return d <= _UP.add(self.rad, other.rad)

    def contained_in_inflated(self, other: "Ball", factor: int = 2) -> bool:
        """Is this ball inside `other` with its radius scaled by `factor`?"""
        d = _UP.hypot(
            _UP.sub(self.mid.real, other.mid.real),
            _UP.sub(self.mid.imag, other.mid.imag),
        )
        return _UP.add(d, self.rad) <= _DOWN.mul(other.rad, mpfr(factor))


class BallContext:
    """Factory and arithmetic for balls at a fixed working precision."""

    __slots__ = ("prec", "_cx", "_two_ulp")

    def __init__(self, prec: int):
        if prec < 2:
            raise PrecisionError(f"working precision {prec} is too small")
        self.prec = prec
        self._cx = gmpy2.context(precision=prec)
        # 2^(1-prec) dominates the componentwise 0.5-ulp rounding of every
        # correctly rounded MPC operation: |err| <= 2^-prec * (|re|+|im|).
        self._two_ulp = mpfr(2) ** (1 - prec)

    # -- rounding slack ------------------------------------------------

    def _rnd(self, z) -> mpfr:
        if isinstance(z, mpc):
            s = _UP.add(_UP.abs(z.real), _UP.abs(z.imag))
        else:
            s = _UP.abs(z)
        return _UP.mul(s, self._two_ulp)

    # -- constructors ---------------------------------------------------

    def from_int(self, n: int) -> Ball:
        mid = mpc(mpfr(n, self.prec), mpfr(0, self.prec), precision=self.prec)
        return Ball(mid, self._rnd(mid))

    def from_fraction(self, re, im=0) -> Ball:
        mid = mpc(
            mpfr(_as_mpq(re), self.prec),
            mpfr(_as_mpq(im), self.prec),
            precision=self.prec,
        )
        return Ball(mid, _UP.mul(self._rnd(mid), mpfr(2)))

    def from_real_interval(self, lo: mpfr, hi: mpfr) -> Ball:
        if not lo <= hi:
            raise PrecisionError("empty interval")
        mid = self._cx.div(self._cx.add(lo, hi), 2)
        rad = _UP.add(_UP.mul(_UP.sub(hi, lo), mpfr("0.5")), self._rnd(mid))
        return Ball(mpc(mid, mpfr(0, self.prec), precision=self.prec), rad)

    def pi(self) -> Ball:
        mid = self._cx.const_pi()
        ball = Ball(mpc(mid, mpfr(0, self.prec), precision=self.prec))
        return Ball(ball.mid, self._rnd(ball.mid))

    def sqrt_fraction(self, fr) -> Ball:
        """Ball for the square root of an exact nonnegative rational."""
        q = _as_mpq(fr)
        if q < 0:
            raise ValueError("sqrt of a negative rational")
        mid_r = self._cx.sqrt(mpfr(q, self.prec))
        mid = mpc(mid_r, mpfr(0, self.prec), precision=self.prec)
        # two roundings: mpq->mpfr conversion, then sqrt
        return Ball(mid, _UP.mul(self._rnd(mid), mpfr(2)))

    # -- arithmetic -----------------------------------------------------

    def add(self, x: Ball, y: Ball) -> Ball:
        mid = self._cx.add(x.mid, y.mid)
        rad = _UP.add(_UP.add(x.rad, y.rad), self._rnd(mid))
        return Ball(mid, rad)

    def sub(self, x: Ball, y: Ball) -> Ball:
        mid = self._cx.sub(x.mid, y.mid)
        rad = _UP.add(_UP.add(x.rad, y.rad), self._rnd(mid))
        return Ball(mid, rad)

    def neg(self, x: Ball) -> Ball:
        return Ball(_neg_exact(x.mid), x.rad)

    def mul_i(self, x: Ball) -> Ball:
        """Multiply by the imaginary unit (exact rotation)."""
        return Ball(_mul_i_exact(x.mid), x.rad)

    def mul(self, x: Ball, y: Ball) -> Ball:
        mid = self._cx.mul(x.mid, y.mid)
        cross = _UP.add(
            _UP.add(_UP.mul(_mag_up(x.mid), y.rad), _UP.mul(_mag_up(y.mid), x.rad)),
            _UP.mul(x.rad, y.rad),
        )
        return Ball(mid, _UP.add(cross, self._rnd(mid)))

    def scale_int(self, x: Ball, n: int) -> Ball:
        mid = self._cx.mul(x.mid, n)
        rad = _UP.add(_UP.mul(x.rad, _UP.abs(mpfr(n, RADIUS_PREC))), self._rnd(mid))
        return Ball(mid, rad)

    def inv(self, x: Ball) -> Ball:
        m = _mag_down(x.mid)
        if not x.rad < m:
            raise PrecisionError("cannot invert a ball that may contain zero")
        mid = self._cx.div(1, x.mid)
        denom = _DOWN.mul(m, _DOWN.sub(m, x.rad))
        rad = _UP.add(_UP.div(x.rad, denom), self._rnd(mid))
        return Ball(mid, rad)

    def div(self, x: Ball, y: Ball) -> Ball:
        return self.mul(x, self.inv(y))

    def pow_int(self, x: Ball, k: int) -> Ball:
        if k < 0:
            return self.inv(self.pow_int(x, -k))
        result = self.from_int(1)
        base = x
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base) if k > 1 else base
            k >>= 1
        return result

    def exp(self, x: Ball) -> Ball:
        mid = self._cx.exp(x.mid)
        growth = _UP.expm1(x.rad)
        rad = _UP.add(
            _UP.mul(_UP.add(_mag_up(mid), self._rnd(mid)), growth), self._rnd(mid)
        )
        return Ball(mid, rad)

    def abs(self, x: Ball) -> Ball:
        """Real ball for |x| (returned with zero imaginary center)."""
        mid_r = self._cx.abs(x.mid)
        mid = mpc(mid_r, mpfr(0, self.prec), precision=self.prec)
        return Ball(mid, _UP.add(x.rad, self._rnd(mid)))

    def sub_int(self, n: int, x: Ball) -> Ball:
        return self.sub(self.from_int(n), x)

    def add_int(self, x: Ball, n: int) -> Ball:
        return self.add(x, self.from_int(n))

    def widen(self, x: Ball, extra: mpfr) -> Ball:
        """Add `extra` (an upper-bounded real) to the radius."""
        return Ball(x.mid, _UP.add(x.rad, extra))
