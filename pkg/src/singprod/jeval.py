"""Rigorous evaluation of the modular j-function on the fundamental domain.

The function is computed as j = 1728 * E4^3 / (E4^3 - E6^2) from the
weight-4 and weight-6 Eisenstein q-series, truncated with explicit
geometric tail bounds, in ball arithmetic.  The divisor-sum coefficients
grow polynomially (sigma_3(n) <= n^4, sigma_5(n) <= n^6), which keeps the
tail bounds one-line; on the fundamental domain |q| <= e^(-pi*sqrt(3)) ~
0.00433, so a few dozen terms suffice at any reasonable precision.

Evaluation points are carried as *exact* data (rational real part plus an
exact description of the imaginary part) so precision escalation can
re-render them at any working precision.  All magnitude comparisons in
the checking routines are ball-safe: an inequality is asserted only when
it holds for every value the balls may represent.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import gmpy2
from gmpy2 import mpfr, mpq

from .ball import _DOWN, _UP, Ball, BallContext
from .errors import DomainError, PrecisionError
from .qforms import TauPoint, validate_discriminant

# Verified gap between |j(z)| and |1/q_z| on the fundamental domain.
Q_APPROX_GAP = 2079

# Two-sided cubic envelope of |j| near its triple zero at (1+sqrt(-3))/2,
# valid for |z - zeta6| <= 10^-3, and the floor valid outside that disc.
CUBE_LOWER = 44000
CUBE_UPPER = 47000
NEAR_RADIUS = mpq(1, 1000)
FAR_FLOOR = mpq(44, 1_000_000)  # 4.4e-5

_MAX_RETRIES = 4
_LOG2E = 1.4426950408889634


class Half(enum.Enum):
    PLUS = "plus"  # Re z > 0
    MINUS = "minus"  # Re z < 0
    BOUNDARY = "boundary"  # Re z = 0, shared edge of the two halves


class Regime(enum.Enum):
    NEAR = "near"
    FAR = "far"


def _sign_a_plus_b_sqrt3(a: Fraction, b: Fraction) -> int:
    """Exact sign of a + b*sqrt(3)."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return 1 if b > 0 else -1
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    # opposite signs: compare a^2 with 3 b^2
    lhs, rhs = a * a, 3 * b * b
    if lhs == rhs:
        return 0
    bigger_is_rational = lhs > rhs
    if a > 0:
        return 1 if bigger_is_rational else -1
    return -1 if bigger_is_rational else 1


class FundamentalPoint:
    """Point of the closed fundamental domain with exactly re-renderable data.

    `half` tags which half of the domain the point lies in (the split is
    the line Re z = 0).  Construction validates domain membership exactly
    where the data allows and with 192-bit directed arithmetic otherwise.
    """

    __slots__ = ("re", "_im_kind", "_im_data", "half", "zeta6_offset")

    def __init__(self, re, im_kind, im_data, zeta6_offset=None):
        self.re = re
        self._im_kind = im_kind
        self._im_data = im_data
        self.zeta6_offset = zeta6_offset
        if re > 0:
            self.half = Half.PLUS
        elif re < 0:
            self.half = Half.MINUS
        else:
            self.half = Half.BOUNDARY

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_rationals(cls, re, im) -> "FundamentalPoint":
        re, im = Fraction(re), Fraction(im)
        if im <= 0:
            raise DomainError("imaginary part must be positive")
        if abs(re) > Fraction(1, 2):
            raise DomainError(f"|Re z| = {abs(re)} > 1/2, outside the domain")
        if re * re + im * im < 1:
            raise DomainError("|z| < 1, outside the fundamental domain")
        return cls(re, "rational", im)

    @classmethod
    def from_tau(cls, tau: TauPoint) -> "FundamentalPoint":
        validate_discriminant(tau.delta)
        form = tau.form
        if form.discriminant() != tau.delta:
            raise DomainError(f"form {form} does not have discriminant {tau.delta}")
        if not (form.is_reduced() and form.is_primitive()):
            raise DomainError(f"form {form} is not reduced and primitive")
        return cls(tau.re, "sqrt", (-tau.delta, 2 * form.a))

    @classmethod
    def from_zeta6_offset(cls, dre, dim) -> "FundamentalPoint":
        """Point (1/2 + dre) + (sqrt(3)/2 + dim) i with rational offsets."""
        dre, dim = Fraction(dre), Fraction(dim)
        re = Fraction(1, 2) + dre
        if abs(re) > Fraction(1, 2):
            raise DomainError("offset leaves |Re z| <= 1/2")
        # |z|^2 - 1 = (dre + dre^2 + dim^2) + dim * sqrt(3)
        if _sign_a_plus_b_sqrt3(dre + dre * dre + dim * dim, dim) < 0:
            raise DomainError("offset leaves the |z| >= 1 region")
        # Im z = sqrt(3)/2 + dim > 0 always for |dim| < 1/2; guard anyway
        if _sign_a_plus_b_sqrt3(dim, Fraction(1, 2)) <= 0:
            raise DomainError("imaginary part must stay positive")
        return cls(re, "zeta6", dim, zeta6_offset=(dre, dim))

    # -- rendering ------------------------------------------------------

    def im_ball(self, ctx: BallContext) -> Ball:
        if self._im_kind == "rational":
            return ctx.from_fraction(self._im_data)
        if self._im_kind == "sqrt":
            n, den = self._im_data
            return ctx.sqrt_fraction(Fraction(n, den * den))
        # zeta6: sqrt(3)/2 + dim
        s = ctx.sqrt_fraction(Fraction(3, 4))
        return ctx.add(s, ctx.from_fraction(self._im_data))

    def ball(self, prec: int) -> Ball:
        ctx = BallContext(prec)
        return ctx.add(ctx.from_fraction(self.re), ctx.mul_i(self.im_ball(ctx)))

    def im_float_upper(self) -> float:
        b = self.im_ball(BallContext(64))
        return float(_UP.add(b.mid.real, b.rad))

    def __repr__(self):
        return f"FundamentalPoint(re={self.re}, im~{self.im_float_upper():.6f})"


def zeta6_point() -> FundamentalPoint:
    return FundamentalPoint.from_zeta6_offset(0, 0)


def zeta6_ball(ctx: BallContext) -> Ball:
    return ctx.add(
        ctx.from_fraction(Fraction(1, 2)), ctx.mul_i(ctx.sqrt_fraction(Fraction(3, 4)))
    )


# -- divisor sums and q-series -----------------------------------------


@lru_cache(maxsize=4096)
def divisor_power_sum(n: int, k: int) -> int:
    """sigma_k(n): sum of d^k over the divisors d of n."""
    total = 0
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            total += d**k
            e = n // d
            if e != d:
                total += e**k
    return total


def _tail_bound(q_up: mpfr, n_terms: int, power: int, coeff: int) -> mpfr:
    """Upper bound for coeff * sum_{n > N} n^power * q_up^n.

    Valid whenever the term ratio rho = ((N+2)/(N+1))^power * q_up < 1;
    on the fundamental domain q_up < 0.005, so rho is tiny.
    """
    ratio = _UP.mul(
        _UP.pow(_UP.div(mpfr(n_terms + 2), mpfr(n_terms + 1)), power), q_up
    )
    if not ratio < 1:
        raise PrecisionError(f"tail ratio {ratio} >= 1; |q| too large")
    first = _UP.mul(
        mpfr(coeff),
        _UP.mul(_UP.pow(mpfr(n_terms + 1), power), _UP.pow(q_up, n_terms + 1)),
    )
    return _UP.div(first, _DOWN.sub(mpfr(1), ratio))


def _truncation_order(q_up: mpfr, work_prec: int) -> int:
    """Smallest N with the sigma_5 tail below 2^-(work_prec + 8)."""
    target = mpfr(2) ** (-(work_prec + 8))
    n = 4
    while _tail_bound(q_up, n, 6, 504) >= target:
        n += 4
        if n > 100_000:
            raise PrecisionError("series truncation order exploded")
    return n


def q_of(z: FundamentalPoint, precision: int = 128) -> Ball:
    """Nome q = exp(2*pi*i*z) as a ball."""
    ctx = BallContext(precision)
    return _q_ball(ctx, z)


def _q_ball(ctx: BallContext, z: FundamentalPoint) -> Ball:
    zb = z.ball(ctx.prec)
    if not _DOWN.sub(zb.mid.imag, zb.rad) > 0:
        raise DomainError("q is only defined for Im z > 0")
    exponent = ctx.mul(ctx.mul_i(ctx.scale_int(ctx.pi(), 2)), zb)
    return ctx.exp(exponent)


def _eisenstein_pair(ctx: BallContext, q: Ball, n_terms: int) -> tuple[Ball, Ball]:
    """(E4, E6) from the truncated series plus rigorous tail radii."""
    e4 = ctx.from_int(1)
    e6 = ctx.from_int(1)
    q_pow = ctx.from_int(1)
    for n in range(1, n_terms + 1):
        q_pow = ctx.mul(q_pow, q)
        e4 = ctx.add(e4, ctx.scale_int(q_pow, 240 * divisor_power_sum(n, 3)))
        e6 = ctx.sub(e6, ctx.scale_int(q_pow, 504 * divisor_power_sum(n, 5)))
    q_up = q.mag_upper()
    e4 = ctx.widen(e4, _tail_bound(q_up, n_terms, 4, 240))
    e6 = ctx.widen(e6, _tail_bound(q_up, n_terms, 6, 504))
    return e4, e6


def _eta_product_pow24(ctx: BallContext, q: Ball, n_terms: int) -> Ball:
    """prod_{n>=1} (1 - q^n)^24 with a multiplicative tail bound."""
    prod = ctx.from_int(1)
    q_pow = ctx.from_int(1)
    for n in range(1, n_terms + 1):
        q_pow = ctx.mul(q_pow, q)
        prod = ctx.mul(prod, ctx.sub_int(1, q_pow))
    prod = ctx.pow_int(prod, 24)
    q_up = q.mag_upper()
    if not q_up < mpfr("0.5"):
        raise PrecisionError("eta tail bound requires |q| < 1/2")
    # |log of the dropped factors| <= 24 * sum_{n>N} 2|q|^n
    log_tail = _UP.div(
        _UP.mul(mpfr(48), _UP.pow(q_up, n_terms + 1)), _DOWN.sub(mpfr(1), q_up)
    )
    rel = _UP.expm1(log_tail)
    return ctx.widen(prod, _UP.mul(prod.mag_upper(), rel))


def _guard_for(z: FundamentalPoint) -> int:
    # E4^3 - E6^2 cancels down to ~1728 q, which costs about
    # 2*pi*Im(z)*log2(e) bits of the working precision; budget them upfront.
    return 32 + int(2 * 3.15 * z.im_float_upper() * _LOG2E) + 8


def eval_j(z: FundamentalPoint, precision: int = 128) -> Ball:
    """Ball guaranteed to contain j(z); relative width <= 2^(8-precision).

    Starts at precision + guard bits (guard = 32 plus the predictable
    cancellation budget) and doubles the guard on failure, at most 4 times.
    """
    if precision < 64:
        raise DomainError(f"precision must be at least 64 bits, got {precision}")
    target = mpfr(2) ** (8 - precision)
    guard = _guard_for(z)
    last = None
    for _ in range(_MAX_RETRIES + 1):
        ctx = BallContext(precision + guard)
        try:
            j = _j_from_point(ctx, z)
        except PrecisionError:
            guard *= 2
            continue
        last = j
        bound = _UP.mul(target, max(mpfr(1), j.mag_upper()))
        if j.rad <= bound:
            return j
        guard *= 2
    raise PrecisionError(
        f"eval_j failed to reach 2^{8 - precision} relative width at {z!r}; "
        f"last radius {last.rad if last else 'n/a'}"
    )


def _j_from_point(ctx: BallContext, z: FundamentalPoint) -> Ball:
    q = _q_ball(ctx, z)
    n_terms = _truncation_order(q.mag_upper(), ctx.prec)
    e4, e6 = _eisenstein_pair(ctx, q, n_terms)
    e4_cubed = ctx.pow_int(e4, 3)
    denom = ctx.sub(e4_cubed, ctx.pow_int(e6, 2))
    if not denom.definitely_nonzero():
        raise PrecisionError("denominator ball E4^3 - E6^2 touches zero")
    return ctx.div(ctx.scale_int(e4_cubed, 1728), denom)


def _j_times_q(ctx: BallContext, z: FundamentalPoint) -> tuple[Ball, Ball]:
    """(j(z) * q_z, q_z) computed without the catastrophic cancellation.

    j*q = E4^3 / prod(1-q^n)^24 stays of size ~1, so the difference
    |j*q| - 1 = (|j| - |1/q|)*|q| can be extracted at full precision even
    when |j| itself is astronomically large.
    """
    q = _q_ball(ctx, z)
    n_terms = _truncation_order(q.mag_upper(), ctx.prec)
    e4, _ = _eisenstein_pair(ctx, q, n_terms)
    eta24 = _eta_product_pow24(ctx, q, n_terms)
    return ctx.div(ctx.pow_int(e4, 3), eta24), q


def check_q_approx(z: FundamentalPoint, precision: int = 128) -> Ball:
    """Real ball for | |j(z)| - |1/q_z| |; callers assert it <= 2079."""
    guard = _guard_for(z)
    for _ in range(_MAX_RETRIES + 1):
        ctx = BallContext(precision + guard)
        g, q = _j_times_q(ctx, z)
        # | |j| - |1/q| | = | |j*q| - 1 | / |q|
        residual = ctx.div(ctx.abs(ctx.sub_int(1, ctx.abs(g))), ctx.abs(q))
        bound = _UP.mul(mpfr(2) ** (-24), max(mpfr(1), residual.mag_upper()))
        if residual.rad <= bound:
            return residual
        guard *= 2
    raise PrecisionError(f"check_q_approx could not stabilize at {z!r}")


def check_near_zeta6(
    z: FundamentalPoint, precision: int = 256
) -> tuple[Ball, Ball, Regime]:
    """(|j(z)|, |z - zeta6|, regime) with the regime assertion performed.

    FAR (distance >= 10^-3): asserts |j(z)| >= 4.4e-5.  NEAR: asserts
    44000*d^3 <= |j(z)| <= 47000*d^3.  Assertions are ball-safe (they
    hold for every value inside the balls) and raise on failure.
    """
    if z.half is Half.MINUS:
        raise DomainError("check_near_zeta6 expects a point with Re z >= 0")
    ctx = BallContext(precision)
    if z.zeta6_offset is not None:
        dre, dim = z.zeta6_offset
        dist = ctx.sqrt_fraction(dre * dre + dim * dim)
    else:
        diff = ctx.sub(z.ball(ctx.prec), zeta6_ball(ctx))
        dist = ctx.abs(diff)
    j_abs = ctx.abs(eval_j(z, precision))
    d_lo, d_up = dist.mag_lower(), dist.mag_upper()
    j_lo, j_up = j_abs.mag_lower(), j_abs.mag_upper()
    if mpq(d_lo) >= NEAR_RADIUS:
        regime = Regime.FAR
        if not mpq(j_lo) >= FAR_FLOOR:
            raise DomainError(
                f"far-regime floor violated at {z!r}: |j| lower bound {j_lo}"
            )
    elif mpq(d_up) <= NEAR_RADIUS:
        regime = Regime.NEAR
        lower_ok = mpq(j_lo) >= CUBE_LOWER * mpq(d_up) ** 3
        upper_ok = mpq(j_up) <= CUBE_UPPER * mpq(d_lo) ** 3
        if not (lower_ok and upper_ok):
            raise DomainError(
                f"cubic envelope violated at {z!r}: |j| in [{j_lo}, {j_up}], "
                f"|z - zeta6| in [{d_lo}, {d_up}]"
            )
    else:
        raise PrecisionError(
            f"distance ball [{d_lo}, {d_up}] straddles the 10^-3 regime split"
        )
    return j_abs, dist, regime


def schwarz_coefficient(a_mag, big_r, b_sup, order: int) -> mpfr:
    """Upper bound for (|A| R^l + B) / R^(l+1), rounded outward.

    This is the coefficient of |z - a|^(l+1) in the Taylor-remainder
    estimate for a function with an order-l zero, |f| <= B on the radius-R
    disc, and leading coefficient of magnitude |A|.
    """
    big_r = mpfr(big_r, 128)
    a_mag = mpfr(a_mag, 128)
    b_sup = mpfr(b_sup, 128)
    if not big_r > 0:
        raise DomainError(f"disc radius must be positive, got {big_r}")
    if b_sup < 0 or a_mag < 0 or order < 0:
        raise DomainError("|A|, B and the vanishing order must be nonnegative")
    up = gmpy2.context(precision=128, round=gmpy2.RoundUp)
    down = gmpy2.context(precision=128, round=gmpy2.RoundDown)
    numerator = up.add(up.mul(a_mag, up.pow(big_r, order)), b_sup)
    denominator = down.pow(big_r, order + 1)
    return up.div(numerator, denominator)


def third_derivative_at_zeta6(precision: int = 128) -> Ball:
    """Ball for j'''(zeta6) = -162 * Gamma(1/3)^18 * pi^-9 * i.

    The value is purely imaginary; the returned ball has real center 0.
    """
    if precision < 64:
        raise DomainError(f"precision must be at least 64 bits, got {precision}")
    work = precision + 32
    up = gmpy2.context(precision=work, round=gmpy2.RoundUp)
    down = gmpy2.context(precision=work, round=gmpy2.RoundDown)
    third_lo = down.div(1, mpfr(3, work))
    third_hi = up.div(1, mpfr(3, work))
    # Gamma is decreasing on (0, 1): evaluate at the swapped endpoints.
    g_lo = down.gamma(third_hi)
    g_hi = up.gamma(third_lo)
    num_lo = down.mul(mpfr(162), down.pow(g_lo, 18))
    num_hi = up.mul(mpfr(162), up.pow(g_hi, 18))
    pi_lo = down.const_pi()
    pi_hi = up.const_pi()
    mag_lo = down.div(num_lo, up.pow(pi_hi, 9))
    mag_hi = up.div(num_hi, down.pow(pi_lo, 9))
    ctx = BallContext(work)
    magnitude = ctx.from_real_interval(mag_lo, mag_hi)
    return ctx.neg(ctx.mul_i(magnitude))
