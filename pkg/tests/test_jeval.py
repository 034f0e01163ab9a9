"""Rigorous j-evaluation: frozen examples and the estimate verifications."""

from __future__ import annotations

import random
from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr, mpq

from sampling import (
    sample_domain_point,
    sample_left_edge,
    sample_near_zeta6,
    sample_tall_point,
    sample_unit_circle,
)
from singprod import qforms
from singprod.errors import DomainError
from singprod.jeval import (
    FundamentalPoint,
    Half,
    Regime,
    check_near_zeta6,
    check_q_approx,
    eval_j,
    q_of,
    schwarz_coefficient,
    third_derivative_at_zeta6,
    zeta6_point,
)

REF = gmpy2.context(precision=512)


def _close(ball, ref, tol="1e-20") -> bool:
    return abs(mpq(ball.mid.real) - mpq(ref)) < mpq(mpfr(tol)) and ball.rad < mpfr(tol)


def tau_point(delta: int, index: int = 0) -> FundamentalPoint:
    return FundamentalPoint.from_tau(qforms.tau_points(delta)[index])


# -- q_of -------------------------------------------------------------------


def test_q_at_i():
    q = q_of(FundamentalPoint.from_rationals(0, 1), 128)
    ref = REF.exp(REF.mul(mpfr(-2, 512), REF.const_pi()))
    assert _close(q, ref)
    assert q.imag_contains_zero()


def test_q_at_i_sqrt3():
    # tau of the discriminant -12 principal form is exactly i*sqrt(3)
    q = q_of(tau_point(-12), 128)
    ref = REF.exp(REF.mul(mpfr(-2, 512), REF.mul(REF.const_pi(), REF.sqrt(mpfr(3, 512)))))
    assert _close(q, ref)
    assert q.mid.real > 0  # real and positive, ~1.87e-5
    assert abs(mpq(q.mid.real) - mpq(mpfr("1.87e-5"))) < mpq(1, 10**7)


def test_q_at_zeta6():
    q = q_of(zeta6_point(), 128)
    ref = REF.exp(REF.mul(REF.const_pi(), REF.sqrt(mpfr(3, 512))))
    # q = -e^(-pi sqrt(3)), the e^(i pi) factor flips the sign
    assert abs(mpq(q.mid.real) + 1 / mpq(ref)) < mpq(1, 10**30)
    assert q.imag_contains_zero()


def test_q_requires_positive_imag():
    with pytest.raises(DomainError):
        FundamentalPoint.from_rationals(0, -1)


def test_q_magnitude_bound_on_domain():
    # |q| <= e^(-pi sqrt(3)) everywhere on the domain
    down = gmpy2.context(precision=128, round=gmpy2.RoundDown)
    up = gmpy2.context(precision=128, round=gmpy2.RoundUp)
    exponent = down.mul(down.const_pi(), down.sqrt(mpfr(3, 128)))
    bound = up.exp(gmpy2.context(precision=128).minus(exponent))
    rng = random.Random(2024)
    for _ in range(50):
        z = sample_domain_point(rng)
        q = q_of(z, 96)
        assert q.mag_lower() <= bound


# -- eval_j -----------------------------------------------------------------


def test_j_at_known_points():
    j1 = eval_j(FundamentalPoint.from_rationals(0, 1), 128)
    assert j1.contains_rational(1728) and j1.rad < mpfr("1e-30")
    j2 = eval_j(tau_point(-7), 128)
    assert j2.contains_rational(-3375)
    j3 = eval_j(zeta6_point(), 128)
    assert j3.contains_rational(0)


def test_j_rejects_low_precision_and_outside_points():
    with pytest.raises(DomainError):
        eval_j(FundamentalPoint.from_rationals(0, 1), 32)
    with pytest.raises(DomainError):
        FundamentalPoint.from_rationals(Fraction(3, 4), 2)
    with pytest.raises(DomainError):
        FundamentalPoint.from_rationals(0, Fraction(1, 2))


def test_j_ball_containment_across_precisions():
    rng = random.Random(11)
    for _ in range(30):
        z = sample_domain_point(rng)
        lo = eval_j(z, 96)
        hi = eval_j(z, 192)
        assert hi.overlaps(lo)
        assert hi.contained_in_inflated(lo, 2)


def test_j_real_on_a1_forms():
    for delta in (-7, -15, -23, -40, -163, -427):
        tau = qforms.tau_points(delta)[0]
        assert tau.form.a == 1
        ball = eval_j(FundamentalPoint.from_tau(tau), 128)
        assert ball.imag_contains_zero()


def test_modularity_on_boundary():
    rng = random.Random(5)
    for _ in range(10):
        z, z_shift = sample_left_edge(rng)
        a, b = eval_j(z, 128), eval_j(z_shift, 128)
        assert a.overlaps(b) and b.contained_in_inflated(a, 4)
    for _ in range(10):
        z, z_inv = sample_unit_circle(rng)
        a, b = eval_j(z, 128), eval_j(z_inv, 128)
        assert a.overlaps(b) and b.contained_in_inflated(a, 4)


# -- the 2079 gap -----------------------------------------------------------


def test_q_approx_frozen_values():
    # at z = i: | |j| - |1/q| | = 1728 - e^(2 pi) = 1192.5083444752...
    r = check_q_approx(FundamentalPoint.from_rationals(0, 1))
    assert abs(mpq(r.mid.real) - _mpq_dec("1192.50834447523526")) < mpq(1, 10**8)
    # at zeta6: j = 0, so the residual is e^(pi sqrt 3) = 230.7645883...
    r6 = check_q_approx(zeta6_point())
    assert abs(mpq(r6.mid.real) - _mpq_dec("230.76458831914576")) < mpq(1, 10**8)
    # far up the cusp the residual approaches the constant term 744
    r10 = check_q_approx(FundamentalPoint.from_rationals(0, 10))
    assert abs(mpq(r10.mid.real) - 744) < mpq(1, 10**15)


def _mpq_dec(text: str) -> mpq:
    whole, frac = text.split(".")
    return mpq(int(whole + frac), 10 ** len(frac))


def test_q_approx_gap_holds_on_samples():
    rng = random.Random(404)
    for _ in range(150):
        z = sample_domain_point(rng)
        r = check_q_approx(z)
        assert mpq(r.mag_upper()) <= 2079
    for _ in range(5):
        z = sample_tall_point(rng, 30.0, 50.0)
        r = check_q_approx(z)
        assert mpq(r.mag_upper()) <= 2079


# -- behavior near the triple zero ------------------------------------------


def test_near_zeta6_vertical_offset():
    z = FundamentalPoint.from_zeta6_offset(0, Fraction(1, 10_000))
    j_abs, dist, regime = check_near_zeta6(z)
    assert regime is Regime.NEAR
    # 44000 * 1e-12 <= |j| <= 47000 * 1e-12
    assert mpq(44, 10**9) <= mpq(j_abs.mid.real) <= mpq(47, 10**9)
    assert abs(mpq(dist.mid.real) - mpq(1, 10**4)) < mpq(1, 10**20)


def test_far_regime_at_i():
    z = FundamentalPoint.from_rationals(0, 1)
    j_abs, dist, regime = check_near_zeta6(z)
    assert regime is Regime.FAR
    assert j_abs.contains_rational(1728)


def test_near_zeta6_inward_direction():
    z = FundamentalPoint.from_zeta6_offset(Fraction(-1, 4000), Fraction(433, 1_000_000))
    j_abs, dist, regime = check_near_zeta6(z)
    assert regime is Regime.NEAR


def test_near_zeta6_sampled_envelope():
    rng = random.Random(77)
    for _ in range(40):
        z = sample_near_zeta6(rng, 1e-6, 1e-3)
        _, _, regime = check_near_zeta6(z)
        assert regime is Regime.NEAR


def test_far_regime_sampled():
    rng = random.Random(78)
    for _ in range(40):
        z = sample_domain_point(rng)
        if z.half is Half.MINUS:
            continue
        _, dist, regime = check_near_zeta6(z)
        if regime is Regime.FAR:
            assert dist.mag_lower() >= mpfr("1e-3")


def test_near_zeta6_rejects_left_half():
    with pytest.raises(DomainError):
        check_near_zeta6(FundamentalPoint.from_rationals(Fraction(-1, 4), 2))


# -- Taylor-remainder coefficient and the third derivative -------------------


def test_schwarz_coefficient_bound():
    down = gmpy2.context(precision=128, round=gmpy2.RoundDown)
    r_lo = down.div(down.sqrt(mpfr(3, 128)), 4)
    coeff = schwarz_coefficient(mpfr("45745.09"), r_lo, 23000, 3)
    assert coeff < 761000


def test_schwarz_coefficient_trivial():
    assert schwarz_coefficient(0, 1, 0, 0) == 0
    assert schwarz_coefficient(1, 1, 1, 1) == 2


def test_schwarz_coefficient_validation():
    with pytest.raises(DomainError):
        schwarz_coefficient(1, 0, 1, 1)
    with pytest.raises(DomainError):
        schwarz_coefficient(1, 1, -1, 1)


def test_third_derivative_value():
    ball = third_derivative_at_zeta6(128)
    assert ball.mid.real == 0
    imag = mpq(ball.mid.imag)
    assert abs(imag + _mpq_dec("274470.48387618747")) < mpq(1, 10**6)
    assert abs(imag / 6 + _mpq_dec("45745.08")) < mpq(1, 100)
    assert ball.rad < mpfr("1e-30")
