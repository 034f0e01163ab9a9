"""Exact class polynomial construction, ratio vectors, and the cache."""

from __future__ import annotations

import json
import math
from fractions import Fraction

import pytest
from gmpy2 import mpfr

from singprod import tables
from singprod.ball import BallContext
from singprod.errors import (
    CacheMiss,
    CorruptCacheEntry,
    DegreeMismatch,
    DomainError,
)
from singprod.hcp import (
    HilbertClassPoly,
    PolyCache,
    RatioTag,
    hilbert_class_poly,
    is_irreducible,
    product_compatible,
    ratio_vector,
    required_precision,
    rounding_residuals,
    verify_roots,
)
from singprod.jeval import FundamentalPoint, eval_j
from singprod.qforms import class_number, enumerate_forms, tau_points, valid_discriminants

# frozen from a doubled-precision recomputation; also root-verified below
H_MINUS_23 = (12771880859375, -5151296875, 3491750)


def spec_floor(delta: int) -> int:
    """The documented lower bound for required_precision."""
    forms = enumerate_forms(delta)
    total = sum(
        math.log2(math.exp(math.pi * math.sqrt(-delta) / f.a) + 2079) for f in forms
    )
    return math.ceil(total) + len(forms) + 40


@pytest.mark.parametrize("delta", [-4, -15, -23, -427, -96, -247])
def test_required_precision_dominates_floor(delta):
    assert required_precision(delta) >= spec_floor(delta)


def test_required_precision_examples():
    assert required_precision(-4) >= 51
    assert required_precision(-427) >= 94 + 40


def test_table_one_degree_one():
    for delta, j in tables.CLASS_NUMBER_ONE:
        poly = hilbert_class_poly(delta)
        assert poly.degree == 1
        assert poly.coeffs == (-j,)


def test_table_two_exact():
    for delta, (a0, a1, _) in tables.CLASS_NUMBER_TWO.items():
        assert hilbert_class_poly(delta).coeffs == (a0, a1)


def test_cubic_frozen_and_root_verified():
    poly = hilbert_class_poly(-23)
    assert poly.coeffs == H_MINUS_23
    assert verify_roots(poly)
    assert verify_roots(poly, precision=2 * required_precision(-23))


def test_roots_verify_up_to_300():
    for delta in valid_discriminants(300):
        assert verify_roots(hilbert_class_poly(delta)), delta


def test_rounding_residuals_tiny_up_to_300():
    worst = Fraction(0)
    for delta in valid_discriminants(300):
        worst = max(worst, max(rounding_residuals(delta)))
    assert worst < Fraction(1, 10**6)


def test_evaluate_ball_at_noninteger():
    poly = hilbert_class_poly(-15)
    ctx = BallContext(128)
    val = poly.evaluate_ball(ctx, ctx.from_int(1))
    assert val.contains_rational(1 + 191025 - 121287375)


def test_ratio_vector_examples():
    r15 = ratio_vector(hilbert_class_poly(-15))
    assert r15 == (Fraction(-121287375, 191025**2),)
    assert abs(float(r15[0]) - (-3.32e-3)) / 3.32e-3 < 1e-2
    r427 = ratio_vector(hilbert_class_poly(-427))[0]
    assert abs(float(r427) - 6.36e-25) / 6.36e-25 < 1e-2
    synthetic = HilbertClassPoly(-20, (5, 0))
    assert ratio_vector(synthetic) == (RatioTag.INFINITE,)
    zero_num = HilbertClassPoly(-20, (0, 0))
    assert ratio_vector(zero_num) == (RatioTag.INDETERMINATE,)


def test_ratio_vector_needs_degree_two():
    with pytest.raises(DomainError):
        ratio_vector(hilbert_class_poly(-4))


def test_product_compatible():
    p15 = hilbert_class_poly(-15)
    p20 = hilbert_class_poly(-20)
    assert product_compatible(p15, p20) is False
    assert product_compatible(p15, p15) is True  # h=2 self-comparison is vacuous
    p96 = hilbert_class_poly(-96)
    assert product_compatible(p96, p96) is False  # palindromic identity fails
    with pytest.raises(DegreeMismatch):
        product_compatible(p15, hilbert_class_poly(-23))


def test_display_ratios_match_exact_values():
    for delta, (a0, a1, display) in tables.CLASS_NUMBER_TWO.items():
        exact = Fraction(a0, a1 * a1)
        shown = float(display)
        assert abs(float(exact) - shown) <= 1e-2 * abs(shown), delta


def test_irreducibility():
    assert is_irreducible(hilbert_class_poly(-4)) is True
    for delta in (-15, -20, -91, -403, -427):
        assert is_irreducible(hilbert_class_poly(delta)) is True
    assert is_irreducible(hilbert_class_poly(-23)) is True
    for delta in (-96, -180, -195, -120):
        assert is_irreducible(hilbert_class_poly(delta)) is True
    # a reducible quartic: (x^2 - 2x + 1)(x^2 + 3x + 5), constructed by hand
    fake = HilbertClassPoly(-96, (5, -7, 0, 1))
    assert is_irreducible(fake) is False
    # a reducible cubic with integer root 2: (x - 2)(x^2 + x + 1)
    fake3 = HilbertClassPoly(-23, (-2, -1, -1))
    assert is_irreducible(fake3) is False


def test_h2_irreducibility_is_disc_check():
    # x^2 - 5x + 6 = (x-2)(x-3): discriminant 1 is a perfect square
    assert is_irreducible(HilbertClassPoly(-15, (6, -5))) is False


def test_polynomial_str():
    assert str(hilbert_class_poly(-15)) == "x^2 + 191025x - 121287375"


# -- cache ------------------------------------------------------------------


def test_cache_roundtrip(tmp_path):
    cache = PolyCache(tmp_path / "hcp.jsonl")
    p = hilbert_class_poly(-15)
    cache.store(p)
    cache.store(hilbert_class_poly(-4))
    assert cache.load(-15).coeffs == p.coeffs
    assert cache.load(-4).coeffs == (-1728,)


def test_cache_miss(tmp_path):
    cache = PolyCache(tmp_path / "hcp.jsonl")
    with pytest.raises(CacheMiss):
        cache.load(-999)
    cache.store(hilbert_class_poly(-15))
    with pytest.raises(CacheMiss):
        cache.load(-20)


def test_cache_detects_tampering(tmp_path):
    path = tmp_path / "hcp.jsonl"
    cache = PolyCache(path)
    cache.store(hilbert_class_poly(-15))
    text = path.read_text().replace("191025", "191026")
    path.write_text(text)
    with pytest.raises(CorruptCacheEntry):
        cache.load(-15)


def test_cache_detects_wrong_degree(tmp_path):
    path = tmp_path / "hcp.jsonl"
    path.write_text(json.dumps({"delta": -15, "coeffs": ["-121287375"]}) + "\n")
    with pytest.raises(CorruptCacheEntry):
        PolyCache(path).load(-15)


def test_cache_rejects_garbage_line(tmp_path):
    path = tmp_path / "hcp.jsonl"
    path.write_text('{"delta": -15, "coeffs": ["x"]}\n')
    with pytest.raises(CorruptCacheEntry):
        PolyCache(path).load(-15)


def test_cache_records_are_decimal_strings(tmp_path):
    path = tmp_path / "hcp.jsonl"
    PolyCache(path).store(hilbert_class_poly(-427))
    rec = json.loads(path.read_text().splitlines()[0])
    assert rec["delta"] == -427
    assert all(isinstance(c, str) for c in rec["coeffs"])
    assert rec["coeffs"][0] == "155041756222618916546936832000000"


def test_small_a_multiset_matches_classification():
    # the a-multiset of the forms entering the root product agrees with the
    # congruence-based counts for the table discriminants
    from singprod.qforms import count_small_a

    for delta in tables.CLASS_NUMBER_TWO:
        forms = enumerate_forms(delta)
        n1 = sum(1 for f in forms if f.a == 1)
        n2 = sum(1 for f in forms if f.a == 2)
        assert (n1, n2) == count_small_a(delta)
