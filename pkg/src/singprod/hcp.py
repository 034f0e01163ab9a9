"""Exact Hilbert class polynomials from certified high-precision root products.

The monic polynomial with the conjugate j-values of a discriminant as
roots is expanded in ball arithmetic and each coefficient ball is rounded
to the nearest integer.  Rounding is accepted only when the ball has
radius < 1/4 *and* provably contains the integer it rounds to (both
checks exact, in rational arithmetic); anything wider escalates precision
and ultimately raises RoundingAmbiguous rather than guessing.

Also here: the ratio vector a_{i-1} a_{i+1} / a_i^2 of a polynomial, the
reversed-ratio compatibility test two polynomials must pass when their
root sets pair off by a common product, desk-scale irreducibility
certificates, and a line-delimited JSON cache with decimal-string
coefficients (no binary floats are ever persisted).
"""

from __future__ import annotations

import enum
import json
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from pathlib import Path

import gmpy2
from gmpy2 import mpfr, mpq

from .ball import _UP, Ball, BallContext, to_fraction
from .errors import (
    CacheMiss,
    CorruptCacheEntry,
    DegreeMismatch,
    DomainError,
    RoundingAmbiguous,
)
from .jeval import FundamentalPoint, eval_j
from .qforms import TauPoint, class_number, enumerate_forms, validate_discriminant

_ROUND_LIMIT = mpq(1, 4)
_ESCALATIONS = 3


class RatioTag(enum.Enum):
    INFINITE = "infinite"  # zero denominator, nonzero numerator
    INDETERMINATE = "indeterminate"  # 0 / 0


@dataclass(frozen=True)
class HilbertClassPoly:
    """Monic integer polynomial x^h + a_{h-1} x^{h-1} + ... + a_0.

    `coeffs` stores (a_0, ..., a_{h-1}); the leading 1 is implied.
    """

    delta: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def coeff(self, i: int) -> int:
        """a_i with the monic convention a_h = 1."""
        if i == self.degree:
            return 1
        return self.coeffs[i]

    def evaluate_ball(self, ctx: BallContext, x: Ball) -> Ball:
        acc = ctx.from_int(1)
        for c in reversed(self.coeffs):
            acc = ctx.add(ctx.mul(acc, x), ctx.from_int(c))
        return acc

    def __str__(self):
        h = self.degree
        parts = [f"x^{h}"]
        for i in range(h - 1, -1, -1):
            a = self.coeff(i)
            if a == 0:
                continue
            term = "" if i == 0 else "x" if i == 1 else f"x^{i}"
            parts.append(f"{'+' if a > 0 else '-'} {abs(a)}{term}")
        return " ".join(parts)


def required_precision(delta: int) -> int:
    """Working precision (bits) that makes coefficient rounding certain.

    At least log2 of the product over all forms of (e^(pi sqrt(|D|)/a) + 2079)
    -- an upper bound for every conjugate magnitude -- plus h + 40 guard bits.
    """
    forms = enumerate_forms(delta)
    pi_up = _UP.const_pi()
    sqrt_up = _UP.sqrt(mpfr(-delta))
    total = mpfr(0)
    for f in forms:
        mag = _UP.add(_UP.exp(_UP.div(_UP.mul(pi_up, sqrt_up), f.a)), mpfr(2079))
        total = _UP.add(total, _UP.div(_UP.log(mag), _UP.const_log2()))
    return max(int(gmpy2.ceil(total)) + len(forms) + 40, 64)


def _round_ball_to_int(ball: Ball) -> int:
    if not mpq(ball.rad) < _ROUND_LIMIT:
        raise RoundingAmbiguous(
            f"coefficient ball radius {ball.rad} >= 1/4; cannot round"
        )
    center = to_fraction(ball.mid.real)
    n = (2 * center.numerator + center.denominator) // (2 * center.denominator)
    if not ball.contains_rational(n):
        raise RoundingAmbiguous(
            f"coefficient ball around {ball.mid.real} does not contain {n}"
        )
    return int(n)


def _expand_from_roots(delta: int, prec: int) -> tuple[int, ...]:
    ctx = BallContext(prec)
    poly = [ctx.from_int(1)]  # coefficients ascending; starts as the constant 1
    for form in enumerate_forms(delta):
        root = eval_j(FundamentalPoint.from_tau(TauPoint(delta, form)), prec)
        neg = ctx.neg(root)
        new = [ctx.mul(poly[0], neg)]
        for k in range(1, len(poly)):
            new.append(ctx.add(poly[k - 1], ctx.mul(poly[k], neg)))
        new.append(poly[-1])
        poly = new
    coeffs = tuple(_round_ball_to_int(b) for b in poly[:-1])
    if _round_ball_to_int(poly[-1]) != 1:
        raise RoundingAmbiguous("leading coefficient did not round to 1")
    return coeffs


@lru_cache(maxsize=4096)
def hilbert_class_poly(delta: int) -> HilbertClassPoly:
    """Exact Hilbert class polynomial of `delta`."""
    validate_discriminant(delta)
    prec = required_precision(delta)
    for _ in range(_ESCALATIONS):
        try:
            return HilbertClassPoly(delta, _expand_from_roots(delta, prec))
        except RoundingAmbiguous:
            prec *= 2
    return HilbertClassPoly(delta, _expand_from_roots(delta, prec))


def rounding_residuals(delta: int) -> list[Fraction]:
    """|center - nearest integer| per coefficient at required_precision.

    Diagnostic for the tightness of the precision model; all residuals
    should be far below the 1/4 rounding limit.
    """
    prec = required_precision(delta)
    ctx = BallContext(prec)
    poly = [ctx.from_int(1)]
    for form in enumerate_forms(delta):
        root = eval_j(FundamentalPoint.from_tau(TauPoint(delta, form)), prec)
        neg = ctx.neg(root)
        new = [ctx.mul(poly[0], neg)]
        for k in range(1, len(poly)):
            new.append(ctx.add(poly[k - 1], ctx.mul(poly[k], neg)))
        new.append(poly[-1])
        poly = new
    out = []
    for b in poly[:-1]:
        center = to_fraction(b.mid.real)
        out.append(abs(center - round(center)))
    return out


def verify_roots(poly: HilbertClassPoly, precision: int | None = None) -> bool:
    """Ball-evaluate the polynomial at every conjugate; all must contain 0."""
    prec = precision or required_precision(poly.delta)
    ctx = BallContext(prec)
    for form in enumerate_forms(poly.delta):
        root = eval_j(FundamentalPoint.from_tau(TauPoint(poly.delta, form)), prec)
        if not poly.evaluate_ball(ctx, root).contains_rational(0):
            return False
    return True


# -- ratio vectors -------------------------------------------------------


def ratio_vector(poly: HilbertClassPoly):
    """Entries a_{i-1} a_{i+1} / a_i^2 for i = 1 .. h-1, exact.

    Zero denominators follow the obvious convention: nonzero/0 becomes
    INFINITE, 0/0 becomes INDETERMINATE.
    """
    h = poly.degree
    if h < 2:
        raise DomainError("ratio vector needs degree >= 2")
    entries = []
    for i in range(1, h):
        num = poly.coeff(i - 1) * poly.coeff(i + 1)
        den = poly.coeff(i) ** 2
        if den == 0:
            entries.append(RatioTag.INFINITE if num else RatioTag.INDETERMINATE)
        else:
            entries.append(Fraction(num, den))
    return tuple(entries)


def ratio_entries_equal(x, y) -> bool:
    # INDETERMINATE (0/0) constrains nothing, so it matches anything;
    # exclusions must never rest on an indeterminate entry.
    if RatioTag.INDETERMINATE in (x, y):
        return True
    return x == y


def product_compatible(p: HilbertClassPoly, q: HilbertClassPoly) -> bool:
    """Necessary condition for the roots of p and q to pair off with a
    common product A: the ratio vector of p equals that of q reversed."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees differ: {p.degree} vs {q.degree}")
    if p.degree < 2:
        raise DomainError("product compatibility needs degree >= 2")
    rp = ratio_vector(p)
    rq = ratio_vector(q)
    return all(ratio_entries_equal(a, b) for a, b in zip(rp, reversed(rq)))


# -- desk-scale irreducibility checks ------------------------------------


def _integer_in_ball(ball: Ball) -> int | None:
    """The unique integer a width-<1 ball can contain, or None."""
    if not mpq(ball.rad) < mpq(1, 2):
        raise RoundingAmbiguous("ball too wide to isolate an integer")
    center = to_fraction(ball.mid.real)
    n = (2 * center.numerator + center.denominator) // (2 * center.denominator)
    return int(n) if ball.contains_rational(n) else None


def _divides_exactly(poly: HilbertClassPoly, s0: int, p0: int) -> bool:
    """Does x^2 - s0*x + p0 divide the monic polynomial exactly over Z?"""
    rem = list(poly.coeffs) + [1]  # ascending
    for k in range(len(rem) - 1, 1, -1):
        c = rem[k]
        rem[k] = 0
        rem[k - 1] += c * s0
        rem[k - 2] -= c * p0
    return rem[0] == 0 and rem[1] == 0


def is_irreducible(poly: HilbertClassPoly) -> bool | None:
    """Exact irreducibility test for degree <= 4 (None above that).

    Degree 2 reduces to the discriminant not being a perfect square.
    Degrees 3-4 use the certified root balls: a monic integer polynomial
    is reducible over Q iff it has an integer root (degree 3) or an
    integer root or monic integer quadratic factor (degree 4).  Any such
    factor has coefficients equal to sums/products of true roots, which
    must land inside the corresponding balls; each candidate integer is
    then confirmed or refuted by exact division.
    """
    h = poly.degree
    if h == 1:
        return True
    if h == 2:
        a0, a1 = poly.coeffs
        disc = a1 * a1 - 4 * a0
        if disc < 0:
            return True
        r = isqrt(disc)
        return r * r != disc
    if h > 4:
        return None
    prec = required_precision(poly.delta)
    ctx = BallContext(prec)
    roots = [
        eval_j(FundamentalPoint.from_tau(TauPoint(poly.delta, form)), prec)
        for form in enumerate_forms(poly.delta)
    ]
    full = list(poly.coeffs) + [1]
    for r in roots:
        if not r.imag_contains_zero():
            continue  # non-real root cannot be rational
        n = _integer_in_ball(r)
        if n is not None and _eval_int(full, n) == 0:
            return False
    if h == 3:
        return True
    for i in range(len(roots)):
        for k in range(i + 1, len(roots)):
            pair_sum = ctx.add(roots[i], roots[k])
            pair_prod = ctx.mul(roots[i], roots[k])
            if not (pair_sum.imag_contains_zero() and pair_prod.imag_contains_zero()):
                continue
            s0 = _integer_in_ball(pair_sum)
            p0 = _integer_in_ball(pair_prod)
            if s0 is not None and p0 is not None and _divides_exactly(poly, s0, p0):
                return False
    return True


def _eval_int(coeffs_ascending, x: int) -> int:
    acc = 0
    for c in reversed(coeffs_ascending):
        acc = acc * x + c
    return acc


# -- cache ----------------------------------------------------------------

CACHE_ENV = "SINGPROD_CACHE"


def default_cache_path() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "singprod" / "hcp.jsonl"


class PolyCache:
    """Line-delimited JSON store, one record per discriminant.

    Records look like {"delta": -15, "coeffs": ["-121287375", "191025"]}
    with a_0 first and the monic leading coefficient implied.  Writes
    replace the whole file atomically; loads re-validate the polynomial
    (degree equals the class number, and ball evaluation at every
    conjugate contains zero) before returning it.
    """

    def __init__(self, path=None):
        self.path = Path(path) if path is not None else default_cache_path()

    def _read_all(self) -> dict[int, tuple[int, ...]]:
        if not self.path.exists():
            return {}
        out = {}
        with open(self.path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                    delta = int(rec["delta"])
                    coeffs = tuple(int(c) for c in rec["coeffs"])
                except (KeyError, TypeError, ValueError) as exc:
                    raise CorruptCacheEntry(f"unparseable cache line: {line!r}") from exc
                out[delta] = coeffs
        return out

    def store(self, poly: HilbertClassPoly) -> None:
        records = self._read_all()
        records[poly.delta] = poly.coeffs
        fd, tmp = tempfile.mkstemp(
            dir=str(self.path.parent) if self.path.parent.exists() else None,
            suffix=".tmp",
        )
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                for delta in sorted(records, key=lambda d: -d):
                    fh.write(
                        json.dumps(
                            {
                                "delta": delta,
                                "coeffs": [str(c) for c in records[delta]],
                            }
                        )
                        + "\n"
                    )
            self.path.parent.mkdir(parents=True, exist_ok=True)
            os.replace(tmp, self.path)
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)

    def load(self, delta: int) -> HilbertClassPoly:
        validate_discriminant(delta)
        records = self._read_all()
        if delta not in records:
            raise CacheMiss(f"no cached polynomial for delta={delta}")
        poly = HilbertClassPoly(delta, records[delta])
        if poly.degree != class_number(delta):
            raise CorruptCacheEntry(
                f"cached degree {poly.degree} != class number for delta={delta}"
            )
        if not verify_roots(poly):
            raise CorruptCacheEntry(
                f"cached polynomial for delta={delta} fails root evaluation"
            )
        return poly
