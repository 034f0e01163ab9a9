"""Exact arithmetic on negative discriminants and reduced quadratic forms.

Everything here is integer/rational and deterministic: enumeration of the
reduced primitive triples (a, b, c) attached to a discriminant, class
numbers, the a=1/a=2 form counts with their congruence classification,
Kronecker symbols, and the class number formula for non-maximal orders.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import NamedTuple

from . import _scan
from .errors import DomainError


def validate_discriminant(delta: int) -> int:
    """Return `delta` unchanged if it is a valid negative discriminant."""
    if not isinstance(delta, int) or isinstance(delta, bool):
        raise DomainError(f"discriminant must be an integer, got {delta!r}")
    if delta >= 0:
        raise DomainError(f"discriminant must be negative, got {delta}")
    if delta % 4 not in (0, 1):
        raise DomainError(f"discriminant must be 0 or 1 mod 4, got {delta}")
    return delta


class Form(NamedTuple):
    """A reduced primitive integer triple (a, b, c) with b^2 - 4ac = delta."""

    a: int
    b: int
    c: int

    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self
        return (-a < b <= a < c) or (0 <= b <= a == c)

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1


class TauPoint(NamedTuple):
    """Upper-half-plane point (b + sqrt(delta)) / (2a) attached to a form.

    The real part and the square of the imaginary part are exact
    rationals; rendering to a ball happens in the evaluation layer.
    """

    delta: int
    form: Form

    @property
    def re(self) -> Fraction:
        return Fraction(self.form.b, 2 * self.form.a)

    @property
    def im_squared(self) -> Fraction:
        return Fraction(-self.delta, 4 * self.form.a * self.form.a)

    def in_fundamental_domain(self) -> bool:
        # |Re| <= 1/2 is |b| <= a; |tau|^2 = c/a >= 1 is c >= a.
        return abs(self.form.b) <= self.form.a and self.form.c >= self.form.a


@lru_cache(maxsize=65536)
def enumerate_forms(delta: int) -> tuple[Form, ...]:
    """All reduced primitive forms of `delta`, sorted ascending by (a, b)."""
    validate_discriminant(delta)
    dabs = -delta
    forms = []
    a = 1
    while 3 * a * a <= dabs:
        four_a = 4 * a
        for b in range(-a + 1, a + 1):
            t = b * b + dabs
            if t % four_a:
                continue
            c = t // four_a
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            forms.append(Form(a, b, c))
        a += 1
    return tuple(forms)


def class_number(delta: int) -> int:
    return len(enumerate_forms(delta))


def count_small_a(delta: int) -> tuple[int, int]:
    """Counts (n1, n2) of enumerated forms with a = 1 and a = 2.

    The direct count is cross-asserted against the congruence
    classification: n1 = 1 always; n2 = 2 iff delta = 1 mod 8 (delta != -7),
    n2 = 1 iff delta = 8, 12 mod 16 (delta not in {-4, -8}), n2 = 0 otherwise.
    """
    forms = enumerate_forms(delta)
    n1 = sum(1 for f in forms if f.a == 1)
    n2 = sum(1 for f in forms if f.a == 2)
    if (n1, n2) != (1, predicted_a2_count(delta)):
        raise AssertionError(
            f"form counts ({n1}, {n2}) contradict the congruence "
            f"classification for delta={delta}"
        )
    return n1, n2


def predicted_a2_count(delta: int) -> int:
    """Number of a=2 forms predicted from delta's congruence class alone.

    delta = -15 is a genuine exception to the "two when delta = 1 mod 8"
    rule: its two candidates (2, 1, 2) and (2, -1, 2) hit the a = c
    boundary, where only the b >= 0 representative is reduced.
    """
    validate_discriminant(delta)
    if delta % 8 == 1:
        if delta == -7:
            return 0
        return 1 if delta == -15 else 2
    if delta % 16 in (8, 12):
        return 1 if delta not in (-4, -8) else 0
    # delta = 5 mod 8, or delta = 0, 4 mod 16
    return 0


def kronecker_at_2(delta: int) -> int:
    """Kronecker symbol (delta / 2)."""
    validate_discriminant(delta)
    if delta % 2 == 0:
        return 0
    return 1 if delta % 8 == 1 else -1


def kronecker(delta: int, p: int) -> int:
    """Kronecker symbol (delta / p) for a prime p."""
    validate_discriminant(delta)
    if p == 2:
        return kronecker_at_2(delta)
    if p < 2 or any(p % q == 0 for q in range(2, isqrt(p) + 1)):
        raise DomainError(f"{p} is not prime")
    r = pow(delta % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def _prime_factors(m: int) -> list[int]:
    out = []
    q = 2
    while q * q <= m:
        if m % q == 0:
            out.append(q)
            while m % q == 0:
                m //= q
        q += 1
    if m > 1:
        out.append(m)
    return out


def class_number_scaled(delta: int, m: int) -> int:
    """Class number of the order of discriminant m^2 * delta, by formula.

    h(m^2 D) = (m / w) * prod_{p | m} (1 - (D/p)/p) * h(D), with w = 3 for
    D = -3, w = 2 for D = -4, w = 1 otherwise.  The result is cross-asserted
    against direct enumeration of m^2 * delta.
    """
    validate_discriminant(delta)
    if not isinstance(m, int) or m <= 0:
        raise DomainError(f"scaling factor must be a positive integer, got {m!r}")
    if m == 1:
        return class_number(delta)
    # the unit index omega only enters for proper suborders (m > 1)
    omega = 3 if delta == -3 else 2 if delta == -4 else 1
    value = Fraction(m, omega) * class_number(delta)
    for p in _prime_factors(m):
        value *= 1 - Fraction(kronecker(delta, p), p)
    if value.denominator != 1:
        raise AssertionError(f"class number formula gave non-integer {value}")
    direct = class_number(m * m * delta)
    if value != direct:
        raise AssertionError(
            f"formula value {value} != enumerated h({m * m * delta}) = {direct}"
        )
    return int(value)


def valid_discriminants(bound: int) -> list[int]:
    """All negative discriminants with 3 <= |D| <= bound, ascending |D|."""
    return [-n for n in range(3, bound + 1) if n % 4 in (0, 3)]


def form_counts_up_to(bound: int):
    """(deltas, counts) for every valid |D| <= bound via the batch kernel."""
    import numpy as np

    deltas = np.array(valid_discriminants(bound), dtype=np.int64)
    return deltas, _scan.form_count_batch(deltas)


def discriminants_with_class_number(h: int, bound: int) -> list[int]:
    """All D with |D| <= bound and h(D) = h, ascending |D|."""
    if not isinstance(h, int) or h < 1:
        raise DomainError(f"class number must be a positive integer, got {h!r}")
    if not isinstance(bound, int) or bound < 3:
        raise DomainError(f"scan bound must be an integer >= 3, got {bound!r}")
    deltas, counts = form_counts_up_to(bound)
    return [int(d) for d, hh in zip(deltas, counts[:, 0]) if hh == h]


def tau_points(delta: int) -> tuple[TauPoint, ...]:
    return tuple(TauPoint(delta, f) for f in enumerate_forms(delta))
