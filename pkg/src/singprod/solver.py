"""The explicit decision procedure for products of two singular moduli.

A product of two singular moduli is a nonzero rational only for the 77
distinct products of two nonzero class-number-1 values and the 29
constant terms of the class-number-2 polynomials (the conjugate-pair
norms) -- 106 values in all, with a single collision between two
rational pairs.  This module builds that set with provenance, answers
membership queries, and cross-validates against a brute-force oracle.

Completeness of an answer rests on the certified case analysis, so
`solve` refuses to run without a valid certificate unless explicitly
told to trust one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import certify, tables
from .errors import (
    CertificateRequired,
    CertificationError,
    DomainError,
    ZeroNotSupported,
)
from .hcp import hilbert_class_poly, ratio_vector
from .qforms import class_number, discriminants_with_class_number

RATIONAL = "RATIONAL"
QUADRATIC = "QUADRATIC"


@dataclass(frozen=True)
class SingularModulusDesc:
    """One singular modulus: its discriminant and exact description.

    Class number 1: `value` is the integer j-invariant.  Class number 2:
    `value` is None and `minpoly` holds (a0, a1) of the monic minimal
    polynomial x^2 + a1 x + a0; `conjugate` tags the two roots.
    """

    delta: int
    value: int | None = None
    minpoly: tuple[int, int] | None = None
    conjugate: str | None = None  # "+sqrt" | "-sqrt" for the h = 2 pair


@dataclass(frozen=True)
class ProductSolution:
    """One unordered pair of singular moduli with rational product `a`."""

    a: Fraction
    kind: str  # RATIONAL | QUADRATIC
    members: tuple[SingularModulusDesc, ...]

    def deltas(self) -> tuple[int, ...]:
        return tuple(m.delta for m in self.members)


def rational_values() -> tuple[tuple[int, int], ...]:
    """The 13 (delta, j) pairs with class number 1, recomputed and matched."""
    out = []
    for delta, expected in tables.CLASS_NUMBER_ONE:
        poly = hilbert_class_poly(delta)
        if poly.degree != 1 or -poly.coeffs[0] != expected:
            raise CertificationError(
                f"recomputed j for delta={delta} is {-poly.coeffs[0]}, "
                f"expected {expected}"
            )
        out.append((delta, expected))
    return tuple(out)


@lru_cache(maxsize=1)
def build_set_s() -> dict[Fraction, tuple[ProductSolution, ...]]:
    """The full solution-value set, keyed by product, with provenance.

    78 pairs of nonzero rational values give 77 distinct products (one
    collision), and the 29 conjugate-pair norms add 28 further values:
    the norm of the -115 pair equals the rational product
    (-884736) * (-147197952000) = 506880^3, an exact cross-family
    coincidence.  The set therefore has 105 elements; exactly two of
    them are attained by two unordered pairs each.  The entire structure
    is asserted during construction; any deviation is a fatal error.
    """
    nonzero = [(d, j) for d, j in rational_values() if j != 0]
    if len(nonzero) != 12:
        raise CertificationError(f"expected 12 nonzero rational values: {nonzero}")
    table: dict[Fraction, list[ProductSolution]] = {}
    pairs = 0
    for i, (d1, j1) in enumerate(nonzero):
        for d2, j2 in nonzero[i:]:
            pairs += 1
            a = Fraction(j1 * j2)
            sol = ProductSolution(
                a=a,
                kind=RATIONAL,
                members=(
                    SingularModulusDesc(delta=d1, value=j1),
                    SingularModulusDesc(delta=d2, value=j2),
                ),
            )
            table.setdefault(a, []).append(sol)
    if pairs != 78:
        raise CertificationError(f"expected 78 rational pairs, built {pairs}")
    if len(table) != 77:
        raise CertificationError(f"expected 77 distinct rational products: {len(table)}")
    collisions = {a: sols for a, sols in table.items() if len(sols) > 1}
    if set(collisions) != {Fraction(tables.COLLISION_PRODUCT)}:
        raise CertificationError(f"unexpected collision structure: {collisions.keys()}")
    col = collisions[Fraction(tables.COLLISION_PRODUCT)]
    col_values = {frozenset(m.value for m in sol.members) for sol in col}
    if len(col) != 2 or col_values != set(tables.COLLISION_PAIRS):
        raise CertificationError(f"collision pairs mismatch: {col_values}")

    cross = []
    for delta, (a0, a1, _) in tables.CLASS_NUMBER_TWO.items():
        a = Fraction(a0)
        if a in table:
            cross.append((delta, a0))
        table.setdefault(a, []).append(
            ProductSolution(
                a=a,
                kind=QUADRATIC,
                members=(
                    SingularModulusDesc(
                        delta=delta, minpoly=(a0, a1), conjugate="+sqrt"
                    ),
                    SingularModulusDesc(
                        delta=delta, minpoly=(a0, a1), conjugate="-sqrt"
                    ),
                ),
            )
        )
    if cross != [
        (tables.CROSS_COLLISION_QUADRATIC_DELTA, tables.CROSS_COLLISION_PRODUCT)
    ]:
        raise CertificationError(f"unexpected cross-family collisions: {cross}")
    if len(table) != 105:
        raise CertificationError(f"expected 105 distinct values, built {len(table)}")
    doubled = sorted(a for a, sols in table.items() if len(sols) == 2)
    if doubled != sorted(
        (Fraction(tables.COLLISION_PRODUCT), Fraction(tables.CROSS_COLLISION_PRODUCT))
    ) or any(len(sols) > 2 for sols in table.values()):
        raise CertificationError(f"unexpected multiplicity structure: {doubled}")
    return {a: tuple(sols) for a, sols in table.items()}


@lru_cache(maxsize=1)
def _certified() -> dict:
    return certify.build_certificate()


def solve(
    a, *, trust_certificate: bool = False, certificate: dict | None = None
) -> list[ProductSolution]:
    """All unordered pairs of singular moduli whose product is `a`.

    `a` is any exact rational (int, Fraction, or "p/q" string); zero is
    rejected.  Completeness rests on the certified case analysis: pass a
    valid certificate, set `trust_certificate=True`, or let this call run
    the certification itself (cached for the process).
    """
    a = _as_fraction(a)
    if a == 0:
        raise ZeroNotSupported("A = 0 is outside the decision procedure")
    if not trust_certificate:
        cert = certificate if certificate is not None else _certified()
        if not certify.verify_certificate(cert):
            raise CertificateRequired(
                "no valid certificate: run the certification or pass "
                "trust_certificate=True"
            )
    return list(build_set_s().get(a, ()))


def _as_fraction(a) -> Fraction:
    if isinstance(a, Fraction):
        return a
    if isinstance(a, int):
        return Fraction(a)
    if isinstance(a, str):
        try:
            return Fraction(a)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse rational {a!r}") from exc
    if isinstance(a, float):
        raise DomainError(
            "refusing a float input; pass an exact int, Fraction, or 'p/q' string"
        )
    raise DomainError(f"unsupported rational input {a!r}")


def brute_force_oracle(bound: int = 500) -> set[tuple[Fraction, tuple]]:
    """Independent cross-check: every rational product from discriminants
    with |D| <= bound and h(D) <= 2, derived by direct enumeration.

    Rational products are literal integer multiplications; conjugate-pair
    norms are constant terms; products across two distinct class-number-2
    discriminants are ruled out because all their exact a0/a1^2 ratios
    differ (the reversed-ratio identity is necessary); equal-value h = 2
    products are ruled out because no middle coefficient vanishes; mixed
    degree-1-times-degree-2 products are irrational outright.
    """
    if not 3 <= bound <= 500:
        raise DomainError("oracle bound must be between 3 and 500 (desk scale)")
    records: set[tuple[Fraction, tuple]] = set()
    h1 = discriminants_with_class_number(1, bound)
    h2 = discriminants_with_class_number(2, bound)
    values = [(d, -hilbert_class_poly(d).coeffs[0]) for d in h1]
    nonzero = [(d, j) for d, j in values if j != 0]
    for i, (d1, j1) in enumerate(nonzero):
        for d2, j2 in nonzero[i:]:
            records.add(
                (Fraction(j1 * j2), ("rational", d1, j1, d2, j2))
            )
    ratios = {}
    for d in h2:
        poly = hilbert_class_poly(d)
        a0, a1 = poly.coeffs
        if a1 == 0:
            raise CertificationError(f"vanishing middle coefficient at delta={d}")
        r = ratio_vector(poly)[0]
        if r in ratios:
            raise CertificationError(
                f"ratio identity cannot separate delta={d} and delta={ratios[r]}"
            )
        ratios[r] = d
        records.add((Fraction(a0), ("quadratic", d)))
    return records


def solution_payload(sol: ProductSolution) -> dict:
    """JSON-ready rendering with decimal-string integers."""
    members = []
    for m in sol.members:
        entry: dict = {"delta": m.delta}
        if m.value is not None:
            entry["j"] = str(m.value)
        if m.minpoly is not None:
            a0, a1 = m.minpoly
            entry["minpoly"] = {"a0": str(a0), "a1": str(a1)}
            entry["conjugate"] = m.conjugate
        members.append(entry)
    return {
        "product": f"{sol.a.numerator}"
        + (f"/{sol.a.denominator}" if sol.a.denominator != 1 else ""),
        "kind": sol.kind,
        "members": members,
    }
