"""Machine-checkable closure of the finite case analysis.

Every branch of the argument that a product of two singular moduli in Q*
must be one of the rational or quadratic families is executed here and
recorded in a structured certificate: candidate discriminant lists are
regenerated by scan, bound inequalities are verified with directed
rounding (lower bounds rounded down, upper bounds rounded up, 128 bits
by default), and the exact ratio-vector exclusions are logged
per-candidate so the verification is auditable.

A SURVIVES verdict anywhere outside the rational (h=1) and quadratic
(h=2, equal discriminant) families is a fatal CertificationError.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr, mpq

from . import tables
from .errors import CertificationError, DomainError
from .hcp import hilbert_class_poly, product_compatible, ratio_vector
from .qforms import (
    class_number,
    class_number_scaled,
    count_small_a,
    form_counts_up_to,
    kronecker_at_2,
    validate_discriminant,
)

BOUND_PRECISION = 128
SCAN_BOUND = 10_000

EXCLUDED_BY_BOUNDS = "EXCLUDED_BY_BOUNDS"
EXCLUDED_BY_RATIO = "EXCLUDED_BY_RATIO"
SURVIVES = "SURVIVES"

SCHEMA = "singprod.certificate.v1"


@dataclass
class CandidateResult:
    label: str
    verdict: str
    data: dict = field(default_factory=dict)


@dataclass
class CaseReport:
    case_id: str  # EQUAL_DISC | FOUR_DELTA | DISTINCT_FIELDS | H2 | H1
    candidates: list[CandidateResult]
    notes: list[str] = field(default_factory=list)

    def survivors(self) -> list[CandidateResult]:
        return [c for c in self.candidates if c.verdict == SURVIVES]

    def to_dict(self) -> dict:
        return {
            "case": self.case_id,
            "candidates": [
                {"label": c.label, "verdict": c.verdict, "data": c.data}
                for c in self.candidates
            ],
            "notes": self.notes,
        }


@dataclass
class FieldTableEntry:
    label: str
    degree: int
    discriminants: tuple[int, ...]


def _down(prec: int):
    return gmpy2.context(precision=prec, round=gmpy2.RoundDown)


def _up(prec: int):
    return gmpy2.context(precision=prec, round=gmpy2.RoundUp)


def fmt(x: mpfr, digits: int = 30) -> str:
    """Deterministic scientific decimal string for an mpfr value."""
    if x == 0:
        return "0"
    digs, exp, _ = gmpy2.digits(x, 10, digits)
    sign = "-" if digs.startswith("-") else ""
    mantissa = digs.lstrip("-")
    return f"{sign}{mantissa[0]}.{mantissa[1:]}e{exp - 1:+03d}"


def _mpq_from_decimal(text: str) -> mpq:
    """Exact rational value of a plain decimal string like '28.52217731'."""
    sign = -1 if text.startswith("-") else 1
    body = text.lstrip("+-")
    if "." in body:
        whole, frac = body.split(".")
    else:
        whole, frac = body, ""
    scale = 10 ** len(frac)
    return mpq(sign * (int(whole or "0") * scale + int(frac or "0")), scale)


# -- bounds ----------------------------------------------------------------


def _min_factor_exact(abs_d2: int) -> tuple[int, int]:
    """min(10^-8, |D2|^-3) as an exact integer fraction (num, den)."""
    if abs_d2**3 <= 10**8:
        return 1, 10**8
    return 1, abs_d2**3


def _lower_formula(abs_d1: int, abs_d2: int, prec: int) -> mpfr:
    """3000 e^(pi sqrt(|D1|)) min(10^-8, |D2|^-3), rounded down."""
    dn = _down(prec)
    e = dn.exp(dn.mul(dn.const_pi(), dn.sqrt(mpfr(abs_d1, prec))))
    num, den = _min_factor_exact(abs_d2)
    return dn.div(dn.mul(dn.mul(mpfr(3000), e), mpfr(num, prec)), mpfr(den, prec))


def lower_bound(delta1: int, delta2: int, precision: int = BOUND_PRECISION) -> mpfr:
    """Certified lower bound for |A| in the h >= 3 analysis (rounded down)."""
    validate_discriminant(delta1)
    validate_discriminant(delta2)
    if -delta1 < 23:
        raise DomainError(
            f"lower bound requires |delta1| >= 23 (got {delta1}); the "
            "0.9994 e^(pi sqrt(|D|)) step is not valid below that"
        )
    return _lower_formula(-delta1, -delta2, precision)


def upper_bound_equal(
    delta: int, variant: int, precision: int = BOUND_PRECISION
) -> mpfr | None:
    """Upper bound for |A| in the equal-discriminant case, rounded up.

    Variant 1 (1.11 e^((2pi/3) sqrt(|D|))) needs |D| >= 103, h > 4 when
    D = 8,12 mod 16, and h > 6 when D = 1 mod 8.  Variant 2
    (1.001 e^((5pi/6) sqrt(|D|))) needs |D| >= 399 and h > 4 when
    D = 1 mod 8.  Returns None when the preconditions fail.
    """
    validate_discriminant(delta)
    abs_d = -delta
    h = class_number(delta)
    up = _up(precision)
    sqrt_up = up.sqrt(mpfr(abs_d, precision))
    if variant == 1:
        if abs_d < 103:
            return None
        if delta % 16 in (8, 12) and not h > 4:
            return None
        if delta % 8 == 1 and not h > 6:
            return None
        expo = up.div(up.mul(up.mul(mpfr(2), up.const_pi()), sqrt_up), 3)
        return up.mul(up.div(mpfr(111), mpfr(100)), up.exp(expo))
    if variant == 2:
        if abs_d < 399:
            return None
        if delta % 8 == 1 and not h > 4:
            return None
        expo = up.div(up.mul(up.mul(mpfr(5), up.const_pi()), sqrt_up), 6)
        return up.mul(up.div(mpfr(1001), mpfr(1000)), up.exp(expo))
    raise DomainError(f"variant must be 1 or 2, got {variant!r}")


def _equal_case_upper_raw(x: int, variant_constant: tuple[int, int], coef: tuple[int, int], prec: int) -> mpfr:
    """variant_constant * e^((coef[0] pi / coef[1]) sqrt(x)), rounded up."""
    up = _up(prec)
    expo = up.div(
        up.mul(up.mul(mpfr(coef[0]), up.const_pi()), up.sqrt(mpfr(x, prec))), coef[1]
    )
    return up.mul(up.div(mpfr(variant_constant[0]), mpfr(variant_constant[1])), up.exp(expo))


def _four_delta_lower(x: int, prec: int) -> mpfr:
    """3000 e^(2 pi sqrt(x)) min(10^-8, x^-3), rounded down."""
    dn = _down(prec)
    e = dn.exp(dn.mul(dn.mul(mpfr(2), dn.const_pi()), dn.sqrt(mpfr(x, prec))))
    num, den = _min_factor_exact(x)
    return dn.div(dn.mul(dn.mul(mpfr(3000), e), mpfr(num, prec)), mpfr(den, prec))


def _four_delta_upper(x: int, prec: int) -> mpfr:
    """2.4 e^((7 pi / 6) sqrt(x)), rounded up."""
    return _equal_case_upper_raw(x, (12, 5), (7, 6), prec)


# -- candidate lists -------------------------------------------------------


def enumerate_equal_case_candidates(scan_bound: int = SCAN_BOUND):
    """The four candidate lists of the equal-discriminant case.

    1: h >= 4 even, |D| < 103;  2: D = 12 mod 16, h = 4, 103 <= |D| < 399;
    3: D = 1 mod 8, h = 6, 103 <= |D| < 399;  4: D = 1 mod 8, h = 4,
    |D| >= 103 (empty; emptiness is scan-bounded by `scan_bound`).

    List 2 matches the published condition-2 list, which covers only the
    D = 12 mod 16 residue; the stated congruence condition "8, 12 mod 16"
    also admits seven D = 8 mod 16 discriminants -- those are returned by
    :func:`supplementary_equal_case_candidates` and excluded by the same
    ratio identity, so the case closes under either reading.
    """
    deltas, counts = form_counts_up_to(scan_bound)
    cond1, cond2, cond3, cond4 = [], [], [], []
    for d_np, h_np in zip(deltas, counts[:, 0]):
        d, h = int(d_np), int(h_np)
        abs_d = -d
        if h >= 4 and h % 2 == 0 and abs_d < 103:
            cond1.append(d)
        if d % 16 == 12 and h == 4 and 103 <= abs_d < 399:
            cond2.append(d)
        if d % 8 == 1 and h == 6 and 103 <= abs_d < 399:
            cond3.append(d)
        if d % 8 == 1 and h == 4 and abs_d >= 103:
            cond4.append(d)
    return cond1, cond2, cond3, cond4


def supplementary_equal_case_candidates(scan_bound: int = SCAN_BOUND) -> list[int]:
    """D = 8 mod 16, h = 4, 103 <= |D| < 399: admitted by the literal
    congruence condition but absent from the published list."""
    deltas, counts = form_counts_up_to(scan_bound)
    return [
        int(d)
        for d, h in zip(deltas, counts[:, 0])
        if int(d) % 16 == 8 and int(h) == 4 and 103 <= -int(d) < 399
    ]


EXPECTED_CONDITION_LISTS = (
    [-39, -55, -56, -63, -68, -80, -84, -87, -95, -96],
    [-132, -180, -196, -228, -292, -340, -372, -388],
    [-135, -175, -207, -247],
    [],
)


# -- cases -----------------------------------------------------------------


def check_h1_case() -> CaseReport:
    """Recompute the thirteen degree-1 values and match the stored table."""
    candidates = []
    for delta, expected_j in tables.CLASS_NUMBER_ONE:
        poly = hilbert_class_poly(delta)
        if poly.degree != 1 or poly.coeffs[0] != -expected_j:
            raise CertificationError(
                f"degree-1 value mismatch at delta={delta}: "
                f"computed {poly.coeffs}, expected j={expected_j}"
            )
        candidates.append(
            CandidateResult(
                label=f"delta={delta}",
                verdict=SURVIVES,
                data={"j": str(expected_j), "family": "rational"},
            )
        )
    return CaseReport(
        "H1",
        candidates,
        notes=[
            "all 13 class-number-1 values recomputed from root products and "
            "matched exactly",
        ],
    )


def check_h2_case(scan_bound: int = SCAN_BOUND) -> CaseReport:
    """Close the class-number-2 analysis.

    j1 = j2 would force a vanishing middle coefficient (never happens);
    distinct discriminants would force equal a0/a1^2 ratios (all 29 are
    pairwise distinct exact rationals).  The conjugate pair over a single
    discriminant survives: its product is the constant term a0.
    """
    found = discriminants_h2(scan_bound)
    expected = sorted(tables.CLASS_NUMBER_TWO, key=lambda d: -d)
    if found != expected:
        raise CertificationError(
            f"class-number-2 scan disagrees with the stored table: {found}"
        )
    candidates = []
    ratios: dict[Fraction, int] = {}
    for delta in found:
        poly = hilbert_class_poly(delta)
        a0, a1, _display = tables.CLASS_NUMBER_TWO[delta]
        if poly.coeffs != (a0, a1):
            raise CertificationError(
                f"polynomial mismatch at delta={delta}: {poly.coeffs}"
            )
        if a1 == 0:
            raise CertificationError(
                f"middle coefficient vanishes at delta={delta}; the "
                "equal-value option would survive"
            )
        ratio = Fraction(a0, a1 * a1)
        if ratio in ratios:
            raise CertificationError(
                f"ratio collision between delta={delta} and delta={ratios[ratio]}"
            )
        ratios[ratio] = delta
        candidates.append(
            CandidateResult(
                label=f"delta={delta}",
                verdict=SURVIVES,
                data={
                    "family": "quadratic",
                    "a0": str(a0),
                    "a1": str(a1),
                    "ratio": f"{ratio.numerator}/{ratio.denominator}",
                    "product_of_conjugates": str(a0),
                },
            )
        )
    candidates.append(
        CandidateResult(
            label="cross-discriminant pairs",
            verdict=EXCLUDED_BY_RATIO,
            data={
                "reason": "the 29 exact ratios a0/a1^2 are pairwise distinct, "
                "so no two distinct discriminants satisfy the reversed-ratio "
                "identity",
                "distinct_ratios": str(len(ratios)),
            },
        )
    )
    candidates.append(
        CandidateResult(
            label="equal-value pairs",
            verdict=EXCLUDED_BY_RATIO,
            data={
                "reason": "j1 = j2 would need the polynomial x^2 - A; every "
                "middle coefficient a1 is nonzero"
            },
        )
    )
    return CaseReport(
        "H2",
        candidates,
        notes=[
            f"class-number-2 list complete up to |D| <= {scan_bound}; "
            "completeness beyond the scan bound is trusted literature",
        ],
    )


def discriminants_h2(scan_bound: int = SCAN_BOUND) -> list[int]:
    deltas, counts = form_counts_up_to(scan_bound)
    return [int(d) for d, h in zip(deltas, counts[:, 0]) if int(h) == 2]


def check_equal_discriminant_case(
    scan_bound: int = SCAN_BOUND, precision: int = BOUND_PRECISION
) -> CaseReport:
    """Close the case of two conjugate singular moduli (equal discriminant).

    Bound closure: for every integer x >= 103 the lower bound beats the
    variant-1 upper bound, and for every x >= 399 it beats variant 2 (with
    both the 1.001 and the 1.01 constant).  The surviving candidates are
    the 22 discriminants of conditions 1-3; each is excluded because its
    ratio vector is not palindromic (the exact identity fails).
    """
    cond1, cond2, cond3, cond4 = enumerate_equal_case_candidates(scan_bound)
    if (cond1, cond2, cond3, cond4) != tuple(EXPECTED_CONDITION_LISTS):
        raise CertificationError(
            "condition lists diverge from the expected ones: "
            f"{(cond1, cond2, cond3, cond4)}"
        )
    if cond4:
        raise CertificationError(f"condition 4 is not empty: {cond4}")

    for x in range(103, scan_bound + 1):
        lower = _four_delta_lower_equal(x, precision)
        upper = _equal_case_upper_raw(x, (111, 100), (2, 3), precision)
        if not lower > upper:
            raise CertificationError(
                f"variant-1 closure fails at x={x}: {fmt(lower)} <= {fmt(upper)}"
            )
    for x in range(399, scan_bound + 1):
        lower = _four_delta_lower_equal(x, precision)
        for constant in ((1001, 1000), (101, 100)):
            upper = _equal_case_upper_raw(x, constant, (5, 6), precision)
            if not lower > upper:
                raise CertificationError(
                    f"variant-2 closure fails at x={x} with constant "
                    f"{constant[0]}/{constant[1]}"
                )

    candidates = []
    extras = supplementary_equal_case_candidates(scan_bound)
    for delta in cond1 + cond2 + cond3 + extras:
        poly = hilbert_class_poly(delta)
        if product_compatible(poly, poly):
            raise CertificationError(
                f"palindromic ratio identity holds at delta={delta}; "
                "unexpected survivor"
            )
        entries = ratio_vector(poly)
        supplementary = delta in extras
        candidates.append(
            CandidateResult(
                label=f"delta={delta}" + (" (supplementary)" if supplementary else ""),
                verdict=EXCLUDED_BY_RATIO,
                data={
                    "h": str(poly.degree),
                    "ratio_vector": [_ratio_str(e) for e in entries],
                },
            )
        )
    return CaseReport(
        "EQUAL_DISC",
        candidates,
        notes=[
            f"variant-1 closure verified for 103 <= x <= {scan_bound} with "
            "directed rounding",
            f"variant-2 closure verified for 399 <= x <= {scan_bound} with "
            "both the stated constant 1.001 and the applied constant 1.01",
            f"condition-4 emptiness scan-bounded at |D| <= {scan_bound}",
            "the literal condition-2 congruence (8, 12 mod 16) admits seven "
            "D = 8 mod 16 discriminants beyond the published list; they are "
            "included above as supplementary candidates and excluded by the "
            "same identity",
        ],
    )


def _four_delta_lower_equal(x: int, prec: int) -> mpfr:
    """Lower bound with D1 = D2 (|A| >= 3000 e^(pi sqrt(x)) min(...))."""
    return _lower_formula(x, x, prec)


def _ratio_str(entry) -> str:
    if isinstance(entry, Fraction):
        return f"{entry.numerator}/{entry.denominator}"
    return entry.value  # RatioTag


def check_four_delta_case(
    scan_bound: int = SCAN_BOUND, precision: int = BOUND_PRECISION
) -> CaseReport:
    """Close the case D1 = 4*D2 (same imaginary quadratic field).

    h >= 3 forces |D| >= 23 (verified by scan), while the bound comparison
    3000 e^(2 pi sqrt(x)) min(10^-8, x^-3) > 2.4 e^((7 pi/6) sqrt(x))
    holds for every integer x >= 20 up to the scan bound -- so no
    candidate exists at all.
    """
    deltas, counts = form_counts_up_to(scan_bound)
    min_h3 = min(-int(d) for d, h in zip(deltas, counts[:, 0]) if int(h) >= 3)
    if min_h3 != 23:
        raise CertificationError(f"least |D| with h >= 3 is {min_h3}, expected 23")

    last_failing = None
    for x in range(3, 20):
        if not _four_delta_lower(x, precision) > _four_delta_upper(x, precision):
            last_failing = x
    for x in range(20, scan_bound + 1):
        if not _four_delta_lower(x, precision) > _four_delta_upper(x, precision):
            raise CertificationError(f"4-delta bound comparison fails at x={x}")

    # the h(4D) = (2 - (D/2)) h(D) identity behind "D = 1 mod 8", verified
    # against direct enumeration on a desk-scale range
    checked = 0
    for delta in range(-200, -2):
        if delta % 4 not in (0, 1) or delta in (-3, -4):
            continue
        if class_number_scaled(delta, 2) != (2 - kronecker_at_2(delta)) * class_number(
            delta
        ):
            raise CertificationError(f"class number formula fails at delta={delta}")
        checked += 1

    return CaseReport(
        "FOUR_DELTA",
        [],
        notes=[
            f"bound comparison verified for 20 <= x <= {scan_bound} with "
            "directed rounding",
            f"largest failing x below 20: {last_failing} (crossover below 20)",
            f"h >= 3 forces |D| >= 23 (scan to {scan_bound})",
            f"h(4D) = (2 - (D/2)) h(D) cross-checked by enumeration for "
            f"{checked} discriminants with |D| <= 200",
        ],
    )


def field_table() -> list[FieldTableEntry]:
    """The trusted table of CM fields with two presentations; self-checked."""
    entries = []
    for label, degree, discs in tables.CM_FIELD_TABLE:
        for d in discs:
            h = class_number(d)
            if h != degree:
                raise CertificationError(
                    f"field table self-check failed: h({d}) = {h} != {degree} "
                    f"in row {label}"
                )
        entries.append(FieldTableEntry(label, degree, tuple(discs)))
    return entries


def _lhs_interval(
    abs_d: int, prec: int, log_arg: tuple[int, int] = (3000 * 1000, 1005)
) -> tuple[mpfr, mpfr]:
    """(2 pi/3) sqrt(|D|) + log(num/den) as a directed interval."""
    num, den = log_arg
    out = []
    for ctx in (_down(prec), _up(prec)):
        term = ctx.div(ctx.mul(ctx.mul(mpfr(2), ctx.const_pi()), ctx.sqrt(mpfr(abs_d, prec))), 3)
        log_term = ctx.log(ctx.div(mpfr(num), mpfr(den)))
        out.append(ctx.add(term, log_term))
    return out[0], out[1]


def _rhs_interval(abs_d: int, prec: int) -> tuple[mpfr, mpfr]:
    """(pi/2) sqrt(|D|) + max(8 log 10, 3 log |D|) as a directed interval."""
    out = []
    for ctx in (_down(prec), _up(prec)):
        term = ctx.div(ctx.mul(ctx.const_pi(), ctx.sqrt(mpfr(abs_d, prec))), 2)
        cand1 = ctx.mul(mpfr(8), ctx.log(mpfr(10)))
        cand2 = ctx.mul(mpfr(3), ctx.log(mpfr(abs_d, prec)))
        out.append(ctx.add(term, max(cand1, cand2)))
    return out[0], out[1]


def check_distinct_fields_case(precision: int = BOUND_PRECISION) -> CaseReport:
    """Close the case of distinct discriminants in distinct quadratic fields.

    Recomputes both comparison columns for the sixteen h>=4 discriminants
    of the field table (agreement with the stored prints to 1e-6), then
    verifies that the comparison inequality fails for every in-row pair
    except (-160, -120), which the sharpened product bound kills.
    """
    printed = {d: (lhs, rhs, form) for d, lhs, rhs, form in tables.DISTINCT_FIELD_BOUNDS}
    tol = mpq(1, 10**6)
    intervals = {}
    for abs_d in sorted(-d for d in printed):
        p_lhs, p_rhs, lhs_form = printed[-abs_d]
        # reproduce the print with the formula that evidently produced it,
        # but always take verdicts from the stated log(3000/1.005) version
        print_arg = (3000 * 1000, 1005) if lhs_form == "3000/1.005" else (3000, 1)
        plo, phi = _lhs_interval(abs_d, precision, print_arg)
        lhs_lo, lhs_hi = _lhs_interval(abs_d, precision)
        rhs_lo, rhs_hi = _rhs_interval(abs_d, precision)
        if not (
            abs(mpq(plo) - _mpq_from_decimal(p_lhs)) < tol
            and abs(mpq(phi) - _mpq_from_decimal(p_lhs)) < tol
            and abs(mpq(rhs_lo) - _mpq_from_decimal(p_rhs)) < tol
            and abs(mpq(rhs_hi) - _mpq_from_decimal(p_rhs)) < tol
        ):
            raise CertificationError(
                f"comparison column mismatch at delta={-abs_d}: computed "
                f"[{fmt(plo)}, {fmt(phi)}] / [{fmt(rhs_lo)}, {fmt(rhs_hi)}], "
                f"printed {p_lhs} / {p_rhs}"
            )
        intervals[abs_d] = (lhs_lo, lhs_hi, rhs_lo, rhs_hi)

    candidates = []
    exception_seen = False
    for entry in field_table():
        if entry.degree < 4:
            continue
        discs = sorted((-d for d in entry.discriminants))
        for i, abs_d2 in enumerate(discs):
            for abs_d1 in discs[i + 1 :]:
                label = f"pair(delta1=-{abs_d1}, delta2=-{abs_d2}) in {entry.label}"
                lhs_lo = intervals[abs_d1][0]
                rhs_hi = intervals[abs_d2][3]
                if lhs_lo > rhs_hi:
                    candidates.append(
                        CandidateResult(
                            label=label,
                            verdict=EXCLUDED_BY_BOUNDS,
                            data={
                                "lhs_lower": fmt(lhs_lo),
                                "rhs_upper": fmt(rhs_hi),
                                "comparison": "inequality fails, bounds contradict",
                            },
                        )
                    )
                    continue
                if (abs_d1, abs_d2) != (160, 120):
                    raise CertificationError(
                        f"unexpected pair survives the bound comparison: {label}"
                    )
                exception_seen = True
                candidates.append(_exclude_160_120(precision))
    if not exception_seen:
        raise CertificationError(
            "expected the pair (-160, -120) to survive the first comparison"
        )
    return CaseReport(
        "DISTINCT_FIELDS",
        candidates,
        notes=[
            "comparison columns reproduced to 1e-6 for all 16 discriminants",
            "the printed lhs column mixes log(3000/1.005) (first 8 rows) and "
            "log(3000) (last 8 rows); each print was matched against its own "
            "form, verdicts always use the stated log(3000/1.005) form",
            "exactly one pair survived the first comparison and was excluded "
            "by the sharpened bound",
        ],
    )


def _exclude_160_120(precision: int) -> CandidateResult:
    """The sharpened bound for the exceptional pair (-160, -120).

    -160 = 0 mod 16, so it has no form with a = 2; with one a = 1 form each
    and one a = 2 form for -120, at most 3 of the h = 4 Galois-orbit pairs
    are bad, so a pair with a1, a2 >= 3 exists and
    |A| <= (e^((pi/3) sqrt(160)) + 2079)(e^((pi/3) sqrt(120)) + 2079),
    which contradicts the lower bound.
    """
    n1_160, n2_160 = count_small_a(-160)
    n1_120, n2_120 = count_small_a(-120)
    bad_pairs = n1_160 + n2_160 + n1_120 + n2_120
    h = class_number(-160)
    if not (n2_160 == 0 and bad_pairs < h):
        raise CertificationError(
            "small-a structure does not justify the sharpened bound for "
            f"(-160, -120): counts {(n1_160, n2_160, n1_120, n2_120)}, h={h}"
        )
    up = _up(precision)
    factors = []
    for abs_d in (160, 120):
        expo = up.div(up.mul(up.const_pi(), up.sqrt(mpfr(abs_d, precision))), 3)
        factors.append(up.add(up.exp(expo), mpfr(2079)))
    sharpened = up.mul(factors[0], factors[1])
    lower = lower_bound(-160, -120, precision)
    if not lower > sharpened:
        raise CertificationError(
            f"sharpened bound does not close (-160, -120): "
            f"{fmt(lower)} <= {fmt(sharpened)}"
        )
    return CandidateResult(
        label="pair(delta1=-160, delta2=-120) in Q(sqrt2,sqrt5)",
        verdict=EXCLUDED_BY_BOUNDS,
        data={
            "comparison": "survives the first comparison",
            "sharpened_upper": fmt(sharpened),
            "lower_bound": fmt(lower),
            "justification": (
                "-160 = 0 mod 16 has no a=2 form; bad Galois pairs "
                f"{bad_pairs} < h = {h}, so a pair with a1, a2 >= 3 exists"
            ),
        },
    )


# -- certificate assembly ---------------------------------------------------


def build_certificate(
    scan_bound: int = SCAN_BOUND, precision: int = BOUND_PRECISION
) -> dict:
    """Run every case and assemble the machine-readable certificate."""
    reports = [
        check_h1_case(),
        check_h2_case(scan_bound),
        check_equal_discriminant_case(scan_bound, precision),
        check_four_delta_case(scan_bound, precision),
        check_distinct_fields_case(precision),
    ]
    for report in reports:
        if report.case_id in ("H1", "H2"):
            continue
        if report.survivors():
            raise CertificationError(
                f"case {report.case_id} has unexpected survivors"
            )
    return {
        "schema": SCHEMA,
        "parameters": {
            "scan_bound": scan_bound,
            "bound_precision_bits": precision,
        },
        "cases": [r.to_dict() for r in reports],
        "trusted_assumptions": [
            f"completeness of the class-number 1 and 2 discriminant lists "
            f"beyond |D| <= {scan_bound} is taken from the literature "
            "(verified within the scan bound)",
            "the table of CM fields with two non-isomorphic presentations is "
            "trusted input (degree self-check performed per row)",
        ],
        "notes": [
            "the variant-2 constant appears as 1.001 at its statement and "
            "1.01 where applied; the closure was verified with both",
        ],
        "result": "CLOSED",
    }


def certificate_to_json(cert: dict) -> str:
    return json.dumps(cert, indent=2)


def verify_certificate(cert) -> bool:
    """Structural validity: schema, result, and per-case survivor counts."""
    if not isinstance(cert, dict) or cert.get("schema") != SCHEMA:
        return False
    if cert.get("result") != "CLOSED":
        return False
    expected_survivors = {
        "H1": 13,
        "H2": 29,
        "EQUAL_DISC": 0,
        "FOUR_DELTA": 0,
        "DISTINCT_FIELDS": 0,
    }
    seen = {}
    for case in cert.get("cases", []):
        n = sum(1 for c in case.get("candidates", []) if c.get("verdict") == SURVIVES)
        seen[case.get("case")] = n
    return seen == expected_survivors
