"""Exception types shared across the package."""


class SingprodError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SingprodError, ValueError):
    """Invalid mathematical input: bad discriminant, point outside the
    fundamental domain, nonsensical precision, and similar."""


class PrecisionError(SingprodError):
    """A computation could not reach its accuracy target even after
    precision escalation."""


class RoundingAmbiguous(PrecisionError):
    """A coefficient ball stayed too wide to round to a unique integer.

    This signals a bug in the precision model, never a value problem;
    coefficients are never silently rounded."""


class DegreeMismatch(SingprodError, ValueError):
    """Two polynomials that must share a degree do not."""


class CacheMiss(SingprodError, KeyError):
    """Requested discriminant is not present in the polynomial cache."""


class CorruptCacheEntry(SingprodError):
    """A cached polynomial failed its invariant checks on load."""


class CertificationError(SingprodError):
    """A case-analysis assertion failed: an unexpected survivor, a
    reference-table mismatch, or a bound inequality that did not close."""


class CertificateRequired(SingprodError):
    """The solver was queried without a valid certificate and without an
    explicit trust flag."""


class ZeroNotSupported(SingprodError, ValueError):
    """solve() was asked about A = 0, which the decision procedure
    deliberately excludes."""
