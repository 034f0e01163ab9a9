"""singprod: certified arithmetic of singular moduli.

Exact enumeration of reduced quadratic forms and class numbers, rigorous
ball evaluation of the modular j-function, exact Hilbert class
polynomials with certified integer rounding, a machine-checkable closure
of the finite case analysis, and the resulting decision procedure for
products of two singular moduli landing in Q*.
"""

__version__ = "0.1.0"

from .errors import (
    CacheMiss,
    CertificateRequired,
    CertificationError,
    CorruptCacheEntry,
    DegreeMismatch,
    DomainError,
    PrecisionError,
    RoundingAmbiguous,
    SingprodError,
    ZeroNotSupported,
)

__all__ = [
    "CacheMiss",
    "CertificateRequired",
    "CertificationError",
    "CorruptCacheEntry",
    "DegreeMismatch",
    "DomainError",
    "PrecisionError",
    "RoundingAmbiguous",
    "SingprodError",
    "ZeroNotSupported",
    "__version__",
]
