"""Nome bookkeeping and series-truncation policy.

Every fractional power of the nome in this package is derived from tau, never
from a principal root of p: p^lam := exp(i*pi*tau*lam).  This keeps the many
p^(1/3), p^(1/2), ... factors on a single consistent branch.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

PI = cmath.pi


@dataclass(frozen=True)
class TruncationPolicy:
    """Stopping rule for infinite products and bilateral sums."""

    rel_tol: float = 1e-16
    max_terms: int = 4096


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class Nome:
    """The point tau in the upper half plane, carrying p = exp(i*pi*tau)."""

    tau: complex

    def __post_init__(self):
        if not complex(self.tau).imag > 0:
            raise DomainError(f"tau must lie in the upper half plane, got {self.tau}")
        object.__setattr__(self, "tau", complex(self.tau))

    @property
    def p(self) -> complex:
        return cmath.exp(1j * PI * self.tau)

    def p_pow(self, lam) -> complex:
        """p^lam = exp(i*pi*tau*lam); lam may be int, float or Fraction."""
        if isinstance(lam, Fraction):
            lam = lam.numerator / lam.denominator
        return cmath.exp(1j * PI * self.tau * lam)

    def scaled(self, factor) -> "Nome":
        """Nome at factor*tau (used for p^2 <-> tau doubling style rewrites)."""
        return Nome(self.tau * factor)

    def shifted(self, offset) -> "Nome":
        """Nome at tau + offset."""
        return Nome(self.tau + offset)


def nome_from_p(p: complex) -> Nome:
    """Nome whose tau reproduces the given p via the principal logarithm.

    Only safe when downstream code needs integer powers of p; fractional
    powers of a nome built this way follow the principal branch of log p.
    """
    p = complex(p)
    if p == 0 or abs(p) >= 1:
        raise DomainError(f"p must satisfy 0 < |p| < 1, got {p}")
    return Nome(cmath.log(p) / (1j * PI))
