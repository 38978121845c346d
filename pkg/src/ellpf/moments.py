"""Moment sequences and Hankel determinants for the coincident-point limit.

When all points collide, each family degenerates to a Hankel determinant
of odd moments of its entry expansion.  The moments are Lambert-type
q-series; for base 1 the constant term is a tangent-like integer
sequence generated by sin(2z) / (2 cos 3z).
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import DomainError, NumericalLimitError, RangeError
from .expansions import _coeff_positive, laurent_constant
from .linalg import hankel_determinant, pfaffian
from .nome import DEFAULT_POLICY, Nome, TruncationPolicy
from .pfaffians import PointConfig, SigmaLabel, p_sigma
from .theta import q_pochhammer

GLAISHER_MAX = 32


def glaisher_t(j: int) -> int:
    """j-th coefficient of sin(2z) / (2 cos 3z) = sum T_j z^(2j+1) / (2j+1)!.

    Exact integers via rational series division; 1, 23, 1681, ...
    """
    if j < 0:
        raise DomainError("index must be nonnegative")
    if j > GLAISHER_MAX:
        raise RangeError(f"tabulation stops at j = {GLAISHER_MAX}")
    # numerator sin(2z), denominator 2 cos(3z), as coefficients of z^(2m+1), z^(2m)
    num = [Fraction((-1) ** m * 2 ** (2 * m + 1), math.factorial(2 * m + 1))
           for m in range(j + 1)]
    den = [Fraction((-1) ** m * 3 ** (2 * m) * 2, math.factorial(2 * m))
           for m in range(j + 1)]
    q = []
    for m in range(j + 1):
        acc = num[m]
        for i in range(m):
            acc -= q[i] * den[m - i]
        q.append(acc / den[0])
    value = q[j] * math.factorial(2 * j + 1)
    assert value.denominator == 1
    return value.numerator


def lambert_moment(sigma, j: int, nome: Nome,
                   policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Odd moment of weight 2j+1 of the entry expansion coefficients.

    Sums c_k m_k^(2j+1) over k >= 1 with m_k the exponent carried by the
    k-th term (2k for even entries, 2k-1 for odd ones); base 1 picks up
    the tangent-like constant term with alternating sign.
    """
    label = SigmaLabel.parse(sigma)
    if label.hatted:
        raise DomainError("moments are tabulated for plain labels only")
    if j < 0:
        raise DomainError("moment index must be nonnegative")
    base = label.base
    if abs(nome.p) >= 0.9:
        raise DomainError("moment series need |p| < 0.9")
    even = base in (0, 4)
    total = 0j
    if base == 1:
        total = (-1) ** (j + 1) * glaisher_t(j)
    scale = 0.0
    quiet = 0
    for k in range(1, policy.max_terms + 1):
        m = 2 * k if even else 2 * k - 1
        term = _coeff_positive(base, k, nome) * m ** (2 * j + 1)
        total += term
        scale = max(scale, abs(term))
        if abs(term) <= policy.rel_tol * max(scale, 1.0):
            quiet += 1
            if quiet >= 3:
                return total
        else:
            quiet = 0
    raise NumericalLimitError("moment series did not settle within the term budget")


def entry_slope(sigma, nome: Nome, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Derivative scale of the entry prefactor at coincident points."""
    base = SigmaLabel.parse(sigma).base
    pw = nome.p_pow
    pi = math.pi
    if base in (0, 6):
        return pi * q_pochhammer(pw(Fraction(1, 3)), pw(Fraction(2, 3)), policy) ** 2
    if base == 1:
        return 2 * pi * q_pochhammer(-pw(6), pw(6), policy) ** 2
    if base in (2, 4):
        return pi * q_pochhammer(pw(3), pw(6), policy) ** 2
    if base == 3:
        return 2 * pi * q_pochhammer(-pw(Fraction(2, 3)), pw(Fraction(2, 3)), policy) ** 2
    raise DomainError(f"no slope constant for sigma={sigma}")


def moment_hankel(sigma, n: int, nome: Nome,
                  policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """det of the n x n Hankel matrix built from the first 2n-1 moments."""
    moments = [lambert_moment(sigma, j, nome, policy) for j in range(2 * n - 1)]
    return hankel_determinant(moments, n)


def _superfactorial(m: int) -> float:
    out = 1.0
    for j in range(1, m + 1):
        out *= math.factorial(j - 1)
    return out


def coincident_prediction(sigma, n: int, nome: Nome,
                          policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Closed-form value of lim P / Vandermonde as all points collide."""
    C = laurent_constant(sigma, nome, policy)
    D = entry_slope(sigma, nome, policy)
    return (
        (2j * C) ** n * D ** (n * (2 * n - 1)) / _superfactorial(2 * n)
        * moment_hankel(sigma, n, nome, policy)
    )


def _vandermonde_z(z: np.ndarray) -> complex:
    out = 1.0 + 0j
    m = len(z)
    for i in range(m):
        for j in range(i + 1, m):
            out *= z[i] - z[j]
    return out


def _richardson(values: list[complex]) -> complex:
    # one ladder of order-h^2 extrapolation per halving
    work = list(values)
    factor = 4.0
    while len(work) > 1:
        work = [(factor * work[i + 1] - work[i]) / (factor - 1) for i in range(len(work) - 1)]
        factor *= 4.0
    return work[0]


def coincident_limit_check(sigma, n: int, nome: Nome, *,
                           steps=(4e-2, 2e-2, 1e-2, 5e-3),
                           policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Richardson-extrapolated collision limit against the Hankel prediction.

    Entries stay O(1) while the pfaffian shrinks like h^(n(2n-1)), so the
    float cancellation floor restricts the check to n <= 2.
    """
    if n > 2:
        raise NumericalLimitError(
            "collision limit beyond n = 2 cancels below float precision"
        )
    ratios = []
    for h in steps:
        z = np.arange(1, 2 * n + 1) * h
        cfg = PointConfig(tuple(z), nome)
        ratios.append(p_sigma(sigma, cfg, policy=policy) / _vandermonde_z(z))
    extr = _richardson(ratios)
    predicted = coincident_prediction(sigma, n, nome, policy)
    return abs(extr - predicted) / abs(predicted)


# --- standalone pfaffian collision lemma -------------------------------------

def sine_family_derivatives(coeffs, n: int) -> np.ndarray:
    """Odd derivative table at 0 for f(z) = sum_r coeffs[r-1] sin(r z)."""
    M = np.empty((n, n))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            m = 2 * i + 2 * j - 3
            M[i - 1, j - 1] = (-1) ** (i + j) * sum(
                c * r**m for r, c in enumerate(coeffs, start=1)
            )
    return M


def pfaffian_collision_check(coeffs, n: int, *, steps=(4e-2, 2e-2, 1e-2, 5e-3)) -> float:
    """pf(f(z_i - z_j)) / Vandermonde against its derivative determinant."""
    ratios = []
    for h in steps:
        z = np.arange(1, 2 * n + 1) * h
        A = np.zeros((2 * n, 2 * n))
        for i in range(2 * n):
            for j in range(2 * n):
                A[i, j] = sum(c * math.sin(r * (z[i] - z[j]))
                              for r, c in enumerate(coeffs, start=1))
        ratios.append(pfaffian(A) / _vandermonde_z(z))
    extr = _richardson(ratios)
    predicted = np.linalg.det(sine_family_derivatives(coeffs, n)) / _superfactorial(2 * n)
    if predicted == 0:
        return abs(extr)
    return abs(extr - predicted) / abs(predicted)
