"""q-Pochhammer and theta kernels.

Conventions used throughout the package:

    (a; p)_inf = prod_{j>=0} (1 - a p^j)
    theta(x; p) = (x; p)_inf * (p/x; p)_inf

Repeated arguments abbreviate products, e.g. theta(a, b; p) =
theta(a; p) theta(b; p).  theta(x; 0) = 1 - x.
"""
from __future__ import annotations

import cmath
import math
from functools import lru_cache

from .errors import DomainError, PoleError, TruncationError
from .nome import DEFAULT_POLICY, Nome, TruncationPolicy

OMEGA = cmath.exp(2j * cmath.pi / 3)


def legendre3(k: int) -> int:
    """Legendre-style symbol (k/3): the representative of k mod 3 in {-1,0,1}."""
    r = k % 3
    return r if r < 2 else -1


def pochhammer_terms(a: complex, p: complex, policy: TruncationPolicy) -> int:
    """Number of product factors needed for (a; p)_inf under the policy."""
    if abs(p) >= 1:
        raise DomainError(f"q-Pochhammer needs |p| < 1, got |p| = {abs(p)}")
    if a == 0 or p == 0:
        return 1 if a != 0 else 0
    bound = policy.rel_tol * (1 - abs(p))
    if abs(a) < bound:
        return 0
    n = math.ceil(math.log(bound / abs(a)) / math.log(abs(p)))
    if n > policy.max_terms:
        raise TruncationError(
            f"(a;p)_inf needs {n} factors at |a| = {abs(a)}, |p| = {abs(p)}; "
            f"budget is {policy.max_terms}"
        )
    return max(n, 1)


def q_pochhammer(a: complex, p: complex, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """(a; p)_inf, truncated once the dropped factors are below rel_tol."""
    n = pochhammer_terms(a, p, policy)
    out = 1.0 + 0j
    apj = complex(a)
    for _ in range(n):
        out *= 1 - apj
        apj *= p
    return out


@lru_cache(maxsize=256)
def euler_product(p: complex) -> complex:
    """(p; p)_inf with a small cache; p is hashable as a complex scalar."""
    return q_pochhammer(p, p)


def theta_p(x: complex, p: complex, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """theta(x; p) in product form."""
    if x == 0:
        raise DomainError("theta(x; p) needs x != 0")
    if p == 0:
        return 1 - x
    if abs(p) >= 1:
        raise DomainError(f"theta needs |p| < 1, got |p| = {abs(p)}")
    return q_pochhammer(x, p, policy) * q_pochhammer(p / x, p, policy)


def theta_prod(p: complex, *xs: complex, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """theta(x1, x2, ...; p) = prod_k theta(xk; p)."""
    out = 1.0 + 0j
    for x in xs:
        out *= theta_p(x, p, policy)
    return out


def theta_series(x: complex, p: complex, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """theta(x; p) through the triple-product series
    (p;p)_inf^-1 * sum_n (-1)^n p^(n(n-1)/2) x^n."""
    if x == 0:
        raise DomainError("theta(x; p) needs x != 0")
    if p == 0:
        return 1 - x
    if abs(p) >= 1:
        raise DomainError(f"theta needs |p| < 1, got |p| = {abs(p)}")
    total = 1.0 + 0j  # n = 0 term
    peak = 1.0
    # upward: t(n+1) = t(n) * (-x) * p^n
    term = 1.0 + 0j
    n = 0
    while True:
        term *= -x * p**n
        n += 1
        total += term
        peak = max(peak, abs(total))
        if abs(term) < policy.rel_tol * peak and abs(term * x * p**n) < policy.rel_tol * peak:
            break
        if n > policy.max_terms:
            raise TruncationError("triple-product series did not settle (upward)")
    # downward: t(n-1) = t(n) * (-1/x) * p^(1-n)
    term = 1.0 + 0j
    n = 0
    while True:
        term *= -(p ** (1 - n)) / x
        n -= 1
        total += term
        peak = max(peak, abs(total))
        if abs(term) < policy.rel_tol * peak and abs(term * p ** (1 - n) / x) < policy.rel_tol * peak:
            break
        if -n > policy.max_terms:
            raise TruncationError("triple-product series did not settle (downward)")
    return total / euler_product(p)


def theta_jacobi(k: int, z: complex, nome: Nome, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Classical theta_k(z | tau), k in 1..4, with x = exp(iz).

    Product representations over the doubled nome p^2; the p^(1/4) prefactors
    come from the nome's tau so the branch is fixed.
    """
    if k not in (1, 2, 3, 4):
        raise DomainError(f"theta_jacobi index must be 1..4, got {k}")
    x = cmath.exp(1j * z)
    p = nome.p
    p2 = nome.p_pow(2)
    pref = euler_product(p2)
    if k == 1:
        return 1j * nome.p_pow(0.25) * pref * theta_p(x**2, p2, policy) / x
    if k == 2:
        return nome.p_pow(0.25) * pref * theta_p(-(x**2), p2, policy) / x
    if k == 3:
        return pref * theta_p(-p * x**2, p2, policy)
    return pref * theta_p(p * x**2, p2, policy)


def quintuple_rhs(x: complex, p: complex, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """sum_n ((n+1)/3) p^(n(n-1)/3) x^n.

    Only n with nonzero symbol contribute, and for those n(n-1)/3 is an
    integer, so the sum needs no fractional nome powers.
    """
    if x == 0:
        raise DomainError("quintuple series needs x != 0")

    def term(n: int) -> complex:
        sym = legendre3(n + 1)
        if sym == 0:
            return 0j
        e = n * (n - 1) // 3
        return sym * p**e * x**n

    total = term(0) + term(1)
    peak = max(abs(total), 1e-300)
    for direction in (1, -1):
        n = 1 if direction == 1 else 0
        dead = 0
        while dead < 4:
            n += direction
            t = term(n)
            total += t
            peak = max(peak, abs(total))
            if abs(t) < policy.rel_tol * peak:
                dead += 1
            else:
                dead = 0
            if abs(n) > policy.max_terms:
                raise TruncationError("quintuple series did not settle")
    return total


def quintuple_lhs(x: complex, p: complex, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """(p^2; p^2)_inf * theta(x, p x, -p x; p^2)."""
    p2 = p * p
    return euler_product(p2) * theta_prod(p2, x, p * x, -p * x, policy=policy)


def kronecker_sum(a: complex, x: complex, p: complex, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Bilateral sum_n x^n / (1 - a p^n) on the annulus |p| < |x| < 1.

    Negative-index terms are evaluated as (p/x)^m / (p^m - a), m = -n, which
    stays stable as p^m underflows.
    """
    if not (abs(p) < abs(x) < 1):
        raise DomainError(f"kronecker_sum needs |p| < |x| < 1, got |p|={abs(p)}, |x|={abs(x)}")
    if abs(1 - a) < 1e-12 * (1 + abs(a)):
        raise PoleError("kronecker_sum pole: a = 1")
    total = 1 / (1 - a)
    peak = abs(total)
    # n > 0
    xn = 1.0 + 0j
    pn = 1.0 + 0j
    for n in range(1, policy.max_terms + 1):
        xn *= x
        pn *= p
        den = 1 - a * pn
        if abs(den) < 1e-12 * (1 + abs(a * pn)):
            raise PoleError(f"kronecker_sum pole at n = {n}")
        t = xn / den
        total += t
        peak = max(peak, abs(total))
        if abs(t) < policy.rel_tol * peak:
            break
    else:
        raise TruncationError("kronecker_sum did not settle (upward)")
    # n < 0 via m = -n
    rm = 1.0 + 0j
    pm = 1.0 + 0j
    for m in range(1, policy.max_terms + 1):
        rm *= p / x
        pm *= p
        den = pm - a
        if abs(den) < 1e-12 * (1 + abs(a)):
            raise PoleError(f"kronecker_sum pole at n = {-m}")
        t = rm / den
        total += t
        peak = max(peak, abs(total))
        if abs(t) < policy.rel_tol * peak:
            break
    else:
        raise TruncationError("kronecker_sum did not settle (downward)")
    return total


def kronecker_lhs(a: complex, x: complex, p: complex, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """(p;p)_inf^2 theta(a x; p) / (theta(a; p) theta(x; p))."""
    den = theta_p(a, p, policy) * theta_p(x, p, policy)
    if abs(den) < 1e-250:
        raise PoleError("kronecker_lhs hit a theta zero")
    return euler_product(p) ** 2 * theta_p(a * x, p, policy) / den


def ts_relations_check(nome: Nome, policy: TruncationPolicy = DEFAULT_POLICY) -> tuple[float, float]:
    """Relative residuals of the two cube-root evaluations

        theta(-p w; p^2) = 1 / theta(-p; p^6)
        theta(-w; p^2)   = -w^2 / theta(-p^2; p^6)

    with w = exp(2 i pi / 3).
    """
    p = nome.p
    p2 = nome.p_pow(2)
    p6 = nome.p_pow(6)
    lhs1 = theta_p(-p * OMEGA, p2, policy)
    rhs1 = 1 / theta_p(-p, p6, policy)
    lhs2 = theta_p(-OMEGA, p2, policy)
    rhs2 = -(OMEGA**2) / theta_p(-p2, p6, policy)
    r1 = abs(lhs1 - rhs1) / abs(rhs1)
    r2 = abs(lhs2 - rhs2) / abs(rhs2)
    return r1, r2
