"""Laurent, Schur and trigonometric expansions of the pfaffian families.

The matrix entries of each family admit Laurent expansions in the point
ratio, valid in an annulus around the unit circle; feeding those into
the pairing sum turns each family into a Schur-type expansion whose
terms are alternants.  The base-1 family needs an extra rank-one
correction and lands on a sum of bordered pfaffians instead.  The p -> 0
leading terms of all six bases are closed-form alternant expressions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import DomainError, TruncationError
from .nome import DEFAULT_POLICY, Nome, TruncationPolicy
from .pfaffians import KernelEvaluator, PointConfig, SigmaLabel, p_sigma
from .sympoly import (
    chi,
    elementary,
    offset_staircase,
    schur,
    staircase,
    t_lambda,
    vandermonde,
)
from .theta import euler_product, legendre3, q_pochhammer


# --- expansion constants -----------------------------------------------------

def laurent_constant(sigma, nome: Nome, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """The normalizing constant of the entry expansion for each base."""
    base = SigmaLabel.parse(sigma).base
    pw = nome.p_pow

    def ep(exp, sign=1):
        return euler_product(sign * pw(Fraction(exp)))

    sq = ep(2) ** 2
    if base == 0:
        return -ep(4) / (sq * ep(Fraction(4, 3)))
    if base == 1:
        return ep(1) / (sq * ep(3))
    if base == 2:
        return ep(1, -1) / (sq * ep(3, -1))
    if base == 3:
        return ep(1) / (sq * ep(Fraction(1, 3)))
    if base == 4:
        return -ep(4) / (sq * ep(12))
    return -ep(1, -1) / (sq * ep(Fraction(1, 3), -1))


# Parity of the entry kernel: even entries expand in x^{2k}, odd ones in
# x^{2k-1}.  The annulus exponent a means validity for |p^a| < |x| < |p^-a|.
_PARITY = {0: "even", 4: "even", 2: "odd", 3: "odd", 6: "odd", 1: "odd"}
_ANNULUS = {
    0: Fraction(1, 6),
    6: Fraction(1, 6),
    1: Fraction(1),
    2: Fraction(1, 2),
    4: Fraction(1, 2),
    3: Fraction(1, 3),
}
# Magnitude of c_k decays like |p|^(decay * k); controls truncation.
_DECAY = {
    0: Fraction(1, 3),
    6: Fraction(1, 3),
    2: Fraction(1),
    4: Fraction(1),
    3: Fraction(2, 3),
    1: Fraction(2),
}


def _coeff_positive(base: int, k: int, nome: Nome) -> complex:
    # k >= 1 throughout; negative indices follow from antisymmetry
    pw = nome.p_pow
    if base == 0:
        return (1 - pw(Fraction(4 * k, 3))) / (1 + pw(2 * k)) * pw(Fraction(k - 1, 3))
    if base == 6:
        return (1 - pw(Fraction(4 * k - 2, 3))) / (1 + pw(2 * k - 1)) * pw(Fraction(k - 1, 3))
    if base == 2:
        return legendre3(k + 1) * pw(k - 1) / (1 + pw(2 * k - 1))
    if base == 4:
        return legendre3(k) * pw(k - 1) / (1 + pw(2 * k))
    if base == 3:
        return (-1) ** k * (1 - pw(Fraction(2 * k - 1, 3))) / (1 - pw(2 * k - 1)) * pw(
            Fraction(2 * k - 2, 3)
        )
    # base 1: the series part only; the rational term is handled separately
    return legendre3(k + 1) * (-1) ** k * pw(2 * k - 1) / (1 - pw(2 * k - 1))


def laurent_coefficient(sigma, k: int, nome: Nome) -> complex:
    """c_k of the entry expansion, extended to all integers by antisymmetry."""
    base = SigmaLabel.parse(sigma).base
    if _PARITY[base] == "even":
        if k == 0:
            return 0j
        if k < 0:
            return -_coeff_positive(base, -k, nome)
        return _coeff_positive(base, k, nome)
    if k <= 0:
        return -_coeff_positive(base, 1 - k, nome)
    return _coeff_positive(base, k, nome)


@dataclass(frozen=True)
class LaurentTable:
    sigma: SigmaLabel
    C: complex
    parity: str
    coefficient: object
    values: dict


def laurent_coefficients(sigma, k_range, nome: Nome,
                         policy: TruncationPolicy = DEFAULT_POLICY) -> LaurentTable:
    """Bundle the constant and coefficient function, with the requested
    indices precomputed."""
    sigma = SigmaLabel.parse(sigma)
    if sigma.hatted:
        raise DomainError("entry expansions are tabulated for plain labels only")
    if abs(nome.p) >= 0.9:
        raise DomainError("entry expansions need |p| < 0.9")
    coeff = lambda k: laurent_coefficient(sigma, k, nome)
    return LaurentTable(
        sigma,
        laurent_constant(sigma, nome, policy),
        _PARITY[sigma.base],
        coeff,
        {k: coeff(k) for k in k_range},
    )


def rational_part(x: complex) -> complex:
    """The subtracted rational term of the base-1 entry expansion."""
    return (x**-2 - x**2) / (x**-3 + x**3)


def laurent_sum(sigma, x: complex, nome: Nome, *, cutoff: int | None = None,
                policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Sum the entry expansion at a ratio inside its annulus."""
    sigma = SigmaLabel.parse(sigma)
    base = sigma.base
    a = float(_ANNULUS[base])
    r = abs(nome.p)
    if not (r**a < abs(x) < r**-a):
        raise DomainError(
            f"ratio magnitude {abs(x):.6f} outside the annulus (|p|^{a}, |p|^-{a})"
        )
    # the term ratio is at worst |p|^decay * max(|x|, 1/|x|)^2 per step
    rho = r ** float(_DECAY[base]) * max(abs(x), 1 / abs(x)) ** 2
    if cutoff is None:
        if rho >= 1:
            raise TruncationError(f"series does not contract at |x| = {abs(x):.6f}")
        cutoff = max(8, math.ceil(math.log(1e-18) / math.log(rho)))
    if cutoff > policy.max_terms:
        raise TruncationError(f"cutoff {cutoff} exceeds policy limit {policy.max_terms}")
    C = laurent_constant(sigma, nome, policy)
    if base == 1:
        total = rational_part(x)
        for k in range(1, cutoff + 1):
            total += _coeff_positive(1, k, nome) * (x ** (2 * k - 1) - x ** (1 - 2 * k))
        return C * total
    total = 0j
    if _PARITY[base] == "even":
        for k in range(1, cutoff + 1):
            c = _coeff_positive(base, k, nome)
            total += c * (x ** (2 * k) - x ** (-2 * k))
    else:
        for k in range(1, cutoff + 1):
            c = _coeff_positive(base, k, nome)
            total += c * (x ** (2 * k - 1) - x ** (1 - 2 * k))
    return C * total


def laurent_residual(sigma, x: complex, nome: Nome,
                     policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Series against the closed-form matrix entry at one ratio."""
    ev = KernelEvaluator(sigma, nome, policy)
    closed = ev.entry(x)
    series = laurent_sum(sigma, x, nome, policy=policy)
    return abs(closed - series) / abs(closed)


# --- Schur expansions for bases 0, 2, 3, 4, 6 --------------------------------

SCHUR_BASES = (0, 2, 3, 4, 6)


def schur_cutoff(sigma, cfg: PointConfig, tol: float = 1e-9) -> int:
    """Smallest index cutoff whose geometric tail bound drops below tol."""
    base = SigmaLabel.parse(sigma).base
    x = np.asarray(cfg.x)
    amp = (np.abs(x).max() / np.abs(x).min()) ** 2
    rho = abs(cfg.nome.p) ** float(_DECAY[base]) * amp
    if rho >= 1:
        raise TruncationError("points spread beyond the contraction region")
    k = max(cfg.n + 2, math.ceil(math.log(tol) / math.log(rho)) + cfg.n)
    return min(k, 64)


def schur_expansion(sigma, cfg: PointConfig, cutoff: int,
                    policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Alternant expansion of one plain-label family, truncated at cutoff."""
    sigma = SigmaLabel.parse(sigma)
    base = sigma.base
    if base not in SCHUR_BASES or sigma.hatted:
        raise DomainError(f"no alternant expansion tabulated for sigma={sigma}")
    n = cfg.n
    ev = KernelEvaluator(sigma, cfg.nome, policy)
    x = np.asarray(cfg.x)
    pref = laurent_constant(sigma, cfg.nome, policy) ** n
    for i in range(2 * n):
        for j in range(i + 1, 2 * n):
            pref *= ev.prefactor(x[i] / x[j])
    if _PARITY[base] == "odd":
        pref *= cfg.X
    xs = x**2
    total = 0j
    for ks in combinations(range(1, cutoff + 1), n):
        coef = 1.0 + 0j
        for k in ks:
            coef *= _coeff_positive(base, k, cfg.nome)
        if coef == 0:
            continue
        if _PARITY[base] == "even":
            mu = [k for k in reversed(ks)] + [-k for k in ks]
        else:
            mu = [k - 1 for k in reversed(ks)] + [-k for k in ks]
        total += coef * chi(mu, xs)
    return pref * total


def schur_expansion_check(sigma, cfg: PointConfig, cutoff: int | None = None,
                          policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Truncated alternant sum against the direct evaluation."""
    if cutoff is None:
        cutoff = schur_cutoff(sigma, cfg)
    direct = p_sigma(sigma, cfg, policy=policy)
    series = schur_expansion(sigma, cfg, cutoff, policy)
    return abs(direct - series) / abs(direct)


# --- bordered-pfaffian expansion for base 1 ----------------------------------

def sqe_expansion(cfg: PointConfig, cutoff: int,
                  policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Base-1 family as a sum of T-alternants with rank-one p-corrections."""
    n = cfg.n
    nome = cfg.nome
    pw = nome.p_pow
    x = np.asarray(cfg.x)
    p6 = pw(6)
    pref = (-1) ** n * laurent_constant(1, nome, policy) ** n * cfg.X ** (4 - 6 * n)
    pref *= vandermonde(x**4)
    for i in range(2 * n):
        for j in range(i + 1, 2 * n):
            w3 = (x[i] / x[j]) ** 6
            pref *= q_pochhammer(-p6 * w3, p6, policy) * q_pochhammer(-p6 / w3, p6, policy)
    xs = x**2
    total = 0j
    for m in range(n + 1):
        for ks in combinations(range(1, cutoff + 1), m):
            coef = 1.0 + 0j
            for k in ks:
                coef *= legendre3(k + 1) * (-1) ** (k - 1) * pw(2 * k - 1) / (1 - pw(2 * k - 1))
            if coef == 0:
                continue
            lam = [k - 1 for k in reversed(ks)] + [-k for k in ks]
            total += coef * t_lambda(lam, xs)
    return pref * total


def sqe_expansion_check(cfg: PointConfig, cutoff: int | None = None,
                        policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    if cutoff is None:
        r = abs(cfg.nome.p)
        x = np.asarray(cfg.x)
        amp = (np.abs(x).max() / np.abs(x).min()) ** 2
        rho = r**2 * amp
        if rho >= 1:
            raise TruncationError("points spread beyond the contraction region")
        cutoff = max(cfg.n + 2, math.ceil(math.log(1e-9) / math.log(rho)) + cfg.n)
    direct = p_sigma(1, cfg, policy=policy)
    series = sqe_expansion(cfg, cutoff, policy)
    return abs(direct - series) / abs(direct)


# --- trigonometric leading terms ---------------------------------------------

def pi_sigma(sigma, cfg: PointConfig) -> complex:
    """Leading term of the family as p -> 0, including its p-power."""
    base = SigmaLabel.parse(sigma).base
    n = cfg.n
    x = np.asarray(cfg.x)
    X = cfg.X
    pw = cfg.nome.p_pow
    if base == 0:
        return (
            (-1) ** n * pw(Fraction(n * (n - 1), 6)) * X ** (-2 * n)
            * vandermonde(x**2) * elementary(n, x**2)
        )
    if base == 1:
        return (-1) ** n * X ** (4 - 6 * n) * vandermonde(x**4) * schur(staircase(n), x**4)
    if base == 2:
        if n % 2:
            return (
                (-1) ** ((n + 1) // 2) * pw(Fraction((n - 1) * (3 * n + 1), 4))
                * X ** (2 - 3 * n) * vandermonde(x**2) * schur(staircase(n), x**2)
            )
        return (
            (-1) ** (n // 2) * pw(Fraction(n * (3 * n - 2), 4))
            * X ** (1 - 3 * n) * vandermonde(x**2) * schur(offset_staircase(n), x**2)
        )
    if base == 3:
        return (
            (-1) ** (n * (n + 1) // 2) * pw(Fraction(n * (n - 1), 3))
            * X ** (2 - 4 * n) * vandermonde(x**4)
        )
    if base == 4:
        if n % 2:
            return (
                (-1) ** ((n + 1) // 2) * pw(Fraction((n - 1) * (3 * n - 1), 4))
                * X ** (1 - 3 * n) * vandermonde(x**2) * schur(offset_staircase(n), x**2)
            )
        return (
            (-1) ** (n // 2) * pw(Fraction(n * (3 * n - 4), 4))
            * X ** (2 - 3 * n) * vandermonde(x**2) * schur(staircase(n), x**2)
        )
    if base == 6:
        return (-1) ** n * pw(Fraction(n * (n - 1), 6)) * X ** (1 - 2 * n) * vandermonde(x**2)
    raise DomainError(f"no trigonometric leading term for sigma={sigma}")


def trig_gap(sigma, n: int) -> float:
    """Exponent gap between the leading term and the next order in p."""
    base = SigmaLabel.parse(sigma).base
    if base in (0, 3, 6):
        return 1 / 3
    if base in (1, 2):
        return 1.0
    # base 4 alternates with the parity of n
    return 1.0 if n % 2 else 2.0


@dataclass(frozen=True)
class TrigResult:
    residuals: tuple
    slope: float
    gap: float

    @property
    def ok(self) -> bool:
        return self.slope >= self.gap - 0.1


def trig_leading_check(sigma, z, *, p_mags=(1e-3, 1e-4),
                       policy: TruncationPolicy = DEFAULT_POLICY) -> TrigResult:
    """Convergence rate of the family toward its leading term.

    Evaluates the relative residual at two small nome magnitudes on the
    imaginary tau axis and fits the decay slope, which must reach the
    predicted exponent gap up to a small margin.
    """
    residuals = []
    for mag in p_mags:
        tau = 1j * math.log(1 / mag) / math.pi
        cfg = PointConfig(tuple(z), Nome(tau))
        direct = p_sigma(sigma, cfg, policy=policy)
        lead = pi_sigma(sigma, cfg)
        residuals.append(abs(direct - lead) / abs(lead))
    slope = math.log(residuals[0] / residuals[1]) / math.log(p_mags[0] / p_mags[1])
    n = len(z) // 2
    return TrigResult(tuple(residuals), slope, trig_gap(sigma, n))
