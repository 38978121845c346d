"""Identities relating the twelve families to each other.

Covers the hat/nome-shift equivalence, modular transformations between
labels, half-period shift identities with their closed-form constants,
the two-point specialization recursion, the kernel three-term relations,
the characterizing periodicity and vanishing conditions, and the
classical four-theta rewriting of each family.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegeneracyError, DomainError
from .linalg import pfaffian
from .nome import DEFAULT_POLICY, Nome, TruncationPolicy
from .pfaffians import (
    KernelEvaluator,
    PointConfig,
    SigmaLabel,
    p_sigma,
)
from .theta import theta_jacobi, theta_p, theta_prod

import numpy as np


def _rel(delta: complex, scale: float) -> float:
    return abs(delta) / scale if scale > 0 else float("inf")


# --- hat labels vs nome shift -----------------------------------------------

def hat_cross_check(sigma, cfg: PointConfig, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Relative difference between the hatted label at tau and the plain
    label at tau + 3, which must agree."""
    sigma = SigmaLabel.parse(sigma)
    hatted = SigmaLabel(sigma.base, True)
    plain = SigmaLabel(sigma.base, False)
    lhs = p_sigma(hatted, cfg, policy=policy)
    rhs = p_sigma(plain, cfg.with_nome(cfg.nome.shifted(3)), policy=policy)
    return _rel(lhs - rhs, abs(lhs))


# --- modular transformations -------------------------------------------------

# Parity of (a, b, c, d) selects the image label; the congruence class of
# (c, d) mod 3 selects which of the two tables applies.  c and d are
# coprime, so exactly one of them can be divisible by 3.
_MOD_TARGET_C0 = {
    (1, 0, 0, 1): "1",
    (1, 1, 0, 1): "1h",
    (1, 1, 1, 0): "2",
    (1, 0, 1, 1): "2h",
    (0, 1, 1, 0): "4",
    (0, 1, 1, 1): "4h",
}
_MOD_TARGET_D0 = {
    (1, 0, 0, 1): "3",
    (1, 1, 0, 1): "3h",
    (1, 1, 1, 0): "6",
    (1, 0, 1, 1): "6h",
    (0, 1, 1, 0): "0",
    (0, 1, 1, 1): "0h",
}


def modular_target(sl2) -> SigmaLabel:
    """Image label of the base-1 family under an SL(2,Z) matrix with 3 | cd."""
    a, b, c, d = sl2
    if a * d - b * c != 1:
        raise DomainError(f"matrix {sl2} is not in SL(2,Z)")
    key = (a % 2, b % 2, c % 2, d % 2)
    if c % 3 == 0:
        return SigmaLabel.parse(_MOD_TARGET_C0[key])
    if d % 3 == 0:
        return SigmaLabel.parse(_MOD_TARGET_D0[key])
    raise DomainError(f"matrix {sl2} needs c or d divisible by 3")


def modular_ratio(sl2, cfg: PointConfig, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Ratio of the transformed base-1 family to its predicted image.

    The ratio depends on the matrix and tau but not on the points, so
    sampling it over several configurations and checking constancy
    verifies the transformation law without knowing the multiplier.
    """
    a, b, c, d = sl2
    target = modular_target(sl2)
    tau = cfg.nome.tau
    denom = c * tau + d
    moved = PointConfig(tuple(z / denom for z in cfg.z), Nome((a * tau + b) / denom))
    lhs = p_sigma(SigmaLabel(1), moved, policy=policy)
    quad = 0j
    m = len(cfg.z)
    for i in range(m):
        for j in range(i + 1, m):
            quad += (cfg.z[i] - cfg.z[j]) ** 2
    factor = cmath.exp(3j * cmath.pi * c / denom * quad)
    rhs = factor * p_sigma(target, cfg, policy=policy)
    return lhs / rhs


@dataclass(frozen=True)
class ModularResult:
    target: SigmaLabel
    ratios: tuple
    deviation: float


def modular_check(sl2, cfgs, policy: TruncationPolicy = DEFAULT_POLICY) -> ModularResult:
    """Constancy of the modular ratio across configurations sharing tau."""
    nomes = {cfg.nome.tau for cfg in cfgs}
    if len(nomes) != 1:
        raise DomainError("all configurations must share the same tau")
    ratios = tuple(modular_ratio(sl2, cfg, policy) for cfg in cfgs)
    scale = max(abs(r) for r in ratios)
    dev = max(
        abs(ratios[i] - ratios[j]) for i in range(len(ratios)) for j in range(i)
    ) if len(ratios) > 1 else 0.0
    return ModularResult(modular_target(sl2), ratios, _rel(dev, scale))


# Twelve matrices covering both congruence branches and all six parity
# classes, each with a tau keeping the transformed nome magnitude usable.
MODULAR_CASES = (
    ((1, 0, 0, 1), 0.3 + 1.1j),
    ((1, 1, 0, 1), 0.3 + 1.1j),
    ((5, 3, 3, 2), 2j / 3),
    ((1, 0, 3, 1), 1j / 3),
    ((2, 1, 3, 2), 2j / 3),
    ((4, 1, 3, 1), 1j / 3),
    ((3, 4, 2, 3), 1.5j),
    ((1, 1, 2, 3), 1.5j),
    ((1, 1, -1, 0), 1j),
    ((1, 2, 1, 3), 1.7j),
    ((0, 1, -1, 0), 1j),
    ((2, 5, 1, 3), 1.7j),
)


# --- half-period shifts ------------------------------------------------------

@dataclass(frozen=True)
class ShiftConstants:
    A: complex
    B: complex


# Shift partner: the label produced on the right-hand side.
_SHIFT_PARTNER = {
    "1": "1h", "1h": "1", "3": "3h", "3h": "3",
    "0": "6", "6": "0", "2": "4", "4": "2",
    "0h": "6h", "6h": "0h", "2h": "4h", "4h": "2h",
}


def shift_partner(sigma) -> SigmaLabel:
    return SigmaLabel.parse(_SHIFT_PARTNER[str(SigmaLabel.parse(sigma))])


def shift_offset(sigma, tau: complex) -> complex:
    """Half-period added to the first point: 1/2, tau/2 or (tau+1)/2."""
    sigma = SigmaLabel.parse(sigma)
    if sigma.base in (1, 3):
        return 0.5
    if sigma.hatted:
        return (tau + 1) / 2
    return tau / 2


def shift_constants(sigma, nome: Nome, policy: TruncationPolicy = DEFAULT_POLICY) -> ShiftConstants:
    """Closed forms of the constants A and B in the half-shift identities."""
    sigma = SigmaLabel.parse(sigma)
    key = str(sigma)
    pw = nome.p_pow

    def th(sign, exp, nexp):
        return theta_p(sign * pw(Fraction(exp)), pw(Fraction(nexp)), policy)

    a_table = {
        "1": -1, "1h": -1, "3": -1, "3h": -1,
        "0": -pw(-1), "4": -pw(-1),
        "0h": pw(-1), "4h": pw(-1),
        "2": -pw(Fraction(-1, 2)), "6": -pw(Fraction(-1, 2)),
        "2h": 1j * pw(Fraction(-1, 2)), "6h": 1j * pw(Fraction(-1, 2)),
    }
    b_table = {
        "0": -pw(Fraction(-5, 3)) * th(-1, Fraction(1, 3), 2) / th(-1, Fraction(2, 3), 2),
        "0h": pw(Fraction(-5, 3)) * th(1, Fraction(1, 3), 2) / th(-1, Fraction(2, 3), 2),
        "1": -th(1, 1, 6) / th(-1, 1, 6),
        "1h": -th(-1, 1, 6) / th(1, 1, 6),
        "2": pw(-1) * th(-1, 1, 6) / th(-1, 2, 6),
        "2h": -pw(-1) * th(1, 1, 6) / th(-1, 2, 6),
        "3": th(-1, Fraction(1, 3), 2) / th(1, Fraction(1, 3), 2),
        "3h": th(1, Fraction(1, 3), 2) / th(-1, Fraction(1, 3), 2),
        "4": pw(-2) * th(-1, 2, 6) / th(-1, 1, 6),
        "4h": pw(-2) * th(-1, 2, 6) / th(1, 1, 6),
        "6": -pw(Fraction(-4, 3)) * th(-1, Fraction(2, 3), 2) / th(-1, Fraction(1, 3), 2),
        "6h": -pw(Fraction(-4, 3)) * th(-1, Fraction(2, 3), 2) / th(1, Fraction(1, 3), 2),
    }
    return ShiftConstants(complex(a_table[key]), complex(b_table[key]))


def half_shift_check(sigma, cfg: PointConfig, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Residual of the half-period shift identity for the given label."""
    sigma = SigmaLabel.parse(sigma)
    n = cfg.n
    tau = cfg.nome.tau
    lhs = p_sigma(sigma, cfg.replace_z(0, cfg.z[0] + shift_offset(sigma, tau)), policy=policy)
    consts = shift_constants(sigma, cfg.nome, policy)
    factor = 1.0 + 0j
    if sigma.base not in (1, 3):
        # the tau-direction shifts pick up an explicit x-monomial
        for xj in cfg.x[1:]:
            factor *= xj**3
        factor /= cfg.x[0] ** (6 * n - 3)
    rhs = consts.A * consts.B ** (n - 1) * factor * p_sigma(shift_partner(sigma), cfg, policy=policy)
    return _rel(lhs - rhs, max(abs(lhs), abs(rhs)))


# --- specialization recursion ------------------------------------------------

def gamma_shift(sigma, tau: complex) -> complex:
    """Offset gamma with z_{2n-1} = z_{2n} + gamma killing the last prefactor."""
    sigma = SigmaLabel.parse(sigma)
    base, hatted = sigma.base, sigma.hatted
    if base in (0, 6):
        return tau / 6 + (0.5 if hatted else 0.0)
    if base == 3:
        return 0.5 + tau / 3
    if base == 1:
        return 1 / 6
    # base 2 or 4
    return (1 / 6 if hatted else 1 / 3) + tau / 2


def specialization_recursion_check(sigma, cfg: PointConfig,
                                   policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Residual of the one-pair reduction at the special offset.

    The last two points are locked to the gamma offset, where one
    prefactor vanishes and the pfaffian collapses onto a single matrix
    entry.  The left side must go through the pairing path since the
    matrix form hits 0 * inf there.
    """
    sigma = SigmaLabel.parse(sigma)
    n = cfg.n
    tau = cfg.nome.tau
    special = cfg.replace_z(2 * n - 2, cfg.z[2 * n - 1] + gamma_shift(sigma, tau))
    lhs = p_sigma(sigma, special, method="pairings", policy=policy)

    ev = KernelEvaluator(sigma, cfg.nome, policy)
    x = special.x
    rhs = ev.pair_entry(x[2 * n - 2] / x[2 * n - 1])
    for j in range(2 * n - 2):
        rhs *= ev.prefactor(x[j] / x[2 * n - 2]) * ev.prefactor(x[j] / x[2 * n - 1])
    if n > 1:
        rhs *= p_sigma(sigma, PointConfig(special.z[: 2 * n - 2], cfg.nome), policy=policy)
    return _rel(lhs - rhs, max(abs(lhs), abs(rhs)))


# --- kernel three-term relations ---------------------------------------------

_OMEGA = cmath.exp(2j * cmath.pi / 3)

TQL_KINDS = ("odd", "even", "even_flip")


def tql_kernel(kind: str, nome: Nome, policy: TruncationPolicy = DEFAULT_POLICY):
    """One of the three single-variable kernels the matrix entries build on."""
    p = nome.p
    p2 = nome.p_pow(2)
    if kind == "odd":
        return lambda x: theta_prod(p2, x * x, p * x * x, -p * x * x, policy=policy) / x
    if kind == "even":
        return lambda x: theta_prod(p2, x * x, -x * x, p * x * x, policy=policy) / (x * x)
    if kind == "even_flip":
        return lambda x: theta_prod(p2, x * x, -x * x, -p * x * x, policy=policy) / (x * x)
    raise DomainError(f"unknown kernel kind {kind!r}")


def tql_three_term_residuals(kind: str, x: complex, nome: Nome,
                             policy: TruncationPolicy = DEFAULT_POLICY):
    """Residuals of the cube-root-of-unity and nome-direction three-term sums."""
    f = tql_kernel(kind, nome, policy)
    terms_a = (f(x / _OMEGA), f(x), f(_OMEGA * x))
    res_a = _rel(sum(terms_a), max(abs(t) for t in terms_a))
    pw = nome.p_pow
    terms_b = (
        x**-4 * f(pw(Fraction(-2, 3)) * x),
        pw(Fraction(-4, 3)) * f(x),
        x**4 * f(pw(Fraction(2, 3)) * x),
    )
    res_b = _rel(sum(terms_b), max(abs(t) for t in terms_b))
    return res_a, res_b


# --- characterizing conditions -----------------------------------------------

def _g(sigma, cfg, z, policy, method="eliminate"):
    return p_sigma(sigma, cfg.replace_z(0, z), method=method, policy=policy)


def _t_factor(cfg: PointConfig) -> complex:
    return cmath.exp(2j * cmath.pi * sum(cfg.z[1:]))


def period_one_check(sigma, cfg: PointConfig, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """g(z+1) equals g(z) up to the label-dependent sign."""
    sigma = SigmaLabel.parse(sigma)
    eps = -1 if sigma.base in (2, 6) else 1
    z = cfg.z[0]
    lhs = _g(sigma, cfg, z + 1, policy)
    rhs = eps * _g(sigma, cfg, z, policy)
    return _rel(lhs - rhs, max(abs(lhs), abs(rhs)))


def period_tau_check(sigma, cfg: PointConfig, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Quasi-periodicity in the tau direction with its exponential multiplier."""
    sigma = SigmaLabel.parse(sigma)
    eps = -1 if (sigma.hatted and sigma.base in (0, 1, 3, 4)) else 1
    n = cfg.n
    tau = cfg.nome.tau
    z = cfg.z[0]
    t = _t_factor(cfg)
    lhs = _g(sigma, cfg, z + tau, policy)
    mult = t**3 * cmath.exp(-(6 * n - 3) * 1j * cmath.pi * (2 * z + tau))
    rhs = eps * mult * _g(sigma, cfg, z, policy)
    return _rel(lhs - rhs, max(abs(lhs), abs(rhs)))


def three_term_check(sigma, cfg: PointConfig, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Real-direction three-term sum, valid for bases 1, 2 and 4."""
    sigma = SigmaLabel.parse(sigma)
    if sigma.base not in (1, 2, 4):
        raise DomainError(f"three-term relation does not apply to sigma={sigma}")
    z = cfg.z[0]
    terms = tuple(_g(sigma, cfg, z + s, policy) for s in (-2 / 3, 0, 2 / 3))
    return _rel(sum(terms), max(abs(t) for t in terms))


def three_term_tau_check(sigma, cfg: PointConfig, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Nome-direction three-term sum, valid for bases 0, 3 and 6."""
    sigma = SigmaLabel.parse(sigma)
    if sigma.base not in (0, 3, 6):
        raise DomainError(f"tau three-term relation does not apply to sigma={sigma}")
    n = cfg.n
    tau = cfg.nome.tau
    z = cfg.z[0]
    t = _t_factor(cfg)
    w = (8 * n - 4) * 1j * cmath.pi
    terms = (
        t**2 * cmath.exp(-w * z) * _g(sigma, cfg, z - 2 * tau / 3, policy),
        cmath.exp(-w * tau / 3) * _g(sigma, cfg, z, policy),
        t**-2 * cmath.exp(w * z) * _g(sigma, cfg, z + 2 * tau / 3, policy),
    )
    return _rel(sum(terms), max(abs(t) for t in terms))


def vanishing_points(sigma, cfg: PointConfig):
    """The points where g must vanish: every z_j, plus a half-period
    offset of each depending on the label."""
    sigma = SigmaLabel.parse(sigma)
    tau = cfg.nome.tau
    points = list(cfg.z[1:])
    if sigma.base in (1, 3):
        offset = 0.5
    elif sigma.hatted:
        offset = (1 + tau) / 2
    else:
        offset = tau / 2
    points.extend(z + offset for z in cfg.z[1:])
    return tuple(points)


def vanishing_check(sigma, cfg: PointConfig, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Worst relative size of g over its mandatory zero set.

    The zeros sit exactly on denominator-theta zeros for most labels, so
    evaluation goes through the pairing path, which stays finite there.
    """
    sigma = SigmaLabel.parse(sigma)
    worst = 0.0
    for pt in vanishing_points(sigma, cfg):
        val = _g(sigma, cfg, pt, policy, method="pairings")
        scale = abs(_g(sigma, cfg, pt + 0.1, policy, method="pairings"))
        worst = max(worst, _rel(val, scale))
    return worst


# --- classical four-theta forms ----------------------------------------------

# Label -> (variant, k, l): variant "triple" scales tau by 3 in the
# prefactor theta, "third" scales it by 1/3.
_CLASSICAL_TABLE = {
    "1h": ("triple", 2, 3),
    "1": ("triple", 2, 4),
    "4h": ("triple", 3, 2),
    "2h": ("triple", 3, 4),
    "4": ("triple", 4, 2),
    "2": ("triple", 4, 3),
    "3h": ("third", 2, 3),
    "3": ("third", 2, 4),
    "0h": ("third", 3, 2),
    "6h": ("third", 3, 4),
    "0": ("third", 4, 2),
    "6": ("third", 4, 3),
}


def classical_p(sigma, cfg: PointConfig, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """The four-theta evaluation path, proportional to the native one.

    Matrix entries are products theta_1 theta_k theta_l at the point
    differences over a single theta at tripled (or thirded) arguments
    and nome, with (k, l) read from the label table.  The ratio to
    p_sigma is independent of the points.
    """
    sigma = SigmaLabel.parse(sigma)
    variant, k, l = _CLASSICAL_TABLE[str(sigma)]
    nome = cfg.nome
    if variant == "triple":
        scaled = nome.scaled(3)
        arg_mult = 3.0
    else:
        scaled = nome.scaled(1 / 3)
        arg_mult = 1.0
    m = len(cfg.z)
    pref = 1.0 + 0j
    mat = np.zeros((m, m), dtype=complex)
    for i in range(m):
        for j in range(i + 1, m):
            u = cmath.pi * (cfg.z[i] - cfg.z[j])
            den = theta_jacobi(k, arg_mult * u, scaled, policy)
            if abs(den) < 1e-12:
                raise DegeneracyError(f"classical denominator vanishes at pair ({i},{j})")
            pref *= den
            num = (
                theta_jacobi(1, u, nome, policy)
                * theta_jacobi(k, u, nome, policy)
                * theta_jacobi(l, u, nome, policy)
            )
            mat[i, j] = num / den
            mat[j, i] = -mat[i, j]
    return pref * pfaffian(mat)


def classical_form_check(sigma, cfgs, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Constancy of the native-to-classical ratio across configurations."""
    ratios = [
        p_sigma(sigma, cfg, policy=policy) / classical_p(sigma, cfg, policy)
        for cfg in cfgs
    ]
    scale = max(abs(r) for r in ratios)
    dev = max(
        abs(ratios[i] - ratios[j]) for i in range(len(ratios)) for j in range(i)
    ) if len(ratios) > 1 else 0.0
    return _rel(dev, scale)
