"""The twelve theta-pfaffian families and their evaluation paths.

Each family is an antisymmetric function of 2n complex points z_1..z_2n,
built as a prefactor product over pairs times the pfaffian of a skew
matrix whose entries are theta quotients in the squared point ratios
w = (x_i/x_j)^2 with x_j = e^{i pi z_j}.  Labels come in six integer
bases {0,1,2,3,4,6}, each with a hatted partner obtained by flipping the
sign of every theta factor carrying an explicit fractional power of the
nome.

Two evaluation paths are provided.  The standard one forms the matrix
and runs the elimination pfaffian; it refuses configurations where a
denominator theta degenerates.  The pairing path regroups each product
of prefactor and matrix entry before summing over perfect matchings, so
that points placed exactly on a denominator zero stay finite.  The two
agree wherever both are defined.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegeneracyError, DomainError, RangeError
from .linalg import all_pairings, pairing_sign, pfaffian
from .nome import DEFAULT_POLICY, Nome, TruncationPolicy
from .theta import theta_p

SIGMA_BASES = (0, 1, 2, 3, 4, 6)

# A configuration counts as degenerate when a denominator theta drops
# below this in magnitude.
DEGENERACY_FLOOR = 1e-8

# Full evaluations stop at 2n = 8 points; nothing downstream needs more
# than n = 3, the fourth pair is headroom.
MAX_PAIRS = 4


@dataclass(frozen=True, order=True)
class SigmaLabel:
    """One of the twelve family labels: an integer base, optionally hatted."""

    base: int
    hatted: bool = False

    def __post_init__(self):
        if self.base not in SIGMA_BASES:
            raise DomainError(f"sigma base must be one of {SIGMA_BASES}, got {self.base!r}")

    @classmethod
    def parse(cls, label) -> "SigmaLabel":
        """Accept a SigmaLabel, an integer base, or a string like '2' / '2h'."""
        if isinstance(label, cls):
            return label
        if isinstance(label, int):
            return cls(label)
        text = str(label).strip().lower()
        hatted = text.endswith("h")
        if hatted:
            text = text[:-1]
        if not text.isdigit():
            raise DomainError(f"cannot parse sigma label {label!r}")
        return cls(int(text), hatted)

    def __str__(self) -> str:
        return f"{self.base}h" if self.hatted else str(self.base)

    @property
    def partner(self) -> "SigmaLabel":
        """The label with the hat toggled."""
        return SigmaLabel(self.base, not self.hatted)


ALL_SIGMAS = tuple(
    SigmaLabel(base, hatted) for base in SIGMA_BASES for hatted in (False, True)
)


@dataclass(frozen=True)
class ThetaFactor:
    """One factor theta(sign * p^p_exp * w^w_pow ; p^nome_exp).

    Here w is the squared point ratio and the exponents of the nome are
    kept as exact fractions so that p^(1/3) and friends always come from
    tau, never from a principal root.
    """

    sign: int
    p_exp: Fraction
    w_pow: int
    nome_exp: Fraction

    def hatted(self) -> "ThetaFactor":
        # the hat flips exactly the factors with an explicit p-power
        if self.p_exp == 0:
            return self
        return ThetaFactor(-self.sign, self.p_exp, self.w_pow, self.nome_exp)


def _f(sign, p_exp, w_pow, nome_exp) -> ThetaFactor:
    return ThetaFactor(sign, Fraction(p_exp), w_pow, Fraction(nome_exp))


@dataclass(frozen=True)
class KernelSpec:
    """Factor data for one family.

    prefactor  b(x) = x^pref_xpow * theta[den](x^2)
    entry      m(x) = x^entry_xpow * prod theta[num](x^2) / theta[den](x^2)
    pair entry a(x) = b(x) m(x), which drops the denominator entirely.
    """

    sigma: SigmaLabel
    pref_xpow: int
    entry_xpow: int
    numerators: tuple
    den: ThetaFactor

    def hatted(self) -> "KernelSpec":
        return KernelSpec(
            self.sigma.partner,
            self.pref_xpow,
            self.entry_xpow,
            tuple(f.hatted() for f in self.numerators),
            self.den.hatted(),
        )


# Numerator triples share two shapes: an "even" kernel with theta(w, -w, pw; p^2)
# and an "odd" one with theta(w, pw, -pw; p^2).
_NUM_EVEN = (_f(1, 0, 1, 2), _f(-1, 0, 1, 2), _f(1, 1, 1, 2))
_NUM_ODD = (_f(1, 0, 1, 2), _f(1, 1, 1, 2), _f(-1, 1, 1, 2))

_BASE_SPECS = {
    0: KernelSpec(SigmaLabel(0), 0, -2, _NUM_EVEN, _f(1, Fraction(1, 3), 1, Fraction(2, 3))),
    1: KernelSpec(SigmaLabel(1), -3, 1, _NUM_EVEN, _f(-1, 0, 3, 6)),
    2: KernelSpec(SigmaLabel(2), 0, -1, _NUM_ODD, _f(1, 3, 3, 6)),
    3: KernelSpec(SigmaLabel(3), -1, -1, _NUM_EVEN, _f(-1, 0, 1, Fraction(2, 3))),
    4: KernelSpec(SigmaLabel(4), 0, -2, _NUM_EVEN, _f(1, 3, 3, 6)),
    6: KernelSpec(SigmaLabel(6), 0, -1, _NUM_ODD, _f(1, Fraction(1, 3), 1, Fraction(2, 3))),
}


def kernel_spec(sigma) -> KernelSpec:
    """Factor table for the given label, with the hat flip applied."""
    sigma = SigmaLabel.parse(sigma)
    spec = _BASE_SPECS[sigma.base]
    return spec.hatted() if sigma.hatted else spec


class KernelEvaluator:
    """A kernel spec bound to a nome, with the p-power constants precomputed."""

    def __init__(self, sigma, nome: Nome, policy: TruncationPolicy = DEFAULT_POLICY):
        self.spec = kernel_spec(sigma)
        self.sigma = self.spec.sigma
        self.nome = nome
        self.policy = policy
        self._num = tuple(
            (f.sign * nome.p_pow(f.p_exp), f.w_pow, nome.p_pow(f.nome_exp))
            for f in self.spec.numerators
        )
        d = self.spec.den
        self._den = (d.sign * nome.p_pow(d.p_exp), d.w_pow, nome.p_pow(d.nome_exp))

    def den_theta(self, x: complex) -> complex:
        coef, w_pow, q = self._den
        return theta_p(coef * (x * x) ** w_pow, q, self.policy)

    def numerator(self, x: complex) -> complex:
        w = x * x
        out = 1.0 + 0j
        for coef, w_pow, q in self._num:
            out *= theta_p(coef * w**w_pow, q, self.policy)
        return out

    def prefactor(self, x: complex) -> complex:
        return x ** self.spec.pref_xpow * self.den_theta(x)

    def entry(self, x: complex) -> complex:
        den = self.den_theta(x)
        if abs(den) <= DEGENERACY_FLOOR:
            raise DegeneracyError(
                f"denominator theta for sigma={self.sigma} vanishes at ratio {x!r}"
            )
        return x ** self.spec.entry_xpow * self.numerator(x) / den

    def pair_entry(self, x: complex) -> complex:
        # b * m with the denominator cancelled, finite even on its zeros
        return x ** (self.spec.pref_xpow + self.spec.entry_xpow) * self.numerator(x)


@dataclass(frozen=True)
class PointConfig:
    """2n points z with their nome; caches x_j = e^{i pi z_j}."""

    z: tuple
    nome: Nome

    def __post_init__(self):
        z = tuple(complex(v) for v in self.z)
        if len(z) < 2 or len(z) % 2:
            raise DomainError(f"need an even number of points >= 2, got {len(z)}")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "x", tuple(cmath.exp(1j * cmath.pi * v) for v in z))

    @property
    def n(self) -> int:
        return len(self.z) // 2

    @property
    def X(self) -> complex:
        out = 1.0 + 0j
        for v in self.x:
            out *= v
        return out

    def replace_z(self, index: int, value: complex) -> "PointConfig":
        z = list(self.z)
        z[index] = value
        return PointConfig(tuple(z), self.nome)

    def with_nome(self, nome: Nome) -> "PointConfig":
        return PointConfig(self.z, nome)

    def genericity(self, sigma, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
        """Smallest denominator-theta magnitude over all point pairs."""
        ev = KernelEvaluator(sigma, self.nome, policy)
        m = len(self.x)
        score = float("inf")
        for i in range(m):
            for j in range(i + 1, m):
                score = min(score, abs(ev.den_theta(self.x[i] / self.x[j])))
        return score


def p_sigma(sigma, cfg: PointConfig, *, method: str = "eliminate",
            policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Evaluate one family at a point configuration.

    method "eliminate" builds the skew matrix and uses the O(n^3)
    pfaffian; it raises DegeneracyError when a denominator theta falls
    below DEGENERACY_FLOOR.  method "pairings" sums prefactor-weighted
    perfect matchings and tolerates denominator zeros, at factorial
    cost, for use at specialized points and as a cross-check.
    """
    sigma = SigmaLabel.parse(sigma)
    m = len(cfg.z)
    if m // 2 > MAX_PAIRS:
        raise RangeError(f"configurations are capped at {2 * MAX_PAIRS} points, got {m}")
    ev = KernelEvaluator(sigma, cfg.nome, policy)
    x = cfg.x

    if method == "pairings":
        a = {}
        b = {}
        for i in range(m):
            for j in range(i + 1, m):
                r = x[i] / x[j]
                a[i, j] = ev.pair_entry(r)
                b[i, j] = ev.prefactor(r)
        total = 0j
        for pairs in all_pairings(tuple(range(m))):
            pair_set = set(pairs)
            prod = 1.0 + 0j
            for i, j in pairs:
                prod *= a[i, j]
            for i in range(m):
                for j in range(i + 1, m):
                    if (i, j) not in pair_set:
                        prod *= b[i, j]
            total += pairing_sign(pairs) * prod
        return total

    if method != "eliminate":
        raise DomainError(f"unknown evaluation method {method!r}")

    pref = 1.0 + 0j
    mat = np.zeros((m, m), dtype=complex)
    for i in range(m):
        for j in range(i + 1, m):
            r = x[i] / x[j]
            den = ev.den_theta(r)
            if abs(den) <= DEGENERACY_FLOOR:
                raise DegeneracyError(
                    f"degenerate configuration for sigma={sigma}: "
                    f"denominator theta at pair ({i},{j}) has magnitude {abs(den):.3e}"
                )
            pref *= r ** ev.spec.pref_xpow * den
            entry = r ** ev.spec.entry_xpow * ev.numerator(r) / den
            mat[i, j] = entry
            mat[j, i] = -entry
    return pref * pfaffian(mat)


def sample_config(rng, n: int, nome: Nome, *, sigma=None, beta: float = 0.05,
                  policy: TruncationPolicy = DEFAULT_POLICY,
                  max_tries: int = 200) -> PointConfig:
    """Draw a generic 2n-point configuration.

    Real parts are uniform on [0,1), imaginary parts uniform on
    [-beta, beta]; a draw is rejected while its genericity score for the
    requested label (or for every label when sigma is None) is at or
    below DEGENERACY_FLOOR.  Small beta keeps all point ratios close to
    the unit circle and inside every convergence annulus used by the
    expansion checks.
    """
    labels = ALL_SIGMAS if sigma is None else (SigmaLabel.parse(sigma),)
    for _ in range(max_tries):
        z = rng.random(2 * n) + 1j * rng.uniform(-beta, beta, 2 * n)
        cfg = PointConfig(tuple(z), nome)
        if all(cfg.genericity(s, policy) > DEGENERACY_FLOOR for s in labels):
            return cfg
    raise DegeneracyError(f"no generic configuration found in {max_tries} draws")
