"""Height-function lattice models with domain-wall boundaries.

States are height assignments on an (n+1) x (n+1) grid of squares with
unit steps between neighbours and a fixed staircase boundary.  Weights
multiply over the n^2 interior 2x2 blocks and carry a dynamical
parameter shifted by the local height.  At a cube-root-of-unity
anisotropy the partition function collapses onto two of the pfaffian
families; colouring the squares mod 3 instead gives the three-colour
partition function.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DegeneracyError, DomainError, RangeError
from .linalg import determinant
from .moments import moment_hankel
from .nome import DEFAULT_POLICY, Nome, TruncationPolicy
from .pfaffians import PointConfig, p_sigma
from .sympoly import offset_staircase, schur, staircase, vandermonde
from .theta import OMEGA, euler_product, theta_p, theta_prod

MAX_BOARD = 6
DENOM_FLOOR = 1e-6


# --- state enumeration -------------------------------------------------------

@dataclass(frozen=True)
class HeightMatrix:
    n: int
    a: tuple

    def __post_init__(self):
        n = self.n
        rows = tuple(tuple(int(h) for h in row) for row in self.a)
        object.__setattr__(self, "a", rows)
        if len(rows) != n + 1 or any(len(r) != n + 1 for r in rows):
            raise DomainError("height grid must be (n+1) x (n+1)")
        for i in range(n + 1):
            for j in range(n + 1):
                if i < n and abs(rows[i][j] - rows[i + 1][j]) != 1:
                    raise DomainError("vertical neighbours must differ by 1")
                if j < n and abs(rows[i][j] - rows[i][j + 1]) != 1:
                    raise DomainError("horizontal neighbours must differ by 1")
        for j in range(n + 1):
            if rows[0][j] != j or rows[n][j] != n - j:
                raise DomainError("top/bottom boundary heights are fixed")
        for i in range(n + 1):
            if rows[i][0] != i or rows[i][n] != n - i:
                raise DomainError("left/right boundary heights are fixed")


def enumerate_states(n: int):
    """All boundary-compatible height matrices, row-major DFS order."""
    if not 1 <= n <= MAX_BOARD:
        raise RangeError(f"board size must be between 1 and {MAX_BOARD}")
    grid = [[0] * (n + 1) for _ in range(n + 1)]
    for j in range(n + 1):
        grid[0][j] = j
        grid[n][j] = n - j
    for i in range(n + 1):
        grid[i][0] = i
        grid[i][n] = n - i

    cells = [(i, j) for i in range(1, n) for j in range(1, n)]

    def fill(idx):
        if idx == len(cells):
            yield HeightMatrix(n, tuple(tuple(row) for row in grid))
            return
        i, j = cells[idx]
        options = {grid[i - 1][j] - 1, grid[i - 1][j] + 1} & {
            grid[i][j - 1] - 1,
            grid[i][j - 1] + 1,
        }
        for h in sorted(options):
            if h < 0:
                continue
            if j + 1 == n and abs(h - grid[i][n]) != 1:
                continue
            if i + 1 == n and abs(h - grid[n][j]) != 1:
                continue
            grid[i][j] = h
            yield from fill(idx + 1)
        grid[i][j] = 0

    yield from fill(0)


@lru_cache(maxsize=8)
def state_count(n: int) -> int:
    return sum(1 for _ in enumerate_states(n))


# --- block weights -----------------------------------------------------------

def _is_unit_root(q: complex) -> bool:
    return abs(q**3 - 1) < 1e-12


def r_weight(block, dynamical: complex, u: complex, p: complex, q: complex,
             policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Weight of one 2x2 height block (NW, NE, SW, SE)."""
    a, b, c, d = block
    top = (b - a, d - b)
    bottom = (d - c, c - a)
    for s in (*top, *bottom):
        if abs(s) != 1:
            raise DomainError("block heights must step by 1")
    lam = dynamical
    if lam == 0:
        if p != 0:
            raise DomainError("vanishing dynamical parameter needs p = 0")
        if top == bottom == (1, 1) or top == bottom == (-1, -1):
            return (1 - q * u) / (1 - q)
        if top == bottom == (1, -1):
            return (1 - u) / (1 - q)
        if top == bottom == (-1, 1):
            return q * (1 - u) / (1 - q)
        if top == (-1, 1) and bottom == (1, -1):
            return 1.0 + 0j
        return u
    if top == bottom == (1, 1) or top == bottom == (-1, -1):
        return theta_p(q * u, p, policy) / theta_p(q, p, policy)
    if top == bottom == (1, -1):
        return theta_prod(p, u, q * lam, policy=policy) / theta_prod(
            p, q, lam, policy=policy
        )
    if top == bottom == (-1, 1):
        return q * theta_prod(p, u, lam / q, policy=policy) / theta_prod(
            p, q, lam, policy=policy
        )
    if top == (-1, 1) and bottom == (1, -1):
        return theta_p(lam * u, p, policy) / theta_p(lam, p, policy)
    # remaining consistent pattern: top (1, -1) read against bottom (-1, 1)
    return u * theta_p(lam / u, p, policy) / theta_p(lam, p, policy)


@dataclass(frozen=True)
class SOSParams:
    u: tuple
    v: tuple
    lam: complex
    nome: Nome | None  # None marks the trigonometric point p = 0
    q: complex

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(complex(x) for x in self.u))
        object.__setattr__(self, "v", tuple(complex(x) for x in self.v))
        if len(self.u) != len(self.v):
            raise DomainError("need equally many row and column parameters")

    @property
    def n(self) -> int:
        return len(self.u)

    @property
    def p(self) -> complex:
        return 0j if self.nome is None else self.nome.p


def _q_power(q: complex, a: int) -> complex:
    if _is_unit_root(q):
        return q ** (a % 3)
    return q**a


def _weight_tables(u, v, lam, p, q, n, policy):
    # per block position, weights for every (pattern, NW height) pair
    tables = []
    for i in range(n):
        row = []
        for j in range(n):
            spectral = u[i] / v[j]
            cell = {}
            for a in range(n + 1):
                dyn = lam * _q_power(q, a)
                for pattern, block in (
                    ("rise", (a, a + 1, a + 1, a + 2)),
                    ("fall", (a, a - 1, a - 1, a - 2)),
                    ("top", (a, a + 1, a - 1, a)),
                    ("bottom", (a, a - 1, a + 1, a)),
                    ("peak", (a, a + 1, a + 1, a)),
                    ("valley", (a, a - 1, a - 1, a)),
                ):
                    cell[pattern, a] = r_weight(block, dyn, spectral, p, q, policy)
            row.append(cell)
        tables.append(row)
    return tables


# (b-a, d-b, d-c) determines the block type; c-a is forced
_PATTERNS = {
    (1, 1, 1): "rise",
    (-1, -1, -1): "fall",
    (1, -1, 1): "top",
    (-1, 1, -1): "bottom",
    (-1, 1, 1): "valley",
    (1, -1, -1): "peak",
}


def partition_z(u, v, lam: complex, p: complex, q: complex,
                policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Sum of state weights over all domain-wall height matrices."""
    u = [complex(x) for x in u]
    v = [complex(x) for x in v]
    n = len(u)
    if len(v) != n:
        raise DomainError("need equally many row and column parameters")
    if abs(theta_p(q, p, policy) if lam != 0 else 1 - q) < DENOM_FLOOR:
        raise DegeneracyError("anisotropy denominator too small")
    tables = _weight_tables(u, v, lam, p, q, n, policy)
    total = 0j
    for state in enumerate_states(n):
        h = state.a
        w = 1.0 + 0j
        for i in range(n):
            for j in range(n):
                a, b, c, d = h[i][j], h[i][j + 1], h[i + 1][j], h[i + 1][j + 1]
                pattern = _PATTERNS[b - a, d - b, d - c]
                w *= tables[i][j][pattern, a]
        total += w
    return total


def partition_from_params(params: SOSParams,
                          policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    return partition_z(params.u, params.v, params.lam, params.p, params.q, policy)


# --- six-vertex reduction ----------------------------------------------------

def ik_determinant(u, v, q: complex) -> complex:
    """Closed determinant form of the p = 0, vanishing-dynamical limit."""
    u = np.asarray([complex(x) for x in u])
    v = np.asarray([complex(x) for x in v])
    n = len(u)
    diff = u[:, None] - v[None, :]
    qdiff = q * u[:, None] - v[None, :]
    if np.abs(diff).min() < 1e-12 or np.abs(qdiff).min() < 1e-12:
        raise DegeneracyError("coincident spectral parameters")
    du, dv = vandermonde(u), vandermonde(v)
    if du == 0 or dv == 0:
        raise DegeneracyError("repeated parameters")
    pref = (
        (-1) ** math.comb(n, 2)
        * np.prod(u)
        / ((1 - q) ** (2 * math.comb(n, 2)) * np.prod(v) ** n)
    )
    return pref * np.prod(diff * qdiff) / (du * dv) * determinant(1 / (diff * qdiff))


def schur_reduction_check(u, v) -> float:
    """Partition sum at the cubic point against a single alternant."""
    u = [complex(x) for x in u]
    v = [complex(x) for x in v]
    n = len(u)
    lhs = (
        3 ** math.comb(n, 2)
        * OMEGA ** ((n * (n - 2)) % 3)
        * np.prod(v) ** n
        / np.prod(u)
        * partition_z([OMEGA * x for x in u], v, 0, 0, OMEGA)
    )
    rhs = schur(staircase(n), np.asarray(u + v))
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs))


def trig_dwpf_check(u, v, lam: complex) -> tuple[float, float]:
    """Trigonometric partition sum against its alternant and determinant forms."""
    u = np.asarray([complex(x) for x in u])
    v = np.asarray([complex(x) for x in v])
    n = len(u)
    U, V = np.prod(u), np.prod(v)
    lhs = (
        3 ** math.comb(n, 2)
        * V**n
        * (1 - lam * OMEGA ** ((n + 1) % 3))
        * (1 - lam * OMEGA ** ((n + 2) % 3))
        * partition_z(OMEGA * u, v, lam, 0, OMEGA)
    )
    both = np.concatenate([u, v])
    first = OMEGA ** (math.comb(n + 1, 2) % 3) * (U + OMEGA ** (n % 3) * lam**2 * V)
    second = (-1) ** n * OMEGA ** (math.comb(n, 2) % 3) * lam
    alternant = first * schur(staircase(n), both) + second * schur(
        offset_staircase(n), both
    )
    cube = u[:, None] ** 3 - v[None, :] ** 3
    det_form = np.prod(cube) / vandermonde(both) * (
        first * determinant((u[:, None] - v[None, :]) / cube)
        + second * determinant((u[:, None] ** 2 - v[None, :] ** 2) / cube)
    )
    r_alt = abs(lhs - alternant) / max(abs(lhs), abs(alternant))
    r_det = abs(alternant - det_form) / max(abs(alternant), abs(det_form))
    return r_alt, r_det


# --- the elliptic correspondence ---------------------------------------------

def delta_theta(x, p: complex, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """prod_{i<j} x_i^2 theta(x_j^2 / x_i^2; p)."""
    out = 1.0 + 0j
    m = len(x)
    for i in range(m):
        for j in range(i + 1, m):
            out *= x[i] ** 2 * theta_p(x[j] ** 2 / x[i] ** 2, p, policy)
    return out


def sample_dynamical(rng, n: int, p: complex, *,
                     policy: TruncationPolicy = DEFAULT_POLICY,
                     max_tries: int = 200) -> complex:
    """Random dynamical parameter clear of every displayed theta zero."""
    for _ in range(max_tries):
        lam = cmath.exp(
            2j * cmath.pi * (rng.uniform(0, 1) + 1j * rng.uniform(-0.05, 0.05))
        )
        margins = [
            abs(theta_p(lam * OMEGA ** (k % 3), p, policy))
            for k in (0, 1, 2, n, n + 1, n + 2)
        ]
        if min(margins) > DENOM_FLOOR:
            return lam
    raise DegeneracyError("no admissible dynamical parameter found")


def dwt_check(cfg: PointConfig, lam: complex,
              policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Partition sum against the two-family combination, both fully dressed."""
    n = cfg.n
    p = cfg.nome.p
    x = cfg.x
    u = [xi**2 for xi in x[:n]]
    v = [xi**2 for xi in x[n:]]
    U, V = np.prod(u), np.prod(v)
    X = cfg.X
    lhs = (
        p ** math.comb(n, 2)
        * theta_p(p, p**2, policy)
        * theta_p(OMEGA, p, policy) ** (n * (n - 1))
        * theta_prod(p, lam * OMEGA ** ((n + 1) % 3), lam * OMEGA ** ((n + 2) % 3),
                     policy=policy)
        * delta_theta(x, p, policy)
        * partition_z([OMEGA * ui for ui in u], v, lam, p, OMEGA, policy)
    )
    rhs = (
        (-1) ** n
        * OMEGA ** ((2 * n) % 3)
        * lam ** (n + 1)
        * X ** (2 * n - 1)
        * theta_p(-(p**2), p**6, policy) ** (n - 1)
        * theta_p(-(p ** (n + 1)) * OMEGA ** (n % 3) * lam**2 * V / U, p**2, policy)
        * p_sigma(2, cfg, policy=policy)
        + lam**n
        * U
        * X ** (2 * n - 2)
        * theta_p(-p, p**6, policy) ** (n - 1)
        * theta_p(-(p**n) * OMEGA ** (n % 3) * lam**2 * V / U, p**2, policy)
        * p_sigma(4, cfg, policy=policy)
    )
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs))


def zqp_check(u, v, lam: complex, p: complex,
              policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Quasi-periodicity of the partition sum in the first row parameter."""
    u = [complex(x) for x in u]
    v = [complex(x) for x in v]
    n = len(u)
    shifted = [p * OMEGA * u[0]] + [OMEGA * x for x in u[1:]]
    lhs = partition_z(shifted, v, lam, p, OMEGA, policy)
    rhs = (
        (-1) ** n
        * np.prod(v)
        * lam
        / (OMEGA ** (n % 3) * u[0] ** n)
        * partition_z([OMEGA * x for x in u], v, lam, p, OMEGA, policy)
    )
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs))


def tti_check(lam: complex, p: complex,
              policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Two-term theta expansion of the empty-board prefactor."""
    lhs = theta_p(p, p**2, policy) * theta_prod(p, lam * OMEGA, lam * OMEGA**2,
                                                policy=policy)
    rhs = lam * theta_p(-p * lam**2, p**2, policy) / theta_p(-(p**2), p**6, policy)
    rhs += theta_p(-(lam**2), p**2, policy) / theta_p(-p, p**6, policy)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs))


# --- three-colour specialization ---------------------------------------------

@dataclass(frozen=True)
class ThreeColourWeights:
    t0: complex
    t1: complex
    t2: complex

    def __post_init__(self):
        if self.t0 == 0 or self.t1 == 0 or self.t2 == 0:
            raise DomainError("colour weights must be nonzero")


def three_colour_z(n: int, weights: ThreeColourWeights) -> complex:
    """Sum over states of the colour weights of all (n+1)^2 squares."""
    t = (weights.t0, weights.t1, weights.t2)
    total = 0j
    for state in enumerate_states(n):
        counts = [0, 0, 0]
        for row in state.a:
            for h in row:
                counts[h % 3] += 1
        total += t[0] ** counts[0] * t[1] ** counts[1] * t[2] ** counts[2]
    return total


def colour_weights(lam: complex, p: complex,
                   policy: TruncationPolicy = DEFAULT_POLICY) -> ThreeColourWeights:
    """The inverse-cubed theta parametrization of the colour weights."""
    return ThreeColourWeights(
        *(theta_p(lam * OMEGA**j, p, policy) ** -3 for j in range(3))
    )


def three_colour_bridge_check(n: int, lam: complex, p: complex,
                              policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Colour partition sum against the homogeneous height-model point."""
    direct = three_colour_z(n, colour_weights(lam, p, policy))
    hom = partition_z([OMEGA] * n, [1.0] * n, lam, p, OMEGA, policy)
    bridged = (
        OMEGA ** ((n * (n + 1)) % 3)
        * theta_prod(p, lam * OMEGA**2, lam * OMEGA ** ((n + 1) % 3),
                     policy=policy) ** 2
        / (
            theta_p(lam * OMEGA ** (n % 3), p, policy)
            * theta_p(lam**3, p**3, policy) ** (n**2 + 2 * n + 2)
        )
        * hom
    )
    return abs(direct - bridged) / max(abs(direct), abs(bridged))


def _superfactorial(m: int) -> float:
    out = 1.0
    for j in range(1, m + 1):
        out *= math.factorial(j - 1)
    return out


def thc_check(n: int, lam: complex, nome: Nome,
              policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Colour partition sum against the two-Hankel closed form."""
    p = nome.p
    direct = three_colour_z(n, colour_weights(lam, p, policy))
    h2 = moment_hankel(2, n, nome, policy)
    h4 = moment_hankel(4, n, nome, policy)
    pref = (
        (-1) ** math.comb(n + 1, 2)
        * OMEGA ** ((2 * n**2) % 3)
        * euler_product(p**3) ** (3 * n**2)
        * lam**n
        * theta_prod(p, lam * OMEGA**2, lam * OMEGA ** ((n + 1) % 3),
                     policy=policy) ** 2
        / (
            _superfactorial(2 * n)
            * (48 * p) ** math.comb(n, 2)
            * euler_product(p) ** (3 * n**2 + 1)
            * euler_product(p**6) ** (4 * n**2 + 1)
            * theta_p(lam**3, p**3, policy) ** (n**2 + 2 * n + 3)
        )
    )
    expr = pref * (
        OMEGA ** ((2 * n) % 3)
        * euler_product(-p)
        * euler_product(p**12)
        * lam
        * theta_p(-(p ** (n + 1)) * OMEGA ** (n % 3) * lam**2, p**2, policy)
        * h2
        + euler_product(-(p**3))
        * euler_product(p**4)
        * theta_p(-(p**n) * OMEGA ** (n % 3) * lam**2, p**2, policy)
        * h4
    )
    return abs(direct - expr) / max(abs(direct), abs(expr))
