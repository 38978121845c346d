"""Alternants, Schur polynomials and pfaffian-flavoured symmetric functions."""
from __future__ import annotations

import numpy as np

from .errors import DegeneracyError, DomainError
from .linalg import bordered_pfaffian, determinant, pfaffian


def vandermonde(x) -> complex:
    """prod_{i<j} (x_i - x_j)."""
    x = list(x)
    out = 1.0 + 0j
    for i in range(len(x)):
        for j in range(i + 1, len(x)):
            out *= x[i] - x[j]
    return out


def chi(mu, x) -> complex:
    """Alternant det_{i,j} x_i^mu_j over distinct integer exponents mu."""
    mu = [int(m) for m in mu]
    x = [complex(v) for v in x]
    if len(mu) != len(x):
        raise DomainError(f"need as many exponents as variables, got {len(mu)} and {len(x)}")
    if len(set(mu)) != len(mu):
        raise DomainError(f"exponents must be distinct, got {mu}")
    if any(m < 0 for m in mu) and any(v == 0 for v in x):
        raise DomainError("negative exponents need nonzero variables")
    mat = np.array([[xi**m for m in mu] for xi in x], dtype=complex)
    return determinant(mat)


def _validate_partition(lam) -> list[int]:
    lam = [int(v) for v in lam]
    if any(v < 0 for v in lam):
        raise DomainError(f"partition parts must be nonnegative, got {lam}")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise DomainError(f"partition must be weakly decreasing, got {lam}")
    return lam


def _ssyt_monomial_sum(lam: list[int], x: list[complex]) -> complex:
    """Schur polynomial as the monomial sum over semistandard tableaux."""
    m = len(x)
    shape = [v for v in lam if v > 0]
    if not shape:
        return 1.0 + 0j
    if len(shape) > m:
        return 0j

    total = 0j

    def fill(row_idx: int, above: list[int], acc: complex):
        nonlocal total
        width = shape[row_idx]

        def fill_row(col: int, prev: int, row: list[int], acc_row: complex):
            nonlocal total
            if col == width:
                if row_idx + 1 == len(shape):
                    total += acc_row
                else:
                    fill(row_idx + 1, row, acc_row)
                return
            lo = prev
            if above:
                lo = max(lo, above[col] + 1)
            for entry in range(lo, m + 1):
                fill_row(col + 1, entry, row + [entry], acc_row * x[entry - 1])

        fill_row(0, 1, [], acc)

    fill(0, [], 1.0 + 0j)
    return total


def schur(lam, x, force_monomial: bool = False) -> complex:
    """Schur polynomial s_lam(x).

    Bialternant quotient chi_{lam+delta}/Delta by default; falls back to the
    combinatorial monomial sum when variables nearly coincide (the quotient
    goes 0/0 there).
    """
    lam = _validate_partition(lam)
    x = [complex(v) for v in x]
    m = len(x)
    if len(lam) > m:
        if any(v > 0 for v in lam[m:]):
            return 0j
        lam = lam[:m]
    lam = lam + [0] * (m - len(lam))
    if m == 0:
        return 1.0 + 0j
    xmax = max(abs(v) for v in x)
    dmin = min(
        (abs(x[i] - x[j]) for i in range(m) for j in range(i + 1, m)),
        default=float("inf"),
    )
    if force_monomial or dmin < 1e-6 * max(xmax, 1e-300):
        return _ssyt_monomial_sum(lam, x)
    mu = [lam[j] + m - 1 - j for j in range(m)]
    return chi(mu, x) / vandermonde(x)


def elementary(n: int, x) -> complex:
    """Elementary symmetric polynomial e_n(x)."""
    x = [complex(v) for v in x]
    if n < 0 or n > len(x):
        return 0j
    e = [1.0 + 0j] + [0j] * n
    for xi in x:
        for k in range(min(n, len(e) - 1), 0, -1):
            e[k] += xi * e[k - 1]
    return e[n]


def staircase(n: int) -> list[int]:
    """(n-1, n-1, ..., 1, 1, 0, 0): 2n parts in doubled descending steps."""
    return [k for k in range(n - 1, -1, -1) for _ in range(2)]


def offset_staircase(n: int) -> list[int]:
    """(n, n-1, n-1, ..., 1, 1, 0): the staircase with the top part bumped."""
    return [n] + [k for k in range(n - 1, 0, -1) for _ in range(2)] + [0]


# ---------------------------------------------------------------------------
# pfaffian evaluations of Schur-type sums
# ---------------------------------------------------------------------------


def sundquist_rhs(x) -> complex:
    """prod_{i<j} (x_i^3+x_j^3)/(x_i^2-x_j^2) * pf((x_i^2-x_j^2)/(x_i^3+x_j^3))."""
    x = [complex(v) for v in x]
    dim = len(x)
    if dim % 2:
        raise DomainError("sundquist pfaffian needs an even number of variables")
    pref = 1.0 + 0j
    mat = np.zeros((dim, dim), dtype=complex)
    for i in range(dim):
        for j in range(i + 1, dim):
            num = x[i] ** 2 - x[j] ** 2
            den = x[i] ** 3 + x[j] ** 3
            if min(abs(num), abs(den)) < 1e-12 * max(1.0, abs(x[i]), abs(x[j])) ** 3:
                raise DegeneracyError(f"variables {i}, {j} too close to a degenerate pair")
            pref *= den / num
            mat[i, j] = num / den
            mat[j, i] = -mat[i, j]
    return pref * pfaffian(mat)


def sundquist_check(x) -> float:
    """Relative residual of the doubled-staircase Schur against its pfaffian form."""
    x = [complex(v) for v in x]
    n = len(x) // 2
    lhs = schur(staircase(n), [v**2 for v in x])
    rhs = sundquist_rhs(x)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)


def t_lambda(lam_seq, x) -> complex:
    """Bordered-pfaffian symmetric function T_lambda(x).

    lam_seq is used exactly in the order given (it is an exponent list, not a
    partition, and reordering changes the sign/value).
    """
    x = [complex(v) for v in x]
    lam_seq = [int(v) for v in lam_seq]
    n = len(x)
    m = len(lam_seq)
    if (n + m) % 2:
        raise DomainError(f"T_lambda needs len(x) + len(lambda) even, got {n} + {m}")
    if any(v == 0 for v in x) and any(e < 0 for e in lam_seq):
        raise DomainError("negative exponents need nonzero variables")
    pref = 1.0 + 0j
    a = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i + 1, n):
            num = x[j] ** 2 - x[i] ** 2
            den = x[j] ** 3 + x[i] ** 3
            if min(abs(num), abs(den)) < 1e-12 * max(1.0, abs(x[i]), abs(x[j])) ** 3:
                raise DegeneracyError(f"variables {i}, {j} too close to a degenerate pair")
            pref *= den / num
            a[i, j] = num / den
            a[j, i] = -a[i, j]
    b = np.array([[xi**e for e in lam_seq] for xi in x], dtype=complex)
    return pref * bordered_pfaffian(a, b)


def pel_expansion_sides(a, b_cols, c_cols):
    """Both sides of the rank-one-perturbation pfaffian expansion.

    Left: pf(A_ij + sum_k (B_i^k C_j^k - B_j^k C_i^k)).
    Right: sum over subsets {k_1<...<k_m} of (-1)^m times the bordered
    pfaffian with columns (B^{k_m}, ..., B^{k_1}, C^{k_1}, ..., C^{k_m}).
    The (-1)^m is forced by pf([[0, X], [-X^T, 0]]) = (-1)^m det X for a
    2m-column border; without it the m = 1 case already fails.
    """
    a = np.asarray(a, dtype=complex)
    b_cols = [np.asarray(b, dtype=complex) for b in b_cols]
    c_cols = [np.asarray(c, dtype=complex) for c in c_cols]
    if len(b_cols) != len(c_cols):
        raise DomainError("need matching numbers of B and C columns")
    dim = a.shape[0]
    perturbed = a.copy()
    for b, c in zip(b_cols, c_cols):
        perturbed += np.outer(b, c) - np.outer(c, b)
    lhs = pfaffian(perturbed)

    rhs = 0j
    idx = list(range(len(b_cols)))
    for mask in range(1 << len(idx)):
        chosen = [k for k in idx if mask >> k & 1]
        if (dim + 2 * len(chosen)) % 2:
            continue
        if not chosen:
            rhs += pfaffian(a)
            continue
        cols = [b_cols[k] for k in reversed(chosen)] + [c_cols[k] for k in chosen]
        rhs += (-1) ** len(chosen) * bordered_pfaffian(a, np.column_stack(cols))
    return lhs, rhs


def pel_check(a, b_cols, c_cols) -> float:
    """Residual of the perturbation expansion, relative to the larger side."""
    lhs, rhs = pel_expansion_sides(a, b_cols, c_cols)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)
