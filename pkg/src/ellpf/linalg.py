"""Pfaffians, determinants and Hankel/bordered assemblies.

The production pfaffian is a skew-symmetric tridiagonalization with partial
pivoting (congruence updates only, so the pfaffian transforms by the exact
pivot signs).  For dimension <= 6 every call is cross-checked against the
pairing-sum definition; a disagreement means the input was not meaningfully
skew and raises.
"""
from __future__ import annotations

import numpy as np

from .errors import DomainError

PIVOT_FLOOR = 1e-300
SKEW_TOL = 1e-13


def as_skew(a) -> np.ndarray:
    """Validate and canonicalize a skew-symmetric matrix.

    Symmetrizes through (A - A^T)/2 and zeroes the diagonal, refusing inputs
    whose skew defect exceeds SKEW_TOL relative to the largest entry.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"skew matrix must be square, got shape {a.shape}")
    scale = max(np.max(np.abs(a)), 1.0) if a.size else 1.0
    defect = np.max(np.abs(a + a.T)) if a.size else 0.0
    if defect > SKEW_TOL * scale:
        raise DomainError(f"matrix is not skew-symmetric: defect {defect:.3e} at scale {scale:.3e}")
    out = (a - a.T) / 2
    np.fill_diagonal(out, 0)
    return out


def all_pairings(items):
    """Yield all perfect matchings of an even-length list as pair tuples."""
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for k, second in enumerate(rest):
        remaining = rest[:k] + rest[k + 1 :]
        for tail in all_pairings(remaining):
            yield ((first, second),) + tail


def pairing_sign(pairs) -> int:
    """Sign of the permutation (i1 j1 i2 j2 ...) built from the matching."""
    perm = [idx for pair in pairs for idx in pair]
    sign = 1
    n = len(perm)
    seen = [False] * n
    pos = {v: k for k, v in enumerate(perm)}
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = pos[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def pfaffian_pairings(a) -> complex:
    """Pairing-sum pfaffian: sum over perfect matchings of signed products."""
    a = np.asarray(a, dtype=complex)
    dim = a.shape[0]
    if dim % 2:
        raise DomainError("pfaffian needs even dimension")
    if dim == 0:
        return 1.0 + 0j
    total = 0j
    for pairs in all_pairings(tuple(range(dim))):
        prod = 1.0 + 0j
        for i, j in pairs:
            prod *= a[i, j]
        total += pairing_sign(pairs) * prod
    return total


def _pfaffian_eliminate(a: np.ndarray) -> complex:
    dim = a.shape[0]
    a = a.copy()
    pf = 1.0 + 0j
    for k in range(0, dim - 1, 2):
        col = np.abs(a[k + 1 :, k])
        kp = k + 1 + int(np.argmax(col))
        if abs(a[kp, k]) < PIVOT_FLOOR:
            return 0j
        if kp != k + 1:
            a[[k + 1, kp]] = a[[kp, k + 1]]
            a[:, [k + 1, kp]] = a[:, [kp, k + 1]]
            pf = -pf
        pf *= a[k, k + 1]
        if k + 2 < dim:
            tau = a[k, k + 2 :] / a[k, k + 1]
            ccol = a[k + 2 :, k + 1]
            a[k + 2 :, k + 2 :] += np.outer(tau, ccol) - np.outer(ccol, tau)
    return pf


def pfaffian(a) -> complex:
    """Pfaffian of a skew-symmetric matrix (even dimension; pf of 0x0 is 1)."""
    a = as_skew(a)
    dim = a.shape[0]
    if dim % 2:
        raise DomainError(f"pfaffian needs even dimension, got {dim}")
    if dim == 0:
        return 1.0 + 0j
    pf = _pfaffian_eliminate(a)
    if dim <= 6:
        ref = pfaffian_pairings(a)
        amax = float(np.max(np.abs(a)))
        scale = max(abs(pf), abs(ref), amax ** (dim // 2) * 1e-6, 1e-280)
        if abs(pf - ref) > 1e-8 * scale:
            raise DomainError(
                f"pfaffian self-check failed at dim {dim}: eliminated {pf}, pairing sum {ref}"
            )
    return pf


def determinant(a) -> complex:
    """Determinant by dense LU with partial pivoting (singular input gives 0)."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"determinant needs a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        return 1.0 + 0j
    return complex(np.linalg.det(a))


def hankel_determinant(moments, n: int) -> complex:
    """det of the n x n Hankel matrix M[i][j] = moments[i+j] (0-based)."""
    moments = list(moments)
    if n < 0:
        raise DomainError("hankel_determinant needs n >= 0")
    if n == 0:
        return 1.0 + 0j
    if len(moments) < 2 * n - 1:
        raise DomainError(f"need at least {2 * n - 1} moments for n = {n}, got {len(moments)}")
    m = np.array([[moments[i + j] for j in range(n)] for i in range(n)], dtype=complex)
    return determinant(m)


def bordered_pfaffian(a, b) -> complex:
    """pf of [[A, B], [-B^T, 0]] with A skew n x n and B any n x m, n+m even."""
    a = as_skew(a)
    b = np.asarray(b, dtype=complex)
    n = a.shape[0]
    if b.size == 0:
        b = b.reshape(n, -1)
    if b.ndim != 2 or b.shape[0] != n:
        raise DomainError(f"border must be {n} x m, got shape {b.shape}")
    m = b.shape[1]
    if (n + m) % 2:
        raise DomainError(f"bordered pfaffian needs n + m even, got n = {n}, m = {m}")
    full = np.zeros((n + m, n + m), dtype=complex)
    full[:n, :n] = a
    full[:n, n:] = b
    full[n:, :n] = -b.T
    return pfaffian(full)
