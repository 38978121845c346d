import itertools

import numpy as np
import pytest

from ellpf.errors import DomainError
from ellpf.linalg import pfaffian
from ellpf.sympoly import (
    chi,
    elementary,
    offset_staircase,
    pel_check,
    pel_expansion_sides,
    schur,
    staircase,
    sundquist_check,
    sundquist_rhs,
    t_lambda,
    vandermonde,
)


def test_staircase_shapes():
    assert staircase(1) == [0, 0]
    assert staircase(3) == [2, 2, 1, 1, 0, 0]
    assert offset_staircase(1) == [1, 0]
    assert offset_staircase(3) == [3, 2, 2, 1, 1, 0]


def test_elementary_known():
    x = [1.0, 2.0, 3.0]
    assert elementary(0, x) == 1
    assert abs(elementary(1, x) - 6) < 1e-14
    assert abs(elementary(2, x) - 11) < 1e-14
    assert abs(elementary(3, x) - 6) < 1e-14
    assert elementary(4, x) == 0


def test_chi_antisymmetric(rng):
    x = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    base = chi([4, 2, 0], x)
    swapped = chi([2, 4, 0], x)
    assert abs(base + swapped) < 1e-12 * abs(base)
    with pytest.raises(DomainError):
        chi([1, 1, 0], x)


def test_schur_small_partitions():
    x = [0.7, 1.3]
    # s_(1) = e_1, s_(1,1) = e_2
    assert abs(schur([1], x) - 2.0) < 1e-14
    assert abs(schur([1, 1], x) - 0.91) < 1e-14
    # s_(2) = h_2 = x1^2 + x1 x2 + x2^2
    assert abs(schur([2], x) - (0.49 + 0.91 + 1.69)) < 1e-14


def test_schur_bialternant_consistency(rng):
    for _ in range(30):
        n = int(rng.integers(2, 5))
        lam = sorted(rng.integers(0, 4, size=n).tolist(), reverse=True)
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        via_det = schur(lam, x)
        via_mono = schur(lam, x, force_monomial=True)
        assert abs(via_det - via_mono) <= 1e-9 * max(abs(via_mono), 1.0)


def test_schur_symmetric_under_permutation(rng):
    x = rng.standard_normal(4)
    base = schur([3, 1, 1, 0], x)
    for perm in itertools.permutations(range(4)):
        assert abs(schur([3, 1, 1, 0], [x[i] for i in perm]) - base) < 1e-10 * abs(base)


def test_vandermonde_matches_product(rng):
    x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    prod = 1.0 + 0j
    for i in range(4):
        for j in range(i + 1, 4):
            prod *= x[j] - x[i]
    assert abs(vandermonde(x) - prod) < 1e-12 * abs(prod)


# --- pfaffian sum identities --------------------------------------------------

def test_sundquist_two_variables(rng):
    # n = 1: both sides reduce to 1 after normalisation, residual ~ 0
    for _ in range(20):
        x = rng.uniform(0.4, 1.6, size=2) + 1j * rng.uniform(-0.3, 0.3, size=2)
        assert sundquist_check(x) < 1e-11


def test_sundquist_larger(rng):
    for n in (2, 3):
        for _ in range(25):
            x = rng.uniform(0.4, 1.6, size=2 * n) + 1j * rng.uniform(-0.3, 0.3, size=2 * n)
            assert sundquist_check(x) < 1e-9


def test_sundquist_rhs_is_symmetric(rng):
    x = rng.uniform(0.5, 1.5, size=4) + 1j * rng.uniform(-0.2, 0.2, size=4)
    base = sundquist_rhs(x)
    shuffled = sundquist_rhs(x[::-1])
    assert abs(base - shuffled) < 1e-10 * abs(base)


def test_t_lambda_parity_rule(rng):
    with pytest.raises(DomainError):
        t_lambda([1], rng.uniform(1, 2, size=2))


def test_pel_trivial_cases(rng):
    n = 4
    a = rng.standard_normal((n, n))
    a = a - a.T
    # no perturbation columns: both sides are pf(A)
    lhs, rhs = pel_expansion_sides(a, [], [])
    assert abs(lhs - pfaffian(a)) < 1e-13
    assert abs(lhs - rhs) < 1e-12


def test_pel_random_identity(rng):
    for _ in range(25):
        n = 2 * int(rng.integers(1, 4))
        m = int(rng.integers(1, 4))
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        a = a - a.T
        bs = [rng.standard_normal(n) + 1j * rng.standard_normal(n) for _ in range(m)]
        cs = [rng.standard_normal(n) + 1j * rng.standard_normal(n) for _ in range(m)]
        assert pel_check(a, bs, cs) < 1e-9
