import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ellpf.errors import DomainError, PoleError
from ellpf.nome import Nome, nome_from_p
from ellpf.theta import (
    OMEGA,
    euler_product,
    kronecker_lhs,
    kronecker_sum,
    legendre3,
    q_pochhammer,
    quintuple_lhs,
    quintuple_rhs,
    theta_jacobi,
    theta_p,
    theta_prod,
    theta_series,
    ts_relations_check,
)


def random_p(rng, cap=0.7):
    return cap * rng.uniform(0.1, 1.0) * np.exp(2j * np.pi * rng.uniform())


# --- basics ------------------------------------------------------------------

def test_theta_at_zero_nome():
    for x in (0.5, 2.0 - 1.0j, -0.25 + 0.1j):
        assert theta_p(x, 0.0) == 1 - x


def test_product_matches_series(rng):
    for _ in range(300):
        p = random_p(rng)
        x = rng.uniform(0.3, 3.0) * np.exp(2j * np.pi * rng.uniform())
        a = theta_p(x, p)
        b = theta_series(x, p)
        assert abs(a - b) <= 1e-11 * max(abs(a), 1e-30)


def test_inversion_and_shift(rng):
    """theta(p/x) = theta(x) and theta(p x) = -theta(x)/x."""
    for _ in range(300):
        p = random_p(rng)
        x = rng.uniform(0.3, 3.0) * np.exp(2j * np.pi * rng.uniform())
        base = theta_p(x, p)
        assert abs(theta_p(p / x, p) - base) <= 1e-11 * abs(base)
        assert abs(theta_p(p * x, p) + base / x) <= 1e-11 * abs(base / x)


def test_theta_prod_repeats(rng, nome):
    p = nome.p
    x, y = 1.3 + 0.2j, 0.7 - 0.1j
    direct = theta_p(x, p) * theta_p(x, p) * theta_p(y, p)
    assert abs(theta_prod(p, x, x, y) - direct) <= 1e-12 * abs(direct)


def test_nome_fractional_powers():
    nome = Nome(0.4 + 0.9j)
    # p^(1/3) must come from tau/3, not from a principal cube root
    lam = nome.p_pow(1 / 3)
    assert abs(lam**3 - nome.p) < 1e-14
    assert abs(lam - cmath.exp(1j * cmath.pi * nome.tau / 3)) < 1e-14


def test_nome_from_p_round_trip():
    p = 0.2 * cmath.exp(0.7j)
    nome = nome_from_p(p)
    assert abs(nome.p - p) < 1e-14


def test_legendre3_character():
    assert [legendre3(k) for k in range(7)] == [0, 1, -1, 0, 1, -1, 0]
    assert legendre3(-1) == -1
    assert legendre3(-2) == 1


def test_euler_product_known():
    # (p; p)_inf at p = 0.1 via direct partial product
    p = 0.1
    brute = 1.0
    for k in range(1, 60):
        brute *= 1 - p**k
    assert abs(euler_product(p) - brute) < 1e-14


def test_theta_rejects_bad_arguments():
    with pytest.raises(DomainError):
        theta_p(0.5, 1.2)
    with pytest.raises(DomainError):
        theta_p(0.0, 0.3)


# --- the named identities ----------------------------------------------------

def test_quintuple(rng):
    for _ in range(200):
        p = random_p(rng)
        x = rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.uniform())
        lhs = quintuple_lhs(x, p)
        rhs = quintuple_rhs(x, p)
        assert abs(lhs - rhs) <= 1e-11 * max(abs(lhs), abs(rhs))


def test_kronecker(rng):
    done = 0
    while done < 150:
        p = random_p(rng, 0.5)
        x = rng.uniform(0.55, 0.95) * np.exp(2j * np.pi * rng.uniform())
        a = rng.uniform(0.6, 0.9) * np.exp(2j * np.pi * rng.uniform())
        if abs(theta_p(a * x, p)) < 0.2:
            continue
        done += 1
        lhs = kronecker_lhs(a, x, p)
        rhs = kronecker_sum(a, x, p)
        assert abs(lhs - rhs) <= 1e-11 * max(abs(lhs), abs(rhs))


def test_kronecker_domain_and_pole(nome):
    with pytest.raises(DomainError):
        kronecker_sum(0.5, 1.5, 0.2)
    with pytest.raises(PoleError):
        kronecker_sum(1.0 + 0j, 0.5, 0.2)


def test_cube_root_pair(rng):
    for _ in range(60):
        tau = rng.uniform(-0.4, 0.4) + 1j * rng.uniform(0.7, 1.4)
        r1, r2 = ts_relations_check(Nome(tau))
        assert r1 <= 1e-11
        assert r2 <= 1e-11


# --- the classical four ------------------------------------------------------

def classical_series(k, z, q, terms=48):
    total = 0j
    if k == 1:
        for m in range(terms):
            total += 2 * (-1) ** m * q ** ((m + 0.5) ** 2) * cmath.sin((2 * m + 1) * z)
    elif k == 2:
        for m in range(terms):
            total += 2 * q ** ((m + 0.5) ** 2) * cmath.cos((2 * m + 1) * z)
    elif k == 3:
        total = 1.0 + 0j
        for m in range(1, terms):
            total += 2 * q ** (m**2) * cmath.cos(2 * m * z)
    else:
        total = 1.0 + 0j
        for m in range(1, terms):
            total += 2 * (-1) ** m * q ** (m**2) * cmath.cos(2 * m * z)
    return total


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_jacobi_theta_series(k, rng):
    for _ in range(40):
        nome = Nome(rng.uniform(-0.4, 0.4) + 1j * rng.uniform(0.7, 1.3))
        z = rng.uniform(-2, 2) + 1j * rng.uniform(-0.4, 0.4)
        val = theta_jacobi(k, z, nome)
        ref = classical_series(k, z, nome.p)
        assert abs(val - ref) <= 1e-11 * max(abs(ref), 1e-30)


def test_jacobi_parity(nome):
    z = 0.37 + 0.11j
    assert abs(theta_jacobi(1, -z, nome) + theta_jacobi(1, z, nome)) < 1e-13
    for k in (2, 3, 4):
        assert abs(theta_jacobi(k, -z, nome) - theta_jacobi(k, z, nome)) < 1e-13


def test_jacobi_index_validation(nome):
    with pytest.raises(DomainError):
        theta_jacobi(5, 0.3, nome)


# --- property sweep ----------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(
    mag=st.floats(0.4, 2.5),
    arg=st.floats(0.0, 2 * math.pi),
    pmag=st.floats(0.01, 0.6),
    parg=st.floats(0.0, 2 * math.pi),
)
def test_shift_property(mag, arg, pmag, parg):
    # the absolute floor covers draws landing on a theta zero, where one
    # side is an exact 0 and the other is roundoff dust
    x = mag * cmath.exp(1j * arg)
    p = pmag * cmath.exp(1j * parg)
    base = theta_p(x, p)
    lhs = theta_p(p * x, p)
    assert abs(lhs + base / x) <= 1e-10 * max(abs(base / x), abs(lhs)) + 1e-13


def test_omega_is_cube_root():
    assert abs(OMEGA**3 - 1) < 1e-15
    assert abs(OMEGA - cmath.exp(2j * cmath.pi / 3)) < 1e-15
