import cmath
import math

import numpy as np
import pytest

from ellpf.errors import DegeneracyError, DomainError, PoleError, RangeError
from ellpf.eightvertex import (
    ETA,
    EVParams,
    cauchy_derivatives,
    ev_r_matrix,
    homogeneous_proportionality,
    homogeneous_q_det,
    involution_ratio,
    phi,
    q_sigma,
    qqp_residuals,
    rs_eigenvalue_check,
    spin_flip,
    tq_residual,
    transfer_matrix,
)
from ellpf.nome import Nome
from ellpf.theta import theta_jacobi

TAU = 0.15 + 1.1j


def chain(rng, N, spread=0.25):
    return tuple(spread * (rng.random(N) - 0.5) + 0.05j * rng.standard_normal(N))


@pytest.fixture
def enome():
    return Nome(TAU)


# --- parameters --------------------------------------------------------------

def test_even_chain_rejected(enome):
    with pytest.raises(DomainError):
        EVParams(enome, (0.1, 0.4))


def test_coincident_inhomogeneities_rejected(enome):
    with pytest.raises(DegeneracyError):
        EVParams(enome, (0.1, 0.1 + 1e-12, 0.7))


def test_transfer_size_cap(rng, enome):
    params = EVParams(enome, chain(rng, 1))
    assert params.N == 1
    big = EVParams(enome, tuple(0.3 * j for j in range(11)))
    with pytest.raises(RangeError):
        transfer_matrix(0.2, big)


# --- vertex weights and transfer matrix --------------------------------------

def test_r_matrix_sparsity(rng, enome):
    params = EVParams(enome, chain(rng, 1))
    R = ev_r_matrix(0.7, params)
    # eight nonzero amplitudes in the standard positions
    mask = np.zeros((4, 4), dtype=bool)
    for idx in ((0, 0), (3, 3), (1, 1), (2, 2), (1, 2), (2, 1), (0, 3), (3, 0)):
        mask[idx] = True
    assert np.all(R[~mask] == 0)
    assert np.all(np.abs(R[mask]) > 0)


def test_single_site_transfer_is_diagonal_sum(rng, enome):
    # N = 1: T(u) = a(u - u1) + b(u - u1) on the diagonal, off-diagonal c, d
    params = EVParams(enome, (0.12,))
    u = 0.8
    R = ev_r_matrix(u - 0.12, params)
    T = transfer_matrix(u, params)
    assert T.shape == (2, 2)
    assert abs(T[0, 0] - (R[0, 0] + R[1, 1])) < 1e-13
    assert abs(T[1, 1] - (R[2, 2] + R[3, 3])) < 1e-13


def test_spin_flip_commutes(rng, enome):
    params = EVParams(enome, chain(rng, 3))
    T = transfer_matrix(0.45, params)
    S = spin_flip(3)
    comm = S @ T - T @ S
    assert np.abs(comm).max() < 1e-10 * np.abs(T).max()


def test_transfer_matrices_commute(rng, enome):
    params = EVParams(enome, chain(rng, 3))
    A = transfer_matrix(0.3, params)
    B = transfer_matrix(0.9, params)
    comm = A @ B - B @ A
    assert np.abs(comm).max() < 1e-9 * (np.abs(A).max() * np.abs(B).max())


# --- product eigenvalue ------------------------------------------------------

def test_product_eigenvalue(rng, enome):
    for N in (1, 3):
        params = EVParams(enome, chain(rng, N))
        us = (0.25, 0.8, 1.45)
        result = rs_eigenvalue_check(us, params)
        assert result.ok
        assert max(result.distances) < 1e-7
        assert result.cross_residual < 1e-7


# --- functional equation -----------------------------------------------------

def test_tq_solutions(rng, enome):
    for N in (1, 3):
        params = EVParams(enome, chain(rng, N))
        for label in ("1", "1h"):
            for u in (0.3, 0.85 + 0.1j):
                assert tq_residual(label, u, params) < 1e-8


def test_tq_only_base_one(rng, enome):
    params = EVParams(enome, chain(rng, 1))
    with pytest.raises(DomainError):
        q_sigma(3, 0.4, params)


def test_tq_linearity(rng, enome):
    # any fixed combination of the two solutions still solves the equation
    params = EVParams(enome, chain(rng, 3))
    combo = lambda u: 0.7 * q_sigma("1", u, params) - 1.9j * q_sigma("1h", u, params)
    for u in (0.4, 1.1):
        assert tq_residual(combo, u, params) < 1e-8


def test_q_pole_guard(enome):
    params = EVParams(enome, (0.3,))
    with pytest.raises(PoleError):
        q_sigma("1", 0.3, params)


def test_quasi_periods(rng, enome):
    params = EVParams(enome, chain(rng, 3))
    r1, r2 = qqp_residuals("1", 0.55, params)
    assert r1 < 1e-8
    assert r2 < 1e-8


def test_involution_separates_pair(rng, enome):
    params = EVParams(enome, chain(rng, 3))
    for label, sign in (("1", -1), ("1h", 1)):
        ratio = involution_ratio(label, 0.6, params)
        assert abs(ratio - sign) < 1e-8


# --- homogeneous chain -------------------------------------------------------

def test_cauchy_derivatives_on_exponential():
    # roundoff grows like k! / r^k, about 6e7 eps at order six
    ders = cauchy_derivatives(cmath.exp, 0.0, 6, 0.15)
    assert np.abs(ders - 1).max() < 1e-6
    assert np.abs(ders[:4] - 1).max() < 1e-12


def test_homdet_input_rules(enome):
    with pytest.raises(DomainError):
        homogeneous_q_det("1", 0.5, enome, 2)
    with pytest.raises(DomainError):
        homogeneous_q_det("1", 0.5, enome, 9)


def test_homdet_solves_functional_equation(enome):
    # the determinant form must satisfy the same three-term relation,
    # with phi collapsed to theta1(u)^N
    for N in (1, 3):
        qd = lambda u: homogeneous_q_det("1", u, enome, N)
        u = 0.9 + 0.2j
        t1 = theta_jacobi(1, u, enome) ** N * qd(u)
        t2 = theta_jacobi(1, u - ETA, enome) ** N * qd(u + 2 * ETA)
        t3 = theta_jacobi(1, u + ETA, enome) ** N * qd(u - 2 * ETA)
        assert abs(t1 - t2 - t3) < 1e-6 * max(abs(t1), abs(t2), abs(t3))


def test_homdet_matches_collapsed_chain(enome):
    us = (0.85 + 0.2j, 1.15 + 0.2j, 0.55 + 0.2j)
    assert homogeneous_proportionality("1", us, enome, 3) < 1e-5
