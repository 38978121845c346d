import cmath

import numpy as np
import pytest

from ellpf.errors import DegeneracyError, DomainError, RangeError
from ellpf.lattice import (
    HeightMatrix,
    ThreeColourWeights,
    colour_weights,
    delta_theta,
    dwt_check,
    enumerate_states,
    ik_determinant,
    partition_z,
    r_weight,
    sample_dynamical,
    schur_reduction_check,
    state_count,
    thc_check,
    three_colour_bridge_check,
    three_colour_z,
    trig_dwpf_check,
    tti_check,
    zqp_check,
)
from ellpf.nome import Nome
from ellpf.pfaffians import sample_config
from ellpf.theta import theta_p

TAU = 0.13 + 1.05j
OMEGA = cmath.exp(2j * cmath.pi / 3)


def spectral(rng, n, spread=0.35):
    return (1 + spread * rng.uniform(-1, 1, size=n)) * np.exp(
        0.3j * rng.uniform(-1, 1, size=n)
    )


# --- states ------------------------------------------------------------------

def test_state_counts():
    assert [state_count(n) for n in range(1, 6)] == [1, 2, 7, 42, 429]


def test_single_state_board():
    (state,) = enumerate_states(1)
    assert state.a == ((0, 1), (1, 0))


def test_board_size_limits():
    with pytest.raises(RangeError):
        list(enumerate_states(0))
    with pytest.raises(RangeError):
        list(enumerate_states(7))


def test_height_matrix_validation():
    with pytest.raises(DomainError):
        HeightMatrix(1, ((0, 1),))  # wrong shape
    with pytest.raises(DomainError):
        HeightMatrix(2, ((0, 1, 2), (1, 3, 1), (2, 1, 0)))  # broken step
    with pytest.raises(DomainError):
        HeightMatrix(2, ((0, 1, 2), (1, 2, 1), (0, 1, 0)))  # broken boundary


def test_interior_heights_stay_consistent():
    for state in enumerate_states(4):
        h = state.a
        for i in range(4):
            for j in range(4):
                assert abs(h[i][j] - h[i + 1][j]) == 1
                assert abs(h[i][j] - h[i][j + 1]) == 1


# --- block weights -----------------------------------------------------------

def test_r_weight_rejects_bad_blocks():
    with pytest.raises(DomainError):
        r_weight((0, 2, 1, 1), 0.7, 0.9, 0.0, OMEGA)
    with pytest.raises(DomainError):
        # vanishing dynamical parameter is a p = 0 limit only
        r_weight((0, 1, 1, 2), 0.0, 0.9, 0.05, OMEGA)


def test_r_weight_six_vertex_table():
    q, u = OMEGA, 0.8 + 0.1j
    assert abs(r_weight((0, 1, 1, 2), 0, u, 0, q) - (1 - q * u) / (1 - q)) < 1e-14
    assert abs(r_weight((2, 1, 1, 0), 0, u, 0, q) - (1 - q * u) / (1 - q)) < 1e-14
    assert abs(r_weight((1, 2, 0, 1), 0, u, 0, q) - (1 - u) / (1 - q)) < 1e-14
    assert abs(r_weight((1, 0, 2, 1), 0, u, 0, q) - q * (1 - u) / (1 - q)) < 1e-14
    assert abs(r_weight((1, 0, 0, 1), 0, u, 0, q) - 1) < 1e-14
    assert abs(r_weight((0, 1, 1, 0), 0, u, 0, q) - u) < 1e-14


def test_r_weight_continuous_at_zero_nome():
    # with the dynamical parameter held fixed, p -> 0 must be a limit,
    # not a jump, for every block pattern
    lam = cmath.exp(0.4j)
    blocks = ((0, 1, 1, 2), (2, 1, 1, 0), (1, 2, 0, 1), (1, 0, 2, 1), (1, 0, 0, 1), (0, 1, 1, 0))
    for block in blocks:
        small = r_weight(block, lam, 0.8, 1e-9, OMEGA)
        zero = r_weight(block, lam, 0.8, 0.0, OMEGA)
        assert abs(small - zero) < 1e-7 * max(abs(zero), 1.0)


def test_partition_needs_matching_lengths():
    with pytest.raises(DomainError):
        partition_z([1.0, 2.0], [1.5], 0, 0, OMEGA)


def test_partition_symmetric_in_rows(rng):
    nome = Nome(TAU)
    p = nome.p
    u = spectral(rng, 3)
    v = spectral(rng, 3)
    lam = sample_dynamical(rng, 3, p)
    base = partition_z(u, v, lam, p, OMEGA)
    shuffled = partition_z(u[::-1], v, lam, p, OMEGA)
    assert abs(base - shuffled) < 1e-10 * abs(base)


# --- six-vertex reductions ---------------------------------------------------

def test_ik_determinant(rng):
    for n in (1, 2, 3):
        u = spectral(rng, n)
        v = 2.2 + spectral(rng, n)
        direct = partition_z(u, v, 0, 0, OMEGA)
        closed = ik_determinant(u, v, OMEGA)
        assert abs(direct - closed) < 1e-9 * abs(closed)


def test_ik_rejects_collisions(rng):
    with pytest.raises(DegeneracyError):
        ik_determinant([1.0, 1.0], [2.0, 3.0], OMEGA)


def test_schur_reduction(rng):
    for n in (1, 2, 3):
        u = spectral(rng, n)
        v = 2.2 + spectral(rng, n)
        assert schur_reduction_check(u, v) < 1e-9


def test_trig_factorization(rng):
    for n in (1, 2, 3):
        u = spectral(rng, n)
        v = 2.2 + spectral(rng, n)
        lam = cmath.exp(2j * cmath.pi * rng.random()) * 1.1
        r_alt, r_det = trig_dwpf_check(u, v, lam)
        assert r_alt < 1e-9
        assert r_det < 1e-9


# --- elliptic model ----------------------------------------------------------

def test_nome_shift_covariance(rng):
    nome = Nome(TAU)
    p = nome.p
    for n in (1, 2, 3):
        u = spectral(rng, n)
        v = 2.2 + spectral(rng, n)
        lam = sample_dynamical(rng, n, p)
        assert zqp_check(u, v, lam, p) < 1e-9


def test_theta_addition(rng):
    nome = Nome(TAU)
    p = nome.p
    for _ in range(10):
        lam = sample_dynamical(rng, 1, p)
        assert tti_check(lam, p) < 1e-11


def test_delta_theta_antisymmetry(rng):
    p = Nome(TAU).p
    x = (1.1, 0.7 + 0.1j, 0.9 - 0.05j)
    base = delta_theta(x, p)
    # swapping two points multiplies by theta inversion, total sign -1
    swapped = delta_theta((x[1], x[0], x[2]), p)
    assert abs(base + swapped) < 1e-10 * abs(base)


def test_main_correspondence(rng):
    nome = Nome(TAU)
    p = nome.p
    for n in (1, 2, 3):
        cfg = sample_config(rng, n, nome, beta=0.05)
        lam = sample_dynamical(rng, n, p)
        assert dwt_check(cfg, lam) < 1e-8


# --- three-colour specialization ---------------------------------------------

def test_three_colour_unit_weights_count_states():
    ones = ThreeColourWeights(1, 1, 1)
    for n in (1, 2, 3, 4):
        assert abs(three_colour_z(n, ones) - state_count(n)) < 1e-12


def test_three_colour_hand_counts():
    w = ThreeColourWeights(0.7, 1.3, 0.4 + 0.2j)
    t0, t1, t2 = w.t0, w.t1, w.t2
    assert abs(three_colour_z(1, w) - t0**2 * t1**2) < 1e-14
    expect = t0**3 * t1**4 * t2**2 + t0**2 * t1**4 * t2**3
    assert abs(three_colour_z(2, w) - expect) < 1e-14


def test_three_colour_rejects_zero_weight():
    with pytest.raises(DomainError):
        ThreeColourWeights(1, 0, 1)


def test_colour_weights_parametrization():
    p = Nome(TAU).p
    lam = cmath.exp(0.37j)
    w = colour_weights(lam, p)
    for j, t in enumerate((w.t0, w.t1, w.t2)):
        assert abs(t - theta_p(lam * OMEGA**j, p) ** -3) < 1e-14 * abs(t)


def test_three_colour_bridge(rng):
    p = Nome(TAU).p
    for n in (1, 2):
        lam = sample_dynamical(rng, n, p)
        assert three_colour_bridge_check(n, lam, p) < 1e-9


def test_three_colour_hankel(rng):
    nome = Nome(TAU)
    for n in (1, 2):
        lam = sample_dynamical(rng, n, nome.p)
        assert thc_check(n, lam, nome) < 1e-6
